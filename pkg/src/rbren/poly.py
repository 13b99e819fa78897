"""Exact sparse polynomial arithmetic over the rationals.

Two layers:

  MultiPoly   -- polynomial in an ordered tuple of named variables; terms are
                 a dict mapping exponent tuples (non-negative ints) to
                 Fraction coefficients.
  LaurentPoly -- adds a tuple of *distinguished* variables whose exponents may
                 be negative; the coefficient of each distinguished monomial
                 is a MultiPoly in the ordinary variables.

Canonical form: zero coefficients are never stored and term dicts are kept in
sorted key order, so equal elements have identical stored representation.
Printing is descending lexicographic in the declared variable sequence, e.g.
``t1*t2+t1*t3+t2*t3`` or ``3*z^-2-z^-1+z^3``.  Values are immutable and all
operations pure, so they can be shared freely across threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping

from .errors import ContextError, PoleAtPointError

Exponents = tuple[int, ...]


def _add_exps(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x + y for x, y in zip(a, b))


def _mk_poly(variables: tuple[str, ...], terms: dict) -> "MultiPoly":
    """Internal fast constructor: assumes exponents are valid, skips checks."""
    p = object.__new__(MultiPoly)
    object.__setattr__(p, "variables", variables)
    object.__setattr__(p, "terms", dict(sorted((e, c) for e, c in terms.items() if c)))
    return p


@dataclass(frozen=True)
class MultiPoly:
    variables: tuple[str, ...]
    terms: Mapping[Exponents, Fraction]

    def __post_init__(self):
        variables = tuple(self.variables)
        if len(set(variables)) != len(variables):
            raise ContextError(f"repeated variable name in {variables}")
        fixed = {}
        for exps, coeff in self.terms.items():
            exps = tuple(exps)
            if len(exps) != len(variables):
                raise ContextError(
                    f"exponent vector {exps} does not match variables {variables}"
                )
            if any(e < 0 for e in exps):
                raise ContextError(f"negative exponent in ordinary variables: {exps}")
            coeff = Fraction(coeff)
            if coeff:
                fixed[exps] = coeff
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", dict(sorted(fixed.items())))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(variables: Iterable[str]) -> "MultiPoly":
        return _mk_poly(tuple(variables), {})

    @staticmethod
    def const(variables: Iterable[str], value) -> "MultiPoly":
        variables = tuple(variables)
        c = Fraction(value)
        return _mk_poly(variables, {(0,) * len(variables): c} if c else {})

    @staticmethod
    def variable(variables: Iterable[str], name: str, power: int = 1) -> "MultiPoly":
        variables = tuple(variables)
        if name not in variables:
            raise ContextError(f"{name!r} is not among variables {variables}")
        if power < 0:
            raise ContextError("MultiPoly does not allow negative powers")
        exps = tuple(power if v == name else 0 for v in variables)
        return _mk_poly(variables, {exps: Fraction(1)})

    @staticmethod
    def monomial(variables: Iterable[str], exps: Iterable[int], coeff=1) -> "MultiPoly":
        return MultiPoly(tuple(variables), {tuple(exps): Fraction(coeff)})

    def one_like(self) -> "MultiPoly":
        return MultiPoly.const(self.variables, 1)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if self.variables != other.variables:
            raise ContextError(
                f"variable contexts differ: {self.variables} vs {other.variables}"
            )

    def __add__(self, other):
        if isinstance(other, Rational):
            other = MultiPoly.const(self.variables, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return _mk_poly(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return _mk_poly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, MultiPoly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return _mk_poly(self.variables, {e: c * q for e, c in self.terms.items()})
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return _mk_poly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ContextError("MultiPoly does not allow negative powers")
        result = MultiPoly.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- queries ------------------------------------------------------------

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degrees = {sum(e) for e in self.terms}
        if not degrees:
            return True
        if len(degrees) > 1:
            return False
        return degree is None or degrees == {degree}

    def content(self) -> Fraction:
        """gcd of the coefficients (0 for the zero polynomial)."""
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ContextError(f"unassigned variables: {missing}")
        values = [Fraction(point[v]) for v in self.variables]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(values, exps):
                if e:
                    term *= val**e
            total += term
        return total

    def set_var_zero(self, name: str) -> "MultiPoly":
        """Substitute name := 0 (keeps the variable slot in the context)."""
        if name not in self.variables:
            raise ContextError(f"{name!r} is not among variables {self.variables}")
        i = self.variables.index(name)
        return _mk_poly(
            self.variables, {e: c for e, c in self.terms.items() if e[i] == 0}
        )

    def coefficient(self, exps: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __str__(self):
        return render_terms(self.variables, self.terms)

    def __repr__(self):
        return f"MultiPoly({str(self) or '0'!r})"


# ---------------------------------------------------------------------------


def render_terms(variables: tuple[str, ...], terms: Mapping[Exponents, Fraction]) -> str:
    """Compact canonical rendering, descending lex: ``t1^2-t2^2``, ``5/6*x``."""
    if not terms:
        return "0"
    parts = []
    for exps in sorted(terms, reverse=True):
        coeff = terms[exps]
        factors = []
        for v, e in zip(variables, exps):
            if e == 0:
                continue
            factors.append(v if e == 1 else f"{v}^{e}")
        if not factors:
            body = str(coeff)
        elif coeff == 1:
            body = "*".join(factors)
        elif coeff == -1:
            body = "-" + "*".join(factors)
        else:
            body = str(coeff) + "*" + "*".join(factors)
        parts.append(body)
    out = "+".join(parts).replace("+-", "-")
    return out


_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")
_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_terms(
    text: str, variables: tuple[str, ...], allow_negative: frozenset[str] = frozenset()
) -> dict[Exponents, Fraction]:
    """Parse the canonical compact rendering back into a term dict."""
    text = text.replace(" ", "")
    if text in ("", "0"):
        return {}
    index = {v: i for i, v in enumerate(variables)}
    terms: dict[Exponents, Fraction] = {}
    for chunk in _TERM_SPLIT.split(text):
        if not chunk:
            continue
        sign = Fraction(1)
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = Fraction(-1)
            chunk = chunk[1:]
        coeff = sign
        exps = [0] * len(variables)
        for factor in chunk.split("*"):
            if _RATIONAL.match(factor):
                coeff *= Fraction(factor)
                continue
            name, _, power = factor.partition("^")
            if name not in index:
                raise ContextError(f"unknown variable {name!r} in {text!r}")
            e = int(power) if power else 1
            if e < 0 and name not in allow_negative:
                raise ContextError(f"negative power of ordinary variable {name!r}")
            exps[index[name]] += e
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff
    return {e: c for e, c in terms.items() if c}


def parse_poly(text: str, variables: Iterable[str]) -> MultiPoly:
    variables = tuple(variables)
    return MultiPoly(variables, parse_terms(text, variables))


# ---------------------------------------------------------------------------


def _mk_laurent(dist, variables, terms: dict) -> "LaurentPoly":
    p = object.__new__(LaurentPoly)
    object.__setattr__(p, "dist", dist)
    object.__setattr__(p, "variables", variables)
    object.__setattr__(
        p, "terms", dict(sorted((e, c) for e, c in terms.items() if not c.is_zero()))
    )
    return p


@dataclass(frozen=True)
class LaurentPoly:
    """Laurent polynomial in ``dist`` with MultiPoly coefficients."""

    dist: tuple[str, ...]
    variables: tuple[str, ...]
    terms: Mapping[Exponents, MultiPoly]

    def __post_init__(self):
        dist = tuple(self.dist)
        variables = tuple(self.variables)
        if set(dist) & set(variables):
            raise ContextError("distinguished and ordinary variables overlap")
        fixed = {}
        for exps, coeff in self.terms.items():
            exps = tuple(exps)
            if len(exps) != len(dist):
                raise ContextError(
                    f"exponent vector {exps} does not match distinguished {dist}"
                )
            if not isinstance(coeff, MultiPoly):
                coeff = MultiPoly.const(variables, coeff)
            if coeff.variables != variables:
                raise ContextError("coefficient has wrong variable context")
            if not coeff.is_zero():
                fixed[exps] = coeff
        object.__setattr__(self, "dist", dist)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", dict(sorted(fixed.items())))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(dist: Iterable[str], variables: Iterable[str]) -> "LaurentPoly":
        return _mk_laurent(tuple(dist), tuple(variables), {})

    @staticmethod
    def const(dist: Iterable[str], variables: Iterable[str], value) -> "LaurentPoly":
        dist = tuple(dist)
        variables = tuple(variables)
        return _mk_laurent(
            dist, variables, {(0,) * len(dist): MultiPoly.const(variables, value)}
        )

    @staticmethod
    def from_poly(p: MultiPoly, dist: Iterable[str] = ()) -> "LaurentPoly":
        dist = tuple(dist)
        return _mk_laurent(dist, p.variables, {(0,) * len(dist): p})

    @staticmethod
    def variable(dist: Iterable[str], variables: Iterable[str], name: str, power: int = 1):
        dist = tuple(dist)
        variables = tuple(variables)
        one = MultiPoly.const(variables, 1)
        if name in dist:
            exps = tuple(power if v == name else 0 for v in dist)
            return _mk_laurent(dist, variables, {exps: one})
        return LaurentPoly.from_poly(
            MultiPoly.variable(variables, name, power), dist
        )

    @staticmethod
    def monomial(dist, variables, dist_exps: Iterable[int], coeff: MultiPoly):
        return LaurentPoly(tuple(dist), tuple(variables), {tuple(dist_exps): coeff})

    def one_like(self) -> "LaurentPoly":
        return LaurentPoly.const(self.dist, self.variables, 1)

    def zero_like(self) -> "LaurentPoly":
        return LaurentPoly.zero(self.dist, self.variables)

    # -- ring operations ----------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if self.dist != other.dist or self.variables != other.variables:
            raise ContextError("Laurent contexts differ")

    def __add__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly.const(self.dist, self.variables, other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        zero = MultiPoly.zero(self.variables)
        for e, c in other.terms.items():
            out[e] = out.get(e, zero) + c
        return _mk_laurent(self.dist, self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return _mk_laurent(
            self.dist, self.variables, {e: -c for e, c in self.terms.items()}
        )

    def __sub__(self, other):
        if isinstance(other, Rational):
            return self + (-Fraction(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return _mk_laurent(
                self.dist, self.variables, {e: c * q for e, c in self.terms.items()}
            )
        if isinstance(other, MultiPoly):
            other = LaurentPoly.from_poly(other, self.dist)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check(other)
        out: dict[Exponents, MultiPoly] = {}
        zero = MultiPoly.zero(self.variables)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exps(e1, e2)
                out[e] = out.get(e, zero) + c1 * c2
        return _mk_laurent(self.dist, self.variables, out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- polar split --------------------------------------------------------

    def polar_part(self, name: str | None = None) -> "LaurentPoly":
        """Terms with a negative exponent of the given distinguished variable.

        With a single distinguished variable the argument may be omitted.
        """
        i = self._dist_index(name)
        return _mk_laurent(
            self.dist, self.variables, {e: c for e, c in self.terms.items() if e[i] < 0}
        )

    def regular_part(self, name: str | None = None) -> "LaurentPoly":
        i = self._dist_index(name)
        return _mk_laurent(
            self.dist, self.variables, {e: c for e, c in self.terms.items() if e[i] >= 0}
        )

    def polar_any(self) -> "LaurentPoly":
        """Terms negative in at least one distinguished variable."""
        return _mk_laurent(
            self.dist,
            self.variables,
            {e: c for e, c in self.terms.items() if any(x < 0 for x in e)},
        )

    def _dist_index(self, name: str | None) -> int:
        if name is None:
            if len(self.dist) != 1:
                raise ContextError("polar part needs an explicit variable name here")
            return 0
        if name not in self.dist:
            raise ContextError(f"{name!r} is not distinguished in {self.dist}")
        return self.dist.index(name)

    def map_coeffs(self, fn) -> "LaurentPoly":
        out = {}
        for e, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                out[e] = c2
        return _mk_laurent(self.dist, self.variables, out)

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        missing = [v for v in self.dist + self.variables if v not in point]
        if missing:
            raise ContextError(f"unassigned variables: {missing}")
        dvals = [Fraction(point[v]) for v in self.dist]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            cval = coeff.evaluate(point)
            if cval == 0:
                continue
            term = cval
            for v, val, e in zip(self.dist, dvals, exps):
                if e < 0 and val == 0:
                    raise PoleAtPointError(f"{v} = 0 hit with exponent {e}")
                if e:
                    term *= val**e
            total += term
        return total

    def __str__(self):
        flat: dict[Exponents, Fraction] = {}
        for dexps, coeff in self.terms.items():
            for pexps, c in coeff.terms.items():
                flat[dexps + pexps] = c
        return render_terms(self.dist + self.variables, flat)

    def __repr__(self):
        return f"LaurentPoly({str(self) or '0'!r})"


def parse_laurent(text: str, dist: Iterable[str], variables: Iterable[str]) -> LaurentPoly:
    dist = tuple(dist)
    variables = tuple(variables)
    flat = parse_terms(text, dist + variables, allow_negative=frozenset(dist))
    nd = len(dist)
    terms: dict[Exponents, dict] = {}
    for exps, coeff in flat.items():
        terms.setdefault(exps[:nd], {})[exps[nd:]] = coeff
    return LaurentPoly(
        dist, variables, {d: MultiPoly(variables, t) for d, t in terms.items()}
    )
