"""Weight -1 Rota-Baxter algebras of Laurent elements and differential forms.

Five algebra kinds, each a commutative algebra with a polar-part operator T
satisfying  T(x)T(y) + T(xy) = T(xT(y)) + T(T(x)y):

  laurent_ms      Laurent polynomials in one variable z; T keeps negative
                  powers (minimal subtraction).
  merom_form      even exterior elements whose coefficients are Laurent in a
                  single divisor variable f; T keeps the f-polar part.
  nc_log_form     even exterior elements over dlog_1..dlog_m, dx_1..dx_N with
                  coefficients polynomial in (f_1..f_m, x_1..x_N); T projects
                  onto the ideal of terms containing a dlog factor.  T is
                  idempotent, T(T(x)y) = T(x)y, T(xT(y)) = xT(y), and 1-T is
                  multiplicative.
  smooth_log_form nc_log_form with m = 1; additionally T(x)T(y) = 0 and T is
                  a derivation.
  saito_form      triples (f, xi, eta) representing (dlog(h)^xi + eta)/f for
                  a fixed divisor h; T keeps the dlog(h) part and is a
                  derivation.

Divisor equations are distinguished formal variables (the local normal form
of a smooth component), which makes polar-part extraction canonical.

All values are immutable; operators are pure functions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import ContextError, InvariantError, PreconditionError
from .exterior import ExteriorElement
from .poly import LaurentPoly, MultiPoly

KINDS = ("laurent_ms", "merom_form", "nc_log_form", "smooth_log_form", "saito_form")

# kinds on which T additionally satisfies T^2 = T and T(T(x)y) = T(x)y,
# T(xT(y)) = xT(y); these admit the non-recursive factorization formulas
SIMPLE_T_KINDS = ("nc_log_form", "smooth_log_form", "saito_form")


@dataclass(frozen=True)
class SaitoForm:
    """(f, xi, eta) with gcd(f, h) = 1, representing (dlog(h)^xi + eta)/f.

    xi is odd, eta is even, so the form itself is even.  Two triples are
    equal iff they agree after cross-multiplication.
    """

    denom: MultiPoly
    xi: ExteriorElement
    eta: ExteriorElement


@dataclass(frozen=True)
class RBAlgebraDescriptor:
    kind: str
    weight: Fraction = Fraction(-1)
    divisors: int = 0
    ambient: int = 0
    coeff_vars: tuple[str, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown algebra kind {self.kind!r}")
        if self.kind == "smooth_log_form" and self.divisors != 1:
            raise PreconditionError("smooth_log_form has exactly one divisor")
        if Fraction(self.weight) != -1:
            # every provided kind carries the weight -1 polar splitting
            raise PreconditionError("descriptor weight must be -1")
        object.__setattr__(self, "weight", Fraction(self.weight))
        object.__setattr__(self, "coeff_vars", tuple(self.coeff_vars))

    # -- constructors per kind ----------------------------------------------

    @staticmethod
    def laurent_ms(coeff_vars: Iterable[str] = ()) -> "RBAlgebraDescriptor":
        return RBAlgebraDescriptor("laurent_ms", coeff_vars=tuple(coeff_vars))

    @staticmethod
    def merom(ambient: int) -> "RBAlgebraDescriptor":
        return RBAlgebraDescriptor("merom_form", divisors=1, ambient=ambient)

    @staticmethod
    def nc_log(divisors: int, ambient: int) -> "RBAlgebraDescriptor":
        return RBAlgebraDescriptor("nc_log_form", divisors=divisors, ambient=ambient)

    @staticmethod
    def smooth_log(ambient: int) -> "RBAlgebraDescriptor":
        return RBAlgebraDescriptor("smooth_log_form", divisors=1, ambient=ambient)

    @staticmethod
    def saito(ambient: int) -> "RBAlgebraDescriptor":
        return RBAlgebraDescriptor("saito_form", ambient=ambient)

    # -- contexts -------------------------------------------------------------

    @property
    def has_simple_T(self) -> bool:
        return self.kind in SIMPLE_T_KINDS

    def dist_vars(self) -> tuple[str, ...]:
        if self.kind == "laurent_ms":
            return ("z",)
        if self.kind == "merom_form":
            return ("f",)
        return ()

    def poly_vars(self) -> tuple[str, ...]:
        if self.kind == "laurent_ms":
            return self.coeff_vars
        if self.kind == "merom_form":
            return tuple(f"x{k}" for k in range(1, self.ambient + 1))
        if self.kind in ("nc_log_form", "smooth_log_form"):
            return tuple(f"f{j}" for j in range(1, self.divisors + 1)) + tuple(
                f"x{k}" for k in range(1, self.ambient + 1)
            )
        return ("h",) + tuple(f"x{k}" for k in range(1, self.ambient + 1))

    def gens(self) -> tuple[str, ...]:
        if self.kind == "laurent_ms":
            return ()
        if self.kind in ("nc_log_form", "smooth_log_form"):
            return tuple(f"dlog{j}" for j in range(1, self.divisors + 1)) + tuple(
                f"dx{k}" for k in range(1, self.ambient + 1)
            )
        return tuple(f"dx{k}" for k in range(1, self.ambient + 1))

    # -- element builders ------------------------------------------------------

    def coeff(self, text_or_poly) -> LaurentPoly:
        if isinstance(text_or_poly, LaurentPoly):
            return text_or_poly
        if isinstance(text_or_poly, MultiPoly):
            return LaurentPoly.from_poly(text_or_poly, self.dist_vars())
        from .poly import parse_laurent

        return parse_laurent(str(text_or_poly), self.dist_vars(), self.poly_vars())

    def form(self, *terms) -> ExteriorElement:
        """Build an exterior element from (generator-names, coefficient) pairs."""
        total = ExteriorElement.zero(self.gens())
        for names, coeff in terms:
            total = total + ExteriorElement.term(self.gens(), names, self.coeff(coeff))
        return total

    def saito_element(self, denom, xi: ExteriorElement, eta: ExteriorElement) -> SaitoForm:
        if isinstance(denom, str):
            from .poly import parse_poly

            denom = parse_poly(denom, self.poly_vars())
        return self._saito_reduce(denom, xi, eta)

    def zero(self):
        if self.kind == "laurent_ms":
            return LaurentPoly.zero(self.dist_vars(), self.poly_vars())
        if self.kind == "saito_form":
            empty = ExteriorElement.zero(self.gens())
            return SaitoForm(MultiPoly.const(self.poly_vars(), 1), empty, empty)
        return ExteriorElement.zero(self.gens())

    def one(self):
        if self.kind == "laurent_ms":
            return LaurentPoly.const(self.dist_vars(), self.poly_vars(), 1)
        if self.kind == "saito_form":
            empty = ExteriorElement.zero(self.gens())
            one = ExteriorElement.scalar(
                self.gens(), LaurentPoly.const((), self.poly_vars(), 1)
            )
            return SaitoForm(MultiPoly.const(self.poly_vars(), 1), empty, one)
        return ExteriorElement.scalar(
            self.gens(), LaurentPoly.const(self.dist_vars(), self.poly_vars(), 1)
        )

    # -- algebra operations -----------------------------------------------------

    def add(self, x, y):
        if self.kind == "saito_form":
            return self._saito_reduce(
                x.denom * y.denom,
                y.denom * x.xi + x.denom * y.xi,
                y.denom * x.eta + x.denom * y.eta,
            )
        return x + y

    def neg(self, x):
        if self.kind == "saito_form":
            return SaitoForm(x.denom, -x.xi, -x.eta)
        return -x

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar(self, c, x):
        c = Fraction(c)
        if self.kind == "saito_form":
            return SaitoForm(x.denom, c * x.xi, c * x.eta)
        return c * x

    def mul(self, x, y):
        if self.kind == "saito_form":
            return self._saito_mul(x, y)
        if self.kind != "laurent_ms":
            for operand in (x, y):
                if not operand.is_even():
                    raise PreconditionError(
                        "algebra multiplication is defined on even-degree forms"
                    )
        return x * y

    def is_zero(self, x) -> bool:
        if self.kind == "saito_form":
            return x.xi.is_zero() and x.eta.is_zero()
        return x.is_zero()

    def eq(self, x, y) -> bool:
        if self.kind == "saito_form":
            return (y.denom * x.xi == x.denom * y.xi) and (
                y.denom * x.eta == x.denom * y.eta
            )
        return x == y

    # -- the Rota-Baxter operator -------------------------------------------------

    def T(self, x):
        if self.kind == "laurent_ms":
            return x.polar_part("z")
        if self.kind == "merom_form":
            return x.map_coeffs(lambda c: c.polar_part("f"))
        if self.kind in ("nc_log_form", "smooth_log_form"):
            m = self.divisors
            return x.select(lambda s: any(i < m for i in s))
        return SaitoForm(x.denom, x.xi, x.eta.zero_like())

    def T_complement(self, x):
        return self.sub(x, self.T(x))

    def in_T_image(self, x) -> bool:
        return self.eq(self.T(x), x)

    # -- saito internals ---------------------------------------------------------

    def _h_index(self) -> int:
        return self.poly_vars().index("h")

    def _check_coprime_h(self, denom: MultiPoly):
        if denom.is_zero():
            raise InvariantError("zero denominator in a Saito triple")
        i = self._h_index()
        if all(e[i] > 0 for e in denom.terms):
            raise InvariantError("denominator shares the divisor h")

    def _saito_reduce(self, denom, xi, eta) -> SaitoForm:
        self._check_coprime_h(denom)
        for part, parity in ((xi, 1), (eta, 0)):
            if any(len(s) % 2 != parity for s in part.terms):
                raise PreconditionError("Saito slots must have odd/even parity")
        # pull out the common rational content and a common monomial factor
        contents = [denom.content()]
        exps = [min_exps(denom)]
        for part in (xi, eta):
            for c in part.terms.values():
                poly = c.terms.get((), None) if c.dist == () else None
                if poly is None:
                    # coefficients of Saito slots are plain polynomials
                    poly = _laurent_to_poly(c)
                contents.append(poly.content())
                exps.append(min_exps(poly))
        from math import gcd

        num = 0
        den = 1
        for c in contents:
            if c == 0:
                continue
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        scale = Fraction(num, den) if num else Fraction(1)
        common = [min(col) for col in zip(*[e for e in exps if e is not None])] or None
        if scale == 1 and (common is None or not any(common)):
            return SaitoForm(denom, xi, eta)
        shift = tuple(common) if common else None

        def reduce_poly(p: MultiPoly) -> MultiPoly:
            terms = {}
            for e, c in p.terms.items():
                e2 = tuple(a - b for a, b in zip(e, shift)) if shift else e
                terms[e2] = c / scale
            return MultiPoly(p.variables, terms)

        return SaitoForm(
            reduce_poly(denom),
            xi.map_coeffs(lambda c: c.map_coeffs(reduce_poly)),
            eta.map_coeffs(lambda c: c.map_coeffs(reduce_poly)),
        )

    def _saito_mul(self, a: SaitoForm, b: SaitoForm) -> SaitoForm:
        denom = a.denom * b.denom
        self._check_coprime_h(denom)
        xi = a.xi * b.eta + a.eta * b.xi  # eta slots are even, no extra sign
        eta = a.eta * b.eta
        return self._saito_reduce(denom, xi, eta)

    # -- random sampling (seeded sweeps) --------------------------------------------

    def random_element(self, rng: random.Random, even: bool = True):
        if self.kind == "laurent_ms":
            return self._random_laurent(rng)
        if self.kind == "saito_form":
            return self._random_saito(rng)
        return self._random_form(rng, even=even)

    def _random_coeff_poly(self, rng, variables, max_terms=2, hfree=False):
        terms = {}
        n = len(variables)
        hi = self._h_index() if self.kind == "saito_form" else None
        for _ in range(rng.randint(1, max_terms)):
            exps = [rng.randint(0, 2) if rng.random() < 0.5 else 0 for _ in range(n)]
            if hfree and hi is not None:
                exps[hi] = 0
            coeff = Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 1, 2]))
            key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return MultiPoly(variables, terms)

    def _random_laurent_coeff(self, rng) -> LaurentPoly:
        dist = self.dist_vars()
        out = {}
        for _ in range(rng.randint(1, 2)):
            dexps = tuple(rng.randint(-2, 2) for _ in dist)
            out[dexps] = self._random_coeff_poly(rng, self.poly_vars())
        return LaurentPoly(dist, self.poly_vars(), out)

    def _random_laurent(self, rng) -> LaurentPoly:
        return self._random_laurent_coeff(rng)

    def _random_form(self, rng, even=True) -> ExteriorElement:
        gens = self.gens()
        sizes = [d for d in range(len(gens) + 1) if d % 2 == 0] if even else list(
            range(len(gens) + 1)
        )
        total = ExteriorElement.zero(gens)
        import itertools as it

        subsets = [s for d in sizes for s in it.combinations(range(len(gens)), d)]
        for _ in range(rng.randint(1, 3)):
            subset = rng.choice(subsets)
            total = total + ExteriorElement(
                gens, {subset: self._random_laurent_coeff(rng)}
            )
        return total

    def _random_saito(self, rng) -> SaitoForm:
        variables = self.poly_vars()
        # h-free part first so gcd(f, h) = 1 is guaranteed
        denom = self._random_coeff_poly(rng, variables, hfree=True)
        if denom.is_zero():
            denom = MultiPoly.const(variables, 1)
        if rng.random() < 0.5:
            h = MultiPoly.variable(variables, "h")
            denom = denom + h * self._random_coeff_poly(rng, variables)
        gens = self.gens()
        import itertools as it

        odd = [s for d in range(1, len(gens) + 1, 2) for s in it.combinations(range(len(gens)), d)]
        even = [s for d in range(0, len(gens) + 1, 2) for s in it.combinations(range(len(gens)), d)]
        xi = ExteriorElement.zero(gens)
        eta = ExteriorElement.zero(gens)
        plain = lambda: LaurentPoly.from_poly(self._random_coeff_poly(rng, variables))
        for _ in range(rng.randint(0, 2)):
            xi = xi + ExteriorElement(gens, {rng.choice(odd): plain()})
        for _ in range(rng.randint(0, 2)):
            eta = eta + ExteriorElement(gens, {rng.choice(even): plain()})
        return self._saito_reduce(denom, xi, eta)


def min_exps(p: MultiPoly):
    """Componentwise minimum exponent vector, or None for the zero poly."""
    if p.is_zero():
        return None
    return tuple(min(col) for col in zip(*p.terms.keys()))


def _laurent_to_poly(c: LaurentPoly) -> MultiPoly:
    if c.dist:
        raise ContextError("expected a plain polynomial coefficient")
    return c.terms.get((), MultiPoly.zero(c.variables))


# -- defects and residues ----------------------------------------------------------


def rb_defect(desc: RBAlgebraDescriptor, x, y):
    """T(x)T(y) - T(xT(y)) - T(T(x)y) - weight*T(xy); zero certifies the
    Rota-Baxter identity on the pair."""
    T = desc.T
    mul = desc.mul
    out = mul(T(x), T(y))
    out = desc.sub(out, T(mul(x, T(y))))
    out = desc.sub(out, T(mul(T(x), y)))
    out = desc.sub(out, desc.scalar(desc.weight, T(mul(x, y))))
    return out


def operator_defect(T: Callable, x, y, weight=Fraction(-1)):
    """Same defect for an arbitrary operator on a ring with dunder arithmetic.

    Lets one probe non-examples, e.g. the inclusion-exclusion polar operator
    1 - (1-T1)(1-T2) on a two-variable Laurent ring, which fails weight -1.
    """
    return T(x) * T(y) - T(x * T(y)) - T(T(x) * y) - Fraction(weight) * T(x * y)


def residue(desc: RBAlgebraDescriptor, x: ExteriorElement, j: int) -> ExteriorElement:
    """Poincare residue along divisor j: the signed dlog_j coefficient with
    f_j set to zero (restriction to the component)."""
    if desc.kind not in ("nc_log_form", "smooth_log_form"):
        raise PreconditionError("residue is defined on log-form algebras")
    if not 1 <= j <= desc.divisors:
        raise PreconditionError(f"divisor index {j} out of range")
    idx = j - 1
    fname = f"f{j}"
    out = {}
    for subset, coeff in x.terms.items():
        if idx not in subset:
            continue
        pos = subset.index(idx)
        sign = -1 if pos % 2 else 1
        rest = subset[:pos] + subset[pos + 1 :]
        new_coeff = coeff.map_coeffs(lambda p: p.set_var_zero(fname))
        if new_coeff.is_zero():
            continue
        out[rest] = out.get(rest, new_coeff.zero_like()) + (
            new_coeff if sign == 1 else -new_coeff
        )
    return ExteriorElement(x.gens, {s: c for s, c in out.items() if not c.is_zero()})


def iterated_residue(
    desc: RBAlgebraDescriptor, x: ExteriorElement, indices: Iterable[int]
) -> ExteriorElement:
    """Res_{i_k} o ... o Res_{i_1} for indices = (i_1, ..., i_k)."""
    indices = tuple(indices)
    if len(set(indices)) != len(indices):
        raise PreconditionError("iterated residue needs distinct indices")
    out = x
    for j in indices:
        out = residue(desc, out, j)
    return out


# -- named operator entry points ------------------------------------------------


def T_laurent(x: LaurentPoly) -> LaurentPoly:
    return x.polar_part("z")


def T_merom(x: ExteriorElement) -> ExteriorElement:
    return x.map_coeffs(lambda c: c.polar_part("f"))


def T_nc_log(desc: RBAlgebraDescriptor, x: ExteriorElement) -> ExteriorElement:
    return desc.T(x)


def T_saito(desc: RBAlgebraDescriptor, x: SaitoForm) -> SaitoForm:
    return desc.T(x)


def saito_wedge(desc: RBAlgebraDescriptor, a: SaitoForm, b: SaitoForm) -> SaitoForm:
    return desc.mul(a, b)
