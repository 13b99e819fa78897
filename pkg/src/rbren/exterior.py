"""Exterior (anticommuting) elements with Laurent polynomial coefficients.

An ExteriorElement is a finite sum of wedge monomials e_S = g_{i1} ^ g_{i2}
^ ... (S a strictly increasing index tuple into the generator list), each
with a LaurentPoly coefficient.  Generators are odd symbols, so the wedge
follows the Koszul sign rule; elements of even degree commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Rational
from typing import Iterable, Mapping

from .errors import ContextError
from .poly import LaurentPoly, MultiPoly

Subset = tuple[int, ...]


def merge_sign(a: Subset, b: Subset) -> tuple[Subset, int]:
    """Sorted merge of disjoint index tuples with the Koszul sign.

    Returns sign 0 when the tuples overlap (wedge of a repeated generator).
    """
    if set(a) & set(b):
        return (), 0
    inversions = 0
    for j in b:
        inversions += sum(1 for i in a if i > j)
    return tuple(sorted(a + b)), (-1 if inversions % 2 else 1)


def _mk_ext(gens, terms: dict) -> "ExteriorElement":
    x = object.__new__(ExteriorElement)
    object.__setattr__(x, "gens", gens)
    object.__setattr__(
        x, "terms", dict(sorted((s, c) for s, c in terms.items() if not c.is_zero()))
    )
    return x


@dataclass(frozen=True)
class ExteriorElement:
    gens: tuple[str, ...]
    terms: Mapping[Subset, LaurentPoly]

    def __post_init__(self):
        gens = tuple(self.gens)
        if len(set(gens)) != len(gens):
            raise ContextError("repeated generator name")
        ctx = None
        fixed = {}
        for subset, coeff in self.terms.items():
            subset = tuple(subset)
            if list(subset) != sorted(set(subset)):
                raise ContextError(f"subset {subset} is not strictly sorted")
            if subset and not (0 <= subset[0] and subset[-1] < len(gens)):
                raise ContextError(f"subset {subset} out of range")
            if not isinstance(coeff, LaurentPoly):
                raise ContextError("coefficients must be LaurentPoly")
            if ctx is None:
                ctx = (coeff.dist, coeff.variables)
            elif (coeff.dist, coeff.variables) != ctx:
                raise ContextError("coefficients live in different contexts")
            if not coeff.is_zero():
                fixed[subset] = coeff
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", dict(sorted(fixed.items())))

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(gens: Iterable[str]) -> "ExteriorElement":
        return _mk_ext(tuple(gens), {})

    @staticmethod
    def scalar(gens: Iterable[str], coeff: LaurentPoly) -> "ExteriorElement":
        return _mk_ext(tuple(gens), {(): coeff})

    @staticmethod
    def generator(gens: Iterable[str], name: str, coeff: LaurentPoly) -> "ExteriorElement":
        gens = tuple(gens)
        if name not in gens:
            raise ContextError(f"unknown generator {name!r}")
        return _mk_ext(gens, {(gens.index(name),): coeff})

    @staticmethod
    def term(gens: Iterable[str], names: Iterable[str], coeff: LaurentPoly):
        gens = tuple(gens)
        idx = []
        for name in names:
            if name not in gens:
                raise ContextError(f"unknown generator {name!r}")
            idx.append(gens.index(name))
        return ExteriorElement(gens, {tuple(sorted(idx)): coeff})

    def zero_like(self) -> "ExteriorElement":
        return _mk_ext(self.gens, {})

    # -- graded algebra -----------------------------------------------------

    def _check(self, other: "ExteriorElement"):
        if self.gens != other.gens:
            raise ContextError("generator contexts differ")

    def __add__(self, other):
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for s, c in other.terms.items():
            out[s] = out.get(s, c.zero_like()) + c
        return _mk_ext(self.gens, out)

    def __neg__(self):
        return _mk_ext(self.gens, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Wedge product (also accepts coefficient-ring scalars)."""
        if isinstance(other, (Rational, LaurentPoly, MultiPoly)):
            return _mk_ext(self.gens, {s: c * other for s, c in self.terms.items()})
        if not isinstance(other, ExteriorElement):
            return NotImplemented
        self._check(other)
        out: dict[Subset, LaurentPoly] = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in other.terms.items():
                merged, sign = merge_sign(s1, s2)
                if sign == 0:
                    continue
                contrib = c1 * c2 if sign == 1 else -(c1 * c2)
                if merged in out:
                    out[merged] = out[merged] + contrib
                else:
                    out[merged] = contrib
        return _mk_ext(self.gens, out)

    def __rmul__(self, other):
        if isinstance(other, (Rational, LaurentPoly, MultiPoly)):
            return self * other
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- degree structure ---------------------------------------------------

    def degrees(self) -> set[int]:
        return {len(s) for s in self.terms}

    def is_even(self) -> bool:
        return all(len(s) % 2 == 0 for s in self.terms)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        """Degree of a homogeneous element; None for 0 or mixed degrees."""
        d = self.degrees()
        return d.pop() if len(d) == 1 else None

    # -- structural helpers -------------------------------------------------

    def select(self, keep) -> "ExteriorElement":
        """Projection onto the terms whose subset satisfies ``keep``."""
        return _mk_ext(self.gens, {s: c for s, c in self.terms.items() if keep(s)})

    def map_coeffs(self, fn) -> "ExteriorElement":
        out = {}
        for s, c in self.terms.items():
            c2 = fn(c)
            if not c2.is_zero():
                out[s] = c2
        return _mk_ext(self.gens, out)

    def coefficient(self, names: Iterable[str]) -> LaurentPoly | None:
        idx = tuple(sorted(self.gens.index(n) for n in names))
        return self.terms.get(idx)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for subset, coeff in self.terms.items():
            body = "^".join(self.gens[i] for i in subset) if subset else "1"
            parts.append(f"({coeff}) {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExteriorElement({str(self)!r})"
