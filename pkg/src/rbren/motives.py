"""Integer polynomial classes in the Lefschetz symbol L.

Covers the stock of classes needed around determinant hypersurface
complements: projective spaces, GL_l via L^C(l,2) * prod (L^i - 1),
Grassmannians as box-partition sums, the blowup formula
[Bl_Y X] = [X] + sum_{k=1}^{codim-1} [Y] L^k, characteristic polynomials of
central hyperplane arrangements by Whitney's subset expansion, projective
arrangement classes [P^n] - chi(L)/(L-1), the matrix-coordinate divisor
family indexed by (l, g), a pole-order bound for the integrand pulled back
through rank-stratum blowups, and a data-driven iterated-blowup class for
compactifications whose centers are supplied as (base, fiber, codim) strata.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._linalg import echelon_insert
from .errors import PreconditionError, SizeBoundError

ARRANGEMENT_BOUND = 20


def _mk_lef(coeffs: dict) -> "LefschetzPolynomial":
    x = object.__new__(LefschetzPolynomial)
    object.__setattr__(
        x, "coeffs", dict(sorted((e, c) for e, c in coeffs.items() if c))
    )
    return x


@dataclass(frozen=True)
class LefschetzPolynomial:
    """Sparse integer polynomial in one symbol (printed as L by default)."""

    coeffs: Mapping[int, int]

    def __post_init__(self):
        fixed = {}
        for e, c in self.coeffs.items():
            e = int(e)
            c = int(c)
            if e < 0:
                raise PreconditionError("negative exponent in a class polynomial")
            if c:
                fixed[e] = c
        object.__setattr__(self, "coeffs", dict(sorted(fixed.items())))

    @staticmethod
    def zero() -> "LefschetzPolynomial":
        return _mk_lef({})

    @staticmethod
    def const(c: int) -> "LefschetzPolynomial":
        return _mk_lef({0: int(c)})

    @staticmethod
    def lefschetz(power: int = 1) -> "LefschetzPolynomial":
        return _mk_lef({power: 1})

    def __add__(self, other):
        if isinstance(other, int):
            other = LefschetzPolynomial.const(other)
        if not isinstance(other, LefschetzPolynomial):
            return NotImplemented
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return _mk_lef(out)

    __radd__ = __add__

    def __neg__(self):
        return _mk_lef({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return _mk_lef({e: c * other for e, c in self.coeffs.items()})
        if not isinstance(other, LefschetzPolynomial):
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return _mk_lef(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LefschetzPolynomial.const(1)
        for _ in range(n):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max(self.coeffs, default=-1)

    def __call__(self, value: int) -> int:
        return sum(c * value**e for e, c in self.coeffs.items())

    def divide_by_lef_minus_one(self) -> "LefschetzPolynomial":
        """Exact division by (L - 1); the remainder must vanish."""
        if self(1) != 0:
            raise PreconditionError("polynomial is not divisible by (L - 1)")
        degree = self.degree()
        quotient: dict[int, int] = {}
        carry = 0
        for e in range(degree, 0, -1):
            carry += self.coeffs.get(e, 0)
            quotient[e - 1] = carry
        return _mk_lef(quotient)

    def render(self, symbol: str = "L") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                body = str(abs(c))
            else:
                power = symbol if e == 1 else f"{symbol}^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LefschetzPolynomial({self.render()!r})"


def parse_class(text: str, symbol: str = "L") -> LefschetzPolynomial:
    text = text.replace(" ", "")
    if text in ("", "0"):
        return LefschetzPolynomial.zero()
    coeffs: dict[int, int] = {}
    for chunk in re.split(r"(?<!\^)(?=[+-])", text):
        if not chunk:
            continue
        sign = 1
        if chunk[0] == "+":
            chunk = chunk[1:]
        elif chunk[0] == "-":
            sign = -1
            chunk = chunk[1:]
        if symbol in chunk:
            coeff_part, _, power_part = chunk.partition(symbol)
            coeff = int(coeff_part.rstrip("*")) if coeff_part.rstrip("*") else 1
            e = int(power_part[1:]) if power_part.startswith("^") else 1
        else:
            coeff = int(chunk)
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * coeff
    return LefschetzPolynomial(coeffs)


# -- stock classes ------------------------------------------------------------


def projective_class(n: int) -> LefschetzPolynomial:
    """[P^n] = 1 + L + ... + L^n."""
    if n < 0:
        raise PreconditionError("projective space needs n >= 0")
    return LefschetzPolynomial({e: 1 for e in range(n + 1)})


def gl_class(loops: int) -> LefschetzPolynomial:
    """[GL_l] = L^C(l,2) * prod_{i=1}^{l} (L^i - 1)."""
    if loops < 1:
        raise PreconditionError("gl_class needs l >= 1")
    out = LefschetzPolynomial.lefschetz(loops * (loops - 1) // 2)
    for i in range(1, loops + 1):
        out = out * (LefschetzPolynomial.lefschetz(i) - 1)
    return out


def grassmannian_class(d: int, n: int) -> LefschetzPolynomial:
    """[G(d, n)] = sum over partitions in the d x (n-d) box of L^|lambda|."""
    if not 0 <= d <= n:
        raise PreconditionError("need 0 <= d <= n")
    coeffs: dict[int, int] = {}

    def boxed(parts: int, bound: int):
        if parts == 0:
            yield 0
            return
        for first in range(bound + 1):
            for rest in boxed(parts - 1, first):
                yield first + rest

    for weight in boxed(d, n - d):
        coeffs[weight] = coeffs.get(weight, 0) + 1
    return LefschetzPolynomial(coeffs)


@dataclass(frozen=True)
class BlowupStep:
    center: LefschetzPolynomial
    codim: int

    def __post_init__(self):
        if self.codim < 1:
            raise PreconditionError("blowup center must have codimension >= 1")


def blowup_class(
    x: LefschetzPolynomial, steps: Iterable[BlowupStep]
) -> LefschetzPolynomial:
    """Iterated [X'] = [X] + sum_{k=1}^{codim-1} [center] L^k."""
    out = x
    for step in steps:
        for k in range(1, step.codim):
            out = out + step.center * LefschetzPolynomial.lefschetz(k)
    return out


def kausz_class(
    loops: int,
    strata: Sequence[tuple[LefschetzPolynomial, LefschetzPolynomial, int]] = (),
) -> LefschetzPolynomial:
    """Iterated-blowup class of a GL_l compactification from supplied strata.

    Starts at [P^{l^2}]; each stratum (base, fiber, codim) contributes a
    blowup with center class base*fiber.  The stratification data itself is
    an input: no center geometry is invented here.
    """
    if loops < 1:
        raise PreconditionError("kausz_class needs l >= 1")
    steps = [BlowupStep(base * fiber, codim) for base, fiber, codim in strata]
    return blowup_class(projective_class(loops * loops), steps)


# -- hyperplane arrangements ------------------------------------------------------


@dataclass(frozen=True)
class Arrangement:
    """Rational hyperplane arrangement: ``ambient`` is the number of
    coordinates (so central in A^ambient, or in P^{ambient-1} when flagged
    projective)."""

    ambient: int
    hyperplanes: tuple[tuple[Fraction, ...], ...]
    projective: bool = False

    def __post_init__(self):
        planes = []
        seen = []
        for form in self.hyperplanes:
            form = tuple(Fraction(c) for c in form)
            if len(form) != self.ambient:
                raise PreconditionError("hyperplane length does not match ambient")
            if all(c == 0 for c in form):
                raise PreconditionError("zero linear form")
            lead = next(c for c in form if c)
            normal = tuple(c / lead for c in form)
            if normal in seen:
                raise PreconditionError("duplicate hyperplane rejected")
            seen.append(normal)
            planes.append(form)
        object.__setattr__(self, "hyperplanes", tuple(planes))


def char_poly(arr: Arrangement, bound: int = ARRANGEMENT_BOUND) -> LefschetzPolynomial:
    """Whitney expansion chi(t) = sum_S (-1)^|S| t^(ambient - rank S) of the
    central arrangement (exponential in the number of hyperplanes)."""
    n = len(arr.hyperplanes)
    if n > bound:
        raise SizeBoundError(f"{n} hyperplanes exceed the bound {bound}")
    coeffs: dict[int, int] = {}

    def walk(i: int, size: int, basis: list):
        if i == n:
            e = arr.ambient - len(basis)
            coeffs[e] = coeffs.get(e, 0) + (-1 if size % 2 else 1)
            return
        walk(i + 1, size, basis)
        extended = [row[:] for row in basis]
        echelon_insert(extended, arr.hyperplanes[i])
        walk(i + 1, size + 1, extended)

    walk(0, 0, [])
    return LefschetzPolynomial(coeffs)


def arrangement_class(arr: Arrangement) -> LefschetzPolynomial:
    """Class of the union of the hyperplanes in P^{ambient-1}:
    [P^{n}] - chi(L)/(L-1) with chi from the associated central arrangement."""
    if not arr.hyperplanes:
        return LefschetzPolynomial.zero()
    chi = char_poly(arr)
    return projective_class(arr.ambient - 1) - chi.divide_by_lef_minus_one()


def sigma_arrangement(loops: int, genus: int) -> Arrangement:
    """Divisor family in the l x l matrix coordinates, components
    x_ij = 0 (1 <= i < j <= f-1) and x_i1 + ... + x_i,f-1 = 0 (1 <= i <= f-1)
    with f = l - 2g + 1; in total C(f, 2) components."""
    f = loops - 2 * genus + 1
    if f < 2:
        raise PreconditionError(f"need l - 2g + 1 >= 2, got {f}")
    ambient = loops * loops

    def coord(i: int, j: int) -> int:
        # 1-based matrix entry (i, j) in row-major order
        return (i - 1) * loops + (j - 1)

    planes = []
    for i in range(1, f):
        for j in range(i + 1, f):
            form = [Fraction(0)] * ambient
            form[coord(i, j)] = Fraction(1)
            planes.append(tuple(form))
    for i in range(1, f):
        form = [Fraction(0)] * ambient
        for j in range(1, f):
            form[coord(i, j)] = Fraction(1)
        planes.append(tuple(form))
    return Arrangement(ambient, tuple(planes), projective=True)


# -- pole order bound ---------------------------------------------------------------


def pole_order_bound(n: int, loops: int, dim: int) -> int:
    """Lower bound n - (l-1)(-n + (l+1)D/2) + (l-1)^2 for the polar filtration
    position of the integrand after the first rank-stratum blowup."""
    if n < loops - 2:
        raise PreconditionError("bound assumes n >= l - 2")
    if ((loops + 1) * dim) % 2 != 0 or (loops * dim) % 2 != 0:
        raise PreconditionError("exponents are not integral for these parameters")
    b = -n + (loops + 1) * dim // 2
    return n - (loops - 1) * b + (loops - 1) ** 2
