"""Characters of the graph Hopf algebra with values in a Rota-Baxter algebra,
and their factorization into divergent and finite parts.

The recursive factorization is

    phi_minus(G) = -T(phi(G) + sum phi_minus(G') phi(G''))
    phi_plus(G)  = (1-T)(phi(G) + sum phi_minus(G') phi(G''))

with the sum over the reduced coproduct.  phi_minus extends multiplicatively;
its positive-degree values land in the image of T, so the unitization
T(R) + Q is represented inside R itself via the canonical embedding.  On
targets whose operator satisfies T^2 = T and T(T(x)y) = T(x)y the module also
provides the non-recursive series for phi_minus, the Atkinson fixed points
b_l = e + T(b_l * a), b_r = e + (1-T)(a * b_r) with a = e - phi, and the
closed form b_l = e + T(a)(1-a)^{-1}.

Memo tables are only appended to; concurrent readers are safe.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Any, Callable

from .errors import CutoffError, MissingValueError, PreconditionError
from .graphs import FeynmanGraph, superficial_degree
from .hopf import (
    GeneratorRegistry,
    HopfElement,
    Monomial,
    antipode,
    coproduct,
    reduced_coproduct,
)
from .poly import LaurentPoly, MultiPoly
from .rota_baxter import RBAlgebraDescriptor

DEFAULT_DEGREE_CUTOFF = 4


def degree_cutoff() -> int:
    env = os.environ.get("RB_RENORM_DEGREE_CUTOFF")
    return int(env) if env else DEFAULT_DEGREE_CUTOFF


class Character:
    """Multiplicative map from generator names into a target algebra.

    ``values`` fixes generators explicitly; ``rule`` (name, graph) -> element
    supplies values on demand, so auto-registered quotient generators are
    covered without enumeration.
    """

    def __init__(
        self,
        target: RBAlgebraDescriptor,
        values: dict[str, Any] | None = None,
        rule: Callable[[str, FeynmanGraph], Any] | None = None,
        reg: GeneratorRegistry | None = None,
    ):
        self.target = target
        self.values = dict(values or {})
        self.rule = rule
        self.reg = reg
        self._minus: dict[str, Any] = {}
        self._plus: dict[str, Any] = {}

    def value(self, name: str) -> Any:
        if name in self.values:
            return self.values[name]
        if self.rule is not None and self.reg is not None:
            out = self.rule(name, self.reg.graph(name))
            self.values[name] = out
            return out
        raise MissingValueError(f"character has no value for generator {name!r}")

    def on_monomial(self, mono: Monomial) -> Any:
        out = self.target.one()
        for name in mono:
            out = self.target.mul(out, self.value(name))
        return out

    def __call__(self, x) -> Any:
        if isinstance(x, str):
            return self.value(x)
        if isinstance(x, tuple):
            return self.on_monomial(x)
        out = self.target.zero()
        for mono, coeff in x.terms.items():
            out = self.target.add(out, self.target.scalar(coeff, self.on_monomial(mono)))
        return out


def pole_power_character(
    reg: GeneratorRegistry,
    c=Fraction(0),
    coeff_vars: tuple[str, ...] = (),
) -> Character:
    """Toy rule phi(G) = z^-max(omega(G), 1) + c, with omega the superficial
    degree of divergence in the registry's dimension."""
    target = RBAlgebraDescriptor.laurent_ms(coeff_vars=coeff_vars)
    c = Fraction(c)

    def rule(name: str, graph: FeynmanGraph):
        power = max(superficial_degree(graph, reg.dim), 1)
        one = MultiPoly.const(target.poly_vars(), 1)
        terms = {(-power,): one}
        if c:
            terms[(0,)] = MultiPoly.const(target.poly_vars(), c)
        return LaurentPoly(target.dist_vars(), target.poly_vars(), terms)

    return Character(target, rule=rule, reg=reg)


# -- convolution ----------------------------------------------------------------


class ConvolutionElement:
    """Map from the graded monomial basis into the target, defined through a
    degree cutoff; evaluation beyond the cutoff raises CutoffError."""

    def __init__(self, target, reg, cutoff: int, fn: Callable[[Monomial], Any]):
        self.target = target
        self.reg = reg
        self.cutoff = cutoff
        self._fn = fn
        self._memo: dict[Monomial, Any] = {}

    def on_monomial(self, mono: Monomial) -> Any:
        if self.reg.degree(mono) > self.cutoff:
            raise CutoffError(
                f"monomial degree {self.reg.degree(mono)} beyond cutoff {self.cutoff}"
            )
        if mono not in self._memo:
            self._memo[mono] = self._fn(mono)
        return self._memo[mono]

    def __call__(self, x) -> Any:
        if isinstance(x, str):
            return self.on_monomial((x,))
        if isinstance(x, tuple):
            return self.on_monomial(x)
        out = self.target.zero()
        for mono, coeff in x.terms.items():
            out = self.target.add(out, self.target.scalar(coeff, self.on_monomial(mono)))
        return out


def unit_character(target, reg, cutoff: int | None = None) -> ConvolutionElement:
    """The convolution unit e: 1 on the empty monomial, 0 above."""
    cutoff = degree_cutoff() if cutoff is None else cutoff

    def fn(mono: Monomial):
        return target.one() if not mono else target.zero()

    return ConvolutionElement(target, reg, cutoff, fn)


def convolve(phi1, phi2, x, reg: GeneratorRegistry):
    """(phi1 * phi2)(x) via the coproduct pairing."""
    target = phi1.target
    if getattr(phi2, "target", target) != target:
        raise PreconditionError("convolution needs a shared target algebra")
    if isinstance(x, (str, tuple)):
        x = HopfElement.gen(x) if isinstance(x, str) else HopfElement({x: 1})
    out = target.zero()
    for (left, right), coeff in coproduct(x, reg).terms.items():
        out = target.add(
            out, target.scalar(coeff, target.mul(phi1(left), phi2(right)))
        )
    return out


def convolution_product(phi1, phi2, reg) -> ConvolutionElement:
    target = phi1.target
    cutoff = min(
        getattr(phi1, "cutoff", degree_cutoff()), getattr(phi2, "cutoff", degree_cutoff())
    )
    return ConvolutionElement(
        target, reg, cutoff, lambda mono: convolve(phi1, phi2, mono, reg)
    )


# -- Birkhoff factorization --------------------------------------------------------


def _phi_minus_monomial(char: Character, reg: GeneratorRegistry, mono: Monomial):
    out = char.target.one()
    for name in mono:
        out = char.target.mul(out, _phi_minus_gen(char, reg, name))
    return out


def _phi_minus_gen(char: Character, reg: GeneratorRegistry, name: str):
    if name in char._minus:
        return char._minus[name]
    minus, _ = birkhoff_factorize(char, reg, name)
    return minus


def birkhoff_factorize(char: Character, reg: GeneratorRegistry, name: str):
    """(phi_minus, phi_plus) values on the generator ``name``, memoized."""
    if name in char._minus and name in char._plus:
        return char._minus[name], char._plus[name]
    target = char.target
    arg = char.value(name)
    for (left, right), coeff in reduced_coproduct(
        HopfElement.gen(name), reg
    ).terms.items():
        term = target.mul(_phi_minus_monomial(char, reg, left), char.on_monomial(right))
        arg = target.add(arg, target.scalar(coeff, term))
    polar = target.T(arg)
    minus = target.neg(polar)
    plus = target.sub(arg, polar)
    char._minus[name] = minus
    char._plus[name] = plus
    return minus, plus


def factorize_all(char: Character, reg: GeneratorRegistry) -> tuple[str, ...]:
    """Factorize every registered generator, chasing the sub- and quotient
    generators the coproduct auto-registers; returns the final name list."""
    done: set[str] = set()
    while True:
        names = set(reg.names())
        todo = names - done
        if not todo:
            return tuple(sorted(names))
        for name in sorted(todo):
            birkhoff_factorize(char, reg, name)
        done |= todo


def phi_minus_nonrecursive(char: Character, reg: GeneratorRegistry, name: str):
    """Series form of phi_minus:

        -T(phi(G)) - sum_{n>=1} (-1)^n sum T(phi(G_1)) phi(G_2) ... phi(G_{n+1})

    over iterated reduced coproducts, truncated by grading nilpotence.  Valid
    when the target operator satisfies T^2 = T and T(T(x)y) = T(x)y.
    """
    if not char.target.has_simple_T:
        raise PreconditionError(
            f"non-recursive phi_minus needs a simple-T target, not {char.target.kind}"
        )
    target = char.target
    from .hopf import reduced_coproduct_iterated

    result = target.neg(target.T(char.value(name)))
    degree = reg.degree(name)
    for n in range(1, degree):
        tensor = reduced_coproduct_iterated(HopfElement.gen(name), n, reg)
        if tensor.is_zero():
            break
        sign = Fraction(-1) ** n
        for word, coeff in tensor.terms.items():
            term = target.T(char.on_monomial(word[0]))
            for leg in word[1:]:
                term = target.mul(term, char.on_monomial(leg))
            result = target.sub(result, target.scalar(sign * coeff, term))
    return result


def verify_factorization(
    char: Character,
    minus: Character | dict[str, Any],
    plus: Character | dict[str, Any],
    name: str,
    reg: GeneratorRegistry,
):
    """Check phi = (phi_minus o S) * phi_plus on a generator.

    Returns (ok, defect) with defect = ((phi_minus o S) * phi_plus)(G) - phi(G).
    """
    target = char.target
    minus_char = minus if isinstance(minus, Character) else Character(target, dict(minus))
    plus_char = plus if isinstance(plus, Character) else Character(target, dict(plus))

    total = target.zero()
    for (left, right), coeff in coproduct(HopfElement.gen(name), reg).terms.items():
        s_left = antipode(HopfElement({left: 1}), reg)
        total = target.add(
            total,
            target.scalar(coeff, target.mul(minus_char(s_left), plus_char(right))),
        )
    defect = target.sub(total, char.value(name))
    return target.is_zero(defect), defect


# -- Atkinson fixed points -----------------------------------------------------------


def atkinson_solve(char: Character, reg: GeneratorRegistry, cutoff: int | None = None):
    """Fixed points b_l = e + T(b_l a), b_r = e + (1-T)(a b_r) with a = e - phi,
    solved degree by degree in the truncated convolution algebra.

    Then b_l * phi * b_r = e through the cutoff, and b_l agrees with
    phi_minus.
    """
    cutoff = degree_cutoff() if cutoff is None else cutoff
    if cutoff < 1:
        raise PreconditionError("cutoff must be >= 1")
    target = char.target

    def a_value(mono: Monomial):
        # a = e - phi vanishes on the empty monomial
        if not mono:
            return target.zero()
        return target.neg(char.on_monomial(mono))

    b_l: ConvolutionElement
    b_r: ConvolutionElement

    def bl_fn(mono: Monomial):
        if not mono:
            return target.one()
        # (b_l * a)(mono): the a(1) leg vanishes, so recursion is well founded
        acc = a_value(mono)
        for (left, right), coeff in reduced_coproduct(
            HopfElement({mono: 1}), reg
        ).terms.items():
            acc = target.add(
                acc,
                target.scalar(coeff, target.mul(b_l.on_monomial(left), a_value(right))),
            )
        return target.T(acc)

    def br_fn(mono: Monomial):
        if not mono:
            return target.one()
        acc = a_value(mono)
        for (left, right), coeff in reduced_coproduct(
            HopfElement({mono: 1}), reg
        ).terms.items():
            acc = target.add(
                acc,
                target.scalar(coeff, target.mul(a_value(left), b_r.on_monomial(right))),
            )
        return target.T_complement(acc)

    b_l = ConvolutionElement(target, reg, cutoff, bl_fn)
    b_r = ConvolutionElement(target, reg, cutoff, br_fn)
    return b_l, b_r


def atkinson_closed_form(
    char: Character, reg: GeneratorRegistry, name: str, cutoff: int | None = None
):
    """b_l evaluated through the geometric series e + T(a) * sum_n a^{*n}.

    Needs the simple-T identities; agrees with atkinson_solve's b_l.
    """
    if not char.target.has_simple_T:
        raise PreconditionError(
            f"closed-form solution needs a simple-T target, not {char.target.kind}"
        )
    cutoff = degree_cutoff() if cutoff is None else cutoff
    target = char.target

    def a_char(x):
        # e - phi as a callable on monomials
        if isinstance(x, tuple):
            if not x:
                return target.zero()
            return target.neg(char.on_monomial(x))
        raise PreconditionError("internal: monomial expected")

    class _Map:
        def __init__(self, fn):
            self.target = target
            self.fn = fn

        def __call__(self, x):
            if isinstance(x, tuple):
                return self.fn(x)
            out = target.zero()
            for mono, coeff in x.terms.items():
                out = target.add(out, target.scalar(coeff, self.fn(mono)))
            return out

    a_map = _Map(a_char)
    unit = _Map(lambda m: target.one() if not m else target.zero())

    powers = [unit]
    for _ in range(cutoff):
        prev = powers[-1]
        powers.append(
            _Map(lambda mono, prev=prev: convolve(a_map, prev, mono, reg))
        )

    def series(mono: Monomial):
        out = target.zero()
        for p in powers:
            out = target.add(out, p(mono))
        return out

    series_map = _Map(series)
    t_a = _Map(lambda mono: target.T(a_map(mono)))

    def bl(mono: Monomial):
        head = target.one() if not mono else target.zero()
        return target.add(head, convolve(t_a, series_map, mono, reg))

    return bl((name,))
