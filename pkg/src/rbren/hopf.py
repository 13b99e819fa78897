"""Free commutative Hopf algebra on 1PI graph generators.

Monomials are sorted tuples of generator names; elements and tensors are
sparse Fraction-coefficient dicts.  The coproduct sums over divergent
subgraphs gamma with gamma (x) G/gamma, extended multiplicatively; the
antipode is the usual graded recursion.  Sub- and quotient graphs are
identified with registered generators through canonical graph keys, with
unknown ones auto-registered.

Values are immutable and the registry is append-only, so sharing across
threads is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Mapping

from .errors import PreconditionError, UnknownGeneratorError
from .graphs import (
    FeynmanGraph,
    canonical_key,
    divergent_subgraphs,
    is_1pi,
    loop_number,
    quotient,
    subgraph_components,
    subgraph_view,
)

Monomial = tuple[str, ...]


def _mk_hopf(terms: dict) -> "HopfElement":
    x = object.__new__(HopfElement)
    object.__setattr__(x, "terms", dict(sorted((m, c) for m, c in terms.items() if c)))
    return x


@dataclass(frozen=True)
class HopfElement:
    terms: Mapping[Monomial, Fraction]

    def __post_init__(self):
        fixed = {}
        for mono, coeff in self.terms.items():
            mono = tuple(sorted(mono))
            coeff = Fraction(coeff)
            if coeff:
                fixed[mono] = fixed.get(mono, Fraction(0)) + coeff
        object.__setattr__(
            self, "terms", dict(sorted((m, c) for m, c in fixed.items() if c))
        )

    @staticmethod
    def zero() -> "HopfElement":
        return _mk_hopf({})

    @staticmethod
    def unit(coeff=1) -> "HopfElement":
        return _mk_hopf({(): Fraction(coeff)} if Fraction(coeff) else {})

    @staticmethod
    def gen(name: str, coeff=1) -> "HopfElement":
        return HopfElement({(name,): Fraction(coeff)})

    @staticmethod
    def mono(names, coeff=1) -> "HopfElement":
        return HopfElement({tuple(sorted(names)): Fraction(coeff)})

    def __add__(self, other):
        if isinstance(other, Rational):
            other = HopfElement.unit(other)
        if not isinstance(other, HopfElement):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return _mk_hopf(out)

    __radd__ = __add__

    def __neg__(self):
        return _mk_hopf({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, Rational):
            return self + (-Fraction(other))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return _mk_hopf({m: c * q for m, c in self.terms.items()})
        if not isinstance(other, HopfElement):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(sorted(m1 + m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return _mk_hopf(out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def generators(self) -> set[str]:
        return {name for mono in self.terms for name in mono}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, coeff in self.terms.items():
            body = "*".join(mono) if mono else "1"
            parts.append(f"{coeff}*{body}" if body != "1" else str(coeff))
        return " + ".join(parts)


def counit(x: HopfElement) -> Fraction:
    """Coefficient of the empty monomial."""
    return x.terms.get((), Fraction(0))


def _mk_tensor(legs: int, terms: dict) -> "TensorElement":
    x = object.__new__(TensorElement)
    object.__setattr__(x, "legs", legs)
    object.__setattr__(x, "terms", dict(sorted((w, c) for w, c in terms.items() if c)))
    return x


@dataclass(frozen=True)
class TensorElement:
    """Element of the ``legs``-fold tensor power of the Hopf algebra."""

    legs: int
    terms: Mapping[tuple[Monomial, ...], Fraction]

    def __post_init__(self):
        fixed = {}
        for word, coeff in self.terms.items():
            word = tuple(tuple(sorted(m)) for m in word)
            if len(word) != self.legs:
                raise PreconditionError("tensor word has wrong number of legs")
            coeff = Fraction(coeff)
            if coeff:
                fixed[word] = fixed.get(word, Fraction(0)) + coeff
        object.__setattr__(
            self, "terms", dict(sorted((w, c) for w, c in fixed.items() if c))
        )

    @staticmethod
    def zero(legs: int = 2) -> "TensorElement":
        return _mk_tensor(legs, {})

    @staticmethod
    def word(monomials, coeff=1) -> "TensorElement":
        word = tuple(tuple(sorted(m)) for m in monomials)
        return TensorElement(len(word), {word: Fraction(coeff)})

    def __add__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.legs != other.legs:
            raise PreconditionError("tensor leg counts differ")
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return _mk_tensor(self.legs, out)

    def __neg__(self):
        return _mk_tensor(self.legs, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Rational):
            q = Fraction(other)
            return _mk_tensor(self.legs, {w: c * q for w, c in self.terms.items()})
        if not isinstance(other, TensorElement):
            return NotImplemented
        if self.legs != other.legs:
            raise PreconditionError("tensor leg counts differ")
        out: dict[tuple[Monomial, ...], Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(tuple(sorted(a + b)) for a, b in zip(w1, w2))
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return _mk_tensor(self.legs, out)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, coeff in self.terms.items():
            body = " (x) ".join("*".join(m) if m else "1" for m in word)
            parts.append(f"{coeff}*[{body}]")
        return " + ".join(parts)


# ---------------------------------------------------------------------------


class GeneratorRegistry:
    """Named 1PI graph generators with canonical-key identification.

    ``dim`` is the spacetime dimension used for power counting, ``even_only``
    restricts generators and coproduct subgraphs to an even number of
    internal edges, and ``grading`` selects loop-number or edge-count degree.
    A custom divergence degree can be supplied via ``degree_fn``.

    Sub- and quotient graphs the coproduct encounters are auto-registered
    under reserved names ``!g1, !g2, ...``; registering an isomorphic graph
    explicitly afterwards promotes the explicit name.
    """

    def __init__(
        self,
        dim: int = 4,
        even_only: bool = False,
        grading: str = "loops",
        degree_fn: Callable[[FeynmanGraph, int], int] | None = None,
    ):
        if grading not in ("loops", "edges"):
            raise PreconditionError("grading must be 'loops' or 'edges'")
        self.dim = dim
        self.even_only = even_only
        self.grading = grading
        self.degree_fn = degree_fn
        self._graphs: dict[str, FeynmanGraph] = {}
        self._primary: dict[bytes, str] = {}
        self._aliases: dict[str, str] = {}
        self._auto = 0
        self._coproduct_cache: dict[str, TensorElement] = {}
        self._antipode_cache: dict[str, HopfElement] = {}

    # -- registration ------------------------------------------------------

    def register(self, name: str, graph: FeynmanGraph) -> str:
        """Register a generator; returns the primary name for its class.

        An explicit registration of a graph isomorphic to an auto-registered
        one takes over as the primary name.
        """
        if not is_1pi(graph):
            raise PreconditionError(f"generator {name!r} is not 1PI")
        if self.even_only and len(graph.internal_edges) % 2 != 0:
            raise PreconditionError(
                f"generator {name!r} has an odd number of internal edges"
            )
        key = canonical_key(graph)
        if name in self._graphs and canonical_key(self._graphs[name]) != key:
            raise PreconditionError(f"name {name!r} already bound to another graph")
        existing = self._primary.get(key)
        if existing is not None:
            if name != existing and not name.startswith("!"):
                if existing.startswith("!"):
                    # explicit name supersedes the auto-generated one; cached
                    # structure maps embed names, so drop them
                    self._graphs[name] = graph
                    self._primary[key] = name
                    self._aliases[existing] = name
                    self._coproduct_cache.clear()
                    self._antipode_cache.clear()
                    return name
                self._aliases[name] = existing
            return self._primary[key]
        self._graphs[name] = graph
        self._primary[key] = name
        return name

    def resolve(self, graph: FeynmanGraph) -> str:
        """Primary name for the isomorphism class, auto-registering new ones."""
        key = canonical_key(graph)
        name = self._primary.get(key)
        if name is not None:
            return name
        self._auto += 1
        return self.register(f"!g{self._auto}", graph)

    def graph(self, name: str) -> FeynmanGraph:
        name = self._aliases.get(name, name)
        if name not in self._graphs:
            raise UnknownGeneratorError(f"unregistered generator {name!r}")
        return self._graphs[name]

    def names(self) -> tuple[str, ...]:
        return tuple(sorted(n for n in self._graphs if n not in self._aliases))

    def degree(self, item) -> int:
        """Degree of a generator name or monomial (sum over factors)."""
        if isinstance(item, tuple):
            return sum(self.degree(name) for name in item)
        g = self.graph(item)
        if self.grading == "loops":
            return loop_number(g)
        return len(g.internal_edges)

    # -- structure maps ------------------------------------------------------

    def coproduct_gen(self, name: str) -> TensorElement:
        name = self._aliases.get(name, name)
        cached = self._coproduct_cache.get(name)
        if cached is not None:
            return cached
        g = self.graph(name)
        terms: dict[tuple[Monomial, Monomial], Fraction] = {
            ((name,), ()): Fraction(1),
            ((), (name,)): Fraction(1),
        }
        for spec in divergent_subgraphs(
            g, self.dim, even_only=self.even_only, degree_fn=self.degree_fn
        ):
            left = tuple(
                sorted(
                    self.resolve(subgraph_view(g, comp))
                    for comp in subgraph_components(g, spec)
                )
            )
            right = (self.resolve(quotient(g, spec)),)
            key = (left, right)
            terms[key] = terms.get(key, Fraction(0)) + 1
        result = _mk_tensor(2, terms)
        self._coproduct_cache[name] = result
        return result


def coproduct(x: HopfElement, reg: GeneratorRegistry) -> TensorElement:
    """Algebra-homomorphism extension of the generator coproduct."""
    total = TensorElement.zero(2)
    for mono, coeff in x.terms.items():
        part = TensorElement.word(((), ()), 1)
        for name in mono:
            part = part * reg.coproduct_gen(name)
        total = total + coeff * part
    return total


def reduced_coproduct(x: HopfElement, reg: GeneratorRegistry) -> TensorElement:
    """Delta(x) - x(x)1 - 1(x)x + counit(x) 1(x)1 (zero on the unit)."""
    full = coproduct(x, reg)
    corr: dict[tuple[Monomial, Monomial], Fraction] = {}
    for mono, coeff in x.terms.items():
        for word in (((mono), ()), ((), mono)):
            corr[word] = corr.get(word, Fraction(0)) - coeff
    eps = counit(x)
    if eps:
        corr[((), ())] = corr.get(((), ()), Fraction(0)) + eps
    return full + TensorElement(2, corr)


def reduced_coproduct_iterated(
    x: HopfElement, n: int, reg: GeneratorRegistry
) -> TensorElement:
    """n applications of the reduced coproduct; an (n+1)-leg tensor.

    Vanishes on a degree-d generator once n >= d.
    """
    if n < 1:
        raise PreconditionError("need n >= 1")
    current = reduced_coproduct(x, reg)
    for _ in range(n - 1):
        out: dict[tuple[Monomial, ...], Fraction] = {}
        for word, coeff in current.terms.items():
            last = HopfElement({word[-1]: 1})
            expanded = reduced_coproduct(last, reg)
            for (a, b), c in expanded.terms.items():
                key = word[:-1] + (a, b)
                out[key] = out.get(key, Fraction(0)) + coeff * c
        current = _mk_tensor(current.legs + 1, out)
    return current


def antipode(x: HopfElement, reg: GeneratorRegistry) -> HopfElement:
    total = HopfElement.zero()
    for mono, coeff in x.terms.items():
        part = HopfElement.unit(1)
        for name in mono:
            part = part * _antipode_gen(name, reg)
        total = total + coeff * part
    return total


def _antipode_gen(name: str, reg: GeneratorRegistry) -> HopfElement:
    name = reg._aliases.get(name, name)
    cached = reg._antipode_cache.get(name)
    if cached is not None:
        return cached
    result = HopfElement.gen(name, -1)
    for (left, right), coeff in reduced_coproduct(HopfElement.gen(name), reg).terms.items():
        s_left = antipode(HopfElement({left: 1}), reg)
        result = result - coeff * (s_left * HopfElement({right: 1}))
    reg._antipode_cache[name] = result
    return result
