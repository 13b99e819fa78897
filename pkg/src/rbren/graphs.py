"""Feynman multigraphs and the combinatorics behind coproducts and graph
polynomials.

Graphs are immutable: a vertex id set, oriented internal edges (id, tail,
head) that may be parallel or self-loops, and external legs carrying exact
rational momentum vectors.  All enumeration below is deterministic in the
declared edge order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .errors import (
    ContextError,
    DisconnectedError,
    MomentumError,
    QuotientError,
    SizeBoundError,
)

VertexId = str | int
EdgeId = str | int

CANONICAL_KEY_EDGE_BOUND = 12
_PERMUTATION_GUARD = 2_000_000


def _sort_ids(ids):
    return tuple(sorted(ids, key=lambda x: (isinstance(x, str), str(x))))


@dataclass(frozen=True)
class FeynmanGraph:
    vertices: tuple[VertexId, ...]
    internal_edges: tuple[tuple[EdgeId, VertexId, VertexId], ...]
    external_edges: tuple[tuple[VertexId, tuple[Fraction, ...]], ...] = ()
    valences: frozenset[int] | None = None

    def __post_init__(self):
        vertices = tuple(self.vertices)
        vset = set(vertices)
        if len(vset) != len(vertices):
            raise ContextError("repeated vertex id")
        edges = []
        seen = set()
        for eid, tail, head in self.internal_edges:
            if eid in seen:
                raise ContextError(f"repeated edge id {eid!r}")
            seen.add(eid)
            if tail not in vset or head not in vset:
                raise ContextError(f"edge {eid!r} has unknown endpoint")
            edges.append((eid, tail, head))
        externals = []
        dim = None
        total = None
        for vertex, momentum in self.external_edges:
            if vertex not in vset:
                raise ContextError(f"external leg at unknown vertex {vertex!r}")
            momentum = tuple(Fraction(q) for q in momentum)
            if dim is None:
                dim = len(momentum)
                total = [Fraction(0)] * dim
            elif len(momentum) != dim:
                raise MomentumError("external momenta have mixed dimensions")
            for i, q in enumerate(momentum):
                total[i] += q
            externals.append((vertex, momentum))
        if total is not None and any(q != 0 for q in total):
            raise MomentumError(f"external momenta do not sum to zero: {total}")
        valences = None if self.valences is None else frozenset(self.valences)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "internal_edges", tuple(edges))
        object.__setattr__(self, "external_edges", tuple(externals))
        object.__setattr__(self, "valences", valences)

    # -- basic queries -------------------------------------------------------

    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(e[0] for e in self.internal_edges)

    def edge(self, eid: EdgeId) -> tuple[EdgeId, VertexId, VertexId]:
        for e in self.internal_edges:
            if e[0] == eid:
                return e
        raise ContextError(f"no internal edge {eid!r}")

    def external_multiplicity(self) -> dict[VertexId, int]:
        counts = {v: 0 for v in self.vertices}
        for v, _ in self.external_edges:
            counts[v] += 1
        return counts

    def vertex_valences(self) -> dict[VertexId, int]:
        """Internal degree (self-loops count twice) plus external legs."""
        val = self.external_multiplicity()
        for _, tail, head in self.internal_edges:
            val[tail] += 1
            val[head] += 1
        return val

    def momentum_dim(self) -> int | None:
        return len(self.external_edges[0][1]) if self.external_edges else None


# -- connectivity -----------------------------------------------------------


def connected_components(g: FeynmanGraph) -> list[frozenset[VertexId]]:
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for _, tail, head in g.internal_edges:
        a, b = find(tail), find(head)
        if a != b:
            parent[a] = b
    groups: dict[VertexId, set[VertexId]] = {}
    for v in g.vertices:
        groups.setdefault(find(v), set()).add(v)
    return [frozenset(s) for s in groups.values()]


def is_connected(g: FeynmanGraph) -> bool:
    return len(connected_components(g)) <= 1


def loop_number(g: FeynmanGraph) -> int:
    return len(g.internal_edges) - len(g.vertices) + len(connected_components(g))


def edge_connectivity(g: FeynmanGraph) -> int | float:
    """Minimum number of internal edges whose removal disconnects g.

    Equals the minimum crossing count over proper vertex bipartitions;
    self-loops never cross.  A graph on fewer than two vertices cannot be
    disconnected, giving math.inf.
    """
    if not is_connected(g):
        raise DisconnectedError("edge connectivity needs a connected graph")
    n = len(g.vertices)
    if n < 2:
        return math.inf
    order = list(g.vertices)
    best = None
    # fix vertex 0 on one side; enumerate the rest
    for bits in range(2 ** (n - 1)):
        side = {order[0]}
        for i in range(1, n):
            if bits & (1 << (i - 1)):
                side.add(order[i])
        if len(side) == n:
            continue
        crossing = sum(
            1 for _, t, h in g.internal_edges if (t in side) != (h in side)
        )
        if best is None or crossing < best:
            best = crossing
    return best


def is_1pi(g: FeynmanGraph) -> bool:
    """One-particle-irreducible: connected and 2-edge-connected."""
    return is_connected(g) and edge_connectivity(g) >= 2


# -- spanning trees and cut sets ---------------------------------------------


def spanning_trees(g: FeynmanGraph) -> list[frozenset[EdgeId]]:
    if not is_connected(g):
        raise DisconnectedError("spanning trees need a connected graph")
    n = len(g.vertices)
    usable = [e for e in g.internal_edges if e[1] != e[2]]
    trees = []
    for combo in itertools.combinations(usable, n - 1):
        parent = {v: v for v in g.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        ok = True
        for _, tail, head in combo:
            a, b = find(tail), find(head)
            if a == b:
                ok = False
                break
            parent[a] = b
        if ok:
            trees.append(frozenset(e[0] for e in combo))
    return sorted(trees, key=lambda t: _sort_ids(t))


def cut_sets(g: FeynmanGraph) -> list[frozenset[EdgeId]]:
    """Deduplicated sets (E \\ T) + {e} over spanning trees T and e in T."""
    all_edges = frozenset(g.edge_ids())
    cuts = set()
    for tree in spanning_trees(g):
        rest = all_edges - tree
        for e in tree:
            cuts.add(rest | {e})
    return sorted(cuts, key=lambda c: (len(c), _sort_ids(c)))


def components_after_removal(
    g: FeynmanGraph, removed: frozenset[EdgeId]
) -> list[frozenset[VertexId]]:
    kept = tuple(e for e in g.internal_edges if e[0] not in removed)
    return connected_components(
        FeynmanGraph(g.vertices, kept, (), g.valences)
    )


# -- subgraphs and quotients --------------------------------------------------


@dataclass(frozen=True)
class SubgraphSpec:
    edges: frozenset[EdgeId]
    vertices: frozenset[VertexId]

    @staticmethod
    def from_edges(g: FeynmanGraph, edges: Iterable[EdgeId]) -> "SubgraphSpec":
        edges = frozenset(edges)
        known = set(g.edge_ids())
        for e in edges:
            if e not in known:
                raise ContextError(f"unknown edge id {e!r}")
        verts = set()
        for eid, tail, head in g.internal_edges:
            if eid in edges:
                verts.add(tail)
                verts.add(head)
        return SubgraphSpec(edges, frozenset(verts))


def subgraph_view(g: FeynmanGraph, spec: SubgraphSpec) -> FeynmanGraph:
    """The subgraph as a standalone graph.

    External legs are the original legs at its vertices plus one leg per cut
    internal edge endpoint; all leg momenta are zeroed (only multiplicities
    matter downstream, for isomorphism keying).
    """
    verts = _sort_ids(spec.vertices)
    edges = tuple(e for e in g.internal_edges if e[0] in spec.edges)
    legs = []
    vset = set(spec.vertices)
    for v, _ in g.external_edges:
        if v in vset:
            legs.append((v, ()))
    for eid, tail, head in g.internal_edges:
        if eid in spec.edges:
            continue
        if tail in vset:
            legs.append((tail, ()))
        if head in vset:
            legs.append((head, ()))
    return FeynmanGraph(verts, edges, tuple(legs), g.valences)


def subgraph_components(g: FeynmanGraph, spec: SubgraphSpec) -> list[SubgraphSpec]:
    view = subgraph_view(g, spec)
    comps = connected_components(view)
    out = []
    for comp in comps:
        edges = frozenset(e[0] for e in view.internal_edges if e[1] in comp)
        out.append(SubgraphSpec(edges, comp))
    return sorted(out, key=lambda s: _sort_ids(s.vertices))


def quotient(g: FeynmanGraph, spec: SubgraphSpec) -> FeynmanGraph:
    """Contract each connected component of the subgraph to a vertex."""
    if spec.edges >= set(g.edge_ids()):
        raise QuotientError("cannot contract the whole graph")
    mapping: dict[VertexId, VertexId] = {v: v for v in g.vertices}
    for comp in subgraph_components(g, spec):
        rep = _sort_ids(comp.vertices)[0]
        for v in comp.vertices:
            mapping[v] = rep
    new_vertices = _sort_ids(set(mapping.values()))
    new_edges = tuple(
        (eid, mapping[tail], mapping[head])
        for eid, tail, head in g.internal_edges
        if eid not in spec.edges
    )
    new_legs = tuple((mapping[v], p) for v, p in g.external_edges)
    return FeynmanGraph(new_vertices, new_edges, new_legs, g.valences)


# -- divergence power counting -------------------------------------------------


def superficial_degree(g: FeynmanGraph, dim: int) -> int:
    """dim * b1 - 2 * (number of internal edges); >= 0 marks divergence."""
    return dim * loop_number(g) - 2 * len(g.internal_edges)


def divergent_subgraphs(
    g: FeynmanGraph,
    dim: int,
    even_only: bool = False,
    degree_fn: Callable[[FeynmanGraph, int], int] | None = None,
) -> list[SubgraphSpec]:
    """Proper non-empty edge subsets whose components are all divergent and
    1PI and whose contraction is again 1PI (respecting the valence set when
    the graph declares one).
    """
    degree_fn = degree_fn or superficial_degree
    ids = g.edge_ids()
    found = []
    for size in range(1, len(ids)):
        if even_only and size % 2 != 0:
            continue
        for combo in itertools.combinations(ids, size):
            spec = SubgraphSpec.from_edges(g, combo)
            if not _spec_is_divergent(g, spec, dim, degree_fn):
                continue
            q = quotient(g, spec)
            if not is_1pi(q):
                continue
            if g.valences is not None and not all(
                val in g.valences for val in q.vertex_valences().values()
            ):
                continue
            found.append(spec)
    return sorted(found, key=lambda s: (len(s.edges), _sort_ids(s.edges)))


def _spec_is_divergent(g, spec, dim, degree_fn) -> bool:
    for comp in subgraph_components(g, spec):
        view = subgraph_view(g, comp)
        if not is_1pi(view):
            return False
        if degree_fn(view, dim) < 0:
            return False
    return True


# -- cycle basis ---------------------------------------------------------------


def cycle_basis_matrix(g: FeynmanGraph) -> list[list[int]]:
    """Signed edge/loop incidence matrix from the first spanning tree.

    Row i corresponds to the i-th internal edge, column k to the fundamental
    cycle of the k-th non-tree edge (in declared edge order).  Entries are
    +1, -1, 0 according to how the edge is traversed in the loop.
    """
    if not is_connected(g):
        raise DisconnectedError("cycle basis needs a connected graph")
    parent = {v: v for v in g.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    tree = []
    chords = []
    for e in g.internal_edges:
        _, tail, head = e
        a, b = find(tail), find(head)
        if a != b:
            parent[a] = b
            tree.append(e)
        else:
            chords.append(e)

    adjacency: dict[VertexId, list[tuple[VertexId, EdgeId, int]]] = {
        v: [] for v in g.vertices
    }
    for eid, tail, head in tree:
        adjacency[tail].append((head, eid, +1))
        adjacency[head].append((tail, eid, -1))

    def tree_path(a: VertexId, b: VertexId) -> list[tuple[EdgeId, int]]:
        """Edges from a to b along the tree with traversal directions."""
        prev: dict[VertexId, tuple[VertexId, EdgeId, int]] = {a: (a, None, 0)}
        stack = [a]
        while stack:
            v = stack.pop()
            if v == b:
                break
            for w, eid, sign in adjacency[v]:
                if w not in prev:
                    prev[w] = (v, eid, sign)
                    stack.append(w)
        path = []
        v = b
        while v != a:
            u, eid, sign = prev[v]
            path.append((eid, sign))
            v = u
        path.reverse()
        return path

    index = {eid: i for i, eid in enumerate(g.edge_ids())}
    n = len(g.internal_edges)
    eta = [[0] * len(chords) for _ in range(n)]
    for k, (eid, tail, head) in enumerate(chords):
        eta[index[eid]][k] = 1
        for tid, sign in tree_path(head, tail):
            eta[index[tid]][k] = sign
    return eta


# -- canonical labeling ---------------------------------------------------------


def canonical_key(g: FeynmanGraph, max_edges: int = CANONICAL_KEY_EDGE_BOUND) -> bytes:
    """Isomorphism-invariant key by exhaustive search over color-preserving
    vertex relabelings (colors are external-leg multiplicities).

    Orientation of internal edges and momentum values are ignored.  Raises
    SizeBoundError beyond the configured bound; name such generators
    explicitly instead of relying on isomorphism collapsing.
    """
    if len(g.internal_edges) > max_edges:
        raise SizeBoundError(
            f"graph has {len(g.internal_edges)} internal edges"
            f" (bound {max_edges}); name generators explicitly"
        )
    ext = g.external_multiplicity()
    degree = {v: 0 for v in g.vertices}
    for _, tail, head in g.internal_edges:
        degree[tail] += 1
        degree[head] += 1
    # refine permutation classes by invariants; only ext counts enter the key
    order = sorted(g.vertices, key=lambda v: (ext[v], degree[v], 0))
    classes: list[list[VertexId]] = []
    for v in order:
        if classes and (ext[classes[-1][0]], degree[classes[-1][0]]) == (
            ext[v],
            degree[v],
        ):
            classes[-1].append(v)
        else:
            classes.append([v])
    total = 1
    for cls in classes:
        total *= math.factorial(len(cls))
        if total > _PERMUTATION_GUARD:
            raise SizeBoundError(
                "too many candidate relabelings; name generators explicitly"
            )
    pairs = [(tail, head) for _, tail, head in g.internal_edges]
    best = None
    for assignment in itertools.product(*[itertools.permutations(c) for c in classes]):
        label: dict[VertexId, int] = {}
        i = 0
        for perm in assignment:
            for v in perm:
                label[v] = i
                i += 1
        edges = sorted(
            (min(label[t], label[h]), max(label[t], label[h])) for t, h in pairs
        )
        if best is None or edges < best:
            best = edges
    colors = tuple(ext[v] for cls in classes for v in cls)
    canon = (len(g.vertices), colors, tuple(best or []))
    return repr(canon).encode()
