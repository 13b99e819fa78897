"""Shared graph library used across the suite.

All momenta live in D = 4 with conserved totals.  Leg counts are chosen so
that sub- and quotient graphs of the nested examples resolve, via canonical
keys, to the named generators here (e.g. both bubbles inside gamma2 carry
two legs per vertex, matching the registered bubble).
"""

from fractions import Fraction as F

import pytest

from rbren import FeynmanGraph, GeneratorRegistry

P1 = (F(1), F(0), F(0), F(0))
P2 = (F(0), F(1), F(0), F(0))


def _neg(p):
    return tuple(-q for q in p)


def bubble_graph() -> FeynmanGraph:
    """One loop, two parallel edges, two legs at each end."""
    return FeynmanGraph(
        ("a", "b"),
        (("e1", "a", "b"), ("e2", "a", "b")),
        (("a", P1), ("a", P2), ("b", _neg(P1)), ("b", _neg(P2))),
    )


def sunset_graph() -> FeynmanGraph:
    return FeynmanGraph(
        ("u", "v"),
        (("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")),
        (("u", P1), ("v", _neg(P1))),
    )


def triangle_graph() -> FeynmanGraph:
    return FeynmanGraph(
        ("a", "b", "c"),
        (("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")),
        (("a", P1), ("b", P2), ("c", _neg(tuple(p + q for p, q in zip(P1, P2))))),
    )


def gamma2_graph() -> FeynmanGraph:
    """Nested double bubble: double edges u-v and v-w, two legs at u and w."""
    return FeynmanGraph(
        ("u", "v", "w"),
        (("e1", "u", "v"), ("e2", "u", "v"), ("e3", "v", "w"), ("e4", "v", "w")),
        (("u", P1), ("u", P2), ("w", _neg(P1)), ("w", _neg(P2))),
    )


def gamma3_chain_graph() -> FeynmanGraph:
    """Chain of three bubbles (3 loops)."""
    return FeynmanGraph(
        ("u", "v", "w", "x"),
        (
            ("e1", "u", "v"),
            ("e2", "u", "v"),
            ("e3", "v", "w"),
            ("e4", "v", "w"),
            ("e5", "w", "x"),
            ("e6", "w", "x"),
        ),
        (("u", P1), ("u", P2), ("x", _neg(P1)), ("x", _neg(P2))),
    )


def banana4_graph() -> FeynmanGraph:
    """Four parallel edges (3 loops)."""
    return FeynmanGraph(
        ("u", "v"),
        tuple((f"e{i}", "u", "v") for i in range(1, 5)),
        (("u", P1), ("v", _neg(P1))),
    )


def tadpole_graph() -> FeynmanGraph:
    """One vertex with a self-loop; arises as sunset/bubble."""
    return FeynmanGraph(
        ("z",), (("s1", "z", "z"),), (("z", P1), ("z", _neg(P1)))
    )


def single_edge_graph() -> FeynmanGraph:
    return FeynmanGraph(
        ("a", "b"), (("e1", "a", "b"),), (("a", P1), ("b", _neg(P1)))
    )


def bridged_triangles_graph() -> FeynmanGraph:
    """Two triangles joined by one bridge edge."""
    edges = (
        ("t1", "a", "b"),
        ("t2", "b", "c"),
        ("t3", "c", "a"),
        ("br", "c", "d"),
        ("s1", "d", "e"),
        ("s2", "e", "f"),
        ("s3", "f", "d"),
    )
    return FeynmanGraph(("a", "b", "c", "d", "e", "f"), edges, ())


@pytest.fixture
def bubble():
    return bubble_graph()


@pytest.fixture
def sunset():
    return sunset_graph()


@pytest.fixture
def triangle():
    return triangle_graph()


@pytest.fixture
def gamma2():
    return gamma2_graph()


@pytest.fixture
def gamma3():
    return gamma3_chain_graph()


@pytest.fixture
def banana4():
    return banana4_graph()


@pytest.fixture
def library_registry() -> GeneratorRegistry:
    """Six explicit generators up to three loops, plus the tadpole that
    closes the sunset coproduct."""
    reg = GeneratorRegistry(dim=4)
    reg.register("B", bubble_graph())
    reg.register("sunset", sunset_graph())
    reg.register("triangle", triangle_graph())
    reg.register("Gamma2", gamma2_graph())
    reg.register("Gamma3", gamma3_chain_graph())
    reg.register("banana4", banana4_graph())
    reg.register("tadpole", tadpole_graph())
    return reg
