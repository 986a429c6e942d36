from fractions import Fraction

import pytest

from graphonlab import generators as gen
from graphonlab.errors import PatternTooLarge
from graphonlab.graph import build_graph
from graphonlab.graphon import StepGraphon, block_diagonal_graphon, constant_graphon, empirical_graphon
from graphonlab.homomorphism import (
    CHERRY,
    EDGE,
    TRIANGLE,
    PatternGraph,
    hom_count,
    hom_density_graph,
    hom_density_graphon,
    line_edge_density_via_root,
    pattern_by_name,
)
from graphonlab.linegraph import line_graph

from conftest import brute_hom_count, random_graph

EXTRA_PATTERNS = [
    build_graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)]),        # C4
    build_graph(4, [(0, 1), (0, 2), (0, 3)]),                # claw
    build_graph(4, [(0, 1), (2, 3)]),                        # two disjoint edges
    build_graph(3, [(0, 1)]),                                # edge plus isolated vertex
    build_graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]),        # paw
]


def test_hom_count_matches_all_maps(pyrng):
    patterns = [EDGE.graph, CHERRY.graph, TRIANGLE.graph, *EXTRA_PATTERNS]
    for _ in range(25):
        g = random_graph(pyrng, 7)
        for f in patterns:
            assert hom_count(f, g) == brute_hom_count(f, g)


def test_known_counts():
    assert hom_count(TRIANGLE, gen.complete(3)) == 6
    assert hom_count(CHERRY, gen.cycle(4)) == 16
    assert hom_count(EDGE, gen.complete(5)) == 20
    assert hom_count(TRIANGLE, gen.complete(30)) == 30 * 29 * 28


def test_edge_density_identity(pyrng):
    for _ in range(30):
        g = random_graph(pyrng, 20)
        if g.m < 2:
            continue
        assert line_edge_density_via_root(g) == hom_density_graph(EDGE, line_graph(g).graph)


def test_graphon_density_matches_graph(pyrng):
    for _ in range(20):
        g = random_graph(pyrng, 9)
        w = empirical_graphon(g)
        for f in (EDGE, CHERRY, TRIANGLE):
            assert hom_density_graphon(f, w) == hom_density_graph(f, g)


def test_graphon_density_analytic():
    assert hom_density_graphon(TRIANGLE, constant_graphon(Fraction(1, 2))) == Fraction(1, 8)
    # t(F, blockdiag(1/2,1/2)) for connected F is 2 * (1/2)^v.
    bd = block_diagonal_graphon([Fraction(1, 2), Fraction(1, 2)])
    assert hom_density_graphon(TRIANGLE, bd) == Fraction(1, 4)
    assert hom_density_graphon(CHERRY, bd) == Fraction(1, 4)
    w = StepGraphon([Fraction(0), Fraction(1, 3), Fraction(1)], [[1, 0], [0, 0]])
    assert hom_density_graphon(EDGE, w) == Fraction(1, 9)


def test_pattern_cap_and_names():
    with pytest.raises(PatternTooLarge):
        PatternGraph(gen.path(9), "p9")
    assert pattern_by_name("triangle") is TRIANGLE
