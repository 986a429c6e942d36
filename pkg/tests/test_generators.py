import numpy as np
import pytest

from graphonlab import generators as gen
from graphonlab.errors import DegenerateGraph, InfeasibleRegular, PreconditionViolated
from graphonlab.graph import connected_components, degree_stats
from graphonlab.graphon import block_diagonal_graphon, constant_graphon


def test_star_path_cycle_complete_shapes():
    s = gen.star(6)
    assert (s.n, s.m, s.degrees[0]) == (6, 5, 5)
    p = gen.path(7)
    assert p.m == 6 and sorted(p.degrees.tolist()) == [1, 1] + [2] * 5
    c = gen.cycle(7)
    assert c.m == 7 and set(c.degrees.tolist()) == {2}
    k = gen.complete(6)
    assert k.m == 15 and set(k.degrees.tolist()) == {5}
    with pytest.raises(DegenerateGraph):
        gen.cycle(2)


@pytest.mark.parametrize("n,r", [(8, 2), (8, 3), (9, 4), (10, 5), (12, 0), (12, 11)])
def test_circulant_regular_is_regular(n, r):
    g = gen.circulant_regular(n, r)
    assert set(g.degrees.tolist()) == {r}
    assert g.m == n * r // 2


def test_circulant_regular_infeasible():
    with pytest.raises(InfeasibleRegular):
        gen.circulant_regular(5, 3)
    with pytest.raises(InfeasibleRegular):
        gen.circulant_regular(5, 5)


def test_disjoint_stars_layout():
    spec = gen.StarSequenceSpec((1, 2, 3), 4)
    assert spec.star_sizes == (5, 9, 13)
    g = gen.disjoint_stars(spec)
    assert g.n == 27 and g.m == 24
    k, _ = connected_components(g)
    assert k == 3
    assert g.degrees[[0, 5, 14]].tolist() == [4, 8, 12]
    with pytest.raises(PreconditionViolated):
        gen.StarSequenceSpec((), 1)


def test_erdos_renyi_seeded_and_streamed():
    a = gen.erdos_renyi(60, 0.3, seed=5)
    b = gen.erdos_renyi(60, 0.3, seed=5)
    c = gen.erdos_renyi(60, 0.3, seed=5, stream=1)
    assert a == b and a != c
    assert gen.erdos_renyi(30, 0.0).m == 0
    assert gen.erdos_renyi(30, 1.0).m == 435


def test_erdos_renyi_edge_rate():
    g = gen.erdos_renyi(400, 0.25, seed=1)
    pairs = 400 * 399 / 2
    assert abs(g.m / pairs - 0.25) < 4 * np.sqrt(0.25 * 0.75 / pairs)


def test_w_random_extremes_and_blocks():
    assert gen.w_random(20, constant_graphon(1), seed=0).m == 190
    assert gen.w_random(20, constant_graphon(0), seed=0).m == 0
    g = gen.w_random(200, block_diagonal_graphon([0.5, 0.5]), seed=3)
    k, _ = connected_components(g)
    assert k == 2
    assert gen.w_random(50, constant_graphon(0.5), seed=9) == gen.w_random(50, constant_graphon(0.5), seed=9)


def test_preferential_attachment_growth():
    g = gen.preferential_attachment(gen.PASpec(3, 2, 100, 1.0, seed=4))
    assert g.n == 103 and g.m == 3 + 200
    assert degree_stats(g).sum == 2 * g.m
    k, _ = connected_components(g)
    assert k == 1


def test_preferential_attachment_condensation():
    g = gen.preferential_attachment(gen.PASpec(3, 1, 1997, 3.0, seed=1))
    assert g.degrees.max() / g.n > 0.9


def test_pa_spec_validation():
    with pytest.raises(PreconditionViolated):
        gen.PASpec(2, 1, 10, 1.0)
    with pytest.raises(PreconditionViolated):
        gen.PASpec(3, 1, 10, 0.0)
