from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from graphonlab.diagnostics import measure
from graphonlab.graph import build_graph, degree_stats, format_edgelist, parse_edgelist, relabel
from graphonlab.graphon import StepFunction, cut_norm, empirical_graphon
from graphonlab.homomorphism import CHERRY, EDGE, TRIANGLE, hom_count
from graphonlab.linegraph import line_density_closed_form, line_graph


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(2, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), max_size=len(pairs))) if pairs else []
    return build_graph(n, chosen)


@st.composite
def step_functions(draw, max_p=7):
    p = draw(st.integers(1, max_p))
    raw = draw(st.lists(st.integers(1, 6), min_size=p, max_size=p))
    total = sum(raw)
    bounds = [Fraction(0)]
    for r in raw:
        bounds.append(bounds[-1] + Fraction(r, total))
    vals = np.empty((p, p), dtype=object)
    for i in range(p):
        for j in range(i, p):
            vals[i, j] = vals[j, i] = Fraction(draw(st.integers(-4, 4)), 4)
    return StepFunction(bounds, vals)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_handshake_and_line_counts(g):
    st_ = degree_stats(g)
    assert st_.sum == 2 * g.m
    if g.m:
        h = line_graph(g).graph
        assert h.n == g.m
        assert h.m == st_.sum_squares // 2 - g.m


@settings(max_examples=60, deadline=None)
@given(graphs(), st.randoms())
def test_relabel_invariance(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = relabel(g, perm)
    for f in (EDGE, CHERRY, TRIANGLE):
        assert hom_count(f, g) == hom_count(f, h)
    if g.m >= 2:
        assert line_density_closed_form(g) == line_density_closed_form(h)


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_edgelist_round_trip(g):
    assert parse_edgelist(format_edgelist(g))[0] == g


@settings(max_examples=40, deadline=None)
@given(step_functions(), step_functions())
def test_cut_norm_is_a_seminorm(w1, w2):
    a, b = cut_norm(w1).value, cut_norm(w2).value
    assert a >= 0
    assert cut_norm(w1 - w2).value <= a + b
    assert cut_norm(w1 - w1).value == 0


@settings(max_examples=40, deadline=None)
@given(graphs())
def test_sq_ratio_bounded(g):
    if g.m >= 1:
        r = measure(g)
        assert r.sq_ratio <= Fraction(g.m + 1, 4 * g.m)


@settings(max_examples=30, deadline=None)
@given(graphs(max_n=8))
def test_empirical_cut_norm_of_graph_is_density(g):
    assert cut_norm(empirical_graphon(g)).value == Fraction(2 * g.m, g.n * g.n)
