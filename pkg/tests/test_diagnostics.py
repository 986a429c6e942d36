import math
from fractions import Fraction

import pytest

from graphonlab import generators as gen
from graphonlab.diagnostics import (
    SequenceRecord,
    classify,
    er_density_tail_bound,
    er_density_tail_terms,
    er_min_n,
    measure,
)
from graphonlab.errors import EmptyInput, PreconditionViolated
from graphonlab.graph import degree_stats
from graphonlab.linegraph import line_density_closed_form

from conftest import random_graph

# Evaluated with mpmath at 40 significant digits, independently of the library.
ER_BOUND_N400 = 7.054104826348831088e-08


def _rec(n, density_t, sq, line):
    f = Fraction
    return SequenceRecord(n, 1, f(density_t), f(density_t), None if sq is None else f(sq),
                          None if line is None else f(line), f(0))


def test_measure_identities(pyrng):
    for _ in range(30):
        g = random_graph(pyrng, 20)
        if g.n < 2 or g.m < 2:
            continue
        r = measure(g)
        st = degree_stats(g)
        assert r.sq_ratio * (2 * g.m) ** 2 == st.sum_squares
        assert r.line_density == line_density_closed_form(g)
        assert r.density_t == Fraction(2 * g.m, g.n**2)


def test_classify_families():
    stars = [measure(gen.star(n)) for n in (200, 400, 800, 1600, 2000)]
    v = classify(stars).verdicts
    assert (v["density_class"], v["sq_class"], v["line_density_class"]) == ("sparse", "holds", "dense")
    paths = [measure(gen.path(n)) for n in (200, 400, 800, 1600, 2000)]
    v = classify(paths).verdicts
    assert (v["density_class"], v["sq_class"], v["line_density_class"]) == ("sparse", "fails", "sparse")
    kn = [measure(gen.complete(n)) for n in (400, 500, 600, 700, 800)]
    v = classify(kn).verdicts
    assert (v["density_class"], v["sq_class"], v["line_density_class"]) == ("dense", "fails", "sparse")
    assert v["sq_line_consistent"] and v["sq_implies_sparse"]


def test_classify_oscillation_is_indeterminate():
    recs = [_rec(10 * (i + 1), 0.5 if i % 2 else 0.001, 0.5, 0.5) for i in range(6)]
    assert classify(recs).verdicts["density_class"] == "indeterminate"
    recs = [_rec(10, 0.5, None, None)]
    v = classify(recs, tail_window=1).verdicts
    assert v["sq_class"] == "indeterminate"


def test_classify_preconditions():
    with pytest.raises(EmptyInput):
        classify([])
    recs = [_rec(10, 0.5, 0.5, 0.5), _rec(5, 0.5, 0.5, 0.5)]
    with pytest.raises(PreconditionViolated):
        classify(recs, tail_window=2)
    with pytest.raises(PreconditionViolated):
        classify(recs[:1], tail_window=2)


def test_er_bound_golden_value():
    assert abs(er_density_tail_bound(400, 0.5, 0.1, 0.5) - ER_BOUND_N400) < 1e-12


def test_er_bound_matches_direct_formula():
    for n in (161, 200, 400, 1000, 5000):
        for p in (0.1, 0.5, 0.9):
            c, a = 0.1, 0.5
            beta = math.sqrt(c * n) * (1 - a) / 2 - 1
            direct = [math.exp(-a * a * p * n * (n - 1) / 4),
                      n * math.exp(-beta * beta * p * (n - 1) / 3),
                      math.exp(-a * a * p * n * (n - 1) / 6)]
            terms = er_density_tail_terms(n, p, c, a)
            for x, y in zip(terms, direct):
                assert math.isclose(x, y, rel_tol=1e-12, abs_tol=1e-300)


def test_er_bound_precondition():
    assert er_min_n(0.1, 0.5) == 161
    with pytest.raises(PreconditionViolated):
        er_density_tail_bound(100, 0.5, 0.1, 0.5)
    with pytest.raises(PreconditionViolated):
        er_density_tail_bound(160, 0.5, 0.1, 0.5)
    er_density_tail_bound(161, 0.5, 0.1, 0.5)


def test_er_bound_monotone_scan():
    values = [er_density_tail_bound(n, 0.5, 0.1, 0.5) for n in range(161, 10_001)]
    assert all(0 <= v <= 3 for v in values)
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-100
