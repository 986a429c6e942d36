import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from graphonlab import generators as gen
from graphonlab.errors import BadLengths, BadValue, ParseError
from graphonlab.graphon import (
    StepFunction,
    StepGraphon,
    block_diagonal_graphon,
    block_sum,
    constant_graphon,
    cut_distance_upper,
    cut_norm,
    cut_norm_diff,
    empirical_graphon,
    format_stepgraphon,
    inner_product,
    integral,
    parse_stepgraphon,
    refine_common,
    to_equal_blocks,
)
from graphonlab.linegraph import line_graph

from conftest import brute_cut_norm, random_fraction_lengths


def _random_step(rng, p, signed=False, exact=True):
    lengths = random_fraction_lengths(rng, p)
    bounds = [Fraction(0)]
    for L in lengths:
        bounds.append(bounds[-1] + L)
    vals = [[None] * p for _ in range(p)]
    for i in range(p):
        for j in range(i, p):
            v = Fraction(rng.randint(-8 if signed else 0, 8), 8)
            vals[i][j] = vals[j][i] = v
    if not exact:
        bounds = [float(b) for b in bounds]
        vals = [[float(v) for v in row] for row in vals]
    cls = StepFunction if signed else StepGraphon
    return cls(bounds, vals), lengths, vals


def test_constructors_validate():
    with pytest.raises(BadValue):
        constant_graphon(2)
    with pytest.raises(BadLengths):
        block_diagonal_graphon([Fraction(1, 2), Fraction(1, 3)])
    with pytest.raises(BadValue):
        StepGraphon([Fraction(0), Fraction(1)], [[Fraction(3, 2)]])


def test_cut_norm_matches_bruteforce():
    rng = random.Random(7)
    for trial in range(60):
        p = rng.randint(1, 9)
        w, lengths, vals = _random_step(rng, p, signed=True)
        res = cut_norm(w)
        assert res.exact and not res.lower_bound
        assert abs(float(res.value) - brute_cut_norm(lengths, vals)) < 1e-12
        # The witness realises the value.
        assert abs(block_sum(w, list(res.witness_S), list(res.witness_T))) == res.value


def test_cut_norm_float_inputs():
    rng = random.Random(8)
    for _ in range(10):
        w, lengths, vals = _random_step(rng, rng.randint(2, 8), signed=True, exact=False)
        assert abs(float(cut_norm(w).value) - brute_cut_norm(lengths, vals)) < 1e-12


def test_cut_norm_nonnegative_is_integral():
    rng = random.Random(9)
    for _ in range(10):
        w, _, _ = _random_step(rng, rng.randint(1, 40))
        res = cut_norm(w)
        assert res.value == integral(w) and res.method == "single-sign"


def test_star_line_graph_cut_distance_to_one():
    for m in (2, 3, 7, 30):
        w = empirical_graphon(line_graph(gen.star(m + 1)).graph)
        assert cut_norm_diff(w, constant_graphon(1)).value == Fraction(1, m)


def test_refinement_invariance():
    rng = random.Random(11)
    for _ in range(15):
        w1, _, _ = _random_step(rng, rng.randint(1, 6))
        w2, _, _ = _random_step(rng, rng.randint(1, 6))
        r1, r2 = refine_common(w1, w2)
        assert list(r1.boundaries) == list(r2.boundaries)
        assert integral(r1) == integral(w1) and integral(r2) == integral(w2)
        assert cut_norm(r1).value == cut_norm(w1).value
        assert inner_product(w1, w2) == inner_product(r1, r2)


def test_inner_products():
    u = constant_graphon(1)
    assert inner_product(constant_graphon(0), u) == 0
    assert inner_product(block_diagonal_graphon([Fraction(1, 2)] * 2), u) == Fraction(1, 2)


def test_cut_distance_permutation_invariance():
    w = StepGraphon([Fraction(i, 4) for i in range(5)],
                    [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]])
    perm = [2, 0, 3, 1]
    res = cut_distance_upper(w, w.permuted(perm))
    assert res.value == 0


def test_cut_distance_constant_is_exact():
    bd = block_diagonal_graphon([Fraction(1, 2)] * 2)
    res = cut_distance_upper(bd, constant_graphon(1))
    assert res.value == Fraction(1, 2) and not res.upper_bound


def test_cut_distance_is_bounded_by_identity_alignment():
    rng = random.Random(5)
    for _ in range(5):
        q = rng.randint(2, 12)
        vals = lambda: [[Fraction(rng.randint(0, 4), 4) for _ in range(q)] for _ in range(q)]
        bounds = [Fraction(i, q) for i in range(q + 1)]
        va, vb = vals(), vals()
        a = StepGraphon(bounds, np.triu(va) + np.triu(va, 1).T)
        b = StepGraphon(bounds, np.triu(vb) + np.triu(vb, 1).T)
        ea, eb = refine_common(a, b)
        res = cut_distance_upper(a, b)
        assert float(res.value) <= float(cut_norm(ea - eb).value) + 1e-12


def test_to_equal_blocks_preserves_integral():
    w = StepGraphon([Fraction(0), Fraction(1, 3), Fraction(1)], [[1, 0], [0, Fraction(1, 2)]])
    e = to_equal_blocks(w, 6)
    assert e.p == 6 and integral(e) == integral(w)


def test_stepgraphon_round_trip():
    w = StepGraphon([Fraction(0), Fraction(1, 4), Fraction(1)],
                    [[Fraction(1, 2), 0], [0, Fraction(3, 8)]])
    assert parse_stepgraphon(format_stepgraphon(w)) == w
    bd = block_diagonal_graphon([Fraction(1, 5)] * 5)
    assert parse_stepgraphon(format_stepgraphon(bd)) == bd


def test_stepgraphon_parse_errors():
    with pytest.raises(ParseError):
        parse_stepgraphon("graphonlab-stepgraphon v1\np 2\nequal\n1 0\n1 1\n")
    with pytest.raises(ParseError):
        parse_stepgraphon("graphonlab-stepgraphon v1\np 1\nequal\nzz\n")
