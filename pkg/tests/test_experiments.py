import pytest

from graphonlab import experiments as ex
from graphonlab import generators as gen
from graphonlab.errors import CapExceeded, PreconditionViolated
from graphonlab.graph import build_graph
from graphonlab.homomorphism import TRIANGLE, hom_count

from conftest import random_graph


def test_triangle_density_matches_hom_count(pyrng):
    for _ in range(20):
        g = random_graph(pyrng, 18)
        assert ex.triangle_density(g) == hom_count(TRIANGLE, g) / g.n**3


def test_degree_cosine():
    k = gen.complete(10)
    assert ex.degree_cosine(k, k) == 1.0
    assert ex.degree_histogram_cosine(k, gen.path(10)) == 0.0
    assert 0 < ex.degree_cosine(gen.star(10), gen.path(10)) < 1


def test_null_graph_metrics():
    m = ex.graph_metrics(build_graph(0, []), gen.complete(4))
    assert m["edge_density"] == 0 and m["triangle_density"] == 0 and m["cosine_sim"] == 0


def test_star_replicate_reference_is_line_graph():
    rec = ex.star_replicate(2, 10, seed=0)
    h = rec.metrics["H"]
    assert (h["n"], h["m"]) == (18, 2 * 36)
    assert h["cosine_sim"] == 1.0


def test_run_stars_caps():
    with pytest.raises(CapExceeded):
        ex.run_stars([5], 401, [0])
    with pytest.raises(PreconditionViolated):
        ex.run_stars([6], 10, [0])


def test_run_pa_table_shape():
    out = ex.run_pa([3.0], [200, 400], replicates=4, seed=2)
    assert [r["n"] for r in out["table"]] == [200, 400]
    assert len(out["rows"]) == 8
    assert out["sequences"][0]["report"]["verdicts"]["sq_class"] in ("holds", "indeterminate")


def test_run_er_table():
    out = ex.run_er([50, 200], 0.5, [0.1], 0.5, replicates=5, seed=3)
    by_n = {r["n"]: r for r in out["table"]}
    assert by_n[50]["bound"] is None
    assert by_n[200]["bound"] is not None and by_n[200]["consistent"]


def test_clopper_pearson_edges():
    lo, hi = ex.clopper_pearson(0, 50)
    assert lo == 0 and 0.05 < hi < 0.08
    lo, hi = ex.clopper_pearson(50, 50)
    assert hi == 1 and 0.92 < lo < 0.95
