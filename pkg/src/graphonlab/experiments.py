"""Seeded experiments: star line graphs, superlinear PA, Erdos-Renyi line density."""

from __future__ import annotations

import math
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import beta as beta_dist

from .diagnostics import (
    DEFAULT_EPS_DENSITY,
    DEFAULT_EPS_SQ,
    DEFAULT_TAIL_WINDOW,
    classify,
    er_density_tail_bound,
    er_density_tail_terms,
    measure,
)
from .errors import CapExceeded, PreconditionViolated
from .generators import PASpec, StarSequenceSpec, disjoint_stars, erdos_renyi, preferential_attachment, w_random
from .graph import SimpleGraph, degree_stats, edge_density
from .graphon import empirical_graphon
from .homomorphism import TRIANGLE, hom_density_graph
from .linegraph import line_density_closed_form, line_graph
from .reports import thread_count

STAR_CAP = 2000
PA_MAX_N = 100_000
GRAPH_LABELS = ("H", "H_W", "H_U")
CONVENTIONS = {
    "edge_density": "2m/(n(n-1)); 0 for graphs with fewer than 2 vertices",
    "triangle_density": "homomorphism density hom(K3, G)/n^3",
    "cosine_sim": "cosine between degree sequences sorted descending, zero-padded to "
                  "common length; 0 if either graph has no vertices",
    "cosine_hist": "cosine between degree histograms (index = degree, value = count), "
                   "zero-padded; 0 if either histogram is empty",
}


def _map(fn, items):
    threads = thread_count()
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _mean(xs):
    return math.fsum(xs) / len(xs)


def _std(xs):
    if len(xs) < 2:
        return 0.0
    mu = _mean(xs)
    return math.sqrt(math.fsum((x - mu) ** 2 for x in xs) / (len(xs) - 1))


# -- metrics ------------------------------------------------------------------


def degree_histogram(g: SimpleGraph) -> np.ndarray:
    if g.n == 0:
        return np.zeros(0, dtype=np.int64)
    return np.bincount(g.degrees)


def _padded_cosine(h1: np.ndarray, h2: np.ndarray) -> float:
    size = max(h1.size, h2.size)
    a = [int(x) for x in np.pad(h1, (0, size - h1.size))]
    b = [int(x) for x in np.pad(h2, (0, size - h2.size))]
    dot = sum(x * y for x, y in zip(a, b))
    norm2 = sum(x * x for x in a) * sum(y * y for y in b)
    if norm2 == 0:
        return 0.0
    root = math.isqrt(norm2)
    if root * root == norm2:
        return float(Fraction(dot, root))
    return dot / math.sqrt(norm2)


def degree_cosine(g1: SimpleGraph, g2: SimpleGraph) -> float:
    """Cosine between degree sequences sorted descending, zero-padded."""
    return _padded_cosine(np.sort(g1.degrees)[::-1], np.sort(g2.degrees)[::-1])


def degree_histogram_cosine(g1: SimpleGraph, g2: SimpleGraph) -> float:
    """Cosine between degree histograms (index = degree, value = count)."""
    return _padded_cosine(degree_histogram(g1), degree_histogram(g2))


def graph_edge_density(g: SimpleGraph) -> float:
    return float(edge_density(g)) if g.n >= 2 else 0.0


def triangle_density(g: SimpleGraph) -> float:
    """hom(K3, G) / n^3 via trace(A^3); every partial sum is an integer below 2^53."""
    if g.n == 0:
        return 0.0
    if g.n > 20000:
        return float(hom_density_graph(TRIANGLE, g))
    a = g.adjacency_matrix(dtype=np.float64)
    hom = int(round(float(np.einsum("ij,ji->", a @ a, a))))
    return float(Fraction(hom, g.n ** 3))


def graph_metrics(g: SimpleGraph, reference: SimpleGraph) -> dict:
    return {
        "n": g.n,
        "m": g.m,
        "cosine_sim": degree_cosine(g, reference),
        "cosine_hist": degree_histogram_cosine(g, reference),
        "edge_density": graph_edge_density(g),
        "triangle_density": triangle_density(g),
    }


# -- stars --------------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentRecord:
    k: int
    n_per_star: int
    seed: int
    metrics: dict

    def to_json(self) -> dict:
        return {"k": self.k, "n_per_star": self.n_per_star, "seed": self.seed,
                "metrics": self.metrics}


def star_replicate(k: int, n_per_star: int, seed: int) -> ExperimentRecord:
    """One seed of the star experiment.

    G is k disjoint stars of ``n_per_star`` vertices and H = L(G). Samples of
    size k*n_per_star are drawn from the empirical graphons of G (then mapped
    through L) and of H, and all three line-space graphs are compared to H.
    """
    g = disjoint_stars(StarSequenceSpec((1,) * k, n_per_star - 1))
    h = line_graph(g).graph
    n = g.n
    g_w = w_random(n, empirical_graphon(g), seed, stream=0)
    h_w = line_graph(g_w).graph if g_w.m else SimpleGraph._from_canonical(0, [])
    h_u = w_random(n, empirical_graphon(h), seed, stream=1)
    metrics = {
        "H": graph_metrics(h, h),
        "H_W": graph_metrics(h_w, h),
        "H_U": graph_metrics(h_u, h),
    }
    return ExperimentRecord(k, n_per_star, seed, metrics)


def summarize_stars(records) -> dict:
    summary = {}
    for label in GRAPH_LABELS:
        entry = {}
        for metric in ("cosine_sim", "cosine_hist", "edge_density", "triangle_density"):
            xs = [r.metrics[label][metric] for r in records]
            ref = [r.metrics["H"][metric] for r in records]
            entry[metric] = {
                "mean": _mean(xs),
                "std": _std(xs),
                "mean_abs_error_vs_H": _mean([abs(x - y) for x, y in zip(xs, ref)]),
            }
        summary[label] = entry
    return summary


def run_stars(k_values, n_per_star: int, seeds) -> dict:
    k_values = list(k_values)
    seeds = list(seeds)
    for k in k_values:
        if not 1 <= k <= 5:
            raise PreconditionViolated(f"k must lie in 1..5, got {k}")
        if k * n_per_star > STAR_CAP:
            raise CapExceeded(f"k*n_per_star = {k * n_per_star} exceeds the cap of {STAR_CAP}")
    if n_per_star < 3:
        raise PreconditionViolated("n_per_star must be >= 3")
    results = []
    for k in k_values:
        records = _map(lambda s, k=k: star_replicate(k, n_per_star, s), seeds)
        results.append({
            "k": k,
            "n_per_star": n_per_star,
            "records": [r.to_json() for r in records],
            "summary": summarize_stars(records),
        })
    return {"experiment": "stars", "conventions": CONVENTIONS, "results": results}


def stars_csv_rows(payload: dict):
    for res in payload["results"]:
        for rec in res["records"]:
            for label in GRAPH_LABELS:
                row = {"k": rec["k"], "n_per_star": rec["n_per_star"], "seed": rec["seed"],
                       "graph": label}
                row.update(rec["metrics"][label])
                yield row


STARS_CSV_COLUMNS = ("k", "n_per_star", "seed", "graph", "n", "m", "cosine_sim",
                     "cosine_hist", "edge_density", "triangle_density")


# -- preferential attachment ---------------------------------------------------


def pa_replicate(alpha: float, n: int, s0: int, s: int, seed: int, replicate: int) -> dict:
    g = preferential_attachment(PASpec(s0, s, n - s0, alpha, seed), stream=replicate)
    rec = measure(g)
    st = degree_stats(g)
    row = rec.to_json()
    row.update({
        "alpha": alpha,
        "replicate": replicate,
        "sum_deg_sq_over_m_sq": st.sum_squares / (g.m * g.m),
    })
    return {"row": row, "record": rec}


def run_pa(alpha_list, n_list, replicates: int, seed: int, s0: int = 3, s: int = 1,
           eps: float = 0.1, kmax_threshold: float = 0.9, sq_slack: float = 0.5,
           tail_window: int = DEFAULT_TAIL_WINDOW, eps_density: float = DEFAULT_EPS_DENSITY,
           eps_sq: float = DEFAULT_EPS_SQ) -> dict:
    """PA growth across exponents and sizes.

    Per (alpha, n) the table reports how many replicates have
    ``k_max/n >= kmax_threshold`` and how many have
    ``sum(deg^2) >= sq_slack * (1 - eps)^2 * m^2 / s^2``.
    """
    n_list = sorted(int(n) for n in n_list)
    for n in n_list:
        if not s0 <= n <= PA_MAX_N:
            raise PreconditionViolated(f"n must lie in [{s0}, {PA_MAX_N}], got {n}")
    sq_threshold = sq_slack * (1 - eps) ** 2 / s**2
    table, rows, sequences = [], [], []
    for alpha in alpha_list:
        alpha = float(alpha)
        first_records = []
        for n in n_list:
            outs = _map(lambda r, n=n: pa_replicate(alpha, n, s0, s, seed, r), list(range(replicates)))
            rows.extend(o["row"] for o in outs)
            first_records.append(outs[0]["record"])
            kmax = [o["row"]["k_max_ratio"] for o in outs]
            sq_values = [o["row"]["sum_deg_sq_over_m_sq"] for o in outs]
            table.append({
                "alpha": alpha,
                "n": n,
                "replicates": replicates,
                "frac_kmax_ge_threshold": sum(x >= kmax_threshold for x in kmax) / replicates,
                "frac_sq_bound_holds": sum(x >= sq_threshold for x in sq_values) / replicates,
                "median_kmax_ratio": statistics.median(kmax),
                "mean_sq_ratio": _mean([o["row"]["sq_ratio"] for o in outs]),
                "mean_line_density": _mean([o["row"]["line_density"] for o in outs]),
            })
        window = min(tail_window, len(first_records))
        report = classify(first_records, window, eps_density, eps_sq)
        sequences.append({"alpha": alpha, "replicate": 0, "report": report.to_json()})
    return {
        "experiment": "pa",
        "s0": s0,
        "s": s,
        "eps": eps,
        "kmax_threshold": kmax_threshold,
        "sq_bound_threshold": sq_threshold,
        "table": table,
        "sequences": sequences,
        "rows": rows,
    }


PA_CSV_COLUMNS = ("alpha", "n", "replicate", "m", "k_max_ratio", "sq_ratio",
                  "sum_deg_sq_over_m_sq", "line_density", "density")


# -- Erdos-Renyi ----------------------------------------------------------------


def clopper_pearson(k: int, n: int, level: float = 0.95) -> tuple[float, float]:
    a = (1 - level) / 2
    lo = 0.0 if k == 0 else float(beta_dist.ppf(a, k, n - k + 1))
    hi = 1.0 if k == n else float(beta_dist.ppf(1 - a, k + 1, n - k))
    return lo, hi


def run_er(n_list, p: float, c_list, alpha: float, replicates: int, seed: int) -> dict:
    """Line density of G(n, p) against the exceedance bound.

    For each (n, c): how often density(L(G)) >= c over replicates, the bound,
    and a 95% Clopper-Pearson interval for the empirical frequency. The
    bound column is None where n violates the bound's precondition.
    """
    n_list = sorted(int(n) for n in n_list)
    table, means = [], []
    for n in n_list:
        dens = _map(lambda r, n=n: float(line_density_closed_form(erdos_renyi(n, p, seed, stream=r))),
                    list(range(replicates)))
        mean_ld = _mean(dens)
        means.append(mean_ld)
        for c in c_list:
            count = sum(d >= c for d in dens)
            try:
                bound = er_density_tail_bound(n, p, c, alpha)
                raw = list(er_density_tail_terms(n, p, c, alpha))
            except PreconditionViolated:
                bound, raw = None, None
            lo, hi = clopper_pearson(count, replicates)
            table.append({
                "n": n,
                "c": c,
                "replicates": replicates,
                "exceed_count": count,
                "exceed_freq": count / replicates,
                "cp_lower": lo,
                "cp_upper": hi,
                "bound": bound,
                "bound_terms": raw,
                "consistent": None if bound is None else lo <= bound,
                "line_density_mean": mean_ld,
            })
    decreasing = all(a > b for a, b in zip(means, means[1:]))
    return {
        "experiment": "er",
        "p": p,
        "alpha": alpha,
        "table": table,
        "line_density_means": dict(zip(map(str, n_list), means)),
        "line_density_strictly_decreasing": decreasing,
    }


ER_CSV_COLUMNS = ("n", "c", "replicates", "exceed_count", "exceed_freq", "cp_lower",
                  "cp_upper", "bound", "line_density_mean")
