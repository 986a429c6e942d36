"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are called directly on identical inputs, so the numbers
isolate the inner loops. Results agree between backends; this script
checks that too.
"""

import argparse
import time

import numpy as np

from graphonlab import _fallback
from graphonlab import generators as gen
from graphonlab.homomorphism import TRIANGLE, _search_order
from graphonlab.linegraph import _incidence

try:
    from graphonlab import _kernels
except ImportError:
    _kernels = None


def _cases():
    rng = np.random.default_rng(0)
    a = rng.normal(size=(18, 18))
    a = a + a.T
    yield "cut_norm_search p=18", "cut_norm_search", (a,)

    g = gen.erdos_renyi(300, 0.1, seed=1)
    indptr, indices = g.csr
    bp, bi = _search_order(TRIANGLE.graph, [0, 1, 2])
    yield "hom_count triangle G(300,0.1)", "hom_count", (indptr, indices, g.n, bp, bi)

    g = gen.erdos_renyi(400, 0.05, seed=2)
    yield "line_graph_pairs G(400,0.05)", "line_graph_pairs", _incidence(g)

    t = 20_000
    u = np.random.default_rng(3).random(t)
    yield "pa_attach n=20000 alpha=2", "pa_attach", (3, 1, t, 2.0, u, gen.PA_REBUILD_EVERY)


def _time(fn, args, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def _same(x, y):
    if isinstance(x, tuple):
        return abs(x[0] - y[0]) < 1e-9
    if isinstance(x, np.ndarray):
        return np.array_equal(x, y)
    return x == y


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'kernel':34s} {'python (s)':>11s} {'cython (s)':>11s} {'speedup':>8s}  agree")
    for label, name, fargs in _cases():
        tp, outp = _time(getattr(_fallback, name), fargs, args.repeat)
        if _kernels is None:
            print(f"{label:34s} {tp:11.4f} {'-':>11s} {'-':>8s}")
            continue
        tc, outc = _time(getattr(_kernels, name), fargs, args.repeat)
        print(f"{label:34s} {tp:11.4f} {tc:11.4f} {tp / tc:7.1f}x  {_same(outp, outc)}")


if __name__ == "__main__":
    main()
