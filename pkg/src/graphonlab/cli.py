"""``graphonlab`` command-line interface.

Exit codes: 0 success, 2 parse/parameter error, 3 precondition violated,
4 size cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import experiments, generators
from .diagnostics import DEFAULT_EPS_DENSITY, DEFAULT_EPS_SQ, DEFAULT_TAIL_WINDOW, classify, measure
from .errors import GraphonLabError, ParseError, UnknownFamily
from .graph import EDGELIST_HEADER, SimpleGraph, edge_density, format_edgelist, parse_edgelist
from .graphon import (
    STEPGRAPHON_HEADER,
    StepFunction,
    block_diagonal_graphon,
    constant_graphon,
    cut_distance_upper,
    cut_norm,
    cut_norm_diff,
    empirical_graphon,
    format_stepgraphon,
    parse_stepgraphon,
)
from .homomorphism import hom_density_graph, hom_density_graphon, load_pattern
from .linegraph import line_density_closed_form, line_graph
from .reports import dumps, emit, make_manifest, to_csv, to_document

FAMILIES = ("star", "disjoint-stars", "path", "cycle", "complete", "regular", "er", "pa")


# -- input helpers --------------------------------------------------------------


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _first_line(text: str) -> str:
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return line
    return ""


def load_graph(path: str) -> SimpleGraph:
    g, _ = parse_edgelist(_read_text(path), path=path)
    return g


def load_step(path: str) -> StepFunction:
    """Graphon file as-is, or the empirical graphon of an edge-list file."""
    text = _read_text(path)
    head = _first_line(text)
    if head == STEPGRAPHON_HEADER:
        return parse_stepgraphon(text, path=path)
    if head == EDGELIST_HEADER:
        return empirical_graphon(parse_edgelist(text, path=path)[0])
    raise ParseError(f"unrecognised header {head!r}", 1, path)


def _ints(text: str) -> list[int]:
    """``"1,2,5"`` or ``"0:20"`` (half-open range)."""
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi)))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers, got {text!r}") from None


def _fractions(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected rationals, got {text!r}") from None


def _num(x) -> str:
    """Exact form when rational, then the float."""
    if isinstance(x, Fraction):
        return f"{x} {float(x)!r}"
    return repr(float(x))


def _jsonable(x):
    if isinstance(x, Fraction):
        return {"value": float(x), "exact": str(x)}
    return {"value": float(x), "exact": None}


def _write_json(args, parameters: dict, payload: dict, seed=None) -> None:
    if getattr(args, "out", None):
        manifest = make_manifest(args.argv, seed, parameters)
        emit(dumps(to_document(manifest, payload)), args.out)


# -- generation -----------------------------------------------------------------


def build_family(family: str, args, n=None) -> SimpleGraph:
    n = args.n if n is None else n
    if family == "star":
        return generators.star(_need(n, "--n"))
    if family == "disjoint-stars":
        ratios = tuple(args.ratios or [1, 1])
        return generators.disjoint_stars(generators.StarSequenceSpec(ratios, _need(args.step if n is None else n, "--step")))
    if family == "path":
        return generators.path(_need(n, "--n"))
    if family == "cycle":
        return generators.cycle(_need(n, "--n"))
    if family == "complete":
        return generators.complete(_need(n, "--n"))
    if family == "regular":
        return generators.circulant_regular(_need(n, "--n"), _need(args.r, "--r"))
    if family == "er":
        return generators.erdos_renyi(_need(n, "--n"), _need(args.p, "--p"), args.seed)
    if family == "pa":
        if n is not None:
            t = n - args.s0
        else:
            t = _need(args.t, "--t")
        return generators.preferential_attachment(
            generators.PASpec(args.s0, args.s, t, _need(args.alpha, "--alpha"), args.seed))
    raise UnknownFamily(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def _need(value, flag):
    if value is None:
        raise ParseError(f"missing required parameter {flag}")
    return value


def _family_args(p: argparse.ArgumentParser, with_n=True):
    if with_n:
        p.add_argument("--n", type=int, help="vertex count")
    p.add_argument("--ratios", type=_ints, help="disjoint-stars leaf ratios, e.g. 1,2,3")
    p.add_argument("--step", type=int, help="disjoint-stars growth step")
    p.add_argument("--r", type=int, help="degree for the regular family")
    p.add_argument("--p", type=float, help="edge probability for er")
    p.add_argument("--s0", type=int, default=3, help="pa seed cycle size")
    p.add_argument("--s", type=int, default=1, help="pa edges per new vertex")
    p.add_argument("--t", type=int, help="pa steps")
    p.add_argument("--alpha", type=float, help="pa attachment exponent")
    p.add_argument("--seed", type=int, default=0)


def cmd_generate(args) -> int:
    g = build_family(args.family, args)
    emit(format_edgelist(g), args.out)
    summary = f"n={g.n} m={g.m}"
    if g.n >= 2:
        summary += f" density={float(edge_density(g))!r}"
    print(summary, file=sys.stdout if args.out not in (None, "-") else sys.stderr)
    return 0


def cmd_linegraph(args) -> int:
    g = load_graph(args.input)
    lg = line_graph(g)
    emit(format_edgelist(lg.graph, None if args.no_origin else lg.origin_pairs()), args.output)
    print(f"n={lg.graph.n} m={lg.graph.m}", file=sys.stderr)
    return 0


def cmd_density(args) -> int:
    g = load_graph(args.input)
    if args.line:
        value = line_density_closed_form(g)
    else:
        value = edge_density(g)
    print(_num(value))
    _write_json(args, {"input": args.input, "line": args.line},
                {"n": g.n, "m": g.m, "density": _jsonable(value)})
    return 0


def cmd_homdensity(args) -> int:
    pattern = load_pattern(args.pattern)
    text = _read_text(args.input)
    if _first_line(text) == STEPGRAPHON_HEADER:
        value = hom_density_graphon(pattern, parse_stepgraphon(text, path=args.input))
    else:
        value = hom_density_graph(pattern, parse_edgelist(text, path=args.input)[0])
    print(_num(value))
    _write_json(args, {"input": args.input, "pattern": args.pattern},
                {"pattern": pattern.name, "hom_density": _jsonable(value)})
    return 0


def cmd_cutnorm(args) -> int:
    w = load_step(args.input)
    if args.diff:
        res = cut_norm_diff(w, load_step(args.diff), seed=args.seed)
    else:
        res = cut_norm(w, seed=args.seed)
    print(_num(res.value))
    _write_json(args, {"input": args.input, "diff": args.diff}, {
        "cut_norm": _jsonable(res.value),
        "witness_S": list(res.witness_S),
        "witness_T": list(res.witness_T),
        "exact": res.exact,
        "lower_bound": res.lower_bound,
        "method": res.method,
    }, seed=args.seed)
    return 0


def cmd_cutdist(args) -> int:
    res = cut_distance_upper(load_step(args.first), load_step(args.second),
                             seed=args.seed, iterations=args.iterations)
    print(_num(res.value) + ("  (upper bound)" if res.upper_bound else "  (exact)"))
    _write_json(args, {"inputs": [args.first, args.second], "iterations": args.iterations}, {
        "cut_distance": _jsonable(res.value),
        "upper_bound": res.upper_bound,
        "permutation": list(res.permutation),
        "method": res.method,
        "exact_inner": res.exact_inner,
    }, seed=args.seed)
    return 0


def cmd_sqcheck(args) -> int:
    if args.inputs:
        graphs = [load_graph(p) for p in args.inputs]
        graphs.sort(key=lambda g: g.n)
    else:
        if not args.family or not args.ns:
            raise ParseError("sqcheck needs --family and --ns, or input files")
        graphs = [build_family(args.family, args, n) for n in args.ns]
    records = [measure(g) for g in graphs]
    window = min(args.tail_window, len(records))
    report = classify(records, window, args.eps_density, args.eps_sq)
    for key in ("density_class", "sq_class", "line_density_class"):
        print(f"{key} = {report.verdicts[key]}")
    manifest = make_manifest(args.argv, args.seed, {
        "family": args.family, "ns": args.ns, "inputs": args.inputs})
    emit(dumps(to_document(manifest, report.to_json())), args.out) if args.out else None
    return 0


def cmd_sample(args) -> int:
    w = load_step(args.input)
    g = generators.w_random(args.n, w, args.seed)
    emit(format_edgelist(g), args.out)
    print(f"n={g.n} m={g.m}", file=sys.stderr)
    return 0


def cmd_graphon(args) -> int:
    if args.kind == "empirical":
        w = empirical_graphon(load_graph(_need(args.value, "INPUT")))
    elif args.kind == "constant":
        w = constant_graphon(Fraction(_need(args.value, "VALUE")))
    else:
        w = block_diagonal_graphon(_fractions(_need(args.value, "LENGTHS")))
    emit(format_stepgraphon(w), args.out)
    return 0


def _emit_experiment(args, parameters, payload, columns, rows) -> None:
    manifest = make_manifest(args.argv, getattr(args, "seed", None), parameters)
    if args.format == "csv":
        emit(to_csv(manifest, columns, rows), args.out)
    else:
        emit(dumps(to_document(manifest, payload)), args.out)


def cmd_experiment(args) -> int:
    if args.which == "stars":
        payload = experiments.run_stars(args.k, args.n_per_star, args.seeds)
        params = {"k": args.k, "n_per_star": args.n_per_star, "seeds": args.seeds}
        _emit_experiment(args, params, payload, experiments.STARS_CSV_COLUMNS,
                         experiments.stars_csv_rows(payload))
        for res in payload["results"]:
            s = res["summary"]
            print(f"k={res['k']}: " + "  ".join(
                f"{m}: H_W err {s['H_W'][m]['mean_abs_error_vs_H']:.4f} / H_U err "
                f"{s['H_U'][m]['mean_abs_error_vs_H']:.4f}"
                for m in ("cosine_sim", "edge_density", "triangle_density")), file=sys.stderr)
    elif args.which == "pa":
        payload = experiments.run_pa(args.alphas, args.ns, args.replicates, args.seed,
                                     s0=args.s0, s=args.s, eps=args.eps)
        params = {"alphas": args.alphas, "ns": args.ns, "replicates": args.replicates,
                  "s0": args.s0, "s": args.s, "eps": args.eps}
        _emit_experiment(args, params, payload, experiments.PA_CSV_COLUMNS, payload["rows"])
        for row in payload["table"]:
            print(f"alpha={row['alpha']} n={row['n']}: median k_max/n {row['median_kmax_ratio']:.3f}, "
                  f"frac k_max/n>=0.9 {row['frac_kmax_ge_threshold']:.2f}", file=sys.stderr)
    else:
        payload = experiments.run_er(args.ns, args.p, args.cs, args.alpha, args.replicates, args.seed)
        params = {"ns": args.ns, "p": args.p, "cs": args.cs, "alpha": args.alpha,
                  "replicates": args.replicates}
        _emit_experiment(args, params, payload, experiments.ER_CSV_COLUMNS, payload["table"])
        for n, mu in payload["line_density_means"].items():
            print(f"n={n}: mean line density {mu:.5f}", file=sys.stderr)
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphonlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a graph from a named family")
    p.add_argument("family", choices=FAMILIES)
    _family_args(p)
    p.add_argument("--out", help="edge-list path (default: stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("linegraph", help="line graph of an edge-list file")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--out", dest="output")
    p.add_argument("--no-origin", action="store_true", help="omit the origin sidecar lines")
    p.set_defaults(func=cmd_linegraph)

    p = sub.add_parser("density", help="edge density 2m/(n(n-1))")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--line", action="store_true", help="closed-form density of the line graph instead")
    p.add_argument("--out", help="write a JSON report here")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("homdensity", help="homomorphism density of a pattern")
    p.add_argument("input", nargs="?", default="-", help="edge-list or stepgraphon file")
    p.add_argument("--pattern", default="edge", help="edge|cherry|triangle or an edge-list file")
    p.add_argument("--out")
    p.set_defaults(func=cmd_homdensity)

    p = sub.add_parser("cutnorm", help="cut norm of a graphon (or of a difference)")
    p.add_argument("input", help="stepgraphon or edge-list file (empirical graphon)")
    p.add_argument("--diff", metavar="OTHER", help="subtract this graphon first")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cutnorm)

    p = sub.add_parser("cutdist", help="upper bound on the cut distance")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iterations", type=int, default=4000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_cutdist)

    p = sub.add_parser("sqcheck", help="classify a graph sequence")
    p.add_argument("inputs", nargs="*", help="edge-list files (alternative to --family)")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--ns", type=_ints, help="sizes (growth steps for disjoint-stars)")
    _family_args(p, with_n=False)
    p.add_argument("--tail-window", type=int, default=DEFAULT_TAIL_WINDOW)
    p.add_argument("--eps-density", type=float, default=DEFAULT_EPS_DENSITY)
    p.add_argument("--eps-sq", type=float, default=DEFAULT_EPS_SQ)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sqcheck, n=None)

    p = sub.add_parser("sample", help="W-random graph from a graphon")
    p.add_argument("input", help="stepgraphon or edge-list file (empirical graphon)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("graphon", help="write a stepgraphon file")
    p.add_argument("kind", choices=("empirical", "constant", "blockdiag"))
    p.add_argument("value", nargs="?", help="edge-list path, constant, or comma-separated lengths")
    p.add_argument("--out")
    p.set_defaults(func=cmd_graphon)

    p = sub.add_parser("experiment", help="seeded experiments")
    esub = p.add_subparsers(dest="which", required=True)
    e = esub.add_parser("stars", help="star line-graph sampling comparison")
    e.add_argument("--k", type=_ints, default=[1, 2], help="star counts, e.g. 1,2")
    e.add_argument("--n-per-star", type=int, default=100)
    e.add_argument("--seeds", type=_ints, default=list(range(20)), help="e.g. 0:20 or 1,2,3")
    e = esub.add_parser("pa", help="superlinear preferential attachment")
    e.add_argument("--alphas", type=_floats, default=[3.0, 1.0])
    e.add_argument("--ns", type=_ints, default=[2000])
    e.add_argument("--replicates", type=int, default=50)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--s0", type=int, default=3)
    e.add_argument("--s", type=int, default=1)
    e.add_argument("--eps", type=float, default=0.1)
    e = esub.add_parser("er", help="Erdos-Renyi line density versus the tail bound")
    e.add_argument("--ns", type=_ints, default=[50, 100, 200, 400])
    e.add_argument("--p", type=float, default=0.5)
    e.add_argument("--cs", type=_floats, default=[0.1])
    e.add_argument("--alpha", type=float, default=0.5)
    e.add_argument("--replicates", type=int, default=50)
    e.add_argument("--seed", type=int, default=0)
    for e in esub.choices.values():
        e.add_argument("--format", choices=("json", "csv"), default="json")
        e.add_argument("--out")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args.argv = ["graphonlab", *argv]
    try:
        return args.func(args)
    except GraphonLabError as exc:
        print(f"graphonlab: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
