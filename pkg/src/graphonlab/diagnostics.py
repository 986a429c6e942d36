"""Windowed diagnostics for graph sequences.

Asymptotic notions (dense, sparse, square-degree) are statements about
limits; here they are approximated by looking at the last ``tail_window``
records of a finite sequence against fixed thresholds. A verdict that the
window cannot settle is reported as ``indeterminate``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .errors import DegenerateGraph, EmptyInput, PreconditionViolated
from .graph import SimpleGraph, degree_stats, edge_density
from .linegraph import line_density_closed_form

DEFAULT_TAIL_WINDOW = 5
DEFAULT_EPS_DENSITY = 0.01
DEFAULT_EPS_SQ = 0.01


@dataclass(frozen=True)
class SequenceRecord:
    n: int
    m: int
    density: Fraction
    density_t: Fraction
    sq_ratio: Fraction | None
    line_density: Fraction | None
    k_max_ratio: Fraction

    def to_json(self) -> dict:
        return {k: (None if v is None else (float(v) if isinstance(v, Fraction) else v))
                for k, v in asdict(self).items()}


@dataclass
class SequenceReport:
    records: list[SequenceRecord]
    verdicts: dict
    parameters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "records": [r.to_json() for r in self.records],
            "verdicts": dict(self.verdicts),
            "parameters": dict(self.parameters),
        }


def measure(g: SimpleGraph) -> SequenceRecord:
    if g.n < 2:
        raise DegenerateGraph(f"need n >= 2, got n={g.n}")
    st = degree_stats(g)
    return SequenceRecord(
        n=g.n,
        m=g.m,
        density=edge_density(g),
        density_t=Fraction(2 * g.m, g.n * g.n),
        sq_ratio=Fraction(st.sum_squares, st.sum * st.sum) if st.sum else None,
        line_density=line_density_closed_form(g) if g.m >= 2 else None,
        k_max_ratio=Fraction(st.max, g.n),
    )


def _tail_class(values, eps, high, low):
    """``high`` if the whole tail sits at or above ``eps``; ``low`` if it ends
    below ``eps``, never climbs back over it, and finishes no higher than it
    started; otherwise ``indeterminate``."""
    if any(v is None for v in values):
        return "indeterminate"
    vals = [float(v) for v in values]
    if min(vals) >= eps:
        return high
    if vals[-1] < eps and vals[-1] <= vals[0]:
        first_below = next(i for i, v in enumerate(vals) if v < eps)
        if all(v < eps for v in vals[first_below:]):
            return low
    return "indeterminate"


def classify(records, tail_window: int = DEFAULT_TAIL_WINDOW,
             eps_density: float = DEFAULT_EPS_DENSITY,
             eps_sq: float = DEFAULT_EPS_SQ) -> SequenceReport:
    """Classify a sequence of records ordered by n."""
    records = list(records)
    if not records:
        raise EmptyInput("classify needs at least one record")
    if not 1 <= tail_window <= len(records):
        raise PreconditionViolated(
            f"tail_window must be in [1, {len(records)}], got {tail_window}")
    if any(a.n > b.n for a, b in zip(records, records[1:])):
        raise PreconditionViolated("records must be ordered by n")
    tail = records[-tail_window:]
    density_class = _tail_class([r.density_t for r in tail], eps_density, "dense", "sparse")
    sq_class = _tail_class([r.sq_ratio for r in tail], eps_sq, "holds", "fails")
    line_class = _tail_class([r.line_density for r in tail], eps_density, "dense", "sparse")
    verdicts = {
        "density_class": density_class,
        "sq_class": sq_class,
        "line_density_class": line_class,
        # Square-degree holds exactly when the line graphs are dense.
        "sq_line_consistent": (sq_class == "holds" and line_class == "dense")
        or (sq_class == "fails" and line_class == "sparse"),
        # Square-degree forces sparsity.
        "sq_implies_sparse": sq_class != "holds" or density_class == "sparse",
    }
    parameters = {
        "tail_window": tail_window,
        "eps_density": eps_density,
        "eps_sq": eps_sq,
        "eps_line_density": eps_density,
        "rule": "high if min(tail) >= eps; low if tail ends below eps, stays below "
                "after first crossing and ends <= its start; else indeterminate",
    }
    return SequenceReport(records, verdicts, parameters)


def er_density_tail_terms(n: int, p: float, c: float, alpha: float) -> tuple[float, float, float]:
    """The three raw terms bounding P[density(L(G(n, p))) >= c]."""
    if not 0.0 < c < 1.0:
        raise PreconditionViolated(f"c must lie in (0, 1), got {c}")
    if not 0.0 < alpha < 1.0:
        raise PreconditionViolated(f"alpha must lie in (0, 1), got {alpha}")
    if not 0.0 <= p <= 1.0:
        raise PreconditionViolated(f"p must lie in [0, 1], got {p}")
    n_min = 4.0 / (c * (1.0 - alpha) ** 2)
    if not n > n_min:
        raise PreconditionViolated(f"need n > 4/(c(1-alpha)^2) = {n_min:g}, got n={n}")
    beta = math.sqrt(c * n) * (1.0 - alpha) / 2.0 - 1.0
    pairs = p * n * (n - 1)
    return (
        math.exp(-alpha**2 * pairs / 4.0),
        math.exp(math.log(n) - beta**2 * p * (n - 1) / 3.0),
        math.exp(-alpha**2 * pairs / 6.0),
    )


def er_density_tail_bound(n: int, p: float, c: float, alpha: float) -> float:
    """Upper bound on P[density(L(G(n, p))) >= c].

    Each term bounds a probability on its own, so each is capped at 1 before
    summing; the result lies in [0, 3] and is non-increasing in n.
    """
    return sum(min(1.0, t) for t in er_density_tail_terms(n, p, c, alpha))


def er_min_n(c: float, alpha: float) -> int:
    """Smallest integer n satisfying the bound's precondition."""
    return math.floor(4.0 / (c * (1.0 - alpha) ** 2)) + 1
