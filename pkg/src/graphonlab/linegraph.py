"""Line graphs with edge provenance and the closed-form line density."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .errors import DegenerateGraph, NullGraph
from .graph import SimpleGraph, degree_stats


@dataclass(frozen=True)
class LabeledLineGraph:
    """``graph`` is L(G); vertex ``i`` of it is root edge ``origin[i]``."""

    graph: SimpleGraph
    origin: np.ndarray

    def origin_pairs(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.origin]


def _incidence(g: SimpleGraph):
    """CSR of edge ids incident to each vertex, ids ascending per vertex."""
    ends = g.edges.ravel()
    ids = np.repeat(np.arange(g.m, dtype=np.int64), 2)
    order = np.lexsort((ids, ends))
    indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(g.degrees, out=indptr[1:])
    return indptr, np.ascontiguousarray(ids[order])


def line_graph(g: SimpleGraph) -> LabeledLineGraph:
    """Build L(G) by connecting all pairs of edges within each endpoint bucket.

    Vertex ``i`` of the result is the ``i``-th edge of ``g`` in canonical
    order. Runs in time proportional to the sum of squared degrees.
    """
    if g.m == 0:
        raise NullGraph("line graph of a graph without edges is undefined")
    indptr, incident = _incidence(g)
    pairs = _backend.line_graph_pairs(indptr, incident)
    if pairs.shape[0]:
        order = np.lexsort((pairs[:, 1], pairs[:, 0]))
        pairs = pairs[order]
    h = SimpleGraph._from_canonical(g.m, pairs)
    origin = g.edges.copy()
    origin.setflags(write=False)
    return LabeledLineGraph(h, origin)


def line_density_closed_form(g: SimpleGraph) -> Fraction:
    """Edge density of L(G) from the degrees of G alone.

    ``(sum(deg^2)/2 - m) / (m(m-1)/2)``
    """
    if g.m < 2:
        raise DegenerateGraph(f"line density needs m >= 2, got m={g.m}")
    st = degree_stats(g)
    return Fraction(st.sum_squares - 2 * g.m, g.m * (g.m - 1))


def line_edge_count(g: SimpleGraph) -> int:
    st = degree_stats(g)
    return st.sum_squares // 2 - g.m


def verify_line_counts(g: SimpleGraph, h: LabeledLineGraph) -> bool:
    """Check |V(L(G))| = m and |E(L(G))| = sum(deg^2)/2 - m exactly."""
    return h.graph.n == g.m and h.graph.m == line_edge_count(g)
