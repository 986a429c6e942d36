"""Homomorphism counts and densities of small patterns in graphs and step graphons."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .errors import NullGraph, PatternTooLarge, TooManyBlocks, UnknownFamily
from .graph import SimpleGraph, build_graph, degree_stats, read_edgelist
from .graphon import StepFunction, _length_numerators

MAX_PATTERN_VERTICES = 8
MAX_BLOCK_ASSIGNMENTS = 5_000_000
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class PatternGraph:
    graph: SimpleGraph
    name: str = "custom"

    def __post_init__(self):
        if self.graph.n > MAX_PATTERN_VERTICES:
            raise PatternTooLarge(
                f"patterns are limited to {MAX_PATTERN_VERTICES} vertices, got {self.graph.n}")

    @property
    def v(self) -> int:
        return self.graph.n


EDGE = PatternGraph(build_graph(2, [(0, 1)]), "edge")
CHERRY = PatternGraph(build_graph(3, [(0, 1), (1, 2)]), "cherry")
TRIANGLE = PatternGraph(build_graph(3, [(0, 1), (1, 2), (0, 2)]), "triangle")
NAMED_PATTERNS = {"edge": EDGE, "cherry": CHERRY, "triangle": TRIANGLE}


def as_pattern(f) -> PatternGraph:
    if isinstance(f, PatternGraph):
        return f
    if isinstance(f, SimpleGraph):
        return PatternGraph(f)
    raise TypeError(f"expected a pattern, got {type(f).__name__}")


def pattern_by_name(name: str) -> PatternGraph:
    try:
        return NAMED_PATTERNS[name]
    except KeyError:
        raise UnknownFamily(f"unknown pattern {name!r}; use edge|cherry|triangle or a file") from None


def load_pattern(spec: str) -> PatternGraph:
    if spec in NAMED_PATTERNS:
        return NAMED_PATTERNS[spec]
    g, _ = read_edgelist(spec)
    return PatternGraph(g, spec)


def _components(f: SimpleGraph) -> list[list[int]]:
    seen = [False] * f.n
    comps = []
    for s in range(f.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in f.neighbors(x).tolist():
                if not seen[y]:
                    seen[y] = True
                    stack.append(y)
        comps.append(sorted(comp))
    return comps


def _search_order(f: SimpleGraph, comp: list[int]):
    """Order a connected component so each vertex after the first has a placed neighbour.

    Greedy: start at a maximum-degree vertex, then repeatedly place the vertex
    with the most already-placed neighbours (ties: higher degree, lower id).
    Returns ``(back_ptr, back_idx)`` in position space.
    """
    deg = f.degrees
    start = max(comp, key=lambda x: (deg[x], -x))
    order = [start]
    pos = {start: 0}
    rest = set(comp) - {start}
    while rest:
        nxt = max(rest, key=lambda x: (sum(1 for y in f.neighbors(x).tolist() if y in pos),
                                       deg[x], -x))
        pos[nxt] = len(order)
        order.append(nxt)
        rest.discard(nxt)
    back_ptr, back_idx = [0], []
    for x in order:
        back_idx.extend(sorted(pos[y] for y in f.neighbors(x).tolist() if pos[y] < pos[x]))
        back_ptr.append(len(back_idx))
    return np.asarray(back_ptr, dtype=np.int64), np.asarray(back_idx, dtype=np.int64)


def hom_count(f, g: SimpleGraph) -> int:
    """Number of edge-preserving maps V(F) -> V(G), as an exact integer.

    Connected components of F are counted separately and multiplied. Within
    a component, vertices are placed in an order where each one has an
    already-placed neighbour, so candidates come from a neighbour list and
    partial maps die as soon as a pattern edge lands on a non-edge.
    """
    f = as_pattern(f)
    total = 1
    indptr, indices = g.csr
    for comp in _components(f.graph):
        if len(comp) == 1:
            total *= g.n
            continue
        back_ptr, back_idx = _search_order(f.graph, comp)
        if g.n ** len(comp) < _INT64_SAFE:
            count = _backend.hom_count(indptr, indices, g.n, back_ptr, back_idx)
        else:
            from . import _fallback
            count = _fallback.hom_count(indptr, indices, g.n, back_ptr, back_idx)
        total *= int(count)
        if total == 0:
            break
    return total


def hom_density_graph(f, g: SimpleGraph) -> Fraction:
    f = as_pattern(f)
    if g.n < 1:
        raise NullGraph("homomorphism density needs a graph with at least one vertex")
    return Fraction(hom_count(f, g), g.n ** f.v)


def hom_density_graphon(f, w: StepFunction):
    """Exact block sum of the homomorphism integral of F against ``w``.

    Sums over assignments of pattern vertices to blocks; the last vertex of
    each component is summed out as a vector, so the work is ``p**(v-1)``
    vector operations per component.
    """
    f = as_pattern(f)
    p = w.p
    if p ** max(f.v - 1, 1) > MAX_BLOCK_ASSIGNMENTS:
        raise TooManyBlocks(f"{p} blocks ^ {f.v - 1} pattern vertices exceeds the enumeration budget")
    if w.exact:
        nums, den = _length_numerators(w)
        weights = nums
        values = w.values.astype(object)
    else:
        den = 1
        weights = w.float_lengths
        values = w.float_values()
    total = Fraction(1) if w.exact else 1.0
    for comp in _components(f.graph):
        if len(comp) == 1:
            continue  # isolated vertex integrates to 1
        back_ptr, back_idx = _search_order(f.graph, comp)
        k_last = len(comp) - 1
        image = [0] * len(comp)

        def rec(k):
            vec = weights
            for b in back_idx[back_ptr[k] : back_ptr[k + 1]]:
                vec = vec * values[image[b]]
            if k == k_last:
                return vec.sum()
            acc = 0
            for blk in range(p):
                if vec[blk] == 0:
                    continue
                image[k] = blk
                acc += vec[blk] * rec(k + 1)
            return acc

        image[0] = 0
        comp_val = rec(0)
        if w.exact:
            comp_val = Fraction(comp_val) / den ** len(comp)
        total *= comp_val
    return total


def line_edge_density_via_root(g: SimpleGraph) -> Fraction:
    """t(edge, L(G)) from the degrees of G: ``(sum(deg^2) - 2m) / m^2``."""
    if g.m < 1:
        raise NullGraph("line graph of a graph without edges is undefined")
    st = degree_stats(g)
    return Fraction(st.sum_squares - 2 * g.m, g.m * g.m)
