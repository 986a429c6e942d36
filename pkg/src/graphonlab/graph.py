"""Immutable simple undirected graphs, degree statistics and the edge-list format."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components as _cc

from .errors import DegenerateGraph, OutOfRange, ParseError, SelfLoop, TooLarge

EDGELIST_HEADER = "graphonlab-edgelist v1"
ISOMORPHISM_MAX_N = 10


class SimpleGraph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edges are held as an ``(m, 2)`` int64 array of ``(min, max)`` pairs in
    ascending lexicographic order. The array is read-only; every operation
    that "changes" a graph returns a new one.
    """

    def __init__(self, n: int, edges: np.ndarray):
        # Callers go through build_graph or _from_canonical; no validation here.
        self.n = int(n)
        edges.setflags(write=False)
        self._edges = edges

    @classmethod
    def _from_canonical(cls, n: int, edges) -> "SimpleGraph":
        arr = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if not arr.flags.c_contiguous or arr.base is not None:
            arr = arr.copy()
        return cls(n, arr)

    @property
    def edges(self) -> np.ndarray:
        return self._edges

    @property
    def m(self) -> int:
        return int(self._edges.shape[0])

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self._edges]

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.bincount(self._edges.ravel(), minlength=self.n).astype(np.int64)
        deg.setflags(write=False)
        return deg

    @cached_property
    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """``(indptr, indices)`` with each neighbour list sorted ascending."""
        u, v = self._edges[:, 0], self._edges[:, 1]
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        indices = np.ascontiguousarray(dst[order], dtype=np.int64)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degrees, out=indptr[1:])
        indptr.setflags(write=False)
        indices.setflags(write=False)
        return indptr, indices

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self.csr
        return indices[indptr[v] : indptr[v + 1]]

    @cached_property
    def _edge_set(self) -> frozenset:
        return frozenset(map(tuple, self._edges.tolist()))

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_set

    def adjacency_matrix(self, dtype=np.uint8) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        if self.m:
            a[self._edges[:, 0], self._edges[:, 1]] = 1
            a[self._edges[:, 1], self._edges[:, 0]] = 1
        return a

    def with_edges(self, extra) -> "SimpleGraph":
        return build_graph(self.n, list(self.edge_list()) + list(extra))

    def __eq__(self, other):
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._edges, other._edges)

    def __hash__(self):
        return hash((self.n, self._edges.tobytes()))

    def __repr__(self):
        return f"SimpleGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class DegreeStats:
    degrees: np.ndarray
    sum: int
    sum_squares: int
    max: int


def build_graph(n: int, edge_list) -> SimpleGraph:
    """Validate ``edge_list`` and return the canonical simple graph.

    Duplicates (in either orientation) collapse; loops and out-of-range
    endpoints raise.
    """
    n = int(n)
    if n < 0:
        raise OutOfRange(f"vertex count must be non-negative, got {n}")
    arr = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list,
                     dtype=np.int64).reshape(-1, 2)
    if arr.size == 0:
        return SimpleGraph._from_canonical(n, np.empty((0, 2), dtype=np.int64))
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        u, v = arr[np.argmax(bad.any(axis=1))]
        raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        u = arr[np.argmax(loops), 0]
        raise SelfLoop(f"self-loop at vertex {u}")
    canon = np.sort(arr, axis=1)
    canon = np.unique(canon, axis=0)
    return SimpleGraph._from_canonical(n, canon)


def empty_graph(n: int) -> SimpleGraph:
    return build_graph(n, [])


def degree_stats(g: SimpleGraph) -> DegreeStats:
    deg = g.degrees
    return DegreeStats(
        degrees=deg,
        sum=int(deg.sum()),
        sum_squares=int(np.dot(deg, deg)),
        max=int(deg.max()) if g.n else 0,
    )


def edge_density(g: SimpleGraph) -> Fraction:
    """Fraction of vertex pairs that are edges, ``2m / (n(n-1))``."""
    if g.n < 2:
        raise DegenerateGraph(f"edge density needs n >= 2, got n={g.n}")
    return Fraction(2 * g.m, g.n * (g.n - 1))


def connected_components(g: SimpleGraph) -> tuple[int, np.ndarray]:
    """Number of components and a component label per vertex."""
    if g.n == 0:
        return 0, np.empty(0, dtype=np.int64)
    u, v = g.edges[:, 0], g.edges[:, 1]
    mat = coo_matrix((np.ones(g.m, dtype=np.int8), (u, v)), shape=(g.n, g.n))
    count, labels = _cc(mat, directed=False)
    return int(count), labels


def relabel(g: SimpleGraph, perm) -> SimpleGraph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise ValueError("perm must be a permutation of range(n)")
    return build_graph(g.n, perm[g.edges])


def isomorphic_small(g1: SimpleGraph, g2: SimpleGraph) -> bool:
    """Exhaustive isomorphism test for graphs with at most 10 vertices.

    Searches vertex bijections depth-first, extending a partial map only when
    it preserves adjacency and non-adjacency with every vertex already placed.
    """
    for g in (g1, g2):
        if g.n > ISOMORPHISM_MAX_N:
            raise TooLarge(f"isomorphic_small supports n <= {ISOMORPHISM_MAX_N}, got {g.n}")
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees.tolist()) != sorted(g2.degrees.tolist()):
        return False
    n = g1.n
    a1 = g1.adjacency_matrix(dtype=bool)
    a2 = g2.adjacency_matrix(dtype=bool)
    d1, d2 = g1.degrees, g2.degrees
    image = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or d1[i] != d2[c]:
                continue
            if all(a1[i, j] == a2[c, image[j]] for j in range(i)):
                image[i] = c
                used[c] = True
                if extend(i + 1):
                    return True
                used[c] = False
        return False

    return extend(0)


# -- edge-list format --------------------------------------------------------


def format_edgelist(g: SimpleGraph, origin=None) -> str:
    lines = [EDGELIST_HEADER, f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges.tolist())
    if origin is not None:
        lines.extend(f"o {i} {u} {v}" for i, (u, v) in enumerate(origin))
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str, path=None):
    """Parse edge-list v1 text into ``(graph, origin)``.

    ``origin`` is the list from ``o <idx> <u> <v>`` sidecar lines, or None
    when the file has none.
    """
    n = None
    pairs = []
    origin = {}
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != EDGELIST_HEADER:
                raise ParseError(f"expected header {EDGELIST_HEADER!r}", lineno, path)
            saw_header = True
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError("expected 'n <integer>'", lineno, path)
            n = _parse_int(parts[1], lineno, path)
            if n < 0:
                raise ParseError("vertex count must be non-negative", lineno, path)
            continue
        if parts[0] == "o":
            if len(parts) != 4:
                raise ParseError("expected 'o <idx> <u> <v>'", lineno, path)
            idx, u, v = (_parse_int(p, lineno, path) for p in parts[1:])
            origin[idx] = (u, v)
            continue
        if len(parts) != 2:
            raise ParseError("expected '<u> <v>'", lineno, path)
        u, v = (_parse_int(p, lineno, path) for p in parts)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint out of range [0, {n})", lineno, path)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno, path)
        pairs.append((u, v))
    if not saw_header:
        raise ParseError("empty file", None, path)
    if n is None:
        raise ParseError("missing 'n <integer>' line", None, path)
    g = build_graph(n, pairs)
    if not origin:
        return g, None
    if sorted(origin) != list(range(g.n)):
        raise ParseError("origin block must cover every vertex exactly once", None, path)
    return g, [origin[i] for i in range(g.n)]


def _parse_int(token, lineno, path):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"not an integer: {token!r}", lineno, path) from None


def write_edgelist(path, g: SimpleGraph, origin=None) -> None:
    Path(path).write_text(format_edgelist(g, origin))


def read_edgelist(path):
    return parse_edgelist(Path(path).read_text(), path=str(path))
