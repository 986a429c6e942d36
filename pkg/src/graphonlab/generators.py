"""Constructors for the graph families studied here.

Deterministic families (stars, paths, cycles, complete and circulant graphs)
take only sizes. Random families take a ``seed`` and an optional ``stream``
index; see :mod:`graphonlab.rng` for how the pair maps to a generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _backend
from .errors import BadProbability, DegenerateGraph, InfeasibleRegular, PreconditionViolated
from .graph import SimpleGraph, build_graph
from .rng import make_rng

PA_REBUILD_EVERY = 4096


@dataclass(frozen=True)
class StarSequenceSpec:
    """``k`` disjoint stars; at step ``i`` star ``j`` has ``1 + i*ratios[j]`` vertices."""

    ratios: tuple[int, ...]
    step: int

    def __post_init__(self):
        object.__setattr__(self, "ratios", tuple(int(r) for r in self.ratios))
        if not self.ratios:
            raise PreconditionViolated("need at least one star (k >= 1)")
        if any(r < 1 for r in self.ratios):
            raise PreconditionViolated(f"ratios must be positive integers, got {self.ratios}")
        if self.step < 1:
            raise PreconditionViolated(f"step must be >= 1, got {self.step}")

    @property
    def k(self) -> int:
        return len(self.ratios)

    @property
    def star_sizes(self) -> tuple[int, ...]:
        return tuple(1 + self.step * r for r in self.ratios)


@dataclass(frozen=True)
class PASpec:
    s0: int
    s: int
    t: int
    alpha: float
    seed: int = 0

    def __post_init__(self):
        if self.s0 < 3:
            # The seed configuration is the cycle on s0 vertices.
            raise PreconditionViolated(f"s0 must be >= 3, got {self.s0}")
        if self.s < 1 or self.t < 0:
            raise PreconditionViolated("need s >= 1 and t >= 0")
        if not self.alpha > 0:
            raise PreconditionViolated(f"alpha must be positive, got {self.alpha}")


def star(n: int) -> SimpleGraph:
    """``K_{1,n-1}`` with vertex 0 as the hub."""
    if n < 2:
        raise DegenerateGraph(f"a star needs n >= 2, got {n}")
    leaves = np.arange(1, n, dtype=np.int64)
    return SimpleGraph._from_canonical(n, np.column_stack([np.zeros_like(leaves), leaves]))


def disjoint_stars(spec: StarSequenceSpec) -> SimpleGraph:
    """Union of stars laid out in order: hub of star j, then its leaves."""
    blocks = []
    offset = 0
    for size in spec.star_sizes:
        leaves = np.arange(offset + 1, offset + size, dtype=np.int64)
        blocks.append(np.column_stack([np.full_like(leaves, offset), leaves]))
        offset += size
    return SimpleGraph._from_canonical(offset, np.concatenate(blocks))


def path(n: int) -> SimpleGraph:
    if n < 2:
        raise DegenerateGraph(f"a path needs n >= 2, got {n}")
    v = np.arange(n - 1, dtype=np.int64)
    return SimpleGraph._from_canonical(n, np.column_stack([v, v + 1]))


def cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise DegenerateGraph(f"a cycle needs n >= 3, got {n}")
    v = np.arange(n, dtype=np.int64)
    return build_graph(n, np.column_stack([v, (v + 1) % n]))


def complete(n: int) -> SimpleGraph:
    if n < 1:
        raise DegenerateGraph(f"complete graph needs n >= 1, got {n}")
    iu, ju = np.triu_indices(n, k=1)
    return SimpleGraph._from_canonical(n, np.column_stack([iu, ju]))


def circulant_regular(n: int, r: int) -> SimpleGraph:
    """r-regular circulant graph.

    Vertex v joins v +- 1, ..., v +- floor(r/2); for odd r (n is then even)
    it also joins the antipode v + n/2.
    """
    if not 0 <= r < n:
        raise InfeasibleRegular(f"need 0 <= r < n, got r={r}, n={n}")
    if (n * r) % 2:
        raise InfeasibleRegular(f"n*r must be even, got n={n}, r={r}")
    v = np.arange(n, dtype=np.int64)
    pairs = [np.column_stack([v, (v + d) % n]) for d in range(1, r // 2 + 1)]
    if r % 2:
        half = v[: n // 2]
        pairs.append(np.column_stack([half, half + n // 2]))
    if not pairs:
        return build_graph(n, [])
    return build_graph(n, np.concatenate(pairs))


def erdos_renyi(n: int, p: float, seed: int = 0, stream: int | None = None) -> SimpleGraph:
    """G(n, p): one uniform draw per vertex pair, pairs in canonical order."""
    if not 0.0 <= p <= 1.0:
        raise BadProbability(f"p must lie in [0, 1], got {p}")
    rng = make_rng(seed, stream)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.shape[0]) < p
    return SimpleGraph._from_canonical(n, np.column_stack([iu[keep], ju[keep]]))


def w_random(n: int, w, seed: int = 0, stream: int | None = None) -> SimpleGraph:
    """Sample G(n, W) from a step graphon.

    Latent positions are drawn first (n uniforms), then one uniform per vertex
    pair in canonical order; pair {i, j} is kept when its uniform falls below
    W(x_i, x_j).
    """
    if n < 1:
        raise DegenerateGraph(f"need n >= 1, got {n}")
    rng = make_rng(seed, stream)
    x = rng.random(n)
    blocks = w.block_of(x)
    iu, ju = np.triu_indices(n, k=1)
    prob = w.float_values()[blocks[iu], blocks[ju]]
    keep = rng.random(iu.shape[0]) < prob
    return SimpleGraph._from_canonical(n, np.column_stack([iu[keep], ju[keep]]))


def preferential_attachment(spec: PASpec, stream: int | None = None) -> SimpleGraph:
    """Grow a graph by (super)linear preferential attachment.

    Starts from the cycle on ``s0`` vertices. Each step adds one vertex with
    ``s`` edges whose endpoints are drawn without replacement with probability
    proportional to ``degree**alpha``.
    """
    rng = make_rng(spec.seed, stream)
    uniforms = rng.random(spec.t * spec.s)
    edges = _backend.pa_attach(spec.s0, spec.s, spec.t, float(spec.alpha), uniforms,
                               PA_REBUILD_EVERY)
    return build_graph(spec.s0 + spec.t, edges)

