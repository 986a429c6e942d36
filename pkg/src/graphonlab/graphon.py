"""Step-function graphons: construction, refinement, cut norm and cut distance.

A step function is a partition ``0 = b_0 < ... < b_p = 1`` of the unit
interval plus a symmetric ``p x p`` value matrix. When every boundary and
value is an ``int`` or ``Fraction`` the function is *exact* and all integrals
below come back as ``Fraction``; otherwise they are floats.
"""

from __future__ import annotations

import bisect
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path

import numpy as np

from . import _backend
from .errors import BadLengths, BadValue, ParseError, UnequalBlocks
from .graph import SimpleGraph
from .rng import make_rng

BOUNDARY_TOL = 1e-12
EXACT_CUT_MAX_BLOCKS = 25
EXHAUSTIVE_PERM_MAX_BLOCKS = 8
MAX_EQUAL_BLOCKS = 2000
# Inside the permutation search, exact enumeration is used up to this many
# blocks and local search beyond; the reported value is always recomputed.
SEARCH_EXACT_MAX_BLOCKS = 12
# Approximate cap on matrix-element operations spent by annealing.
ANNEAL_WORK_BUDGET = 2e9
STEPGRAPHON_HEADER = "graphonlab-stepgraphon v1"


def _exact_number(x) -> bool:
    return isinstance(x, (int, Fraction, np.integer)) and not isinstance(x, (bool, np.bool_))


def _normalize_values(values) -> np.ndarray:
    if isinstance(values, np.ndarray) and values.dtype != object:
        if values.dtype.kind in "iub":
            return np.array(values, dtype=np.int64)
        return np.array(values, dtype=np.float64)
    rows = [list(r) for r in values]
    flat = [x for r in rows for x in r]
    if flat and all(isinstance(x, (int, np.integer)) for x in flat):
        return np.array(rows, dtype=np.int64)
    if all(_exact_number(x) for x in flat):
        out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                out[i, j] = Fraction(x)
        return out
    return np.array(rows, dtype=np.float64)


class StepFunction:
    """Symmetric step function on the unit square with real values."""

    def __init__(self, boundaries, values):
        b = list(boundaries)
        if len(b) < 2:
            raise BadLengths("a step function needs at least one block")
        if all(_exact_number(x) for x in b):
            b = [Fraction(x) for x in b]
            if b[0] != 0 or b[-1] != 1:
                raise BadLengths("boundaries must start at 0 and end at 1")
        else:
            b = [float(x) for x in b]
            if abs(b[0]) > BOUNDARY_TOL or abs(b[-1] - 1.0) > BOUNDARY_TOL:
                raise BadLengths("boundaries must start at 0 and end at 1")
            b[0], b[-1] = 0.0, 1.0
        if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
            raise BadLengths("boundaries must be strictly increasing")
        v = _normalize_values(values)
        p = len(b) - 1
        if v.shape != (p, p):
            raise BadValue(f"value matrix must be {p}x{p}, got {v.shape}")
        if v.dtype == np.float64:
            if not np.all(np.isfinite(v)):
                raise BadValue("values must be finite")
            if np.max(np.abs(v - v.T), initial=0.0) > BOUNDARY_TOL:
                raise BadValue("value matrix must be symmetric")
            v = (v + v.T) / 2
        elif not np.array_equal(v, v.T):
            raise BadValue("value matrix must be symmetric")
        v.setflags(write=False)
        self.boundaries = tuple(b)
        self.values = v
        self._check_range()

    def _check_range(self):
        pass

    def _like(self, boundaries, values):
        return StepFunction(boundaries, values)

    @property
    def p(self) -> int:
        return len(self.boundaries) - 1

    @cached_property
    def exact(self) -> bool:
        return isinstance(self.boundaries[0], Fraction) and self.values.dtype != np.float64

    @cached_property
    def lengths(self) -> tuple:
        b = self.boundaries
        return tuple(b[i + 1] - b[i] for i in range(self.p))

    @cached_property
    def float_lengths(self) -> np.ndarray:
        return np.array([float(x) for x in self.lengths])

    def float_values(self) -> np.ndarray:
        return self._float_values

    @cached_property
    def _float_values(self) -> np.ndarray:
        fv = np.array(self.values, dtype=np.float64) if self.values.dtype == object \
            else self.values.astype(np.float64)
        fv.setflags(write=False)
        return fv

    @cached_property
    def _interior(self) -> np.ndarray:
        return np.array([float(x) for x in self.boundaries[1:-1]])

    def block_of(self, x) -> np.ndarray:
        """Block index for each point of ``x`` (right-open intervals)."""
        return np.searchsorted(self._interior, np.asarray(x, dtype=np.float64), side="right")

    def is_constant(self) -> bool:
        first = self.values.flat[0]
        return bool(np.all(self.values == first))

    def permuted(self, perm) -> "StepFunction":
        """Reorder blocks: new block ``i`` is old block ``perm[i]``."""
        perm = list(perm)
        lengths = [self.lengths[k] for k in perm]
        bounds = [self.boundaries[0]]
        for L in lengths:
            bounds.append(bounds[-1] + L)
        if isinstance(bounds[0], float):
            bounds[-1] = 1.0
        idx = np.asarray(perm)
        return self._like(bounds, self.values[np.ix_(idx, idx)])

    def __sub__(self, other: "StepFunction") -> "StepFunction":
        a, b = refine_common(self, other)
        va, vb = a.values, b.values
        if va.dtype == np.float64 or vb.dtype == np.float64:
            diff = va.astype(np.float64) - vb.astype(np.float64)
        else:
            diff = va - vb
        return StepFunction(a.boundaries, diff)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self.boundaries == other.boundaries and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        kind = "exact" if self.exact else "float"
        return f"{type(self).__name__}(p={self.p}, {kind})"


class StepGraphon(StepFunction):
    """Step function with values in [0, 1]."""

    def _check_range(self):
        v = self.values
        if v.size and (np.any(v < 0) or np.any(v > 1)):
            raise BadValue("graphon values must lie in [0, 1]")

    def _like(self, boundaries, values):
        return StepGraphon(boundaries, values)


@dataclass(frozen=True)
class CutNormResult:
    value: Fraction | float
    witness_S: tuple[int, ...]
    witness_T: tuple[int, ...]
    exact: bool
    method: str

    @property
    def lower_bound(self) -> bool:
        return not self.exact


@dataclass(frozen=True)
class CutDistanceResult:
    value: Fraction | float
    permutation: tuple[int, ...]
    upper_bound: bool
    method: str
    exact_inner: bool = True


# -- constructors -------------------------------------------------------------


def empirical_graphon(g: SimpleGraph) -> StepGraphon:
    """n equal blocks valued by the adjacency matrix (zero diagonal)."""
    if g.n < 1:
        raise BadValue("empirical graphon needs at least one vertex")
    bounds = [Fraction(i, g.n) for i in range(g.n + 1)]
    return StepGraphon(bounds, g.adjacency_matrix(dtype=np.int64))


def constant_graphon(c) -> StepGraphon:
    if not 0 <= c <= 1:
        raise BadValue(f"constant must lie in [0, 1], got {c}")
    return StepGraphon([Fraction(0), Fraction(1)], [[c]])


def block_diagonal_graphon(lengths) -> StepGraphon:
    """1 on the diagonal blocks, 0 elsewhere; block widths from ``lengths``."""
    lengths = list(lengths)
    if not lengths or any(not L > 0 for L in lengths):
        raise BadLengths("block lengths must be positive")
    if all(_exact_number(L) for L in lengths):
        lengths = [Fraction(L) for L in lengths]
        if sum(lengths) != 1:
            raise BadLengths(f"block lengths must sum to 1, got {sum(lengths)}")
        bounds = [Fraction(0)]
    else:
        lengths = [float(L) for L in lengths]
        if abs(math.fsum(lengths) - 1.0) > BOUNDARY_TOL:
            raise BadLengths(f"block lengths must sum to 1, got {math.fsum(lengths)}")
        bounds = [0.0]
    for L in lengths:
        bounds.append(bounds[-1] + L)
    if isinstance(bounds[0], float):
        bounds[-1] = 1.0
    return StepGraphon(bounds, np.eye(len(lengths), dtype=np.int64))


# -- refinement ---------------------------------------------------------------


def _merged_boundaries(b1, b2):
    if isinstance(b1[0], Fraction) and isinstance(b2[0], Fraction):
        return sorted(set(b1) | set(b2))
    pts = sorted(float(x) for x in itertools.chain(b1, b2))
    merged = [pts[0]]
    for x in pts[1:]:
        if x - merged[-1] > BOUNDARY_TOL:
            merged.append(x)
    merged[0], merged[-1] = 0.0, 1.0
    return merged


def _reindex(w: StepFunction, bounds):
    if isinstance(bounds[0], Fraction) and isinstance(w.boundaries[0], Fraction):
        src = w.boundaries
        idx = [bisect.bisect_right(src, (bounds[i] + bounds[i + 1]) / 2) - 1
               for i in range(len(bounds) - 1)]
    else:
        mids = [(float(bounds[i]) + float(bounds[i + 1])) / 2 for i in range(len(bounds) - 1)]
        idx = w.block_of(mids).tolist()
    idx = np.asarray(idx, dtype=np.int64)
    return w._like(bounds, w.values[np.ix_(idx, idx)])


def refine_common(w1: StepFunction, w2: StepFunction):
    """Re-express both step functions on the union of their boundaries."""
    if w1.boundaries == w2.boundaries:
        return w1, w2
    bounds = _merged_boundaries(w1.boundaries, w2.boundaries)
    return _reindex(w1, bounds), _reindex(w2, bounds)


# -- integrals ----------------------------------------------------------------


def _length_numerators(w: StepFunction):
    """Integer numerators and common denominator of the block lengths."""
    den = 1
    for L in w.lengths:
        den = den * L.denominator // math.gcd(den, L.denominator)
    return np.array([int(L * den) for L in w.lengths], dtype=object), den


def block_sum(w: StepFunction, rows, cols):
    """Integral of ``w`` over ``(union of rows) x (union of cols)``."""
    rows = np.asarray(list(rows), dtype=np.int64)
    cols = np.asarray(list(cols), dtype=np.int64)
    if rows.size == 0 or cols.size == 0:
        return Fraction(0) if w.exact else 0.0
    sub = w.values[np.ix_(rows, cols)]
    if w.exact:
        nums, den = _length_numerators(w)
        total = nums[rows].dot(sub.astype(object).dot(nums[cols]))
        return Fraction(total) / (den * den)
    L = w.float_lengths
    return float(L[rows] @ sub.astype(np.float64) @ L[cols])


def _column_mass(w: StepFunction, rows):
    """Signed mass of each column over the given rows (sign-faithful)."""
    rows = np.asarray(list(rows), dtype=np.int64)
    if rows.size == 0:
        return [0] * w.p
    sub = w.values[rows, :]
    if w.exact:
        nums, _ = _length_numerators(w)
        return list(nums[rows].dot(sub.astype(object)))
    return list(w.float_lengths[rows] @ sub.astype(np.float64))


def inner_product(w1: StepFunction, w2: StepFunction):
    """Integral of ``w1 * w2`` over the unit square."""
    a, b = refine_common(w1, w2)
    if a.values.dtype == np.float64 or b.values.dtype == np.float64:
        prod = a.values.astype(np.float64) * b.values.astype(np.float64)
    else:
        prod = a.values * b.values
    full = range(a.p)
    return block_sum(StepFunction(a.boundaries, prod), full, full)


def integral(w: StepFunction):
    return block_sum(w, range(w.p), range(w.p))


# -- cut norm -----------------------------------------------------------------


def _weighted_matrix(w: StepFunction) -> np.ndarray:
    L = w.float_lengths
    return w.float_values() * L[:, None] * L[None, :]


def _best_t(w: StepFunction, S, sign):
    mass = _column_mass(w, S)
    return tuple(j for j, c in enumerate(mass) if sign * c > 0)


def _local_search(a: np.ndarray, rng, restarts: int, max_rounds: int = 200):
    p = a.shape[0]
    best = (0.0, (), ())
    for r in range(restarts):
        sign = 1 if r % 2 == 0 else -1
        s_mask = rng.random(p) < 0.5
        if r == 0:
            s_mask[:] = True
        for _ in range(max_rounds):
            t_mask = sign * a[s_mask].sum(axis=0) > 0
            new_s = sign * a[:, t_mask].sum(axis=1) > 0
            if np.array_equal(new_s, s_mask):
                break
            s_mask = new_s
        t_mask = sign * a[s_mask].sum(axis=0) > 0
        val = abs(float(a[np.ix_(s_mask, t_mask)].sum()))
        if val > best[0]:
            best = (val, tuple(np.flatnonzero(s_mask).tolist()),
                    tuple(np.flatnonzero(t_mask).tolist()))
    return best


def cut_norm(w: StepFunction, *, seed: int = 0, restarts: int = 64) -> CutNormResult:
    """Cut norm of a step function.

    The optimum over measurable S, T is attained on unions of blocks, so the
    search runs over block subsets: every S (2^p of them) with the best T
    for each sign. Single-signed functions short-circuit to the full square.
    Above ``EXACT_CUT_MAX_BLOCKS`` mixed-sign blocks the search falls back to
    seeded alternating local search and the result is flagged as a lower bound.
    """
    p = w.p
    full = tuple(range(p))
    v = w.values
    if bool(np.all(v >= 0)) or bool(np.all(v <= 0)):
        val = integral(w)
        return CutNormResult(abs(val), full, full, True, "single-sign")
    if p <= EXACT_CUT_MAX_BLOCKS:
        _, mask, sign = _backend.cut_norm_search(_weighted_matrix(w))
        S = tuple(i for i in range(p) if mask >> i & 1)
        T = _best_t(w, S, sign)
        return CutNormResult(abs(block_sum(w, S, T)), S, T, True, "enumeration")
    _, S, T = _local_search(_weighted_matrix(w), make_rng(seed), restarts)
    return CutNormResult(abs(block_sum(w, S, T)), S, T, False, "local-search")


def cut_norm_diff(w1: StepFunction, w2: StepFunction, **kw) -> CutNormResult:
    return cut_norm(w1 - w2, **kw)


# -- cut distance -------------------------------------------------------------


def _equal_block_count(w: StepFunction) -> int:
    den = 1
    for b in w.boundaries:
        f = b if isinstance(b, Fraction) else Fraction(b).limit_denominator(MAX_EQUAL_BLOCKS)
        if not isinstance(b, Fraction) and abs(float(f) - b) > BOUNDARY_TOL:
            raise UnequalBlocks(f"boundary {b} is not a multiple of 1/q for q <= {MAX_EQUAL_BLOCKS}")
        den = den * f.denominator // math.gcd(den, f.denominator)
        if den > MAX_EQUAL_BLOCKS:
            raise UnequalBlocks(f"no common equal-block representation with q <= {MAX_EQUAL_BLOCKS}")
    return den


def to_equal_blocks(w: StepFunction, q: int) -> StepFunction:
    bounds = [Fraction(i, q) for i in range(q + 1)]
    if not w.exact:
        bounds = [float(x) for x in bounds]
    return _reindex(w, bounds)


def _perm_objective(v1: np.ndarray, v2: np.ndarray, perm, q: int, rng=None) -> float:
    idx = np.asarray(perm)
    a = (v1[np.ix_(idx, idx)] - v2) / (q * q)
    if q <= SEARCH_EXACT_MAX_BLOCKS:
        return _backend.cut_norm_search(a)[0]
    return _local_search(a, rng, 8)[0]


def cut_distance_upper(w1: StepFunction, w2: StepFunction, *, seed: int = 0,
                       iterations: int = 4000) -> CutDistanceResult:
    """Upper bound on the cut distance by optimising over block permutations.

    Exact when either argument is constant (the cut norm of the difference is
    then invariant under every measure-preserving map). Otherwise both
    functions are expanded to a common equal-block partition; all
    permutations of the first are tried for at most 8 blocks, simulated
    annealing over transpositions beyond that. Annealing runs at most
    ``iterations`` steps and fewer on large grids, where each step costs
    O(q^2) per local-search restart.
    """
    if w1.is_constant() or w2.is_constant():
        res = cut_norm_diff(w1, w2, seed=seed)
        p = refine_common(w1, w2)[0].p
        return CutDistanceResult(res.value, tuple(range(p)), not res.exact, "constant", res.exact)
    q = math.lcm(_equal_block_count(w1), _equal_block_count(w2))
    if q > MAX_EQUAL_BLOCKS:
        raise UnequalBlocks(f"common equal-block count {q} exceeds {MAX_EQUAL_BLOCKS}")
    e1, e2 = to_equal_blocks(w1, q), to_equal_blocks(w2, q)
    v1, v2 = e1.float_values(), e2.float_values()
    rng = make_rng(seed)
    identity = tuple(range(q))
    best_perm, best = identity, _perm_objective(v1, v2, identity, q, rng)
    if q <= EXHAUSTIVE_PERM_MAX_BLOCKS:
        method = "exhaustive"
        for perm in itertools.permutations(range(q)):
            val = _perm_objective(v1, v2, perm, q, rng)
            if val < best:
                best, best_perm = val, perm
    else:
        method = "annealing"
        if q > SEARCH_EXACT_MAX_BLOCKS:
            iterations = min(iterations, max(50, int(ANNEAL_WORK_BUDGET / (q * q * 8 * 20))))
        cur_perm, cur = list(identity), best
        temp0 = max(best, 1e-9) * 0.1
        for it in range(iterations):
            temp = temp0 * (1.0 - it / iterations) + 1e-15
            i, j = rng.choice(q, size=2, replace=False)
            cand = cur_perm.copy()
            cand[i], cand[j] = cand[j], cand[i]
            val = _perm_objective(v1, v2, cand, q, rng)
            if val <= cur or rng.random() < math.exp(-(val - cur) / temp):
                cur_perm, cur = cand, val
                if val < best:
                    best, best_perm = val, tuple(cand)
    res = cut_norm_diff(e1.permuted(best_perm), e2, seed=seed)
    return CutDistanceResult(res.value, tuple(best_perm), True, method,
                             q <= EXACT_CUT_MAX_BLOCKS)


# -- file format --------------------------------------------------------------


def _format_number(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        d = x.denominator
        twos = fives = 0
        while d % 2 == 0:
            d //= 2
            twos += 1
        while d % 5 == 0:
            d //= 5
            fives += 1
        if d == 1:
            digits = max(twos, fives)
            scaled = x * 10**digits
            sign = "-" if scaled < 0 else ""
            s = str(abs(scaled.numerator)).rjust(digits + 1, "0")
            return f"{sign}{s[:-digits]}.{s[-digits:]}"
        return repr(float(x))
    return repr(float(x))


def format_stepgraphon(w: StepFunction) -> str:
    lines = [STEPGRAPHON_HEADER, f"p {w.p}"]
    equal = all(b == Fraction(i, w.p) for i, b in enumerate(w.boundaries)) \
        if isinstance(w.boundaries[0], Fraction) else False
    if equal:
        lines.append("equal")
    else:
        lines.append(" ".join(["b"] + [_format_number(b) for b in w.boundaries[1:-1]]))
    for row in w.values.tolist():
        lines.append(" ".join(_format_number(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_stepgraphon(text: str, path=None) -> StepGraphon:
    """Parse stepgraphon v1 text. Decimal tokens are read as exact rationals."""
    rows = []
    p = None
    bounds = None
    state = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if state == "header":
            if line != STEPGRAPHON_HEADER:
                raise ParseError(f"expected header {STEPGRAPHON_HEADER!r}", lineno, path)
            state = "p"
        elif state == "p":
            if len(parts) != 2 or parts[0] != "p":
                raise ParseError("expected 'p <block count>'", lineno, path)
            try:
                p = int(parts[1])
            except ValueError:
                raise ParseError(f"not an integer: {parts[1]!r}", lineno, path) from None
            if p < 1:
                raise ParseError("block count must be >= 1", lineno, path)
            state = "b"
        elif state == "b":
            if parts == ["equal"]:
                bounds = [Fraction(i, p) for i in range(p + 1)]
            elif parts[0] == "b":
                if len(parts) - 1 != p - 1:
                    raise ParseError(f"expected {p - 1} interior boundaries", lineno, path)
                bounds = [Fraction(0)] + [_parse_num(t, lineno, path) for t in parts[1:]] + [Fraction(1)]
            else:
                raise ParseError("expected 'b <b_1> ... <b_{p-1}>' or 'equal'", lineno, path)
            state = "rows"
        else:
            if len(parts) != p:
                raise ParseError(f"expected {p} values per row", lineno, path)
            rows.append([_parse_num(t, lineno, path) for t in parts])
    if state != "rows":
        raise ParseError("truncated graphon file", None, path)
    if len(rows) != p:
        raise ParseError(f"expected {p} value rows, got {len(rows)}", None, path)
    try:
        return StepGraphon(bounds, rows)
    except (BadValue, BadLengths) as exc:
        raise ParseError(str(exc), None, path) from None


def _parse_num(token, lineno, path):
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a number: {token!r}", lineno, path) from None


def write_stepgraphon(path, w: StepFunction) -> None:
    Path(path).write_text(format_stepgraphon(w))


def read_stepgraphon(path) -> StepGraphon:
    return parse_stepgraphon(Path(path).read_text(), path=str(path))
