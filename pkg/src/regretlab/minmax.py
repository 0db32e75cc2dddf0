"""Min-max objectives, exact single-instance solvers, and desk-scale
brute-force oracles for the multi-instance problems.

A *selection* (vertex cover, matching, path, machine assignment) pays, per
weight row, the maximum weight among its chosen elements; multi-instance
cost is the sum of the rows. All solvers here are exact; the multi-instance
ones enumerate and are guarded by hard size limits — an oracle must never
silently approximate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .instances import Graph, ProcTimeMatrix, WeightSequence

VertexSubset = frozenset  # of vertex indices
MachineAssignment = tuple  # of machine indices in {0,1,2}, one per job

# enumeration guards: hard errors, never silent truncation
MAX_HINDSIGHT_N = 25
MAX_MATCHING_VERTICES = 16
MAX_PATH_STAGES = 20
MAX_P3_JOBS = 12


def _as_rows(rows) -> np.ndarray:
    if isinstance(rows, WeightSequence):
        return rows.rows
    a = np.asarray(rows, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("weight rows must be a 2-d array")
    return a


def minmax_value(s: Iterable[int], w) -> float:
    """max_{i in s} w_i, with the empty-set maximum defined as 0."""
    w = np.asarray(w, dtype=np.float64)
    members = list(s)
    if not members:
        return 0.0
    if min(members) < 0 or max(members) >= w.shape[0]:
        raise ValueError("selection index out of range for weight row")
    return float(w[members].max())


def is_vertex_cover(g: Graph, s: Iterable[int]) -> bool:
    """True iff every edge of g has at least one endpoint in s."""
    members = set(s)
    return all(u in members or v in members for u, v in g.edges)


def static_minmax_vc(g: Graph, w) -> tuple[frozenset, float]:
    """Exact min-max vertex cover of a single weight row.

    Scans candidate thresholds in increasing weight order; the set of all
    vertices with weight <= threshold is the cheapest cover attempt at that
    value, so the first threshold whose eligible set covers g is optimal.
    Returns the full eligible set (not pruned to a minimal cover) and the
    threshold value; ties break toward the smaller threshold.
    """
    w = np.asarray(w, dtype=np.float64)
    if w.shape != (g.n,):
        raise ValueError(f"weight row must have length {g.n}")
    if g.m == 0:
        return frozenset(), 0.0
    for thr in np.unique(w):
        eligible = frozenset(np.flatnonzero(w <= thr).tolist())
        if is_vertex_cover(g, eligible):
            return eligible, float(thr)
    raise AssertionError("unreachable: the full vertex set is a cover")


def multi_minmax_cost(selection: Iterable[int], rows) -> float:
    """Sum over rows of the max weight in the selection (empty max is 0)."""
    rows = _as_rows(rows)
    members = sorted(set(selection))
    if not members or rows.shape[0] == 0:
        return 0.0
    if members[0] < 0 or members[-1] >= rows.shape[1]:
        raise ValueError("selection index out of range for weight rows")
    return float(rows[:, members].max(axis=1).sum())


def _maximal_independent_sets(g: Graph) -> Iterator[int]:
    """Yield maximal independent sets of g as bitmasks.

    Bron-Kerbosch with pivoting, run on the complement graph (independent
    sets of g are cliques of the complement).
    """
    n = g.n
    full = (1 << n) - 1
    # complement adjacency as bitmasks
    comp = [full & ~(1 << v) for v in range(n)]
    for u, v in g.edges:
        comp[u] &= ~(1 << v)
        comp[v] &= ~(1 << u)

    def expand(r: int, p: int, x: int):
        if p == 0 and x == 0:
            yield r
            return
        pivot_pool = p | x
        pivot = (pivot_pool & -pivot_pool).bit_length() - 1
        best = pivot
        best_deg = -1
        pool = pivot_pool
        while pool:
            u = (pool & -pool).bit_length() - 1
            pool &= pool - 1
            deg = bin(comp[u] & p).count("1")
            if deg > best_deg:
                best, best_deg = u, deg
        cand = p & ~comp[best]
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            yield from expand(r | (1 << v), p & comp[v], x & comp[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from expand(0, full, 0)


def minimal_vertex_covers(g: Graph) -> Iterator[frozenset]:
    """Yield the inclusion-minimal vertex covers of g.

    These are exactly the complements of maximal independent sets.
    """
    full = (1 << g.n) - 1
    for mis in _maximal_independent_sets(g):
        cover = full & ~mis
        yield frozenset(i for i in range(g.n) if cover >> i & 1)


def best_static_vc_hindsight(g: Graph, seq: WeightSequence) -> tuple[frozenset, float]:
    """Exact minimizer of the summed min-max cost over all vertex covers.

    The per-row cost max_{i in s} w_i is monotone in s, so some
    inclusion-minimal cover attains the optimum; only those are scanned.
    """
    if g.n > MAX_HINDSIGHT_N:
        raise ValueError(f"n={g.n} exceeds enumeration guard {MAX_HINDSIGHT_N}")
    if seq.n != g.n:
        raise ValueError("weight sequence width must equal vertex count")
    rows = seq.rows
    best_cover: frozenset | None = None
    best_cost = np.inf
    for cover in minimal_vertex_covers(g):
        members = sorted(cover)
        if members and rows.shape[0]:
            cost = float(rows[:, members].max(axis=1).sum())
        else:
            cost = 0.0
        if cost < best_cost:
            best_cover, best_cost = cover, cost
    assert best_cover is not None
    return best_cover, best_cost


# ---------------------------------------------------------------------------
# multi-instance brute-force oracles
# ---------------------------------------------------------------------------


def _perfect_matchings(g: Graph) -> Iterator[tuple[int, ...]]:
    """Yield perfect matchings of g as sorted tuples of edge indices."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for idx, (u, v) in enumerate(g.edges):
        adj[u].append((v, idx))
        adj[v].append((u, idx))

    unmatched = (1 << g.n) - 1

    def recurse(unmatched: int, chosen: list[int]) -> Iterator[tuple[int, ...]]:
        if unmatched == 0:
            yield tuple(chosen)
            return
        u = (unmatched & -unmatched).bit_length() - 1
        for v, idx in adj[u]:
            if unmatched >> v & 1:
                chosen.append(idx)
                yield from recurse(unmatched & ~(1 << u) & ~(1 << v), chosen)
                chosen.pop()

    yield from recurse(unmatched, [])


def brute_force_multi_matching(g: Graph, rows) -> tuple[frozenset, float]:
    """Exact minimizer of the summed max-edge-weight over perfect matchings.

    ``rows`` has one weight per edge of g, in g.edges order. Distinct
    errors for an odd vertex count versus an even graph with no perfect
    matching.
    """
    if g.n > MAX_MATCHING_VERTICES:
        raise ValueError(f"|V|={g.n} exceeds enumeration guard {MAX_MATCHING_VERTICES}")
    if g.n % 2 == 1:
        raise ValueError("odd vertex count: no perfect matching can exist")
    rows = _as_rows(rows)
    if rows.shape[0] and rows.shape[1] != g.m:
        raise ValueError("weight rows must have one entry per edge")
    best: tuple[int, ...] | None = None
    best_cost = np.inf
    for matching in _perfect_matchings(g):
        if rows.shape[0]:
            cost = float(rows[:, list(matching)].max(axis=1).sum())
        else:
            cost = 0.0
        if cost < best_cost:
            best, best_cost = matching, cost
    if best is None:
        raise ValueError("graph has no perfect matching")
    return frozenset(g.edges[i] for i in best), best_cost


@dataclass(frozen=True)
class PathChain:
    """A chain of ``n_stages`` vertex pairs with two parallel labeled arcs
    ('t' and 'f') per stage; a source-to-sink path picks one arc per stage.

    Arc-weight rows use column 2*i for arc ('t', stage i) and column
    2*i + 1 for arc ('f', stage i).
    """

    n_stages: int

    def __post_init__(self):
        if self.n_stages < 1:
            raise ValueError("chain needs at least one stage")

    @property
    def n_arcs(self) -> int:
        return 2 * self.n_stages

    @staticmethod
    def arc_index(stage: int, label: str) -> int:
        if label not in ("t", "f"):
            raise ValueError("arc label must be 't' or 'f'")
        return 2 * stage + (0 if label == "t" else 1)

    def path_arc_indices(self, labels: Sequence[str]) -> tuple[int, ...]:
        if len(labels) != self.n_stages:
            raise ValueError("path must pick one arc per stage")
        return tuple(self.arc_index(i, lab) for i, lab in enumerate(labels))


def brute_force_multi_path(chain: PathChain, rows) -> tuple[tuple, float]:
    """Exact minimizer of the summed max-arc-weight over all 2^n paths.

    Returns the path as a tuple of 't'/'f' labels; among ties the
    lexicographically smallest with 't' < 'f' wins.
    """
    n = chain.n_stages
    if n > MAX_PATH_STAGES:
        raise ValueError(f"{n} stages exceeds enumeration guard {MAX_PATH_STAGES}")
    rows = _as_rows(rows)
    if rows.shape[0] and rows.shape[1] != chain.n_arcs:
        raise ValueError("weight rows must have one entry per arc")
    wt = rows[:, 0::2] if rows.shape[0] else np.zeros((0, n))
    wf = rows[:, 1::2] if rows.shape[0] else np.zeros((0, n))

    best_idx = 0
    best_cost = np.inf
    # stage 0 is the most significant bit so index order is lexicographic
    shifts = np.array([n - 1 - i for i in range(n)], dtype=np.int64)
    chunk = 1 << 14
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        take_f = (idx[:, None] >> shifts[None, :]) & 1  # bit 1 means 'f'
        if rows.shape[0]:
            # (paths, rows, stages) would be large; fold rows one at a time
            costs = np.zeros(idx.shape[0])
            for j in range(rows.shape[0]):
                w = np.where(take_f == 1, wf[j][None, :], wt[j][None, :])
                costs += w.max(axis=1)
        else:
            costs = np.zeros(idx.shape[0])
        k = int(np.argmin(costs))
        if costs[k] < best_cost:
            best_cost = float(costs[k])
            best_idx = int(idx[k])
    labels = tuple("f" if (best_idx >> (n - 1 - i)) & 1 else "t" for i in range(n))
    return labels, best_cost


def brute_force_multi_p3cmax(jobs: ProcTimeMatrix) -> tuple[tuple, float]:
    """Exact minimizer of the summed 3-machine makespan over all 3^n
    assignments. Ties break to the lexicographically smallest assignment.
    """
    n = jobs.n
    if n > MAX_P3_JOBS:
        raise ValueError(f"n={n} exceeds enumeration guard {MAX_P3_JOBS}")
    P = jobs.rows  # (N, n)
    total = 3**n
    # job 0 is the most significant digit so index order is lexicographic
    powers = np.array([3 ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    best_idx = 0
    best_cost = np.inf
    chunk = 1 << 14
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        digits = (idx[:, None] // powers[None, :]) % 3  # (chunk, n)
        if P.shape[0]:
            loads = np.empty((3, idx.shape[0], P.shape[0]))
            for mach in range(3):
                loads[mach] = (digits == mach).astype(np.float64) @ P.T
            costs = loads.max(axis=0).sum(axis=1)
        else:
            costs = np.zeros(idx.shape[0])
        k = int(np.argmin(costs))
        if costs[k] < best_cost:
            best_cost = float(costs[k])
            best_idx = int(idx[k])
    assignment = tuple(int(d) for d in (best_idx // powers) % 3)
    return assignment, best_cost
