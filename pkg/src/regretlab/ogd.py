"""Projected online (sub)gradient descent for online min-max vertex cover.

Each round the learner publishes the half-rounding of its fractional
iterate, pays the maximum revealed weight inside that cover, then takes a
subgradient step on the fractional relaxation

    Q = { x in [0,1]^n : x_i + x_j >= 1 for every edge (i,j) }

and projects back onto Q in the l2 norm. Rounding at 1/2 at most doubles
the fractional cost, which is where the factor 2 in the regret guarantee
comes from.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .instances import Graph, WeightSequence
from .minmax import MAX_HINDSIGHT_N, best_static_vc_hindsight
from .traces import RegretTrace, RoundRecord

__all__ = [
    "OgdConfig",
    "ProjectionError",
    "subgradient",
    "project_vc_polytope",
    "round_half",
    "ogd_run",
    "theorem2_bound",
    "fractional_feasible",
]


@dataclass(frozen=True)
class OgdConfig:
    """Run parameters: weight scale, step-size mode, projection tolerances.

    ``step_mode`` is either "paper" (step 1/sqrt(t), the verbatim update
    rule) or "scaled" (step sqrt(n)/(W_bound*sqrt(t)), the diameter-over-
    gradient rate under which the 3*W*sqrt(nT) guarantee is proved).
    """

    W_bound: float = 1.0
    step_mode: str = "scaled"
    feas_tol: float = 1e-8
    conv_tol: float = 1e-10
    max_cycles: int = 20_000

    def __post_init__(self):
        if self.W_bound <= 0:
            raise ValueError("W_bound must be positive")
        if self.step_mode not in ("paper", "scaled"):
            raise ValueError("step_mode must be 'paper' or 'scaled'")
        if self.feas_tol <= 0 or self.conv_tol <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_cycles < 1:
            raise ValueError("max_cycles must be >= 1")


class ProjectionError(RuntimeError):
    """Dykstra cycling failed to converge; carries the feasibility residual."""

    def __init__(self, message: str, residual: float, cycles: int, round_index: int | None = None):
        super().__init__(message)
        self.residual = residual
        self.cycles = cycles
        self.round_index = round_index


def subgradient(w, x) -> np.ndarray:
    """Subgradient of x -> max_i w_i x_i: w_{i*} on the argmax coordinate.

    Ties break to the smallest index.
    """
    w = np.asarray(w, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    if w.shape != x.shape or w.ndim != 1:
        raise ValueError("w and x must be vectors of equal length")
    g = np.zeros_like(w)
    i_star = int(np.argmax(w * x))  # argmax returns the first maximizer
    g[i_star] = w[i_star]
    return g


def fractional_feasible(x, g: Graph, tol: float = 1e-8) -> bool:
    """Whether x lies in the box and satisfies x_i + x_j >= 1 - tol on edges."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (g.n,):
        return False
    if x.min() < -tol or x.max() > 1.0 + tol:
        return False
    return all(x[u] + x[v] >= 1.0 - tol for u, v in g.edges)


def _project(y, n, eu, ev, cfg: OgdConfig) -> np.ndarray:
    """Dykstra's method over the box and the edge half-spaces.

    Each constraint set keeps its own correction (a full vector for the
    box, one scalar per edge since an edge's correction is equal on its
    two endpoints and zero elsewhere). Edges whose correction is zero and
    whose constraint currently holds would be identity steps, so each
    cycle processes only the others.
    """
    x = np.asarray(y, dtype=np.float64).copy()
    p_box = np.zeros(n)
    m = eu.shape[0]
    mu = np.zeros(m)
    for cycle in range(1, cfg.max_cycles + 1):
        # box set
        v = x + p_box
        nx = np.clip(v, 0.0, 1.0)
        p_box = v - nx
        delta = float(np.abs(nx - x).max()) if n else 0.0
        x = nx
        if m:
            sums = x[eu] + x[ev]
            active = np.flatnonzero((mu != 0.0) | (sums < 1.0))
            for e in active:
                i, j = int(eu[e]), int(ev[e])
                vi = x[i] - mu[e]
                vj = x[j] - mu[e]
                s = vi + vj
                if s >= 1.0:
                    mu[e] = 0.0
                else:
                    half_gap = (1.0 - s) / 2.0
                    vi += half_gap
                    vj += half_gap
                    mu[e] = half_gap
                d = max(abs(vi - x[i]), abs(vj - x[j]))
                if d > delta:
                    delta = d
                x[i] = vi
                x[j] = vj
        if delta <= cfg.conv_tol:
            resid = 0.0
            if m:
                resid = max(0.0, float((1.0 - (x[eu] + x[ev])).max()))
            box_resid = max(0.0, float(-x.min()), float(x.max() - 1.0))
            resid = max(resid, box_resid)
            if resid > cfg.feas_tol:
                raise ProjectionError(
                    f"projection stalled after {cycle} cycles with feasibility "
                    f"residual {resid:.3e}",
                    residual=resid,
                    cycles=cycle,
                )
            return np.clip(x, 0.0, 1.0)
    resid = 0.0
    if m:
        resid = max(0.0, float((1.0 - (x[eu] + x[ev])).max()))
    resid = max(resid, 0.0, float(-x.min()), float(x.max() - 1.0))
    raise ProjectionError(
        f"projection did not converge in {cfg.max_cycles} cycles "
        f"(feasibility residual {resid:.3e})",
        residual=resid,
        cycles=cfg.max_cycles,
    )


def project_vc_polytope(y, g: Graph, cfg: OgdConfig | None = None) -> np.ndarray:
    """l2-nearest point of the fractional cover polytope of g."""
    cfg = cfg or OgdConfig()
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (g.n,):
        raise ValueError(f"point must have length {g.n}")
    if not np.all(np.isfinite(y)):
        raise ValueError("point must be finite")
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    return _project(y, g.n, eu, ev, cfg)


def round_half(x) -> frozenset:
    """Vertices with x_i >= 1/2; a cover whenever x is edge-feasible."""
    x = np.asarray(x, dtype=np.float64)
    return frozenset(int(i) for i in np.flatnonzero(x >= 0.5))


def theorem2_bound(W: float, n: int, T: int) -> float:
    """Additive regret term 3*W*sqrt(n*T); callers add 2*OPT."""
    if W < 0:
        raise ValueError("W must be nonnegative")
    if n < 1 or T < 0:
        raise ValueError("need n >= 1 and T >= 0")
    return 3.0 * W * sqrt(n * T)


def ogd_run(
    g: Graph,
    seq: WeightSequence,
    cfg: OgdConfig | None = None,
    compute_benchmark: bool = True,
) -> RegretTrace:
    """Run projected OGD over the weight rows; the cover for round t is
    committed before row t is revealed.

    The trace charges each round the integral cover's cost and also logs
    the fractional iterate's cost and the running additive bound
    3*W_bound*sqrt(n*t). The benchmark is the exact hindsight optimum
    when the graph is small enough to enumerate.
    """
    cfg = cfg or OgdConfig()
    if seq.n != g.n:
        raise ValueError("weight sequence width must equal vertex count")
    rows = seq.rows
    if rows.size and rows.max() > cfg.W_bound:
        raise ValueError("weights exceed the configured W_bound")
    n = g.n
    eu = np.array([u for u, _ in g.edges], dtype=np.int64)
    ev = np.array([v for _, v in g.edges], dtype=np.int64)
    scale = sqrt(n) / cfg.W_bound if cfg.step_mode == "scaled" else 1.0

    x = np.full(n, 0.5)
    records = []
    cum_int = 0.0
    cum_frac = 0.0
    for t in range(1, seq.T + 1):
        played = round_half(x)
        w = rows[t - 1]
        int_cost = float(w[list(played)].max()) if played else 0.0
        frac_cost = float((w * x).max()) if n else 0.0
        cum_int += int_cost
        cum_frac += frac_cost
        records.append(
            RoundRecord(
                t=t,
                action=played,
                value=int_cost,
                cumulative=cum_int,
                extras={
                    "frac_cost": frac_cost,
                    "cum_frac": cum_frac,
                    "bound_additive": theorem2_bound(cfg.W_bound, n, t),
                },
            )
        )
        i_star = int(np.argmax(w * x))
        y = x.copy()
        y[i_star] -= (scale / sqrt(t)) * w[i_star]
        try:
            x = _project(y, n, eu, ev, cfg)
        except ProjectionError as exc:
            raise ProjectionError(
                f"round {t}: {exc}", residual=exc.residual, cycles=exc.cycles, round_index=t
            ) from None

    benchmark = None
    if compute_benchmark and n <= MAX_HINDSIGHT_N:
        _, benchmark = best_static_vc_hindsight(g, seq)
    return RegretTrace(
        algorithm="ogd_vc",
        rows=tuple(records),
        benchmark=benchmark,
        meta={
            "n": n,
            "m": g.m,
            "T": seq.T,
            "step_mode": cfg.step_mode,
            "W_bound": cfg.W_bound,
        },
    )
