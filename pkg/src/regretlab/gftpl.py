"""Follow-the-perturbed-leader over a multi-instance GKP oracle.

One uniform perturbation vector a in [0, eta]^N is drawn before round 1.
Because the distinguisher rounds pay a_j * P exactly to the sets holding
item j, the perturbation a . Gamma_x is realized by handing the oracle N
extra rounds whose profit vectors are scaled by a_j — the oracle never
sees a perturbation, only a slightly longer instance list. Each round the
engine asks the oracle for a maximizer of history-plus-perturbation,
plays it, then reveals the true round.

The oracle contract is a callable (static, rounds) -> (item set, value)
that is either exactly optimal / additively eps-optimal, or
multiplicatively (1-eps')-optimal with nonnegative payoffs; which one is
declared by the config's eps schedule and drives auditing and error
checks, not the call signature.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from .gkp import MAX_BRUTE_N, distinguisher_set, gkp_profit, prefix_best_values
from .instances import GkpRound, GkpStatic
from .rng import SeededRng
from .traces import RegretTrace, RoundRecord

__all__ = [
    "GftplConfig",
    "PerturbationVector",
    "draw_perturbation",
    "default_eta",
    "epsilon_prime",
    "gftpl_run",
    "theorem3_bound",
]


@dataclass(frozen=True)
class GftplConfig:
    """Engine parameters.

    ``eta=None`` means "derive at run time" via default_eta from the
    horizon and the eps schedule. ``eps_schedule`` is ("additive", eps)
    or ("fptas", eps) with eps=None meaning the T^(-1/2) default; under
    "fptas" the relative error fed to the oracle should be
    epsilon_prime(eps, T, cfg).
    """

    N: int
    eta: float | None = None
    kappa: float = 2.0
    delta: float = 1.0
    G_gamma: float = 1.0
    G_f: float = 1.0
    F_M: float = 1.0
    eps_schedule: tuple = ("additive", None)

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be >= 1")
        if self.eta is not None and self.eta < 0:
            raise ValueError("eta must be nonnegative")
        if self.kappa < 1:
            raise ValueError("kappa must be >= 1")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if min(self.G_gamma, self.G_f, self.F_M) < 0:
            raise ValueError("G_gamma, G_f, F_M must be nonnegative")
        mode, eps = self.eps_schedule
        if mode not in ("additive", "fptas"):
            raise ValueError("eps schedule mode must be 'additive' or 'fptas'")
        if eps is not None and eps < 0:
            raise ValueError("eps must be nonnegative")


@dataclass(frozen=True, eq=False)
class PerturbationVector:
    """The single random draw a in [0, eta]^N of a run."""

    a: np.ndarray
    eta: float

    def __post_init__(self):
        a = np.asarray(self.a, dtype=np.float64)
        if a.ndim != 1:
            raise ValueError("a must be a vector")
        if a.size and (a.min() < 0 or a.max() > self.eta):
            raise ValueError("components must lie in [0, eta]")
        a.flags.writeable = False
        object.__setattr__(self, "a", a)


def draw_perturbation(cfg: GftplConfig, rng: SeededRng) -> PerturbationVector:
    """Draw the run's perturbation: N i.i.d. uniforms on [0, eta]."""
    if cfg.eta is None:
        raise ValueError("eta is unresolved; compute default_eta for the horizon first")
    a = np.array([rng.uniform(0.0, cfg.eta) for _ in range(cfg.N)])
    return PerturbationVector(a, cfg.eta)


def default_eta(cfg: GftplConfig, eps: float, T: int) -> float:
    """Perturbation range equating the stability and perturbation terms:
    sqrt(kappa * G_f * (G_f + 2*eps) * T / (delta * G_gamma))."""
    if cfg.G_gamma <= 0:
        raise ValueError("default eta needs G_gamma > 0")
    return sqrt(cfg.kappa * cfg.G_f * (cfg.G_f + 2.0 * eps) * T / (cfg.delta * cfg.G_gamma))


def epsilon_prime(eps: float, T: int, cfg: GftplConfig) -> float:
    """Relative oracle error eps / (T*F_M + N*eta*Gamma_M) that keeps the
    multiplicative contract within additive eps of the exact leader.

    Gamma_M, the largest translation-matrix entry, equals G_gamma here
    (distinguisher payoffs live in {0, P}).
    """
    if cfg.eta is None:
        raise ValueError("eta is unresolved; compute default_eta for the horizon first")
    denom = T * cfg.F_M + cfg.N * cfg.eta * cfg.G_gamma
    if denom <= 0:
        raise ValueError("epsilon_prime denominator must be positive")
    return eps / denom


def theorem3_bound(cfg: GftplConfig, eps: float, T: int) -> float:
    """Regret guarantee N*sqrt(kappa*G_f*G_gamma*(G_f+2*eps)/delta*T) + eps*T."""
    if T < 0:
        raise ValueError("T must be nonnegative")
    inner = cfg.kappa * cfg.G_f * cfg.G_gamma * (cfg.G_f + 2.0 * eps) / cfg.delta * T
    return cfg.N * sqrt(inner) + eps * T


def _resolve_eps(cfg: GftplConfig, T: int) -> float:
    eps = cfg.eps_schedule[1]
    if eps is None:
        return T ** -0.5 if T > 0 else 0.0
    return float(eps)


def gftpl_run(
    static: GkpStatic,
    rounds_stream,
    oracle,
    cfg: GftplConfig,
    rng: SeededRng,
) -> RegretTrace:
    """Run the perturbed leader for len(rounds_stream) rounds.

    Round t hands the oracle y^1..y^{t-1} plus the N perturbation-scaled
    distinguisher rounds, plays the oracle's set, then observes y^t. The
    trace records, per round, the observed payoff, the oracle's claimed
    perturbed objective, the best static payoff on the revealed prefix,
    the running regret against it, and the running theorem bound.
    """
    rounds_stream = list(rounds_stream)
    T = len(rounds_stream)
    n = static.n
    if cfg.N != n:
        raise ValueError("distinguisher-backed runs need N equal to the item count")
    for r in rounds_stream:
        if r.p.shape != (n,):
            raise ValueError("round profit vector length must match item count")
    mode, _ = cfg.eps_schedule
    eps = _resolve_eps(cfg, T)
    eta = cfg.eta if cfg.eta is not None else default_eta(cfg, eps, T)
    a = np.array([rng.uniform(0.0, eta) for _ in range(cfg.N)])
    pert = PerturbationVector(a, eta)

    base = distinguisher_set(static, P=cfg.delta)
    pert_rounds = [GkpRound(a[j] * base[j].p, base[j].B) for j in range(cfg.N)]

    plays: list[frozenset] = []
    payoffs: list[float] = []
    claimed: list[float] = []
    history: list[GkpRound] = []
    for t in range(1, T + 1):
        try:
            played, perturbed_obj = oracle(static, history + pert_rounds)
        except Exception as exc:
            raise RuntimeError(f"oracle failed at round {t}: {exc}") from exc
        y = rounds_stream[t - 1]
        payoff = gkp_profit(played, static, y)
        if mode == "fptas" and payoff < 0:
            raise ValueError(
                f"round {t}: negative payoff {payoff} under the fptas schedule "
                "(the multiplicative contract needs nonnegative payoffs)"
            )
        plays.append(frozenset(played))
        payoffs.append(payoff)
        claimed.append(float(perturbed_obj))
        history.append(y)

    benchmark = None
    prefix_best = None
    if n <= MAX_BRUTE_N:
        prefix_best = prefix_best_values(static, rounds_stream)
        benchmark = prefix_best[-1] if prefix_best else 0.0

    records = []
    cum = 0.0
    for t in range(1, T + 1):
        cum += payoffs[t - 1]
        extras = {
            "perturbed_obj": claimed[t - 1],
            "best_static_cum": prefix_best[t - 1] if prefix_best else float("nan"),
            "regret": (prefix_best[t - 1] - cum) if prefix_best else float("nan"),
            "theorem3_bound": theorem3_bound(cfg, eps, t),
        }
        records.append(
            RoundRecord(t=t, action=plays[t - 1], value=payoffs[t - 1], cumulative=cum, extras=extras)
        )
    return RegretTrace(
        algorithm="gftpl_gkp",
        rows=tuple(records),
        benchmark=benchmark,
        meta={
            "n": n,
            "T": T,
            "seed": rng.seed,
            "eps_mode": mode,
            "eps": eps,
            "eta": eta,
            "perturbation": tuple(float(x) for x in pert.a),
        },
    )
