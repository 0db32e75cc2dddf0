"""Per-round regret ledgers and their CSV surface.

A trace is the complete record of one online run: per-round action, the
cost or payoff it incurred, and the exact running sum. Traces are
validated on construction — the cumulative column must be the exact
(floating-point-equal) prefix sum of the per-round column and round
indices must start at 1 and increase strictly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

__all__ = ["RoundRecord", "RegretTrace", "trace_to_csv"]


def _fmt(x: float) -> str:
    return repr(float(x))


def format_action(action) -> str:
    """Semicolon-joined rendering of a played action for CSV cells."""
    if isinstance(action, (set, frozenset)):
        return ";".join(str(i) for i in sorted(action))
    if isinstance(action, (tuple, list)):
        return ";".join(str(a) for a in action)
    return str(action)


@dataclass(frozen=True)
class RoundRecord:
    """One round: the action played, its cost-or-payoff, the running sum,
    and any algorithm-specific extra columns."""

    t: int
    action: object
    value: float
    cumulative: float
    extras: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class RegretTrace:
    """Full run record plus the hindsight benchmark and run metadata.

    ``algorithm`` identifies the objective direction ("ogd_vc" and
    "gap_solver" minimize cost, "gftpl_gkp" maximizes payoff) and picks
    the CSV column layout. ``benchmark`` is the best static action's
    total in hindsight, when the run computed one.
    """

    algorithm: str
    rows: tuple[RoundRecord, ...]
    benchmark: float | None = None
    meta: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        running = 0.0
        prev_t = 0
        for k, r in enumerate(self.rows):
            if k == 0 and r.t != 1:
                raise ValueError("round indices must start at 1")
            if r.t <= prev_t:
                raise ValueError("round indices must increase strictly")
            prev_t = r.t
            running += r.value
            if r.cumulative != running:
                raise ValueError(
                    f"t={r.t}: cumulative {r.cumulative!r} is not the exact "
                    f"prefix sum {running!r}"
                )

    @property
    def T(self) -> int:
        return len(self.rows)

    @property
    def cumulative(self) -> float:
        return self.rows[-1].cumulative if self.rows else 0.0


# column layouts: (csv name, record accessor) pairs per algorithm id
_LAYOUTS = {
    "ogd_vc": (
        ("t", "t"),
        ("played_set", "action"),
        ("int_cost", "value"),
        ("frac_cost", "frac_cost"),
        ("cum_int", "cumulative"),
        ("cum_frac", "cum_frac"),
        ("bound_additive", "bound_additive"),
    ),
    "gftpl_gkp": (
        ("t", "t"),
        ("played_set", "action"),
        ("payoff", "value"),
        ("cum_payoff", "cumulative"),
        ("best_static_cum", "best_static_cum"),
        ("regret", "regret"),
        ("theorem3_bound", "theorem3_bound"),
    ),
    "gap_solver": (
        ("t", "t"),
        ("played_set", "action"),
        ("cost", "value"),
        ("cum_cost", "cumulative"),
    ),
}


def trace_to_csv(trace: RegretTrace) -> str:
    """Render a trace in its algorithm's CSV layout (LF line endings)."""
    layout = _LAYOUTS.get(trace.algorithm, _LAYOUTS["gap_solver"])
    lines = [",".join(name for name, _ in layout)]
    for r in trace.rows:
        cells = []
        for _, key in layout:
            if key == "t":
                cells.append(str(r.t))
            elif key == "action":
                cells.append(format_action(r.action))
            elif key == "value":
                cells.append(_fmt(r.value))
            elif key == "cumulative":
                cells.append(_fmt(r.cumulative))
            else:
                cells.append(_fmt(r.extras[key]))
        lines.append(",".join(cells))
    return "\n".join(lines)
