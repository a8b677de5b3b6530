"""Parameter sweeps over the channel evolution, emitted as CSV tables.

Three sweep shapes cover the standard plots: probability versus cycle count
at fixed absorption, probability versus absorption at fixed cycle count, and
the full (absorption x cycles) grid for heatmaps.  Records are emitted in
deterministic (a, n) order.

CSV contract: header ``model,a,n,theta,p_h,p_v,p_b``; every real is rendered
with 17 significant digits (positional notation for magnitudes in
[1e-4, 1e17), scientific otherwise, zero always positional) so values
round-trip losslessly and output is byte-stable; lines end with a single
line feed, including the last.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import CycleConfig, evolve

__all__ = [
    "SweepRecord",
    "run_single",
    "sweep_cycles",
    "sweep_absorption",
    "sweep_grid",
    "format_real",
    "to_csv",
    "write_csv",
    "CSV_HEADER",
]

CSV_HEADER = "model,a,n,theta,p_h,p_v,p_b"

_SUM_TOL = 1e-10


@dataclass(frozen=True)
class SweepRecord:
    """One CSV row: an experiment's parameters and outcome probabilities."""

    model: str
    a: float
    n: int
    theta: float
    p_h: float
    p_v: float
    p_b: float

    def __post_init__(self):
        total = self.p_h + self.p_v + self.p_b
        if abs(total - 1.0) > _SUM_TOL:
            raise ValueError(f"probabilities must sum to 1, got {total!r}")


def run_single(config: CycleConfig) -> SweepRecord:
    """Evaluate one configuration into a record."""
    probs, _ = evolve(config)
    return SweepRecord(
        model=config.model.value,
        a=config.a,
        n=config.n,
        theta=config.resolved_theta(),
        p_h=probs.p_h,
        p_v=probs.p_v,
        p_b=probs.p_b,
    )


def sweep_cycles(a, n_max, model, theta=None) -> list[SweepRecord]:
    """Records for N = 1..n_max at fixed absorption.

    With theta=None each row uses its own switching angle pi/(2N).
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [
        run_single(CycleConfig(model=model, a=a, n=n, theta=theta))
        for n in range(1, int(n_max) + 1)
    ]


def _absorption_grid(steps: int) -> list[float]:
    if steps < 2:
        raise ValueError("steps must be >= 2")
    return [i / (int(steps) - 1) for i in range(int(steps))]


def sweep_absorption(n, steps, model, theta=None) -> list[SweepRecord]:
    """Records for absorption 0..1 in `steps` equal steps at fixed N.

    Endpoints 0 and 1 are always included exactly.
    """
    return [
        run_single(CycleConfig(model=model, a=a, n=n, theta=theta))
        for a in _absorption_grid(steps)
    ]


def sweep_grid(n_max, a_steps, model, theta=None) -> list[SweepRecord]:
    """The full Cartesian product: absorption outer, cycles inner, both ascending."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [
        run_single(CycleConfig(model=model, a=a, n=n, theta=theta))
        for a in _absorption_grid(a_steps)
        for n in range(1, int(n_max) + 1)
    ]


def format_real(x: float) -> str:
    """Render a float deterministically and round-trip exact.

    Up to 17 significant digits, zero padded, so float() recovers the exact
    value.  Positional notation for 0 and for magnitudes in [1e-4, 1e17);
    scientific notation otherwise.
    """
    v = float(x)
    if v != 0.0 and (abs(v) < 1e-4 or abs(v) >= 1e17):
        return np.format_float_scientific(v, precision=16, unique=False)
    return np.format_float_positional(
        v, precision=17, unique=False, fractional=False, trim="k"
    )


def to_csv(records) -> str:
    """The full CSV text: header plus one line per record, LF terminated."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                (
                    r.model,
                    format_real(r.a),
                    str(r.n),
                    format_real(r.theta),
                    format_real(r.p_h),
                    format_real(r.p_v),
                    format_real(r.p_b),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(records, path) -> None:
    """Write to_csv(records) to `path` with LF line endings on any platform."""
    with open(path, "w", newline="") as f:
        f.write(to_csv(records))
