"""Monte Carlo trajectory unraveling of the channel evolution.

This module is validation plumbing: it simulates individual photon
trajectories whose outcome statistics must average to the deterministic
density-matrix results, giving an independent statistical cross-check.

Randomness is counter based.  Trajectory i of a seed owns the stream key
mix64(seed + (i+1)*PHI); its j-th uniform draw is built from
mix64(key + (j+1)*PHI).  Draws therefore depend only on (seed, trajectory
index, draw index), so estimates are reproducible bit for bit regardless of
execution order or batching.  Draw order per trajectory is fixed: each cycle
consumes one draw for the absorption/measurement decision (the collapse model
consumes a second draw in the cycles where the particle measures), and one
final draw picks H versus V from the surviving amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolution import CycleConfig, ParticleModel, Probabilities
from .operators import Basis, rotator2, rotator3, absorption

__all__ = [
    "TrajectoryConfig",
    "OutcomeEstimate",
    "trajectory_key",
    "trajectory_keys",
    "sample_trajectory",
    "estimate",
    "compare",
]

_PHI = np.uint64(0x9E3779B97F4A7C15)
_U64_MAX = 2**64 - 1


def _mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer: a bijective scramble of 64-bit words."""
    x = x ^ (x >> np.uint64(30))
    x = x * np.uint64(0xBF58476D1CE4E5B9)
    x = x ^ (x >> np.uint64(27))
    x = x * np.uint64(0x94D049BB133111EB)
    x = x ^ (x >> np.uint64(31))
    return x


def _check_u64(value: int, name: str) -> int:
    v = int(value)
    if v != value or not 0 <= v <= _U64_MAX:
        raise ValueError(f"{name} must be an integer in [0, 2^64)")
    return v


def _keys_for(seed: int, indices: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps silently only for arrays, so stay vectorized
    return _mix64(np.uint64(seed) + (indices + np.uint64(1)) * _PHI)


def trajectory_keys(seed: int, count: int) -> np.ndarray:
    """Stream keys for trajectories 0..count-1 of `seed`, as a uint64 array."""
    seed = _check_u64(seed, "seed")
    if count < 1:
        raise ValueError("count must be >= 1")
    return _keys_for(seed, np.arange(count, dtype=np.uint64))


def trajectory_key(seed: int, index: int) -> int:
    """The stream key of one trajectory; estimate() uses exactly these."""
    seed = _check_u64(seed, "seed")
    index = _check_u64(index, "index")
    return int(_keys_for(seed, np.array([index], dtype=np.uint64))[0])


def _uniform(keys: np.ndarray, counters: np.ndarray) -> np.ndarray:
    """Next uniform [0, 1) draw for each stream; callers bump the counters."""
    bits = _mix64(keys + (counters + np.uint64(1)) * _PHI)
    # top 53 bits -> exact doubles in [0, 1); never rounds up to 1.0
    return (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53


def _run_coherent(keys: np.ndarray, n: int, theta: float, a: float):
    """Trajectory outcomes for the coherent model, one per stream key.

    Keeps a pure 3-amplitude state per trajectory: each cycle applies the
    rotation and the absorption coupling, draws the {B, not-B} measurement
    with Born probability |amp_B|^2, and renormalizes the surviving branch.
    Returns (outcomes int8 array, max |norm^2 - 1| seen after renormalizing).
    """
    m = keys.shape[0]
    k_t = (absorption(a) @ rotator3(theta)).T
    outcome = np.full(m, int(Basis.B), dtype=np.int8)
    idx = np.arange(m, dtype=np.int64)
    ctr = np.zeros(m, dtype=np.uint64)
    amps = np.zeros((m, 3), dtype=np.complex128)
    amps[:, 0] = 1.0
    max_norm_err = 0.0
    for _ in range(n):
        amps = amps @ k_t
        weights = np.abs(amps) ** 2
        u = _uniform(keys, ctr)
        ctr += np.uint64(1)
        alive = u >= weights[:, 2]
        amps, keys, ctr, idx = amps[alive], keys[alive], ctr[alive], idx[alive]
        amps[:, 2] = 0.0
        norm = np.sqrt(np.abs(amps[:, 0]) ** 2 + np.abs(amps[:, 1]) ** 2)
        amps /= norm[:, None]
        if amps.shape[0]:
            err = np.abs((np.abs(amps) ** 2).sum(axis=1) - 1.0).max()
            max_norm_err = max(max_norm_err, float(err))
    p_v = np.abs(amps[:, 1]) ** 2
    u = _uniform(keys, ctr)
    is_v = u < p_v
    outcome[idx[is_v]] = int(Basis.V)
    outcome[idx[~is_v]] = int(Basis.H)
    return outcome, max_norm_err


def _run_collapse(keys: np.ndarray, n: int, theta: float, a: float):
    """Trajectory outcomes for the collapse model, one per stream key.

    Amplitudes stay real: the state is rotated in the {H, V} plane each
    cycle; with probability `a` the particle measures which arm the photon
    is in, absorbing the V branch (outcome B) and collapsing the H branch
    back to |H>.  Returns (outcomes, max |norm^2 - 1| seen after a cycle).
    """
    m = keys.shape[0]
    r_t = rotator2(theta).T.real  # rotation is real; real amplitudes suffice
    outcome = np.full(m, int(Basis.B), dtype=np.int8)
    idx = np.arange(m, dtype=np.int64)
    ctr = np.zeros(m, dtype=np.uint64)
    amps = np.zeros((m, 2), dtype=np.float64)
    amps[:, 0] = 1.0
    max_norm_err = 0.0
    for _ in range(n):
        amps = amps @ r_t
        u1 = _uniform(keys, ctr)
        ctr += np.uint64(1)
        measured = u1 < a
        absorbed = np.zeros(amps.shape[0], dtype=bool)
        if measured.any():
            u2 = _uniform(keys[measured], ctr[measured])
            ctr[measured] += np.uint64(1)
            absorbed[measured] = u2 < amps[measured, 1] ** 2
            collapsed = measured & ~absorbed
            amps[collapsed, 0] = 1.0
            amps[collapsed, 1] = 0.0
        alive = ~absorbed
        amps, keys, ctr, idx = amps[alive], keys[alive], ctr[alive], idx[alive]
        if amps.shape[0]:
            err = np.abs((amps**2).sum(axis=1) - 1.0).max()
            max_norm_err = max(max_norm_err, float(err))
    p_v = amps[:, 1] ** 2
    u = _uniform(keys, ctr)
    is_v = u < p_v
    outcome[idx[is_v]] = int(Basis.V)
    outcome[idx[~is_v]] = int(Basis.H)
    return outcome, max_norm_err


def _run(cycle: CycleConfig, keys: np.ndarray):
    theta = cycle.resolved_theta()
    if cycle.model is ParticleModel.COLLAPSE:
        return _run_collapse(keys, cycle.n, theta, cycle.a)
    return _run_coherent(keys, cycle.n, theta, cycle.a)


@dataclass(frozen=True)
class TrajectoryConfig:
    """A Monte Carlo run: which experiment, how many samples, which seed."""

    cycle: CycleConfig
    trajectories: int
    seed: int = 0

    def __post_init__(self):
        if self.trajectories < 1 or self.trajectories != int(self.trajectories):
            raise ValueError("trajectories must be a positive integer")
        object.__setattr__(self, "trajectories", int(self.trajectories))
        object.__setattr__(self, "seed", _check_u64(self.seed, "seed"))


@dataclass(frozen=True)
class OutcomeEstimate:
    """Aggregated Monte Carlo outcome statistics.

    counts holds (n_h, n_v, n_b) with sum equal to `trajectories`; p_hat is
    counts/trajectories exactly; stderr is the per-outcome binomial standard
    error sqrt(p_hat (1 - p_hat) / trajectories).  max_norm_error records the
    worst per-cycle |norm^2 - 1| of any surviving trajectory amplitude, a
    cheap internal health check.
    """

    counts: tuple[int, int, int]
    trajectories: int
    p_hat: Probabilities
    stderr: tuple[float, float, float]
    max_norm_error: float


def sample_trajectory(cycle: CycleConfig, key: int) -> Basis:
    """Outcome of the single trajectory owning `key` (see trajectory_key)."""
    keys = np.array([_check_u64(key, "key")], dtype=np.uint64)
    outcome, _ = _run(cycle, keys)
    return Basis(int(outcome[0]))


def estimate(config: TrajectoryConfig) -> OutcomeEstimate:
    """Run all trajectories of `config` and aggregate outcome counts.

    Deterministic: a fixed (cycle, trajectories, seed) always produces the
    identical estimate, bit for bit.
    """
    keys = trajectory_keys(config.seed, config.trajectories)
    outcome, max_norm_err = _run(config.cycle, keys)
    counts = np.bincount(outcome, minlength=3)
    m = config.trajectories
    p_hat = counts / m
    stderr = np.sqrt(p_hat * (1.0 - p_hat) / m)
    return OutcomeEstimate(
        counts=(int(counts[0]), int(counts[1]), int(counts[2])),
        trajectories=m,
        p_hat=Probabilities(*p_hat),
        stderr=(float(stderr[0]), float(stderr[1]), float(stderr[2])),
        max_norm_error=max_norm_err,
    )


def compare(est: OutcomeEstimate, exact: Probabilities) -> np.ndarray:
    """Per-outcome z-scores (p_hat - exact)/stderr.

    The standard error is floored at 1/(2M) so exact agreement at p_hat in
    {0, 1} yields z = 0 instead of 0/0.
    """
    floor = 1.0 / (2.0 * est.trajectories)
    stderr = np.maximum(np.asarray(est.stderr), floor)
    return (np.asarray(est.p_hat) - np.asarray(exact)) / stderr
