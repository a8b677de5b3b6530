"""Per-cycle channel evolution of a photon interrogating a particle.

The photon starts in |H><H| and goes through N identical cycles.  Each cycle
rotates the polarization by theta, couples |V> to the absorbed state |B> with
interaction probability ``a``, and ends with a projective measurement of the
{|B>, not-|B>} subspaces.  Two particle models are implemented:

* ``COHERENT`` -- the particle acts as a coherent absorber.  One cycle maps

      rho' = M_B rho M_B^+  +  Ab U M_nb rho M_nb^+ U^+ Ab^+

  followed by the {M_B, M_nb} projective dephasing (zeroing coherences
  between |B> and the rest).  Without that dephasing the emission term of
  ``Ab`` could coherently return amplitude from |B> in later cycles; the
  per-cycle measurement is exactly what makes absorption irreversible.

* ``COLLAPSE`` -- the particle itself acts as a projective which-arm
  measurement with probability ``a`` per cycle and does nothing otherwise.
  One cycle applies the Kraus set

      { M_B,  sqrt(1-a) U_nb,  sqrt(a) M_H U_nb,  sqrt(a) S U_nb }

  with U_nb = U M_nb and S = |B><V| (photon found in the particle's arm is
  absorbed).

* ``ABSENT`` -- no particle in the arm; identical to COHERENT with a = 0.

Both steps are trace preserving, positivity preserving, keep |B><B| as an
exact fixed point, and never decrease the |B> population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from . import linalg, operators

__all__ = [
    "ParticleModel",
    "CycleConfig",
    "Probabilities",
    "initial_state",
    "step_coherent",
    "step_collapse",
    "evolve",
    "probabilities",
    "closed_form_no_particle",
    "closed_form_perfect_absorber",
    "kraus_operators",
    "HERMITICITY_TOL",
    "TRACE_TOL",
    "PSD_TOL",
]

# Default state-validity tolerances: double-precision accumulation over the
# cycle counts used here stays well inside these.
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10

# Tiny negative diagonal entries within this band are clamped to 0 when
# reading probabilities; the state itself is never modified.
_CLAMP_TOL = 1e-12


class ParticleModel(Enum):
    """Which object sits in the interrogated arm."""

    COHERENT = "coherent"
    COLLAPSE = "collapse"
    ABSENT = "absent"


class Probabilities(NamedTuple):
    """Outcome probabilities (photon in H, photon in V, photon absorbed)."""

    p_h: float
    p_v: float
    p_b: float


@dataclass(frozen=True)
class CycleConfig:
    """One interrogation experiment.

    Parameters
    ----------
    model : ParticleModel or its string value
    a : float
        Interaction (absorption) probability per cycle, in [0, 1].  Forced
        to 0 for the ABSENT model.
    n : int
        Number of cycles, >= 1.
    theta : float or None
        Per-cycle rotation in radians; None selects the switching angle
        pi/(2n) that walks |H> to |V> when nothing absorbs.
    """

    model: ParticleModel
    a: float
    n: int
    theta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "model", ParticleModel(self.model))
        if self.n < 1 or self.n != int(self.n):
            raise ValueError("cycle count n must be a positive integer")
        object.__setattr__(self, "n", int(self.n))
        a = float(self.a)
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"absorption probability must be in [0, 1], got {self.a!r}")
        object.__setattr__(self, "a", 0.0 if self.model is ParticleModel.ABSENT else a)
        if self.theta is not None:
            t = float(self.theta)
            if not math.isfinite(t):
                raise ValueError("theta must be finite")
            object.__setattr__(self, "theta", t)

    def resolved_theta(self) -> float:
        """The rotation angle actually used: explicit theta, or pi/(2n)."""
        if self.theta is not None:
            return self.theta
        return operators.switching_angle(self.n)


def initial_state() -> np.ndarray:
    """The starting state |H><H|."""
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def _require_density_matrix(rho) -> np.ndarray:
    """Validate rho as a 3x3 density matrix; return it as a complex array."""
    m = np.asarray(rho, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 density matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ValueError("density matrix entries must be finite")
    if not linalg.is_hermitian(m, HERMITICITY_TOL):
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(m).real - 1.0) > TRACE_TOL or abs(np.trace(m).imag) > TRACE_TOL:
        raise ValueError("density matrix must have unit trace")
    if not linalg.is_psd(m, PSD_TOL):
        raise ValueError("density matrix must be positive semidefinite")
    return m


def _step_coherent(rho: np.ndarray, k: np.ndarray) -> np.ndarray:
    """One coherent-model cycle with k = absorption(a) @ rotator3(theta).

    Assumes a valid input state; callers that accept user input validate
    first.  The explicit index juggling keeps this allocation-light: it is
    the inner loop of every sweep.
    """
    survivor = rho.copy()
    survivor[2, :] = 0.0
    survivor[:, 2] = 0.0
    out = k @ survivor @ k.conj().T
    out[2, 2] += rho[2, 2]
    # projective {B, not-B} dephasing
    out[2, :2] = 0.0
    out[:2, 2] = 0.0
    return out


def _step_collapse(rho: np.ndarray, u_nb: np.ndarray, a: float) -> np.ndarray:
    """One collapse-model cycle with u_nb = rotator3(theta) @ projector(NOT_B).

    Applies the Kraus set {M_B, sqrt(1-a) U_nb, sqrt(a) M_H U_nb,
    sqrt(a) S U_nb} written out by entries: the last three terms act on
    rho_u = U_nb rho U_nb^+, which lives entirely in the {H, V} block.
    """
    rho_u = u_nb @ rho @ u_nb.conj().T
    out = (1.0 - a) * rho_u
    out[0, 0] += a * rho_u[0, 0]  # M_H branch: photon found in H, particle intact
    out[2, 2] += a * rho_u[1, 1]  # S branch: photon found in V, absorbed
    out[2, 2] += rho[2, 2]  # M_B: already-absorbed population is frozen
    return out


def step_coherent(rho, theta: float, a: float) -> np.ndarray:
    """One cycle of the coherent-absorber channel on a valid density matrix.

    Raises
    ------
    ValueError
        If rho violates the density-matrix invariants or a is outside [0, 1].
    """
    m = _require_density_matrix(rho)
    k = operators.absorption(a) @ operators.rotator3(theta)
    return _step_coherent(m, k)


def step_collapse(rho, theta: float, a: float) -> np.ndarray:
    """One cycle of the measuring-particle channel on a valid density matrix.

    Raises
    ------
    ValueError
        If rho violates the density-matrix invariants or a is outside [0, 1].
    """
    m = _require_density_matrix(rho)
    av = float(a)
    if not 0.0 <= av <= 1.0:
        raise ValueError(f"absorption probability must be in [0, 1], got {a!r}")
    u_nb = operators.rotator3(theta) @ operators.projector(operators.NOT_B)
    return _step_collapse(m, u_nb, av)


def evolve(config: CycleConfig) -> tuple[Probabilities, np.ndarray]:
    """Run config.n cycles from |H><H|; return final probabilities and state."""
    theta = config.resolved_theta()
    rho = initial_state()
    if config.model is ParticleModel.COLLAPSE:
        u_nb = operators.rotator3(theta) @ operators.projector(operators.NOT_B)
        for _ in range(config.n):
            rho = _step_collapse(rho, u_nb, config.a)
    else:
        k = operators.absorption(config.a) @ operators.rotator3(theta)
        for _ in range(config.n):
            rho = _step_coherent(rho, k)
    return probabilities(rho), rho


def probabilities(rho) -> Probabilities:
    """Diagonal of rho as (p_h, p_v, p_b), real parts.

    Floating-point dust within -1e-12 of zero is clamped to 0 in the returned
    triple only; the state is untouched.
    """
    m = np.asarray(rho, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 density matrix, got shape {m.shape}")
    diag = m.diagonal().real
    return Probabilities(*(0.0 if -_CLAMP_TOL <= p < 0.0 else float(p) for p in diag))


def closed_form_no_particle(theta: float, n: int) -> Probabilities:
    """Exact outcome probabilities with nothing in the arm: n plain rotations.

    (cos^2(n theta), sin^2(n theta), 0); the accumulated angle is reduced
    modulo 2*pi before the trig evaluation.
    """
    if n < 0 or n != int(n):
        raise ValueError("n must be a non-negative integer")
    phi = math.fmod(int(n) * float(theta), 2.0 * math.pi)
    c, s = math.cos(phi), math.sin(phi)
    return Probabilities(c * c, s * s, 0.0)


def closed_form_perfect_absorber(theta: float, n: int) -> Probabilities:
    """Exact outcome probabilities against a perfect absorber (a = 1).

    Each cycle the photon survives in |H> with probability cos^2(theta), so
    (cos^{2n}(theta), 0, 1 - cos^{2n}(theta)).
    """
    if n < 0 or n != int(n):
        raise ValueError("n must be a non-negative integer")
    p_h = math.cos(float(theta)) ** (2 * int(n))
    return Probabilities(p_h, 0.0, 1.0 - p_h)


def kraus_operators(model: ParticleModel, theta: float, a: float) -> list[np.ndarray]:
    """The Kraus set whose map equals one cycle of the given model.

    Satisfies sum_i K_i^+ K_i = I; applying sum_i K_i rho K_i^+ reproduces
    the corresponding step function exactly.
    """
    model = ParticleModel(model)
    a_eff = 0.0 if model is ParticleModel.ABSENT else float(a)
    m_b = operators.projector(operators.Basis.B)
    m_nb = operators.projector(operators.NOT_B)
    if model is ParticleModel.COLLAPSE:
        if not 0.0 <= a_eff <= 1.0:
            raise ValueError(f"absorption probability must be in [0, 1], got {a!r}")
        u_nb = operators.rotator3(theta) @ m_nb
        m_h = operators.projector(operators.Basis.H)
        s = np.zeros((3, 3), dtype=complex)
        s[operators.Basis.B, operators.Basis.V] = 1.0
        return [
            m_b,
            math.sqrt(1.0 - a_eff) * u_nb,
            math.sqrt(a_eff) * (m_h @ u_nb),
            math.sqrt(a_eff) * (s @ u_nb),
        ]
    # coherent (and absent): survivor branch followed by {B, not-B} dephasing
    branch = operators.absorption(a_eff) @ operators.rotator3(theta) @ m_nb
    return [m_b, m_b @ branch, m_nb @ branch]
