"""Self-contained invariant suite: named checks over the whole pipeline.

Each check exercises one property the simulator is built on (operator
unitarity, channel trace preservation, positivity, closed-form agreement,
model equivalence at the extremes, Monte Carlo concordance).  All sampling
is seeded, so two runs produce byte-identical reports.

Operators and evolution steps are reached through their modules on purpose:
replacing, say, ``operators.absorption`` with a broken variant makes the
corresponding check fail by name, which is how the suite's own sensitivity
is tested.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import evolution, linalg, operators, oracle

__all__ = ["CheckResult", "run_checks", "render_report"]

_RNG_SEED = 20240917


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _random_state(rng) -> np.ndarray:
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def _random_params(rng) -> tuple[float, float]:
    return float(rng.uniform(0.0, np.pi)), float(rng.uniform(0.0, 1.0))


def _check_operator_unitarity() -> CheckResult:
    rng = np.random.default_rng(_RNG_SEED)
    eye2, eye3 = np.eye(2), np.eye(3)
    dev = 0.0
    for theta in rng.uniform(0.0, 2.0 * np.pi, size=100):
        u2 = operators.rotator2(theta)
        u3 = operators.rotator3(theta)
        dev = max(dev, np.abs(u2 @ u2.conj().T - eye2).max())
        dev = max(dev, np.abs(u3 @ u3.conj().T - eye3).max())
    for a in np.linspace(0.0, 1.0, 101):
        ab = operators.absorption(a)
        dev = max(dev, np.abs(ab @ ab.conj().T - eye3).max())
    return CheckResult(
        "operator-unitarity", dev <= 1e-13, f"max |U U^+ - I| = {dev:.3e} (tol 1e-13)"
    )


def _check_projector_algebra() -> CheckResult:
    labels = [operators.Basis.H, operators.Basis.V, operators.Basis.B]
    ps = {lab: operators.projector(lab) for lab in labels}
    m_nb = operators.projector(operators.NOT_B)
    ok = np.array_equal(ps[operators.Basis.B] + m_nb, np.eye(3))
    ok &= np.array_equal(ps[operators.Basis.H] + ps[operators.Basis.V], m_nb)
    for x in labels:
        ok &= np.array_equal(ps[x] @ ps[x], ps[x])
        ok &= np.array_equal(ps[x], ps[x].conj().T)
        for y in labels:
            if x != y:
                ok &= np.array_equal(ps[x] @ ps[y], np.zeros((3, 3)))
    return CheckResult(
        "projector-algebra", bool(ok), "completeness, idempotence, orthogonality exact"
    )


def _check_rotator_closed_form() -> CheckResult:
    power_dev = 0.0
    for theta in (0.3, np.pi / 7.0, 1.0, 2.5, np.pi / 2.0):
        r1 = operators.rotator2(theta)
        acc = np.eye(2, dtype=complex)
        for n in range(1, 401):
            acc = r1 @ acc
            power_dev = max(
                power_dev, np.abs(operators.rotator_power(theta, n) - acc).max()
            )
    recon_dev = 0.0
    for theta in np.linspace(0.0, 2.0 * np.pi, 100, endpoint=False):
        eig = operators.rotator_eigen(theta)
        recon = sum(
            eig.values[k] * np.outer(eig.vectors[:, k], eig.vectors[:, k].conj())
            for k in range(2)
        )
        recon_dev = max(recon_dev, np.abs(recon - operators.rotator2(theta)).max())
    passed = power_dev <= 1e-12 and recon_dev <= 1e-13
    return CheckResult(
        "rotator-closed-form",
        bool(passed),
        f"power dev {power_dev:.3e} (tol 1e-12), "
        f"eigen reconstruction dev {recon_dev:.3e} (tol 1e-13)",
    )


def _check_kraus_completeness() -> CheckResult:
    rng = np.random.default_rng(_RNG_SEED + 1)
    eye3 = np.eye(3)
    dev = 0.0
    for model in (evolution.ParticleModel.COHERENT, evolution.ParticleModel.COLLAPSE):
        for _ in range(25):
            theta, a = _random_params(rng)
            ks = evolution.kraus_operators(model, theta, a)
            total = sum(k.conj().T @ k for k in ks)
            dev = max(dev, np.abs(total - eye3).max())
    return CheckResult(
        "kraus-completeness", dev <= 1e-13, f"max |sum K^+K - I| = {dev:.3e} (tol 1e-13)"
    )


def _step_samples(count: int):
    rng = np.random.default_rng(_RNG_SEED + 2)
    for _ in range(count):
        theta, a = _random_params(rng)
        rho = _random_state(rng)
        yield rho, theta, a


def _check_trace_preservation() -> CheckResult:
    dev = 0.0
    for rho, theta, a in _step_samples(200):
        for step in (evolution.step_coherent, evolution.step_collapse):
            out = step(rho, theta, a)
            dev = max(dev, abs(np.trace(out) - np.trace(rho)))
    return CheckResult(
        "trace-preservation", dev <= 1e-13, f"max trace drift {dev:.3e} (tol 1e-13)"
    )


def _check_positivity_preservation() -> CheckResult:
    herm_dev = 0.0
    min_eig = np.inf
    ok = True
    for rho, theta, a in _step_samples(200):
        for step in (evolution.step_coherent, evolution.step_collapse):
            out = step(rho, theta, a)
            herm_dev = max(herm_dev, np.abs(out - out.conj().T).max())
            ok &= linalg.is_hermitian(out, evolution.HERMITICITY_TOL)
            eigs = np.linalg.eigvalsh(0.5 * (out + out.conj().T))
            min_eig = min(min_eig, eigs.min())
            ok &= linalg.is_psd(out, evolution.PSD_TOL)
    return CheckResult(
        "positivity-preservation",
        bool(ok),
        f"max hermiticity dev {herm_dev:.3e} (tol 1e-12), "
        f"min eigenvalue {min_eig:.3e} (floor -1e-10)",
    )


def _check_absorbed_fixed_point() -> CheckResult:
    rho_b = np.zeros((3, 3), dtype=complex)
    rho_b[2, 2] = 1.0
    rng = np.random.default_rng(_RNG_SEED + 3)
    ok = True
    for _ in range(20):
        theta, a = _random_params(rng)
        ok &= np.array_equal(evolution.step_coherent(rho_b, theta, a), rho_b)
        ok &= np.array_equal(evolution.step_collapse(rho_b, theta, a), rho_b)
    return CheckResult(
        "absorbed-state-fixed-point", bool(ok), "|B><B| invariant exactly, both models"
    )


def _check_absorbed_monotone() -> CheckResult:
    worst = 0.0
    for rho, theta, a in _step_samples(200):
        for step in (evolution.step_coherent, evolution.step_collapse):
            out = step(rho, theta, a)
            worst = max(worst, float(rho[2, 2].real - out[2, 2].real))
    return CheckResult(
        "absorbed-population-monotone",
        worst <= 1e-13,
        f"max decrease {worst:.3e} (tol 1e-13)",
    )


def _check_limiting_closed_forms() -> CheckResult:
    dev = 0.0
    for n in range(1, 101):
        absent = evolution.CycleConfig(model=evolution.ParticleModel.ABSENT, a=0.0, n=n)
        theta = absent.resolved_theta()
        probs, _ = evolution.evolve(absent)
        dev = max(
            dev,
            np.abs(
                np.asarray(probs)
                - np.asarray(evolution.closed_form_no_particle(theta, n))
            ).max(),
        )
        bomb = evolution.CycleConfig(model=evolution.ParticleModel.COHERENT, a=1.0, n=n)
        probs, _ = evolution.evolve(bomb)
        dev = max(
            dev,
            np.abs(
                np.asarray(probs)
                - np.asarray(evolution.closed_form_perfect_absorber(theta, n))
            ).max(),
        )
    return CheckResult(
        "limiting-closed-forms",
        dev <= 1e-10,
        f"max closed-form deviation {dev:.3e} over N = 1..100 (tol 1e-10)",
    )


def _check_perfect_switching() -> CheckResult:
    min_pv = 1.0
    for n in range(1, 101):
        cfg = evolution.CycleConfig(model=evolution.ParticleModel.ABSENT, a=0.0, n=n)
        probs, _ = evolution.evolve(cfg)
        min_pv = min(min_pv, probs.p_v)
    return CheckResult(
        "perfect-switching",
        min_pv >= 1.0 - 1e-10,
        f"min p_v = {min_pv:.12f} over N = 1..100 with auto theta (needs >= 1-1e-10)",
    )


def _check_model_equivalence() -> CheckResult:
    rng = np.random.default_rng(_RNG_SEED + 4)
    devs = {}
    for a in (0.0, 1.0):
        dev = 0.0
        for _ in range(100):
            theta = float(rng.uniform(0.0, np.pi))
            rho = _random_state(rng)
            dev = max(
                dev,
                np.abs(
                    evolution.step_coherent(rho, theta, a)
                    - evolution.step_collapse(rho, theta, a)
                ).max(),
            )
        devs[a] = dev
    passed = devs[0.0] <= 1e-12 and devs[1.0] <= 1e-12
    return CheckResult(
        "model-equivalence-extremes",
        bool(passed),
        f"max step gap {devs[0.0]:.3e} at a=0, {devs[1.0]:.3e} at a=1 (tol 1e-12)",
    )


def _check_oracle_concordance() -> CheckResult:
    cells = [
        (evolution.ParticleModel.COHERENT, 0.5, 10),
        (evolution.ParticleModel.COLLAPSE, 0.5, 10),
        (evolution.ParticleModel.COHERENT, 1.0, 24),
    ]
    worst = 0.0
    for model, a, n in cells:
        cfg = evolution.CycleConfig(model=model, a=a, n=n)
        exact, _ = evolution.evolve(cfg)
        est = oracle.estimate(oracle.TrajectoryConfig(cycle=cfg, trajectories=20000, seed=0))
        worst = max(worst, float(np.abs(oracle.compare(est, exact)).max()))
    return CheckResult(
        "oracle-concordance",
        worst <= 4.0,
        f"max |z| = {worst:.3f} over 3 cells at 20000 trajectories (tol 4)",
    )


_CHECKS = [
    ("operator-unitarity", _check_operator_unitarity),
    ("projector-algebra", _check_projector_algebra),
    ("rotator-closed-form", _check_rotator_closed_form),
    ("kraus-completeness", _check_kraus_completeness),
    ("trace-preservation", _check_trace_preservation),
    ("positivity-preservation", _check_positivity_preservation),
    ("absorbed-state-fixed-point", _check_absorbed_fixed_point),
    ("absorbed-population-monotone", _check_absorbed_monotone),
    ("limiting-closed-forms", _check_limiting_closed_forms),
    ("perfect-switching", _check_perfect_switching),
    ("model-equivalence-extremes", _check_model_equivalence),
    ("oracle-concordance", _check_oracle_concordance),
]


def run_checks() -> list[CheckResult]:
    """Run every named check; deterministic order and content.

    A check that raises counts as a failure of that check rather than
    aborting the suite: broken inputs must yield a named FAIL line.
    """
    results = []
    for name, fn in _CHECKS:
        try:
            results.append(fn())
        except Exception as exc:
            results.append(
                CheckResult(name, False, f"raised {type(exc).__name__}: {exc}")
            )
    return results


def render_report(results) -> str:
    """One PASS/FAIL line per check plus a summary line, LF terminated."""
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}" for r in results
    ]
    failed = sum(1 for r in results if not r.passed)
    if failed:
        lines.append(f"{failed} of {len(results)} checks failed")
    else:
        lines.append(f"all {len(results)} checks passed")
    return "\n".join(lines) + "\n"
