import numpy as np
import pytest
from numpy.testing import assert_allclose

from ifmsim import operators
from ifmsim.operators import (
    NOT_B,
    Basis,
    absorption,
    projector,
    rotator2,
    rotator3,
    rotator_eigen,
    rotator_power,
    switching_angle,
)


class TestRotator2:
    def test_zero_angle(self):
        assert np.array_equal(rotator2(0.0), np.eye(2))

    def test_quarter_turn(self):
        assert_allclose(rotator2(np.pi / 2), [[0, -1], [1, 0]], atol=1e-15)

    def test_action_on_h(self):
        theta = 0.81
        out = rotator2(theta) @ np.array([1.0, 0.0])
        assert_allclose(out, [np.cos(theta), np.sin(theta)], atol=1e-15)

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError, match="finite"):
            rotator2(np.inf)


class TestRotatorEigen:
    def test_zero_angle_eigenvalues(self):
        eig = rotator_eigen(0.0)
        assert_allclose(eig.values, [1.0, 1.0], atol=0)

    def test_quarter_turn_eigenvalues(self):
        eig = rotator_eigen(np.pi / 2)
        assert_allclose(eig.values, [-1j, 1j], atol=1e-15)

    def test_pairing_and_unit_norm(self):
        theta = 1.234
        eig = rotator_eigen(theta)
        r = rotator2(theta)
        for k in range(2):
            v = eig.vectors[:, k]
            assert abs(np.linalg.norm(v) - 1.0) <= 1e-13
            assert np.abs(r @ v - eig.values[k] * v).max() <= 1e-13

    def test_phase_convention(self):
        eig = rotator_eigen(0.6)
        first = eig.vectors[0, :]
        assert np.all(first.imag == 0.0)
        assert np.all(first.real > 0.0)

    def test_reconstruction_over_grid(self):
        worst = 0.0
        for theta in np.linspace(0.0, 2 * np.pi, 100, endpoint=False):
            eig = rotator_eigen(theta)
            recon = sum(
                eig.values[k] * np.outer(eig.vectors[:, k], eig.vectors[:, k].conj())
                for k in range(2)
            )
            worst = max(worst, np.abs(recon - rotator2(theta)).max())
        assert worst <= 1e-13


class TestRotatorPower:
    def test_zeroth_power(self):
        assert np.array_equal(rotator_power(0.3, 0), np.eye(2))

    def test_switching_walks_h_to_v(self):
        for n in (1, 5, 24, 100):
            out = rotator_power(switching_angle(n), n) @ np.array([1.0, 0.0])
            assert np.abs(out - np.array([0.0, 1.0])).max() <= 1e-12

    def test_matches_iterated_multiplication(self):
        theta = 0.3
        acc = np.eye(2, dtype=complex)
        r1 = rotator2(theta)
        for _ in range(7):
            acc = r1 @ acc
        assert np.abs(rotator_power(theta, 7) - acc).max() <= 1e-12

    def test_power_addition(self):
        rng = np.random.default_rng(6)
        theta = 0.377
        for _ in range(25):
            m, n = int(rng.integers(0, 1001)), int(rng.integers(0, 1001))
            combined = rotator_power(theta, m + n)
            split = rotator_power(theta, m) @ rotator_power(theta, n)
            assert np.abs(combined - split).max() <= 1e-12

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="non-negative"):
            rotator_power(0.3, -1)


class TestRotator3:
    def test_zero_angle(self):
        assert np.array_equal(rotator3(0.0), np.eye(3))

    def test_absorbed_state_untouched(self):
        ket_b = np.array([0.0, 0.0, 1.0])
        assert np.array_equal(rotator3(1.1) @ ket_b, ket_b)

    def test_embeds_rotator2(self):
        theta = 0.52
        assert np.array_equal(rotator3(theta)[:2, :2], rotator2(theta))

    def test_unitarity_random_angles(self):
        rng = np.random.default_rng(7)
        for theta in rng.uniform(0, 2 * np.pi, 100):
            u = rotator3(theta)
            assert np.abs(u @ u.conj().T - np.eye(3)).max() <= 1e-13


class TestAbsorption:
    def test_zero_is_identity(self):
        assert np.array_equal(absorption(0.0), np.eye(3))

    def test_full_absorption_swaps_v_and_b(self):
        ab = absorption(1.0)
        ket_v = np.array([0.0, 1.0, 0.0])
        ket_b = np.array([0.0, 0.0, 1.0])
        assert_allclose(ab @ ket_v, ket_b, atol=0)
        assert_allclose(ab @ ket_b, -ket_v, atol=0)

    def test_half_absorption_entries(self):
        ab = absorption(0.5)
        root_half = np.sqrt(0.5)
        assert_allclose(ab[1, 1], root_half, atol=0)
        assert_allclose(ab[1, 2], -root_half, atol=0)
        assert_allclose(ab[2, 1], root_half, atol=0)
        assert_allclose(ab[2, 2], root_half, atol=0)

    def test_unitarity_over_grid(self):
        for a in np.linspace(0.0, 1.0, 101):
            ab = absorption(a)
            assert np.abs(ab @ ab.conj().T - np.eye(3)).max() <= 1e-13

    @pytest.mark.parametrize("bad", [-0.1, 1.1, np.nan])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            absorption(bad)


class TestProjector:
    def test_diagonals(self):
        assert np.array_equal(projector(Basis.H), np.diag([1.0, 0.0, 0.0]))
        assert np.array_equal(projector(Basis.V), np.diag([0.0, 1.0, 0.0]))
        assert np.array_equal(projector(Basis.B), np.diag([0.0, 0.0, 1.0]))
        assert np.array_equal(projector(NOT_B), np.diag([1.0, 1.0, 0.0]))

    def test_completeness(self):
        assert np.array_equal(projector(Basis.B) + projector(NOT_B), np.eye(3))

    def test_h_plus_v_is_not_b(self):
        assert np.array_equal(
            projector(Basis.H) + projector(Basis.V), projector(NOT_B)
        )

    def test_idempotence(self):
        for label in (Basis.H, Basis.V, Basis.B, NOT_B):
            p = projector(label)
            assert np.array_equal(p @ p, p)

    def test_mutual_orthogonality(self):
        labels = [Basis.H, Basis.V, Basis.B]
        for x in labels:
            for y in labels:
                if x != y:
                    assert np.array_equal(
                        projector(x) @ projector(y), np.zeros((3, 3))
                    )

    def test_rejects_unknown_label(self):
        with pytest.raises(ValueError):
            projector(7)


class TestSwitchingAngle:
    def test_values(self):
        assert switching_angle(1) == np.pi / 2
        assert switching_angle(2) == np.pi / 4
        assert switching_angle(24) == np.pi / 48

    @pytest.mark.parametrize("bad", [0, -3])
    def test_rejects_non_positive(self, bad):
        with pytest.raises(ValueError, match="positive"):
            switching_angle(bad)
