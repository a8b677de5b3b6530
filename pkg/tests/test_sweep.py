import math

import numpy as np
import pytest

from ifmsim.evolution import CycleConfig, closed_form_no_particle, evolve
from ifmsim.sweep import (
    CSV_HEADER,
    SweepRecord,
    format_real,
    run_single,
    sweep_absorption,
    sweep_cycles,
    sweep_grid,
    to_csv,
    write_csv,
)


class TestFormatReal:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (0.0, "0.0000000000000000"),
            (1.0, "1.0000000000000000"),
            (-0.5, "-0.5000000000000000"),
            (1e-4, "0.00010000000000000000"),
            (3.141592653589793, "3.1415926535897931"),
        ],
    )
    def test_positional_rendering(self, value, expected):
        assert format_real(value) == expected

    def test_scientific_below_positional_band(self):
        assert format_real(9.999e-5) == "9.9989999999999996e-05"

    def test_scientific_at_upper_bound(self):
        assert format_real(1e17) == "1.0000000000000000e+17"

    def test_round_trip_is_lossless(self):
        rng = np.random.default_rng(16)
        values = [0.0, 1.0, -1.0, 1e-300, -1e300, 0.1, 2**-52]
        values += list(rng.uniform(-1, 1, 50))
        values += list(10.0 ** rng.uniform(-30, 30, 50))
        for v in values:
            assert float(format_real(v)) == v


class TestSweepRecord:
    def test_rejects_probabilities_not_summing_to_one(self):
        with pytest.raises(ValueError, match="sum to 1"):
            SweepRecord(
                model="coherent", a=0.5, n=3, theta=0.1, p_h=0.5, p_v=0.5, p_b=0.5
            )


class TestRunSingle:
    def test_matches_evolve(self):
        cfg = CycleConfig(model="coherent", a=0.5, n=40)
        record = run_single(cfg)
        probs, _ = evolve(cfg)
        assert record.model == "coherent"
        assert record.a == 0.5
        assert record.n == 40
        assert record.theta == cfg.resolved_theta()
        assert (record.p_h, record.p_v, record.p_b) == tuple(probs)

    def test_absent_records_zero_absorption(self):
        record = run_single(CycleConfig(model="absent", a=0.9, n=4))
        assert record.a == 0.0


class TestSweepCycles:
    def test_row_count_and_order(self):
        records = sweep_cycles(0.5, 25, "coherent")
        assert len(records) == 25
        assert [r.n for r in records] == list(range(1, 26))

    def test_auto_theta_per_row(self):
        for r in sweep_cycles(1.0, 10, "coherent"):
            assert r.theta == math.pi / (2 * r.n)

    def test_explicit_theta_is_constant(self):
        for r in sweep_cycles(1.0, 10, "coherent", theta=0.3):
            assert r.theta == 0.3

    def test_no_particle_always_switches(self):
        for r in sweep_cycles(0.0, 60, "coherent"):
            assert r.p_v >= 1.0 - 1e-10

    def test_bomb_survival_column(self):
        records = sweep_cycles(1.0, 250, "coherent")
        p_h = np.array([r.p_h for r in records])
        expected = np.array(
            [math.cos(math.pi / (2 * n)) ** (2 * n) for n in range(1, 251)]
        )
        assert np.abs(p_h - expected).max() <= 1e-12
        assert np.all(np.diff(p_h) > 0)  # climbs toward 1 as cycles refine

    def test_rejects_empty_range(self):
        with pytest.raises(ValueError, match=">= 1"):
            sweep_cycles(0.5, 0, "coherent")


class TestSweepAbsorption:
    def test_grid_includes_exact_endpoints(self):
        records = sweep_absorption(10, 101, "coherent")
        assert len(records) == 101
        assert records[0].a == 0.0
        assert records[-1].a == 1.0

    def test_endpoints_match_sweep_cycles_rows(self):
        by_cycles = sweep_cycles(1.0, 10, "coherent")[9]
        by_absorption = sweep_absorption(10, 2, "coherent")[1]
        assert by_cycles == by_absorption

    def test_p_h_non_decreasing_in_absorption(self):
        records = sweep_absorption(10, 21, "coherent")
        p_h = np.array([r.p_h for r in records])
        assert np.diff(p_h).min() >= -1e-12

    def test_rejects_degenerate_grid(self):
        with pytest.raises(ValueError, match=">= 2"):
            sweep_absorption(10, 1, "coherent")


class TestSweepGrid:
    def test_cartesian_product_shape_and_order(self):
        records = sweep_grid(7, 3, "coherent")
        assert len(records) == 21
        assert [r.a for r in records[:7]] == [0.0] * 7
        assert [r.n for r in records[:7]] == list(range(1, 8))
        assert records[7].a == 0.5
        assert records[-1].a == 1.0

    def test_zero_absorption_rows_match_no_particle_closed_form(self):
        records = [r for r in sweep_grid(30, 3, "coherent") if r.a == 0.0]
        for r in records:
            expected = closed_form_no_particle(r.theta, r.n)
            got = np.array([r.p_h, r.p_v, r.p_b])
            assert np.abs(got - np.asarray(expected)).max() <= 1e-10

    def test_full_absorption_maximizes_p_h_at_every_n(self):
        records = sweep_grid(20, 5, "coherent")
        by_n = {}
        for r in records:
            by_n.setdefault(r.n, []).append(r)
        for n, rows in by_n.items():
            top = max(rows, key=lambda r: r.p_h)
            at_one = next(r for r in rows if r.a == 1.0)
            assert at_one.p_h >= top.p_h - 1e-12


class TestCsv:
    def test_golden_bytes(self):
        records = [
            SweepRecord(
                model="coherent", a=1.0, n=2, theta=0.5, p_h=0.5, p_v=0.25, p_b=0.25
            ),
            SweepRecord(
                model="absent", a=0.0, n=1, theta=2e-5, p_h=0.0, p_v=1.0, p_b=0.0
            ),
        ]
        expected = (
            "model,a,n,theta,p_h,p_v,p_b\n"
            "coherent,1.0000000000000000,2,0.5000000000000000,"
            "0.5000000000000000,0.2500000000000000,0.2500000000000000\n"
            "absent,0.0000000000000000,1,2.0000000000000002e-05,"
            "0.0000000000000000,1.0000000000000000,0.0000000000000000\n"
        )
        assert to_csv(records) == expected

    def test_header_constant(self):
        assert to_csv([]) == CSV_HEADER + "\n"

    def test_write_csv_emits_lf_only(self, tmp_path):
        records = sweep_cycles(1.0, 5, "coherent")
        path = tmp_path / "table.csv"
        write_csv(records, path)
        data = path.read_bytes()
        assert data == to_csv(records).encode()
        assert b"\r" not in data
        assert data.endswith(b"\n") and not data.endswith(b"\n\n")

    def test_every_emitted_record_sums_to_one(self):
        records = sweep_grid(15, 4, "collapse")
        for r in records:
            assert abs(r.p_h + r.p_v + r.p_b - 1.0) <= 1e-10
