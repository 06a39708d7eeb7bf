import json
import math

import numpy as np
import pytest

from parasqueeze.errors import DomainError, ScheduleFormatError
from parasqueeze.schedules import (
    FrequencyProfile,
    Regime,
    custom_schedule,
    evolve_schedule,
    flow_map,
    integrate_characteristics,
    is_runaway,
    parse_schedule,
    ratchet_schedule,
    runaway_threshold,
    seesaw_schedule,
)
from parasqueeze.symplectic import (
    PhasePoint,
    SymplecticMap2,
    compose,
    decompose_squeezing,
    jump_map,
    step_map,
)


class TestGenerators:
    def test_ratchet_constant_ratio(self):
        sched = ratchet_schedule(2.0, 0.4, 3)
        assert sched.regime is Regime.RATCHET
        assert len(sched) == 6
        assert all(s == 2.0 and t == 0.4 for s, t in sched.steps)

    def test_seesaw_alternates(self):
        sched = seesaw_schedule(2.0, 0.4, 2)
        assert [s for s, _ in sched.steps] == [0.5, 2.0, 0.5, 2.0]

    def test_rejects_bad_steps(self):
        with pytest.raises(DomainError):
            custom_schedule([(1.0, 0.1), (-2.0, 0.2)])
        with pytest.raises(DomainError):
            ratchet_schedule(2.0, 0.1, -1)


class TestEvolve:
    def test_empty_schedule_is_identity(self):
        result = evolve_schedule(custom_schedule([]))
        np.testing.assert_allclose(result.total.as_array(), np.eye(2), atol=0.0)
        assert result.s_eff == 1.0
        assert not result.runaway

    def test_resonant_ratchet_three_cycles(self):
        result = evolve_schedule(ratchet_schedule(2.0, math.pi, 3))
        np.testing.assert_allclose(
            result.total.as_array(), [[8.0, 0.0], [0.0, 0.125]], atol=1e-13
        )
        assert result.s_eff == pytest.approx(8.0, rel=1e-12)

    def test_seesaw_two_cycles(self):
        result = evolve_schedule(seesaw_schedule(1.5, math.pi / 2, 2))
        assert result.s_eff == pytest.approx(1.5 ** 2, rel=1e-12)

    def test_trajectory_records_every_step(self):
        result = evolve_schedule(ratchet_schedule(2.0, math.pi, 3))
        assert [r.index for r in result.records] == list(range(6))
        assert result.records[-1].s_eff == pytest.approx(8.0, rel=1e-12)
        assert all(abs(r.det_drift) < 1e-12 for r in result.records)

    def test_random_schedule_matches_compose_chain(self, rng):
        steps = [(float(rng.uniform(0.5, 2.0)), float(rng.uniform(0, 2 * math.pi))) for _ in range(41)]
        result = evolve_schedule(custom_schedule(steps))
        total = SymplecticMap2.identity()
        for s, t in steps:
            total = compose(step_map(s, t), total)
        np.testing.assert_allclose(result.total.as_array(), total.as_array(), atol=1e-12)

    def test_runaway_is_typed_result(self):
        # resonant ratchet at s = 4 gains a factor 2 per step; 1e12 is
        # crossed at step index 39 (stretch 2^40)
        result = evolve_schedule(ratchet_schedule(4.0, math.pi, 60))
        assert result.runaway
        assert result.runaway_at == 39
        assert len(result.records) == 40
        assert result.records[-1].s_eff > 1e12
        assert math.isfinite(result.total.a)

    def test_bounded_below_threshold(self):
        # theta = 0.7: amplitude threshold 2.15, so a frequency ratio of 2
        # (amplitude sqrt(2)) stays elliptic over many cycles
        result = evolve_schedule(ratchet_schedule(2.0, 0.7, 500))
        assert not result.runaway
        assert max(r.s_eff for r in result.records) < 50.0


class TestRunawayAnalysis:
    def test_threshold_at_zero_angle(self):
        assert runaway_threshold(0.0) == pytest.approx(1.0)

    def test_threshold_at_quarter_pi(self):
        assert runaway_threshold(math.pi / 4) == pytest.approx(1.0 + math.sqrt(2.0), rel=1e-12)

    def test_threshold_pole_signaled(self):
        assert runaway_threshold(math.pi / 2) == math.inf

    def test_no_runaway_without_squeezing(self, rng):
        for th in rng.uniform(0.0, 3.0, size=8):
            verdict = is_runaway(1.0, float(th), Regime.RATCHET)
            assert not verdict.runaway
            assert verdict.spectral_radius == pytest.approx(1.0, abs=1e-12)

    def test_above_threshold_runs_away(self):
        verdict = is_runaway(3.0, math.pi / 4, Regime.RATCHET)
        assert verdict.runaway
        assert verdict.spectral_radius > 1.5

    def test_below_threshold_stays_bounded(self):
        verdict = is_runaway(2.0, math.pi / 4, Regime.RATCHET)
        assert not verdict.runaway

    def test_grid_agreement_with_formula(self):
        thetas = np.linspace(0.05, 1.5, 50)
        svals = np.linspace(1.0, 5.0, 50)
        for th in thetas:
            sc = runaway_threshold(float(th))
            for s in svals:
                if abs(s - sc) < 1e-6:
                    continue
                verdict = is_runaway(float(s), float(th), Regime.RATCHET)
                assert verdict.runaway == (s > sc), (s, th, sc)

    def test_seesaw_dual_threshold(self):
        # seesaw threshold: s - 1/s = 2|cot(theta)|
        th = 1.0
        k = abs(math.cos(th) / math.sin(th))
        sc = k + math.sqrt(k * k + 1.0)
        assert not is_runaway(sc * 0.99, th, Regime.SEESAW).runaway
        assert is_runaway(sc * 1.01, th, Regime.SEESAW).runaway

    def test_custom_regime_rejected(self):
        with pytest.raises(DomainError):
            is_runaway(2.0, 0.3, Regime.CUSTOM)


class TestScheduleParsing:
    def test_ratchet_document(self):
        sched = parse_schedule('{"regime": "ratchet", "s": 2.0, "theta": 3.14, "cycles": 2}')
        assert sched.regime is Regime.RATCHET
        assert len(sched) == 4

    def test_seesaw_document_case_insensitive(self):
        sched = parse_schedule({"regime": "Seesaw", "s": 1.5, "theta": 1.57, "cycles": 1})
        assert [s for s, _ in sched.steps] == [1.0 / 1.5, 1.5]

    def test_steps_document(self):
        sched = parse_schedule('{"steps": [[2.0, 0.5], [0.5, 0.25]]}')
        assert sched.regime is Regime.CUSTOM
        assert sched.steps == ((2.0, 0.5), (0.5, 0.25))

    def test_invalid_json_reports_line(self):
        with pytest.raises(ScheduleFormatError, match="line 2"):
            parse_schedule('{"regime": "ratchet",\n "s": }')

    def test_missing_field_named(self):
        with pytest.raises(ScheduleFormatError, match="'theta'"):
            parse_schedule('{"regime": "ratchet", "s": 2.0, "cycles": 2}')

    def test_unknown_regime(self):
        with pytest.raises(ScheduleFormatError, match="regime"):
            parse_schedule('{"regime": "zigzag", "s": 2.0, "theta": 1.0, "cycles": 2}')

    def test_bad_steps_shape(self):
        with pytest.raises(ScheduleFormatError, match="steps"):
            parse_schedule('{"steps": [[1.0], [2.0, 0.1]]}')

    def test_negative_ratio_rejected(self):
        with pytest.raises(ScheduleFormatError):
            parse_schedule('{"steps": [[-1.0, 0.1]]}')

    def test_roundtrip_through_file(self, tmp_path):
        from parasqueeze.schedules import load_schedule

        path = tmp_path / "sched.json"
        path.write_text(json.dumps({"regime": "seesaw", "s": 2.0, "theta": 0.5, "cycles": 3}))
        sched = load_schedule(path)
        assert len(sched) == 6


def linear_ramp(w0, w1, tau):
    return FrequencyProfile.piecewise_linear([[0.0, w0], [tau, w1]])


class TestCharacteristics:
    def test_constant_omega_rotates_counterclockwise(self):
        prof = FrequencyProfile.piecewise_linear([[0.0, 1.0], [math.pi / 2, 1.0]])
        traj = integrate_characteristics(prof, PhasePoint(1.0, 0.0))
        end = traj.endpoint
        assert end.x == pytest.approx(0.0, abs=1e-8)
        assert end.y == pytest.approx(1.0, abs=1e-8)

    def test_constant_omega_flow_is_rotation(self):
        # the flow through angle phi equals rotation_map(-phi)
        phi = 0.9
        prof = FrequencyProfile.piecewise_linear([[0.0, 1.0], [phi, 1.0]])
        m = flow_map(prof)
        expected = [[math.cos(phi), -math.sin(phi)], [math.sin(phi), math.cos(phi)]]
        np.testing.assert_allclose(m.as_array(), expected, atol=1e-9)

    def test_fast_ramp_approaches_jump(self):
        m = flow_map(linear_ramp(1.0, 2.0, 1e-4))
        np.testing.assert_allclose(m.as_array(), jump_map(2.0).as_array(), atol=5e-4)

    def test_sudden_limit_error_scales_linearly(self):
        errs = []
        for tau in (1e-3, 1e-4):
            m = flow_map(linear_ramp(1.0, 2.0, tau))
            errs.append(np.abs(m.as_array() - jump_map(2.0).as_array()).max())
        assert errs[1] < 0.3 * errs[0]

    def test_moderately_slow_ramp_barely_squeezes(self):
        m = flow_map(linear_ramp(1.0, 2.0, 100.0), rtol=1e-9)
        d = decompose_squeezing(m, det_tol=1e-6)
        assert d.s_eff < 1.05

    def test_flow_map_area_preserving(self, rng):
        for _ in range(3):
            w0, w1 = rng.uniform(0.5, 2.5, size=2)
            prof = FrequencyProfile.piecewise_linear(
                [[0.0, float(w0)], [1.0, float(w1)], [2.5, float(w0)]]
            )
            m = flow_map(prof)
            assert abs(m.det - 1.0) < 1e-7

    def test_dt_max_precondition(self):
        prof = linear_ramp(1.0, 2.0, 5.0)
        with pytest.raises(DomainError):
            integrate_characteristics(prof, PhasePoint(1.0, 0.0), dt_max=0.2)

    def test_nonpositive_frequency_rejected(self):
        with pytest.raises(DomainError):
            FrequencyProfile.piecewise_linear([[0.0, 1.0], [1.0, -0.5]])

    def test_callable_profile_with_derivative(self):
        prof = FrequencyProfile(
            omega=lambda t: 1.0 + 0.1 * math.sin(t),
            t_start=0.0,
            t_end=2.0,
            omega_dot=lambda t: 0.1 * math.cos(t),
        )
        m = flow_map(prof)
        assert abs(m.det - 1.0) < 1e-8

    def test_trajectory_is_monotone_in_time(self):
        prof = linear_ramp(1.0, 2.0, 1.0)
        traj = integrate_characteristics(prof, PhasePoint(0.3, -0.2))
        assert np.all(np.diff(traj.t) > 0)
        assert traj.t[0] == 0.0 and traj.t[-1] == pytest.approx(1.0)
