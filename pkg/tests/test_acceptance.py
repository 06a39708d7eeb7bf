"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  One criterion (the perturbative entropy closed form agreeing with
the exact pipeline to 5%) is known to fail: the published closed form
overestimates the exact entropy excess roughly fourfold in the tested
regime.  The test states the measured ratios; it is intentionally not
weakened.
"""

import math
import time

import numpy as np
import pytest

from parasqueeze.entropy import (
    delta_s_exact,
    delta_s_leading,
    delta_s_perturbative,
    energy_entropy,
    equilibrium_entropy,
)
from parasqueeze.schedules import (
    FrequencyProfile,
    Regime,
    evolve_schedule,
    flow_map,
    is_runaway,
    ratchet_schedule,
    runaway_threshold,
    seesaw_schedule,
)
from parasqueeze.states import (
    Method,
    SqueezedThermalState,
    boundary_level,
    empirical_boundary_level,
    occupation_distribution,
    pn_equilibrium,
    pn_exact,
    pn_wigner_integral,
    wigner_squeezed_coherent,
    wigner_squeezed_thermal,
    nbar,
)
from parasqueeze.states import SqueezedCoherentParams
from parasqueeze.symplectic import compose, jump_map, step_map

from conftest import gh_plane_integral


def report(name, ok, detail=""):
    print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


class TestFig1Reproduction:
    def test_occupation_trends_across_boundary(self):
        t0 = time.monotonic()
        panels = {0.2: [8, 9, 10, 11, 12], 0.4: [3, 4, 5, 6, 7]}
        probe = 0.02
        details = []
        ok = True
        for u, levels in panels.items():
            n0 = boundary_level(u)
            p0 = {n: pn_exact(SqueezedThermalState(u, 1.0), n) for n in levels}
            # top-to-bottom ordering at zero squeezing
            ordered = all(p0[a] > p0[b] for a, b in zip(levels, levels[1:]))
            ok &= ordered
            state = SqueezedThermalState(u, 1.0 + probe)
            coeff = {
                n: (pn_exact(state, n) - p0[n]) / probe ** 2 for n in levels
            }
            for n in levels:
                expected_sign = -1.0 if n < n0 else 1.0
                ok &= math.copysign(1.0, coeff[n]) == expected_sign
            crossing = empirical_boundary_level(u, probe_epsilon=probe)
            details.append(f"omega/T={u}: N0={n0}, empirical crossing={crossing:.3f}")
        elapsed = time.monotonic() - t0
        ok &= elapsed < 10.0
        report(
            "fig1-occupation-trends",
            ok,
            f"({'; '.join(details)}; runtime {elapsed:.2f}s < 10s)",
        )
        assert ok

    def test_runtime_budget_details(self):
        # separate timing statement so a slow environment is visible even
        # when the physics above passes
        t0 = time.monotonic()
        state = SqueezedThermalState(0.2, 1.3)
        for n in range(13):
            pn_exact(state, n)
        elapsed = time.monotonic() - t0
        report("fig1-single-panel-timing", elapsed < 5.0, f"({elapsed:.2f}s)")
        assert elapsed < 5.0


class TestOracleEquivalence:
    def test_exact_vs_wigner_integral_grid(self):
        t0 = time.monotonic()
        worst = 0.0
        for u in (0.2, 0.4, 1.0):
            for s in (1.0, 1.1, 1.3, 1.7):
                state = SqueezedThermalState(u, s)
                for n in range(31):
                    d = abs(pn_exact(state, n, n_cap=31) - pn_wigner_integral(state, n))
                    worst = max(worst, d)
        elapsed = time.monotonic() - t0
        ok = worst <= 1e-6 and elapsed < 60.0
        report(
            "oracle-equivalence",
            ok,
            f"(max |exact - quadrature| = {worst:.2e} <= 1e-6; runtime {elapsed:.1f}s < 60s)",
        )
        assert ok


class TestBoltzmannReduction:
    def test_unsqueezed_populations_are_boltzmann(self):
        worst = 0.0
        for u in (0.2, 1.0, 3.0):
            state = SqueezedThermalState(u, 1.0)
            for n in range(41):
                peq = pn_equilibrium(u, n)
                worst = max(worst, abs(pn_exact(state, n, n_cap=41) - peq) / peq)
        ok = worst <= 1e-12
        report("boltzmann-reduction", ok, f"(max relative deviation {worst:.2e} <= 1e-12)")
        assert ok


class TestResonantSqueezing:
    def test_ratchet_and_seesaw_resonances(self):
        target = 2.0 ** 10
        oks = []
        for label, result in (
            ("ratchet", evolve_schedule(ratchet_schedule(2.0, math.pi, 10))),
            ("seesaw", evolve_schedule(seesaw_schedule(2.0, math.pi / 2, 10))),
        ):
            m = result.total
            off = max(abs(m.b), abs(m.c))
            diag_ok = (
                abs(abs(m.a) - target) / target < 1e-9
                and abs(abs(m.d) - 1.0 / target) * target < 1e-9
            )
            s_eff_ok = abs(result.s_eff - target) / target < 1e-9
            oks.append(off < 1e-9 and diag_ok and s_eff_ok)
        ok = all(oks)
        report("resonant-squeezing", ok, f"(s_eff = 2^10 at both resonances)")
        assert ok


class TestRunawayThreshold:
    def test_spectral_criterion_matches_formula_on_grid(self):
        thetas = np.linspace(0.05, 1.5, 50)
        svals = np.linspace(1.0, 5.0, 50)
        cell = svals[1] - svals[0]
        misclassified = 0
        boundary_off = 0
        for th in thetas:
            sc = runaway_threshold(float(th))
            for s in svals:
                flagged = is_runaway(float(s), float(th), Regime.RATCHET).runaway
                if abs(s - sc) <= cell:
                    continue  # boundary band, judged by the transition check
                if flagged != (s > sc):
                    misclassified += 1
            if 1.0 <= sc <= 5.0:
                flips = [
                    s
                    for s in svals
                    if s > 1.0 and is_runaway(float(s), float(th), Regime.RATCHET).runaway
                ]
                if flips and abs(flips[0] - sc) > cell:
                    boundary_off += 1
        ok = misclassified == 0 and boundary_off == 0
        report(
            "runaway-threshold",
            ok,
            f"(0 off-band misclassifications on 50x50 grid; transitions within one cell)",
        )
        assert ok


class TestSuddenAdiabaticLimits:
    def test_fast_ramp_matches_jump(self):
        prof = FrequencyProfile.piecewise_linear([[0.0, 1.0], [1e-4, 2.0]])
        m = flow_map(prof)
        err = np.abs(m.as_array() - jump_map(2.0).as_array()).max()
        ok = err < 5e-4
        report("sudden-limit", ok, f"(max entry deviation {err:.2e} < 5e-4)")
        assert ok

    def test_slow_ramp_does_not_squeeze(self):
        from parasqueeze.symplectic import decompose_squeezing

        prof = FrequencyProfile.piecewise_linear([[0.0, 1.0], [1e3, 2.0]])
        m = flow_map(prof)
        s_eff = decompose_squeezing(m, det_tol=1e-6).s_eff
        ok = s_eff < 1.01
        report("adiabatic-limit", ok, f"(s_eff = {s_eff:.6f} < 1.01)")
        assert ok


class TestEntropyQuadraticLaw:
    def test_log_log_slope_is_two(self):
        eps = np.geomspace(0.01, 0.08, 6)
        ds = np.array([delta_s_exact(0.2, 1.0 + e) for e in eps])
        slope = float(np.polyfit(np.log(eps), np.log(ds), 1)[0])
        ok = abs(slope - 2.0) <= 0.05
        report("entropy-quadratic-slope", ok, f"(slope {slope:.4f} within 2.00 +/- 0.05)")
        assert ok

    def test_perturbative_matches_exact_within_5pct(self):
        # Known failure: the published perturbative form overestimates the
        # exact entropy excess ~4x in this regime (see decisions ledger).
        eps = 0.05
        rows = []
        ok = True
        for u in (0.2, 0.4):
            exact = delta_s_exact(u, 1.0 + eps)
            pert = delta_s_perturbative(u, eps)
            rel = abs(pert - exact) / exact
            rows.append(f"omega/T={u}: exact={exact:.4e}, closed form={pert:.4e}, ratio={pert / exact:.2f}")
            ok &= rel <= 0.05
        report("entropy-perturbative-5pct", ok, f"({'; '.join(rows)})")
        assert ok

    def test_leading_ratio_monotone_to_one(self):
        ratios = []
        for u in (0.1, 0.01, 0.001):
            ratios.append(delta_s_perturbative(u, 0.1, small_ratio=True) / delta_s_leading(u, 0.1))
        ok = ratios[0] > ratios[1] > ratios[2] > 1.0
        report(
            "entropy-leading-ratio",
            ok,
            f"(ratios {', '.join(f'{r:.4f}' for r in ratios)} decrease toward 1)",
        )
        assert ok


class TestHeatIdentityAndLandauer:
    def test_heat_identity_and_prefactor(self):
        from parasqueeze.entropy import EntropyMethod, heat_cost

        report_obj = heat_cost(0.2, 1.1, EntropyMethod.EXACT)
        identity_ok = report_obj.delta_q_over_t == report_obj.delta_s
        prefactor = (1.7 - 1.0) ** 2 / 2.0
        prefactor_ok = abs(prefactor / 0.25 - 1.0) <= 0.02 + 1e-12
        lead = heat_cost(0.2, 1.7, EntropyMethod.LEADING)
        lead_ok = lead.delta_s / lead.s_eq == pytest.approx(prefactor, rel=1e-12)
        ok = identity_ok and prefactor_ok and lead_ok
        report(
            "heat-identity-landauer",
            ok,
            f"(delta_q/T == delta_s; prefactor {prefactor} within 2% of 0.25)",
        )
        assert ok


class TestPropertySuites:
    def test_symplectic_determinants(self, rng):
        ok = True
        for _ in range(200):
            s = float(rng.uniform(0.5, 3.0))
            t1, t2 = (float(v) for v in rng.uniform(0.0, 2 * math.pi, size=2))
            m = compose(step_map(s, t1), step_map(1.0 / s, t2))
            ok &= abs(m.det - 1.0) < 1e-12
        report("property-symplectic-det", ok)
        assert ok

    def test_wigner_normalization(self):
        ok = True
        for u, s, th in ((0.2, 1.4, 0.6), (1.0, 2.0, 1.9)):
            state = SqueezedThermalState(u, s=s, theta=th)
            lam = 2.0 / (1.0 + 2.0 * nbar(u))
            total = gh_plane_integral(
                lambda x, y: wigner_squeezed_thermal(state, (x, y)),
                a=lam * s,
                b=lam / s,
                theta=th,
                order=32,
            )
            ok &= abs(total - 1.0) < 1e-8
        params = SqueezedCoherentParams(s=1.8, theta=0.4, x0=0.3, y0=-0.7)
        total = gh_plane_integral(
            lambda x, y: wigner_squeezed_coherent(params, (x, y)),
            a=2.0 * 1.8,
            b=2.0 / 1.8,
            theta=0.4,
            center=(0.3, -0.7),
            order=32,
        )
        ok &= abs(total - 1.0) < 1e-8
        report("property-wigner-normalization", ok, "(|integral - 1| < 1e-8)")
        assert ok

    def test_population_properties(self):
        ok = True
        for u in (0.2, 1.0):
            for s in (1.1, 1.7):
                state = SqueezedThermalState(u, s=s)
                inv = SqueezedThermalState(u, s=1.0 / s)
                rot = SqueezedThermalState(u, s=s, theta=1.1)
                for n in (0, 3, 11, 25):
                    p = pn_exact(state, n)
                    ok &= p >= -1e-10
                    ok &= abs(p - pn_exact(inv, n)) <= 1e-9
                    ok &= abs(p - pn_exact(rot, n)) <= 1e-9
        report("property-populations", ok, "(nonnegative, s<->1/s, theta-independent)")
        assert ok

    def test_mean_photon_closed_form(self):
        state = SqueezedThermalState(1.0, s=1.3)
        quad = occupation_distribution(state, n_max=45, method=Method.WIGNER_INTEGRAL)
        ok = abs(quad.mean - state.mean_photons) <= 1e-6
        report(
            "property-mean-photons",
            ok,
            f"(|quadrature mean - closed form| = {abs(quad.mean - state.mean_photons):.2e})",
        )
        assert ok

    def test_entropy_suite_independent_of_plots(self):
        # the whole pipeline runs without any plotting component present
        dist = occupation_distribution(SqueezedThermalState(0.4, 1.1), n_max=75)
        value = energy_entropy(dist)
        ok = value > equilibrium_entropy(0.4)
        report("property-standalone-pipeline", ok)
        assert ok
