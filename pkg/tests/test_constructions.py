import math

import numpy as np
import pytest

import forqlab as fl
from forqlab.constructions import bump_hat, snap_to_lattice


class TestValidateParams:
    def test_default_point_is_feasible(self, default_params):
        assert fl.validate_params(default_params) == []

    def test_sup_norm_suite_is_feasible(self):
        P = fl.ConstructionParams(n=4, s=3.2, p=math.inf, r=1.0, delta=0.1, sigma=2.1)
        assert fl.validate_params(P) == []

    def test_delta_out_of_range(self, default_params):
        from dataclasses import replace

        bad = replace(default_params, delta=0.2)
        msgs = fl.validate_params(bad)
        assert any("0 < delta < 1/8" in m for m in msgs)

    def test_sigma_upper_bound(self, default_params):
        from dataclasses import replace

        bad = replace(default_params, sigma=2.0)  # = s - 1
        assert any("sigma < s - 1" in m for m in fl.validate_params(bad))

    def test_sigma_lower_bound(self, default_params):
        from dataclasses import replace

        bad = replace(default_params, sigma=1.8)  # below s - 9/8 = 1.875
        assert any("< sigma" in m for m in fl.validate_params(bad))

    def test_delta_sigma_coupling(self, default_params):
        from dataclasses import replace

        # gap s - sigma - 1 = 0.01 < 8*delta/p = 0.08
        bad = replace(default_params, sigma=1.99)
        assert any("8*delta/p" in m for m in fl.validate_params(bad))

    def test_s_too_small(self, default_params):
        from dataclasses import replace

        bad = replace(default_params, s=2.4, sigma=1.2)
        assert any("s > max" in m for m in fl.validate_params(bad))

    def test_p_one_not_covered(self, default_params):
        from dataclasses import replace

        bad = replace(default_params, p=1.0)
        assert any("not covered" in m for m in fl.validate_params(bad))

    def test_derived_quantities(self, default_params):
        P = default_params.at_n(6)
        assert P.carrier == pytest.approx(17.0 / 12.0 * 64.0)
        assert P.dilation == pytest.approx(2.0 ** (-0.12))
        assert P.amplitude_hi == pytest.approx(2.0 ** (-6 * 3.0 - 0.02 * 6 / 2.0))
        assert P.amplitude_lo == pytest.approx(2.0**-3.0)

    def test_inv_p_at_infinity(self, default_params):
        from dataclasses import replace

        P = replace(default_params, p=math.inf)
        assert P.inv_p == 0.0


class TestEnvelope:
    def test_bump_plateau_and_support(self):
        assert bump_hat(np.array([0.0]))[0] == 1.0
        assert bump_hat(np.array([0.25]))[0] == 1.0
        assert bump_hat(np.array([0.5]))[0] == 0.0
        assert bump_hat(np.array([0.6]))[0] == 0.0
        assert 0.0 < bump_hat(np.array([0.375]))[0] < 1.0

    def test_profile_even(self, small_grid):
        env = fl.build_envelope(small_grid)
        prof = env.profile.samples
        # x = -L + j dx; the mirror of index j>0 is index N-j
        flipped = prof[np.r_[0, small_grid.N - 1 : 0 : -1]]
        assert np.abs(prof - flipped).max() < 1e-12 * np.abs(prof).max()

    def test_unit_integral(self, small_grid):
        # integral of the profile equals the transform at zero frequency
        env = fl.build_envelope(small_grid)
        assert small_grid.dx * env.profile.samples.sum() == pytest.approx(1.0, abs=1e-12)

    def test_decay_radius_reported(self, small_grid):
        env = fl.build_envelope(small_grid)
        # glue-bump transforms decay like exp(-sqrt(x)); the 1e-12 radius
        # sits near x ~ 1e3 (measured on the internal reference domain)
        assert 900.0 < env.decay_radius < 1300.0

    def test_too_coarse_grid_rejected(self):
        g = fl.make_grid(16.0, 64, 0.3)
        with pytest.raises(ValueError, match="too coarse"):
            fl.build_envelope(g)

    def test_dilated_band_limit(self, small_grid):
        env = fl.build_envelope(small_grid)
        d = env.dilated(2.0**-0.5)
        C = fl.to_spectral(d).coeffs
        outside = np.abs(small_grid.k) > 0.5 * 2.0**0.5 + 1e-9
        assert np.abs(C[outside]).max() < 1e-13 * np.abs(C).max()


class TestGridSizing:
    def test_covers_top_carrier(self, default_params):
        ns = (4, 5, 6, 7)
        g = fl.grid_for_params(default_params, ns)
        need = 17.0 / 12.0 * 2.0**7 + 2.0 ** (1 - 0.02 * 4) + 8.0
        assert g.K_keep >= need
        assert g.K_keep <= np.pi * g.N / (4.0 * g.L)

    def test_rejects_unreachable_budget(self, default_params):
        with pytest.raises(ValueError, match="cannot satisfy"):
            fl.grid_for_params(default_params, (4, 5, 6, 14), max_N=2**16)


class TestInitialData:
    def test_carrier_snap(self, sweep_lab):
        g = sweep_lab.grid
        a = snap_to_lattice(17.0 / 12.0 * 2.0**5, g)
        assert abs(a - 17.0 / 12.0 * 2.0**5) <= np.pi / (2.0 * g.L) + 1e-12
        assert a * g.L / np.pi == pytest.approx(round(a * g.L / np.pi))

    def test_u0_amplitude(self, sweep_lab):
        for n in sweep_lab.cfg.n_values:
            u0 = sweep_lab.u0(n)
            P = sweep_lab.p_at(n)
            expected = P.amplitude_hi * np.abs(sweep_lab.env.profile.samples).max()
            assert np.abs(u0.samples).max() == pytest.approx(expected, rel=0.01)

    def test_u0_block_confinement(self, sweep_lab):
        P = sweep_lab.partition
        for n in sweep_lab.cfg.n_values:
            u0 = sweep_lab.u0(n)
            scale = np.abs(u0.samples).max()
            for q in range(-1, P.q_max + 1):
                block = fl.delta_q(u0, q, P)
                if q == n:
                    assert np.abs(block.samples - u0.samples).max() < 1e-12 * scale
                else:
                    assert np.abs(block.samples).max() < 1e-12 * scale

    def test_u0_besov_constant_across_n(self, sweep_lab):
        vals = [sweep_lab.besov(sweep_lab.u0(n), 3.0) for n in sweep_lab.cfg.n_values]
        assert max(vals) / min(vals) < 1.05

    def test_v0_decomposition_exact(self, sweep_lab):
        for n in (4, 6):
            v0, u0, ul = sweep_lab.v0(n), sweep_lab.u0(n), sweep_lab.lowfreq(n)
            assert np.array_equal(v0.samples, u0.samples + ul.samples)

    def test_v0_blocks_minus_one_and_n_only(self, sweep_lab):
        P = sweep_lab.partition
        n = 6
        v0 = sweep_lab.v0(n)
        scale = np.abs(v0.samples).max()
        for q in range(-1, P.q_max + 1):
            mag = np.abs(fl.delta_q(v0, q, P).samples).max()
            if q in (-1, n):
                assert mag > 1e-6 * scale
            else:
                assert mag < 1e-12 * scale

    def test_v0_sup_norm_scaling(self, sweep_lab):
        for n in (6, 7):
            v0 = sweep_lab.v0(n)
            target = 2.0 ** (-0.5 * n) * np.abs(sweep_lab.env.profile.samples).max()
            assert np.abs(v0.samples).max() == pytest.approx(target, rel=0.2)

    def test_first_estimate_closed_form(self, sweep_lab):
        phi_l2 = fl.lp_norm(sweep_lab.env.profile, 2.0)
        for n in sweep_lab.cfg.n_values:
            diff = fl.RealField(
                sweep_lab.grid, sweep_lab.v0(n).samples - sweep_lab.u0(n).samples
            )
            got = sweep_lab.besov(diff, 3.0)
            closed = 2.0**-3.0 * 2.0 ** ((0.01 - 0.5) * n) * phi_l2
            assert got == pytest.approx(closed, rel=1e-6)

    def test_unresolvable_carrier_rejected(self, default_params):
        g = fl.make_grid(16.0, 512, np.pi * (512 // 4 - 1) / 16.0)  # K ~ 25
        env = fl.build_envelope(g)
        with pytest.raises(ValueError, match="resolve"):
            fl.initial_u0(default_params.at_n(6), g, env)

    def test_invalid_params_rejected(self, sweep_lab, default_params):
        from dataclasses import replace

        bad = replace(default_params, delta=0.3)
        with pytest.raises(ValueError, match="invalid construction"):
            fl.initial_u0(bad, sweep_lab.grid, sweep_lab.env)


class TestApproximateSolution:
    def test_t_zero_is_v0(self, sweep_lab):
        P = sweep_lab.p_at(5)
        w0 = fl.approx_solution_w(P, 0.0, sweep_lab.grid, sweep_lab.env)
        assert np.array_equal(w0.samples, sweep_lab.v0(5).samples)

    def test_affine_in_t(self, sweep_lab):
        P = sweep_lab.p_at(5)
        g, env = sweep_lab.grid, sweep_lab.env
        w0 = fl.approx_solution_w(P, 0.0, g, env).samples
        w1 = fl.approx_solution_w(P, 0.03, g, env).samples
        w2 = fl.approx_solution_w(P, 0.06, g, env).samples
        assert np.abs((w2 - w0) - 2.0 * (w1 - w0)).max() < 1e-12 * np.abs(w1).max()

    def test_sign_variants_differ(self, sweep_lab):
        P = sweep_lab.p_at(5)
        g, env = sweep_lab.grid, sweep_lab.env
        wm = fl.approx_solution_w(P, 0.05, g, env, sign="minus").samples
        wp = fl.approx_solution_w(P, 0.05, g, env, sign="plus").samples
        v0 = sweep_lab.v0(5).samples
        assert np.abs((wm + wp) / 2.0 - v0).max() < 1e-14

    def test_lab_w_matches_public_constructor(self, sweep_lab):
        P = sweep_lab.p_at(6)
        direct = fl.approx_solution_w(P, 0.05, sweep_lab.grid, sweep_lab.env)
        cached = sweep_lab.w(6, 0.05)
        assert np.abs(direct.samples - cached.samples).max() < 1e-16

    def test_rejects_bad_arguments(self, sweep_lab):
        P = sweep_lab.p_at(5)
        with pytest.raises(ValueError, match="nonnegative"):
            fl.approx_solution_w(P, -0.1, sweep_lab.grid, sweep_lab.env)
        with pytest.raises(ValueError, match="sign"):
            fl.approx_solution_w(P, 0.1, sweep_lab.grid, sweep_lab.env, sign="both")


class TestPeakon:
    def test_peak_location_and_height_on_lattice(self, small_grid):
        g = small_grid
        ct = 64 * g.dx  # peak on a grid point
        u = fl.peakon(2.0, ct / 2.0, g)
        j = np.argmax(u.samples)
        assert g.x[j] == pytest.approx(ct)
        assert u.samples[j] == pytest.approx(math.sqrt(1.0), rel=1e-12)

    def test_l2_norm_closed_form(self):
        g = fl.make_grid(16.0, 4096, np.pi * (4096 // 4 - 1) / 16.0)
        c, t = 2.0, 1.3
        u = fl.peakon(c, t, g)
        got = g.dx * np.sum(u.samples**2)
        # two-sided exponential integral over [-L, L) with the peak at ct
        exact = (c / 2.0) * (
            1.0 - 0.5 * (math.exp(-2 * (g.L - c * t)) + math.exp(-2 * (g.L + c * t)))
        )
        assert got == pytest.approx(exact, rel=1e-5)

    def test_block_decay_rate(self):
        # |Delta_q|_L2 ~ 2^{-3q/2} for the 1/(1+k^2) spectrum
        g = fl.make_grid(16.0, 4096, np.pi * (4096 // 4 - 1) / 16.0)
        P = fl.build_partition(g)
        u = fl.peakon(2.0, 1.3, g)
        qs = range(2, 8)
        vals = [fl.lp_norm(fl.delta_q(u, q, P), 2.0) for q in qs]
        slope = np.polyfit(list(qs), np.log2(vals), 1)[0]
        assert slope == pytest.approx(-1.5, abs=0.15)

    def test_besov_trend_across_resolution(self):
        # below s=3/2 the norm saturates with resolution; above it keeps growing
        coarse = fl.make_grid(16.0, 1024, np.pi * (1024 // 4 - 1) / 16.0)
        fine = fl.make_grid(16.0, 4096, np.pi * (4096 // 4 - 1) / 16.0)
        out = {}
        for g in (coarse, fine):
            P = fl.build_partition(g)
            u = fl.peakon(2.0, 1.3, g)
            for s in (1.0, 2.0):
                out[(s, g.N)] = fl.besov_norm(u, fl.BesovIndex(s, 2.0, 2.0), P)
        assert out[(1.0, 4096)] / out[(1.0, 1024)] < 1.05
        assert out[(2.0, 4096)] / out[(2.0, 1024)] > 1.5

    def test_rejects_bad_arguments(self, small_grid):
        with pytest.raises(ValueError, match="positive"):
            fl.peakon(-1.0, 0.0, small_grid)
        with pytest.raises(ValueError, match="interior"):
            fl.peakon(2.0, 10.0, small_grid)
