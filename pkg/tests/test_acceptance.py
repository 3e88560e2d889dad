"""Acceptance suite at the default configuration.

Runs the full desk-scale pipeline (s=3, p=2, r=2, delta=0.02, sigma=1.9,
n=4..10, T=0.1, grid from the sizing rule) and grades every headline
criterion at its stated tolerance, printing one line per criterion.

    pytest tests/test_acceptance.py -v -s
"""

import math

import numpy as np
import pytest

import forqlab as fl

from conftest import band_limited_noise


def report(name, passed, detail):
    print(f"[acceptance] {name}: {'PASS' if passed else 'FAIL'} ({detail})")
    assert passed, f"{name}: {detail}"


@pytest.fixture(scope="module")
def cfg():
    params = fl.ConstructionParams(n=4, s=3.0, p=2.0, r=2.0, delta=0.02, sigma=1.9)
    return fl.ExperimentConfig(params=params)  # n=4..10, t in {0, 0.025, 0.05, 0.1}


@pytest.fixture(scope="module")
def lab(cfg):
    return fl.Lab(cfg)


@pytest.fixture(scope="module")
def small_solver_grid():
    return fl.make_grid(16.0, 512, np.pi * (512 // 4 - 1) / 16.0)


def test_partition_of_unity_and_reconstruction(cfg, lab):
    rep = fl.exp_lp_check(cfg, lab)
    v = {x.criterion: x for x in rep.verdicts}
    report(
        "partition of unity residual < 1e-12",
        v["partition_of_unity_residual"].passed,
        f"residual={v['partition_of_unity_residual'].measured:.3e}",
    )
    report(
        "block reconstruction < 1e-10 on 20 random fields",
        v["block_reconstruction"].passed,
        f"worst={v['block_reconstruction'].measured:.3e}",
    )


def test_block_localization(cfg, lab):
    worst_off = 0.0
    worst_low = 0.0
    for n in cfg.n_values:
        u0 = lab.u0(n)
        scale = np.abs(u0.samples).max()
        for q in range(-1, lab.partition.q_max + 1):
            mag = np.abs(fl.delta_q(u0, q, lab.partition).samples).max()
            if q != n:
                worst_off = max(worst_off, mag / scale)
        ul = lab.lowfreq(n)
        lscale = np.abs(ul.samples).max()
        for q in range(0, lab.partition.q_max + 1):
            mag = np.abs(fl.delta_q(ul, q, lab.partition).samples).max()
            worst_low = max(worst_low, mag / lscale)
    report(
        "high-frequency data confined to block n (off-block < 1e-12)",
        worst_off < 1e-12,
        f"worst off-block ratio={worst_off:.3e}",
    )
    report(
        "low-frequency summand confined to block -1",
        worst_low < 1e-12,
        f"worst ratio={worst_low:.3e}",
    )


def test_lemma_rates(cfg, lab):
    rep = fl.exp_lemma_scalings(cfg, lab)
    v = {x.criterion: x for x in rep.verdicts}
    for sp in (2.0, 3.0, 4.0):
        key = f"carrier_cos_besov_slope[sp={sp:g}]"
        report(
            f"modulated-bump rate s'-s at s'={sp:g} (+-0.05)",
            v[key].passed,
            f"slope={v[key].measured:.4f} expected={v[key].expected:g}",
        )
    report(
        "headline-space norm constant within 5%",
        v["carrier_cos_constant_in_n"].passed,
        f"spread={v['carrier_cos_constant_in_n'].measured:.3e}",
    )
    report(
        "low-frequency closed form within 1e-6",
        v["lowfreq_closed_form"].passed,
        f"rel err={v['lowfreq_closed_form'].measured:.3e}",
    )
    report(
        "cubed-envelope sine quantity max/min <= 3",
        v["cubed_sin_bounded_ratio"].passed,
        f"ratio={v['cubed_sin_bounded_ratio'].measured:.4f}",
    )


def test_corollary_rates(cfg, lab):
    rep = fl.exp_corollary(cfg, lab)
    assert len(rep.verdicts) == 8
    for v in rep.verdicts:
        report(
            f"corollary {v.criterion} within +-0.1 of envelope",
            v.passed,
            f"slope={v.measured:.4f} envelope={v.expected:.4f}",
        )


def test_solver_integrity(cfg, lab, small_solver_grid):
    g = small_solver_grid
    wave = fl.RealField(g, 0.7 * np.sin(np.pi * 3 / 16.0 * g.x) + 0.4 * np.cos(np.pi * 5 / 16.0 * g.x))

    T = 0.08

    def final(dt):
        return fl.solve(wave, fl.SolverConfig(T=T, dt=dt)).field_at(T).samples

    ref = final(T / 512)
    errs = [np.abs(final(T / d) - ref).max() for d in (16, 32)]
    order = math.log2(errs[0] / errs[1])
    report("RK4 self-convergence order 4.0 +- 0.2", abs(order - 4.0) <= 0.2, f"order={order:.3f}")

    worst = 0.0
    for seed in range(100):
        f = band_limited_noise(g, seed=seed)
        a, b = fl.rhs_nonlocal(f), fl.rhs_conservation_form(f)
        worst = max(worst, np.abs(a.samples - b.samples).max() / np.abs(a.samples).max())
    report("nonlocal vs conservation RHS agree to 1e-10 (100 fields)", worst < 1e-10, f"worst={worst:.3e}")

    traj = lab.trajectory("v", cfg.n_values[0])
    drift = np.abs(traj.mass - traj.mass[0]).max() / abs(traj.mass[0])
    report("momentum integral drift < 1e-9 over T=0.1", drift < 1e-9, f"drift={drift:.3e}")

    stepped = fl.step_rk4(fl.RealField(g, np.full(g.N, 0.8)), 0.01)
    const_err = np.abs(stepped.samples - 0.8).max()
    report("constant fields fixed to 1e-15 per step", const_err < 1e-15, f"err={const_err:.3e}")

    f = band_limited_noise(g, seed=1234, amplitude=0.5)
    base = fl.rhs_nonlocal(f)
    tripled = fl.rhs_nonlocal(fl.RealField(g, 3.0 * f.samples))
    cub = np.abs(tripled.samples - 27.0 * base.samples).max() / np.abs(tripled.samples).max()
    report("cubic homogeneity rhs(3u) = 27 rhs(u) to 1e-10", cub < 1e-10, f"rel err={cub:.3e}")


def test_step1_solution_collapses_onto_data(cfg, lab):
    rep = fl.exp_convergence_u(cfg, lab)
    v = {x.criterion: x for x in rep.verdicts}
    key = "u_deviation_decreasing[t=0.1]"
    report(
        "deviation from data strictly decreasing over top three n at t=0.1",
        v[key].passed,
        f"top-ratio={v[key].measured:.3e}",
    )


def test_step2_surrogate_error(cfg, lab):
    rep = fl.exp_approx_error(cfg, lab)
    v = {x.criterion: x for x in rep.verdicts}
    sl = v["w_error_sigma_slope"]
    report(
        "surrogate error slope <= max(sigma+d/p-d-s, sigma-s) + 0.1",
        sl.passed,
        f"slope={sl.measured:.4f} bound={sl.expected + sl.tolerance:.4f}",
    )
    sgn = v["transport_sign_discrimination[n=8,t=0.05]"]
    report(
        "minus-sign surrogate strictly better at n=8, t=0.05",
        sgn.passed,
        f"minus={sgn.measured:.3e} plus={sgn.expected:.3e}",
    )


def test_steps34_headline_nonuniformity(cfg, lab):
    rep = fl.exp_nonuniform(cfg, lab)
    v = {x.criterion: x for x in rep.verdicts}
    d0 = v["d0_slope"]
    report(
        "data distance vanishes with slope d/p - 1/2 +- 0.05",
        d0.passed,
        f"slope={d0.measured:.4f} expected={d0.expected:.4f}",
    )
    low = fl.exp_lower_bound(cfg, lab)
    lv = {x.criterion: x for x in low.verdicts}
    chat = next(r.value for r in low.rows if r.quantity == "chat")
    report("fitted lower-bound constant chat > 0", lv["chat_positive"].passed, f"chat={chat:.4e}")
    sep = v["solution_distance_lower_bound"]
    report(
        "solution distance >= 0.5 * chat * t for all configured t",
        sep.passed,
        f"worst margin={sep.measured:.3e}",
    )
