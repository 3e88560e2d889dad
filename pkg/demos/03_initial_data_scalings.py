"""The two data families and their norm scalings against n.

u0_n is a bump dilated by 2^{-dn} and modulated to the dyadic ring n via
the carrier (17/12) 2^n; v0_n adds a low-frequency copy of the bump with
amplitude 2^{-n/2}.  Their Besov norms then obey clean power laws in n:
the table below prints measured log2-slopes next to the predicted rates.
"""

import numpy as np

import forqlab as fl

params = fl.ConstructionParams(n=4, s=3.0, p=2.0, r=2.0, delta=0.02, sigma=1.9)
ns = (4, 5, 6, 7)
grid = fl.grid_for_params(params, ns)
print(f"grid: L={grid.L}, N=2^{int(np.log2(grid.N))}, K_keep={grid.K_keep:.1f}")
P = fl.build_partition(grid)
env = fl.build_envelope(grid)
s, p, r = params.s, params.p, params.r

rows = {}
for n in ns:
    Pn = params.at_n(n)
    u0 = fl.initial_u0(Pn, grid, env)
    v0 = fl.initial_v0(Pn, grid, env)
    ul = fl.RealField(grid, v0.samples - u0.samples)
    rows.setdefault("  |u0|_inf           (slope -(s+d/p))", []).append((n, np.abs(u0.samples).max()))
    rows.setdefault("  |v0|_inf           (slope -1/2)", []).append((n, np.abs(v0.samples).max()))
    for sp in (s - 1, s, s + 1):
        idx = fl.BesovIndex(sp, p, r)
        rows.setdefault(f"  |u0|_B^{sp:g}          (slope {sp - s:+g})", []).append(
            (n, fl.besov_norm(u0, idx, P))
        )
    idx = fl.BesovIndex(s, p, r)
    rows.setdefault("  |v0 - u0|_B^s      (slope d/p - 1/2)", []).append(
        (n, fl.besov_norm(ul, idx, P))
    )

print(f"\nfitted log2 slopes over n = {ns}:")
for label, pts in rows.items():
    slope, _, resid = fl.fit_exponent(pts)
    print(f"{label}: {slope:+.4f}   (fit residual {resid:.1e})")

# the first norm identity is exact enough to check digit by digit
phi_l2 = fl.lp_norm(env.profile, 2.0)
n = ns[-1]
ul = fl.low_frequency_part(params.at_n(n), grid, env)
got = fl.besov_norm(ul, fl.BesovIndex(s, p, r), P)
closed = 2.0**-s * 2.0 ** ((params.delta / p - 0.5) * n) * phi_l2
print(f"\nclosed-form check at n={n}: measured {got:.12e}")
print(f"                         predicted {closed:.12e}")
