"""Dyadic blocks and Besov norms in action.

The multiplier pair (chi, phi) tiles the wavenumber axis: chi covers
|k| <= 4/3 and each phi(2^-q k) covers the ring 3/4 * 2^q <= |k| <= 8/3 * 2^q.
Their sum telescopes to exactly 1 on the resolved band, so splitting a field
into blocks and summing them back is lossless.
"""

import numpy as np

import forqlab as fl

grid = fl.make_grid(16.0, 2048, K_keep=np.pi * (2048 // 4 - 1) / 16.0)
P = fl.build_partition(grid)
print(f"blocks: q = -1 (low) plus 0..{P.q_max}")

total = P.chi + sum(P.phi_blocks)
kept = np.abs(grid.k) <= grid.K_keep
print(f"partition-of-unity residual on the kept band: {np.abs(1 - total[kept]).max():.2e}")

# decompose a broadband field and reassemble it
rng = np.random.default_rng(1)
coeffs = np.zeros(grid.N, dtype=complex)
inside = np.abs(grid.k) <= grid.K_keep
coeffs[inside] = rng.standard_normal(inside.sum()) + 1j * rng.standard_normal(inside.sum())
f = fl.RealField(grid, np.fft.ifft(coeffs).real)

pieces = [fl.delta_q(f, q, P) for q in range(-1, P.q_max + 1)]
recon = np.sum([p.samples for p in pieces], axis=0)
print(f"reconstruction error: {np.abs(recon - f.samples).max():.2e}")

print("\nper-block energy (L2 norms):")
for q, p in zip(range(-1, P.q_max + 1), pieces):
    print(f"  q={q:3d}: {fl.lp_norm(p, 2.0):.4f}")

# Besov norms weight block q by 2^{sq}; higher s punishes high frequencies
for s in (0.5, 1.5, 3.0):
    idx = fl.BesovIndex(s=s, p=2.0, r=2.0)
    print(f"B^{s}_{{2,2}} norm: {fl.besov_norm(f, idx, P):.4f}")

# the peakon has spectrum ~ 1/(1+k^2): block norms decay like 2^{-3q/2},
# so its Besov norms are finite below s = 3/2 and blow up beyond
u = fl.peakon(2.0, 1.0, grid)
print("\npeakon block decay (log2 ratios, expect about -1.5):")
prev = None
for q in range(1, P.q_max):
    val = fl.lp_norm(fl.delta_q(u, q, P), 2.0)
    if prev is not None:
        print(f"  q={q}: log2 ratio = {np.log2(val / prev):+.3f}")
    prev = val
