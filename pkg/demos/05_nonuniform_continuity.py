"""The headline phenomenon at desk scale.

Two families of initial data approach each other in the headline Besov
space (their distance d0(n) decays like 2^{(d/p - 1/2) n}), yet the solved
trajectories stay separated: d(n_max, t) remains above a fixed multiple of
t for every configured time.  A uniformly continuous data-to-solution map
could not do this in the n -> infinity limit.

Runs the reduced sweep n = 4..7; the production sweep (n = 4..10) is
`forqlab nonuniform` or the acceptance suite.
"""

import numpy as np

import forqlab as fl
from forqlab.experiments import _lower_bound_core

params = fl.ConstructionParams(n=4, s=3.0, p=2.0, r=2.0, delta=0.02, sigma=1.9)
cfg = fl.ExperimentConfig(params=params, n_values=(4, 5, 6, 7))
lab = fl.Lab(cfg)
print(f"grid: L={lab.grid.L}, N=2^{int(np.log2(lab.grid.N))}; solving both families...")

rep = fl.exp_nonuniform(cfg, lab)
d0 = {r.n: r.value for r in rep.rows if r.quantity == "d0"}
d = {(r.n, r.t): r.value for r in rep.rows if r.quantity == "d"}
_, _, _, chat = _lower_bound_core(cfg, lab)

print("\ndata distance d0(n) = |u0_n - v0_n|_B^s:")
for n in cfg.n_values:
    print(f"  n={n}: {d0[n]:.6e}")
slope = next(f.slope for f in rep.fits if f.quantity == "d0")
print(f"fitted slope {slope:+.4f} (prediction d/p - 1/2 = {0.01 - 0.5:+.2f})")

n_max = cfg.n_values[-1]
print(f"\nsolution distance d(n={n_max}, t) vs the lower-bound line 0.5*chat*t "
      f"(chat = {chat:.4e}):")
for t in cfg.times:
    floor = 0.5 * chat * t
    print(f"  t={t:5.3f}: d={d[(n_max, t)]:.6e}  >=  {floor:.6e}")

verdicts = {v.criterion: v.passed for v in rep.verdicts}
print(f"\nverdicts: {verdicts}")
