"""Pseudospectral method-of-lines integrator for the FORQ equation.

The evolution is used in its nonlocal form.  Writing H = (1 - dxx)^{-1},
the momentum form  m_t + ((u^2 - u_x^2) m)_x = 0,  m = u - u_xx,  reduces to

    u_t = -u^2 u_x + (1/3) u_x^3 - H dx( (2/3) u^3 + u u_x^2 ) - (1/3) H( u_x^3 ).

Note the 1/3 on the local cubic-gradient term: it is forced by the
reduction (dxx = 1 - (1-dxx) under H), and is what makes the two RHS forms
here agree identically and the mean of (u - u_xx) an exact invariant.

Every nonlinear product is formed pointwise and truncated to |k| <= K_keep;
under the half rule this equals the exact truncated convolution, so the
cubic algebra is alias-free.  Time stepping is classical RK4 with a fixed
step chosen from a CFL heuristic at t = 0 (the data of interest is small in
amplitude, so the dynamics are slow and nonstiff).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spectral import Grid, RealField, _forward_r, _inverse_r

__all__ = [
    "SolverConfig",
    "Trajectory",
    "BlowUpError",
    "rhs_nonlocal",
    "rhs_conservation_form",
    "step_rk4",
    "cfl_dt",
    "solve",
]

DT_CAP = 1e-2


class BlowUpError(RuntimeError):
    """Raised when the sup-norm monitor trips or the state stops being finite."""

    def __init__(self, time: float, linf: float, threshold: float):
        super().__init__(
            f"blow-up monitor tripped at t={time:.6g}: |u|_inf={linf:.6g} "
            f"exceeds threshold {threshold:.6g}"
        )
        self.time = time
        self.linf = linf
        self.threshold = threshold


@dataclass(frozen=True)
class SolverConfig:
    """Time-integration settings.

    dt=None defers the step size to the CFL heuristic at t=0.
    blowup_factor bounds the allowed growth of |u|_inf relative to the data.
    """

    T: float
    dt: float | None = None
    cfl: float = 0.5
    blowup_factor: float = 1e3
    record_times: tuple = ()

    def __post_init__(self) -> None:
        if self.T < 0:
            raise ValueError(f"T must be nonnegative, got {self.T}")
        if self.dt is not None and self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not 0 < self.cfl <= 1:
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl}")
        for t in self.record_times:
            if not 0 <= t <= self.T:
                raise ValueError(f"record time {t} outside [0, T={self.T}]")


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Recorded solution snapshots plus per-step diagnostics.

    snapshots is a tuple of (time, RealField), strictly increasing in time,
    starting with the initial data.  The mass diagnostic is the integral of
    (u - u_xx), which on the torus equals the integral of u.
    """

    snapshots: tuple
    diag_times: np.ndarray
    mass: np.ndarray
    linf: np.ndarray
    dx_linf: np.ndarray

    def field_at(self, t: float) -> RealField:
        for ts, f in self.snapshots:
            if math.isclose(ts, t, rel_tol=0.0, abs_tol=1e-12):
                return f
        raise KeyError(f"no snapshot recorded at t={t}")

    @property
    def times(self) -> tuple:
        return tuple(ts for ts, _ in self.snapshots)


def _mults(grid: Grid):
    ik = (1j * grid.k_half).copy()
    ik[-1] = 0.0  # unpaired Nyquist mode, zeroed for odd derivatives
    helm = 1.0 / (1.0 + grid.k_half**2)
    return ik, helm


_mult_cache: dict = {}


def _grid_mults(grid: Grid):
    got = _mult_cache.get(id(grid))
    if got is None or got[0] is not grid:
        got = (grid, *_mults(grid))
        _mult_cache[id(grid)] = got
    return got[1], got[2]


def _rhs_nonlocal_arr(u: np.ndarray, grid: Grid) -> np.ndarray:
    ik, helm = _grid_mults(grid)
    keep = grid.keep_half
    uh = _forward_r(u, grid)
    ux = _inverse_r(ik * uh, grid)
    ph_transport = np.where(keep, _forward_r(u * u * ux, grid), 0.0)
    ph_gradcube = np.where(keep, _forward_r(ux * ux * ux, grid), 0.0)
    ph_source = np.where(keep, _forward_r((2.0 / 3.0) * u**3 + u * ux * ux, grid), 0.0)
    rhs_hat = (
        -ph_transport
        + (1.0 / 3.0) * ph_gradcube
        - ik * helm * ph_source
        - (1.0 / 3.0) * helm * ph_gradcube
    )
    return _inverse_r(rhs_hat, grid)


def _rhs_conservation_arr(u: np.ndarray, grid: Grid) -> np.ndarray:
    ik, helm = _grid_mults(grid)
    uh = _forward_r(u, grid)
    ux = _inverse_r(ik * uh, grid)
    m = _inverse_r((1.0 + grid.k_half**2) * uh, grid)
    flux_hat = np.where(grid.keep_half, _forward_r((u * u - ux * ux) * m, grid), 0.0)
    return _inverse_r(-ik * helm * flux_hat, grid)


def rhs_nonlocal(u: RealField) -> RealField:
    """Time derivative of u in the nonlocal form, every product dealiased."""
    return RealField(u.grid, _rhs_nonlocal_arr(u.samples, u.grid))


def rhs_conservation_form(u: RealField) -> RealField:
    """Cross-check route: u_t = -H dx[ (u^2 - u_x^2) (u - u_xx) ].

    Algebraically identical to rhs_nonlocal; computed through the momentum
    variable instead, for validation and the mass diagnostic.
    """
    return RealField(u.grid, _rhs_conservation_arr(u.samples, u.grid))


def _step_rk4_arr(u: np.ndarray, dt: float, grid: Grid) -> np.ndarray:
    k1 = _rhs_nonlocal_arr(u, grid)
    k2 = _rhs_nonlocal_arr(u + 0.5 * dt * k1, grid)
    k3 = _rhs_nonlocal_arr(u + 0.5 * dt * k2, grid)
    k4 = _rhs_nonlocal_arr(u + dt * k3, grid)
    return u + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step_rk4(u: RealField, dt: float) -> RealField:
    """One classical RK4 step; stays band-limited since the RHS is truncated."""
    return RealField(u.grid, _step_rk4_arr(u.samples, dt, u.grid))


def cfl_dt(u: RealField, cfl: float = 0.5) -> float:
    """Step-size heuristic dt = cfl / (max|u^2 - u_x^2| * K_keep), capped at 1e-2."""
    grid = u.grid
    ik, _ = _grid_mults(grid)
    ux = _inverse_r(ik * _forward_r(u.samples, grid), grid)
    speed = float(np.abs(u.samples**2 - ux**2).max())
    return min(DT_CAP, cfl / (speed * grid.K_keep + 1e-300))


def solve(u0: RealField, cfg: SolverConfig) -> Trajectory:
    """Integrate from u0 to cfg.T, landing exactly on each record time.

    The step suggested by cfl_dt (or cfg.dt) is rounded down per segment so
    an integer number of substeps hits every record time.  Aborts with
    BlowUpError on NaN or when |u|_inf exceeds blowup_factor times its
    initial value.
    """
    grid = u0.grid
    # the stepping state is band-limited; the t=0 snapshot stays the data as passed
    u = _inverse_r(np.where(grid.keep_half, _forward_r(u0.samples, grid), 0.0), grid)

    marks = sorted(set([0.0, cfg.T]) | set(float(t) for t in cfg.record_times))
    dt0 = cfg.dt if cfg.dt is not None else cfl_dt(u0, cfg.cfl)

    linf0 = float(np.abs(u).max())
    threshold = cfg.blowup_factor * max(linf0, 1e-300)
    ik, _ = _grid_mults(grid)

    def diagnose(t: float, ua: np.ndarray):
        if not np.all(np.isfinite(ua)):
            raise BlowUpError(t, float("nan"), threshold)
        linf = float(np.abs(ua).max())
        if linf > threshold:
            raise BlowUpError(t, linf, threshold)
        ux = _inverse_r(ik * _forward_r(ua, grid), grid)
        return linf, float(np.abs(ux).max()), grid.dx * float(ua.sum())

    snapshots = [(0.0, u0)]
    diag_t, masses, linfs, dxlinfs = [0.0], [], [], []
    linf, dxl, mass = diagnose(0.0, u)
    masses.append(mass), linfs.append(linf), dxlinfs.append(dxl)

    for t_lo, t_hi in zip(marks[:-1], marks[1:]):
        span = t_hi - t_lo
        if span <= 0:
            continue
        nsub = max(1, math.ceil(span / dt0 - 1e-12))
        h = span / nsub
        for j in range(nsub):
            u = _step_rk4_arr(u, h, grid)
            t = t_lo + (j + 1) * h
            linf, dxl, mass = diagnose(t, u)
            diag_t.append(t), masses.append(mass), linfs.append(linf), dxlinfs.append(dxl)
        if t_hi in (cfg.record_times if cfg.record_times else (cfg.T,)) or t_hi == cfg.T:
            snapshots.append((t_hi, RealField(grid, u)))

    return Trajectory(
        snapshots=tuple(snapshots),
        diag_times=np.asarray(diag_t),
        mass=np.asarray(masses),
        linf=np.asarray(linfs),
        dx_linf=np.asarray(dxlinfs),
    )
