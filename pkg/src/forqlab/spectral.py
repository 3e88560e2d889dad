"""Periodic spectral substrate: grids, transforms, derivatives, multipliers.

All fields live on a uniform grid over [-L, L) with N points and wavenumbers
k_m = pi*m/L, m = -N/2 .. N/2-1 (FFT ordering).  The discrete transform pair
is normalized to match the continuum Fourier integral:

    forward:  F(k_m) = dx * sum_j f(x_j) exp(-i k_m x_j)
    inverse:  f(x_j) = (1/(2L)) * sum_m F(k_m) exp(+i k_m x_j)

so Fourier multipliers written for the real line (1/(1+k^2), (ik)^n, dyadic
cutoffs, ...) apply with no stray constants.  Parseval reads

    dx * sum |f_j|^2  =  (1/(2L)) * sum |F_m|^2  =  (2L/N^2) * sum |FFT_m|^2.

Dealiasing keeps |k| <= K_keep with K_keep at most half the Nyquist
wavenumber pi*N/(2L).  For fields band-limited to K_keep the pointwise
cubic product aliases only into |k| > K_keep, so one truncation after each
nonlinear product reproduces the exact truncated convolution (half rule).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Grid",
    "RealField",
    "SpectralField",
    "make_grid",
    "to_spectral",
    "to_physical",
    "derivative",
    "helmholtz_inverse",
    "dealias",
    "dealiased_product",
]


@dataclass(frozen=True, eq=False)
class Grid:
    """Uniform periodic grid on [-L, L) with a dealiasing cutoff.

    Attributes
    ----------
    L : float
        Half length of the domain.
    N : int
        Number of collocation points (power of two).
    K_keep : float
        Largest retained |k| after dealiasing; at most pi*N/(4L).
    """

    L: float
    N: int
    K_keep: float

    def __post_init__(self) -> None:
        if self.N <= 0 or (self.N & (self.N - 1)) != 0:
            raise ValueError(f"N must be a positive power of two, got {self.N}")
        if self.L <= 0:
            raise ValueError(f"L must be positive, got {self.L}")
        half_nyquist = np.pi * self.N / (4.0 * self.L)
        if not 0.0 < self.K_keep <= half_nyquist:
            raise ValueError(
                f"K_keep={self.K_keep} violates the half rule for cubic products "
                f"(need 0 < K_keep <= pi*N/(4L) = {half_nyquist})"
            )
        dx = 2.0 * self.L / self.N
        x = -self.L + dx * np.arange(self.N)
        k = 2.0 * np.pi * np.fft.fftfreq(self.N, d=dx)  # = pi*m/L, FFT order
        m = np.rint(k * self.L / np.pi).astype(np.int64)
        # phase e^{i k L} = (-1)^m maps FFT output (origin at x=-L) to the
        # continuum transform (origin at x=0)
        phase = np.where(m % 2 == 0, 1.0, -1.0)
        keep = np.abs(k) <= self.K_keep + 1e-12
        # half-spectrum twins (m = 0..N/2) for the real-FFT fast paths
        mh = np.arange(self.N // 2 + 1)
        k_half = np.pi * mh / self.L
        phase_half = np.where(mh % 2 == 0, 1.0, -1.0)
        keep_half = k_half <= self.K_keep + 1e-12
        for name, val in (
            ("dx", dx),
            ("x", x),
            ("k", k),
            ("phase", phase),
            ("keep_mask", keep),
            ("k_half", k_half),
            ("phase_half", phase_half),
            ("keep_half", keep_half),
        ):
            if isinstance(val, np.ndarray):
                val.setflags(write=False)
            object.__setattr__(self, name, val)

    @property
    def nyquist(self) -> float:
        return np.pi * self.N / (2.0 * self.L)


@dataclass(frozen=True, eq=False)
class RealField:
    """A real-valued function as samples on a grid.  Immutable."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.samples, dtype=np.float64)
        if a.shape != (self.grid.N,):
            raise ValueError(f"samples shape {a.shape} does not match grid N={self.grid.N}")
        if not np.all(np.isfinite(a)):
            raise ValueError("samples contain NaN or Inf")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "samples", a)


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Discrete Fourier coefficients indexed by k_m.  Immutable.

    For a real field the coefficients are conjugate symmetric,
    coeffs(-k) = conj(coeffs(k)).
    """

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.coeffs, dtype=np.complex128)
        if a.shape != (self.grid.N,):
            raise ValueError(f"coeffs shape {a.shape} does not match grid N={self.grid.N}")
        if not np.all(np.isfinite(a)):
            raise ValueError("coeffs contain NaN or Inf")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)


def make_grid(L: float, N: int, K_keep: float) -> Grid:
    """Build a periodic grid; rejects non-power-of-two N and half-rule violations."""
    return Grid(L=float(L), N=int(N), K_keep=float(K_keep))


def _forward(samples: np.ndarray, grid: Grid) -> np.ndarray:
    return grid.dx * grid.phase * np.fft.fft(samples)


def _inverse(coeffs: np.ndarray, grid: Grid) -> np.ndarray:
    return (grid.N / (2.0 * grid.L)) * np.fft.ifft(coeffs * grid.phase).real


def _forward_r(samples: np.ndarray, grid: Grid) -> np.ndarray:
    """Half-spectrum forward transform (real input), same normalization."""
    return grid.dx * grid.phase_half * np.fft.rfft(samples)


def _inverse_r(coeffs_half: np.ndarray, grid: Grid) -> np.ndarray:
    return (grid.N / (2.0 * grid.L)) * np.fft.irfft(coeffs_half * grid.phase_half, n=grid.N)


def to_spectral(f: RealField) -> SpectralField:
    """Forward transform (carries dx; approximates the Fourier integral)."""
    return SpectralField(f.grid, _forward(f.samples, f.grid))


def to_physical(F: SpectralField) -> RealField:
    """Inverse transform (carries 1/(2L)); imaginary residue is discarded."""
    return RealField(F.grid, _inverse(F.coeffs, F.grid))


def derivative(f: RealField, order: int = 1) -> RealField:
    """Spectral derivative: multiplication by (ik)^order."""
    if order < 1:
        raise ValueError(f"order must be a positive integer, got {order}")
    g = f.grid
    mult = (1j * g.k_half) ** order
    if order % 2 == 1:
        # the unpaired Nyquist mode has no conjugate partner; zero it so odd
        # derivatives of real fields stay real
        mult = mult.copy()
        mult[-1] = 0.0
    return RealField(g, _inverse_r(mult * _forward_r(f.samples, g), g))


def helmholtz_inverse(f: RealField) -> RealField:
    """Apply (1 - d^2/dx^2)^{-1}, the Fourier multiplier 1/(1+k^2)."""
    g = f.grid
    return RealField(g, _inverse_r(_forward_r(f.samples, g) / (1.0 + g.k_half**2), g))


def dealias(F: SpectralField) -> SpectralField:
    """Zero all coefficients with |k| > K_keep.  Idempotent."""
    return SpectralField(F.grid, np.where(F.grid.keep_mask, F.coeffs, 0.0))


def dealiased_product(*fields: RealField) -> RealField:
    """Pointwise product of up to three K_keep-band-limited fields, truncated.

    Under the half rule the result equals the exact truncated convolution.
    """
    if not 1 <= len(fields) <= 3:
        raise ValueError("dealiased_product takes one to three fields")
    g = fields[0].grid
    prod = fields[0].samples
    for f in fields[1:]:
        if f.grid is not g and (f.grid.N != g.N or f.grid.L != g.L):
            raise ValueError("fields live on different grids")
        prod = prod * f.samples
    coeffs = np.where(g.keep_half, _forward_r(prod, g), 0.0)
    return RealField(g, _inverse_r(coeffs, g))
