import numpy as np
import pytest

import forqlab as fl


def band_limited_noise(grid, seed, k_hi=None, amplitude=1.0):
    """Deterministic random field with spectrum confined to |k| <= k_hi."""
    rng = np.random.default_rng(seed)
    k_hi = grid.K_keep if k_hi is None else k_hi
    coeffs = np.zeros(grid.N, dtype=np.complex128)
    inside = np.abs(grid.k) <= k_hi
    coeffs[inside] = rng.standard_normal(inside.sum()) + 1j * rng.standard_normal(inside.sum())
    samples = np.fft.ifft(coeffs).real
    return fl.RealField(grid, amplitude * samples / np.abs(samples).max())


@pytest.fixture(scope="session")
def small_grid():
    # L=16, N=1024, K one lattice step inside the half rule
    return fl.make_grid(16.0, 1024, np.pi * (1024 // 4 - 1) / 16.0)


@pytest.fixture(scope="session")
def small_partition(small_grid):
    return fl.build_partition(small_grid)


@pytest.fixture(scope="session")
def default_params():
    return fl.ConstructionParams(n=4, s=3.0, p=2.0, r=2.0, delta=0.02, sigma=1.9)


@pytest.fixture(scope="session")
def sweep_cfg(default_params):
    # four n values keep the exponent fits honest while staying fast (N=2^16)
    return fl.ExperimentConfig(params=default_params, n_values=(4, 5, 6, 7))


@pytest.fixture(scope="session")
def sweep_lab(sweep_cfg):
    return fl.Lab(sweep_cfg)
