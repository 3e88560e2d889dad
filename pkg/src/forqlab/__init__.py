"""forqlab: a desk-scale laboratory for the FORQ equation in Besov spaces.

Pseudospectral evolution of the modified Camassa-Holm (FORQ) equation on a
large periodic domain, a Littlewood-Paley/Besov norm engine, and a set of
experiments exhibiting non-uniform continuity of the data-to-solution map.
"""

from .spectral import (
    Grid,
    RealField,
    SpectralField,
    make_grid,
    to_spectral,
    to_physical,
    derivative,
    helmholtz_inverse,
    dealias,
    dealiased_product,
)
from .littlewood_paley import (
    BesovIndex,
    LpPartition,
    build_partition,
    delta_q,
    s_q,
    lp_norm,
    besov_norm,
)
from .constructions import (
    ConstructionParams,
    Envelope,
    validate_params,
    build_envelope,
    grid_for_params,
    modulated_envelope,
    initial_u0,
    initial_v0,
    low_frequency_part,
    approx_solution_w,
    peakon,
)
from .solver import (
    SolverConfig,
    Trajectory,
    BlowUpError,
    rhs_nonlocal,
    rhs_conservation_form,
    step_rk4,
    cfl_dt,
    solve,
)
from .experiments import (
    ExperimentConfig,
    ExperimentReport,
    Lab,
    fit_exponent,
    exp_lp_check,
    exp_lemma_scalings,
    exp_corollary,
    exp_convergence_u,
    exp_approx_error,
    exp_lower_bound,
    exp_nonuniform,
)

__version__ = "0.1.0"
