"""Multi-domain-wall Dirac operators in one dimension.

Mass profiles, closed-form zero modes, a Lyapunov-Schmidt reduction of the
gap eigenproblem and direct eigensolvers to check it against.
"""
from .errors import *  # noqa: F401,F403
from .experiments import DecayFit, ExperimentConfig, dump_figures, fit_decay_rate, run_sweep
from .modes import (
    AnalyticMode,
    ExactOddZeroMode,
    exact_zero_mode,
    gram_matrix,
    inner,
    interaction,
    interaction_matrix,
    residual_norm,
    shifted_modes,
    zero_mode,
)
from .profiles import (
    MOLLIFIER_C0,
    Antiderivative,
    MassProfile,
    add_bump,
    antiderivative,
    constant_mass,
    glue_at,
    glue_walls,
    make_single_wall,
    sampled_wall,
)
from .reduction import (
    ReducedMatrix,
    approximate_eigenfunctions,
    assemble_full_matrix,
    asymptotic_eigenvalues,
    coupling,
    det_roots,
    leading_eigenpairs,
    leading_matrix,
    reconstruct_corrector,
)
from .solver import (
    Grid,
    SpectrumResult,
    WittenPair,
    build_witten_pair,
    dirac_spectrum_in_gap,
    eig_low,
    energy_estimate_check,
    shooting_oracle,
)

__version__ = "0.1.0"
