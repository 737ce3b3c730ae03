"""Exact tiling, spectral-set and weak positive-definite tiling analysis
in elementary abelian groups (Z_p)^d."""

from .errors import (
    BudgetError,
    CoefficientSystemError,
    InputError,
    InternalError,
)
from .funcs import (
    Decomposition,
    RationalFn,
    RayFn,
    autocorrelation_ray,
    convolve_ray,
    ft_ray,
    greedy_decompose,
    ift_ray,
    ray_average,
    to_ray,
)
from .groups import Group, Hyperplane, Line, group, is_prime
from .sets import (
    PointSet,
    Spectrum,
    find_spectrum,
    find_tiling_complement,
    is_spectrum,
    is_tiling,
)
from .weakpd import (
    Certificate,
    LpInstance,
    PdTilingReport,
    SimplexResult,
    build_lp_instance,
    h_from_spectrum,
    h_from_tiling,
    pd_tiling_feasible,
    simplex_feasibility,
    verify_pd_tiling,
)
from .tuples import (
    AxiomReport,
    CaseResult,
    FourTuple,
    average_from_weak_tiling,
    classify_case,
    is_dispersive,
    near_pencil_tuple,
    triangle_tuple,
    verify_four_tuple,
)
from .classify import (
    ExclusionReport,
    IntegralityReport,
    SetVerdict,
    SweepReport,
    affine_canonical,
    evaluate_set,
    integrality_filter,
    match_autocorrelation,
    orbit_reps,
    pd_flat_sweep,
    triangle_exclusion_p3,
)

__version__ = "0.1.0"
