from biqutrit.core.factorization import (
    AT_INFINITY,
    FactorizationResult,
    factorization_residual,
    factorize,
    is_at_infinity,
    quadratic_roots,
    root_mode,
)
from biqutrit.core.measures import (
    concurrence,
    concurrence_from_commutator,
    concurrence_from_k,
    degree_of_polarization,
    schmidt_eigenvalues,
    schmidt_k_and_entropy,
    stokes_vector,
)
from biqutrit.core.oracle import eigen_oracle
from biqutrit.core.schmidt import (
    SchmidtDecomposition,
    schmidt_decomposition,
    schmidt_modes_from_factorization,
    schmidt_residual,
)
from biqutrit.core.state import (
    JONES_H,
    JONES_V,
    BiphotonWaveFunction,
    JonesVector,
    QutritState,
    ReducedDensityMatrix,
    StokesVector,
    alpha_family,
    canonical_phase,
    make_jones,
    make_qutrit,
    match_global_phase,
    product_wave_function,
    reduced_density,
    wave_function,
)

__all__ = [
    "AT_INFINITY",
    "JONES_H",
    "JONES_V",
    "BiphotonWaveFunction",
    "FactorizationResult",
    "JonesVector",
    "QutritState",
    "ReducedDensityMatrix",
    "SchmidtDecomposition",
    "StokesVector",
    "alpha_family",
    "canonical_phase",
    "concurrence",
    "concurrence_from_commutator",
    "concurrence_from_k",
    "degree_of_polarization",
    "eigen_oracle",
    "factorization_residual",
    "factorize",
    "is_at_infinity",
    "make_jones",
    "make_qutrit",
    "match_global_phase",
    "product_wave_function",
    "quadratic_roots",
    "reduced_density",
    "root_mode",
    "schmidt_decomposition",
    "schmidt_eigenvalues",
    "schmidt_k_and_entropy",
    "schmidt_modes_from_factorization",
    "schmidt_residual",
    "stokes_vector",
    "wave_function",
]
