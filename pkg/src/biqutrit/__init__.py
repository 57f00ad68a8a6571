"""Schmidt modes, operator factorization and Poincare-sphere geometry of
polarization biphoton qutrits, plus a coincidence-counting simulator."""

from biqutrit.core import (
    AT_INFINITY,
    BiphotonWaveFunction,
    FactorizationResult,
    JonesVector,
    QutritState,
    ReducedDensityMatrix,
    SchmidtDecomposition,
    StokesVector,
    alpha_family,
    concurrence,
    concurrence_from_commutator,
    degree_of_polarization,
    eigen_oracle,
    factorize,
    make_jones,
    make_qutrit,
    reduced_density,
    schmidt_decomposition,
    schmidt_eigenvalues,
    schmidt_k_and_entropy,
    stokes_vector,
    wave_function,
)

__version__ = "0.1.0"

__all__ = [
    "AT_INFINITY",
    "BiphotonWaveFunction",
    "FactorizationResult",
    "JonesVector",
    "QutritState",
    "ReducedDensityMatrix",
    "SchmidtDecomposition",
    "StokesVector",
    "alpha_family",
    "concurrence",
    "concurrence_from_commutator",
    "degree_of_polarization",
    "eigen_oracle",
    "factorize",
    "make_jones",
    "make_qutrit",
    "reduced_density",
    "schmidt_decomposition",
    "schmidt_eigenvalues",
    "schmidt_k_and_entropy",
    "stokes_vector",
    "wave_function",
]
