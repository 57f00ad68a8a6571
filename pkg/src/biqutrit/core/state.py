"""Value types for biphoton polarization qutrits.

Basis ordering is (H, V) everywhere.  A qutrit is stored as the amplitude
triple ``(c1, c2, c3)`` on ``|2_H>, |1_H 1_V>, |2_V>``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from biqutrit.errors import AllZeroError, NonFiniteError, NotNormalizedError
from biqutrit.tolerances import EPS_NORM

SQRT2 = math.sqrt(2.0)

# a state that already satisfies the phase convention and whose norm is
# this close to 1 is returned untouched, which makes make_qutrit idempotent
_CANONICAL_SLACK = 8 * np.finfo(float).eps


def _first_nonzero(values):
    for i, z in enumerate(values):
        if z != 0:
            return i
    return None


def canonical_phase(values):
    """Rotate a tuple of complex numbers so that the first nonzero entry is
    real and strictly positive.  Returns a tuple of ``complex``."""
    values = tuple(complex(z) for z in values)
    i = _first_nonzero(values)
    if i is None:
        return values
    lead = values[i]
    mag = abs(lead)
    rot = cmath.exp(-1j * cmath.phase(lead))  # unit modulus even for subnormal leads
    out = [z * rot for z in values]
    out[i] = complex(mag, 0.0)
    for j in range(i):
        out[j] = 0j
    return tuple(out)


@dataclass(frozen=True)
class QutritState:
    """Normalized amplitudes with the first nonzero amplitude real positive.

    Build instances through :func:`make_qutrit`; the constructor trusts its
    input.
    """

    c1: complex
    c2: complex
    c3: complex

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.c1, self.c2, self.c3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=complex)

    def norm(self) -> float:
        return math.sqrt(abs(self.c1) ** 2 + abs(self.c2) ** 2 + abs(self.c3) ** 2)


def make_qutrit(c1: complex, c2: complex, c3: complex) -> QutritState:
    """Normalize ``(c1, c2, c3)`` and fix the global phase.

    Raises :class:`AllZeroError` for the null vector and
    :class:`NonFiniteError` if any component is nan or infinite.
    """
    values = tuple(complex(z) for z in (c1, c2, c3))
    if not all(cmath.isfinite(z) for z in values):
        raise NonFiniteError(f"non-finite qutrit amplitude in {values}")
    i = _first_nonzero(values)
    if i is None:
        raise AllZeroError("qutrit amplitudes are all zero")

    # avoid overflow/underflow in the norm for extreme magnitudes
    scale = max(abs(z) for z in values)
    norm2 = sum(abs(z / scale) ** 2 for z in values)
    lead = values[i]
    if abs(scale * math.sqrt(norm2) - 1.0) <= _CANONICAL_SLACK and lead.imag == 0 and lead.real > 0:
        return QutritState(*values)

    norm = scale * math.sqrt(norm2)
    scaled = tuple((z / scale) / math.sqrt(norm2) for z in values)
    if norm == 0 or not all(cmath.isfinite(z) for z in scaled):
        raise NonFiniteError(f"cannot normalize {values}")
    return QutritState(*canonical_phase(scaled))


def alpha_family(alpha: float) -> QutritState:
    """The qutrit ``N a_H^+ (cos a a_H^+ + sin a a_V^+)|0>``.

    Its factorizing operators are known without any root finding, which
    makes it a convenient golden family: ``C = sin^2 a / (1 + cos^2 a)``.
    """
    c = math.cos(alpha)
    s = math.sin(alpha)
    d = math.sqrt(1.0 + c * c)
    return make_qutrit(SQRT2 * c / d, s / d, 0.0)


@dataclass(frozen=True)
class JonesVector:
    """Single-photon polarization amplitudes ``(h, v)``, unit norm."""

    h: complex
    v: complex

    def __post_init__(self):
        n2 = abs(self.h) ** 2 + abs(self.v) ** 2
        if not abs(n2 - 1.0) <= 10 * EPS_NORM:
            raise NotNormalizedError(f"Jones vector norm^2 = {n2!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.h, self.v], dtype=complex)

    def overlap(self, other: JonesVector) -> complex:
        """``<self|other>``."""
        return self.h.conjugate() * other.h + self.v.conjugate() * other.v

    def orthogonal(self) -> JonesVector:
        """The orthogonal polarization ``(-v*, h*)``."""
        return JonesVector(-self.v.conjugate(), self.h.conjugate())

    def canonical(self) -> JonesVector:
        return JonesVector(*canonical_phase((self.h, self.v)))

    def scaled(self, phase: complex) -> JonesVector:
        return JonesVector(self.h * phase, self.v * phase)


def make_jones(h: complex, v: complex) -> JonesVector:
    """Normalize ``(h, v)`` into a :class:`JonesVector` (phase untouched)."""
    h, v = complex(h), complex(v)
    if not (cmath.isfinite(h) and cmath.isfinite(v)):
        raise NonFiniteError(f"non-finite Jones amplitude ({h}, {v})")
    n = math.hypot(abs(h), abs(v))
    if n == 0:
        raise AllZeroError("Jones vector is zero")
    return JonesVector(h / n, v / n)


JONES_H = JonesVector(1 + 0j, 0j)
JONES_V = JonesVector(0j, 1 + 0j)


@dataclass(frozen=True)
class StokesVector:
    """Stokes components in the numbering used throughout the package:

    * ``s3`` -- H (+1) versus V (-1) linear polarization,
    * ``s1`` -- linear polarization at +45 (+1) versus -45 (-1) degrees,
    * ``s2`` -- circular polarization.

    With a density matrix ``rho`` this is ``s1 = 2 Re rho[1,0]``,
    ``s2 = 2 Im rho[1,0]``, ``s3 = rho[0,0] - rho[1,1]``.
    """

    s1: float
    s2: float
    s3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.s1, self.s2, self.s3], dtype=float)

    def norm(self) -> float:
        return math.sqrt(self.s1 * self.s1 + self.s2 * self.s2 + self.s3 * self.s3)

    def dot(self, other: StokesVector) -> float:
        return self.s1 * other.s1 + self.s2 * other.s2 + self.s3 * other.s3

    @property
    def theta(self) -> float:
        """Polar angle measured from the H axis (``s3``)."""
        n = self.norm()
        if n == 0:
            return 0.0
        return math.acos(max(-1.0, min(1.0, self.s3 / n)))

    @property
    def phi(self) -> float:
        """Azimuth of the projection on the (s1, s2) plane, from the +45 axis."""
        return math.atan2(self.s2, self.s1)

    @classmethod
    def from_array(cls, arr) -> StokesVector:
        a = np.asarray(arr, dtype=float)
        return cls(float(a[0]), float(a[1]), float(a[2]))


@dataclass(frozen=True, eq=False)
class BiphotonWaveFunction:
    """Symmetric 2x2 tensor ``psi[s1, s2]`` over polarizations (H, V)."""

    psi: np.ndarray

    def __post_init__(self):
        self.psi.setflags(write=False)


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """Single-photon reduced density matrix, Hermitian with unit trace."""

    rho: np.ndarray

    def __post_init__(self):
        self.rho.setflags(write=False)


def wave_function(q: QutritState) -> BiphotonWaveFunction:
    """Expand ``c1 psi_HH + c2 psi_HV + c3 psi_VV``; ``psi_HV`` carries 1/sqrt(2)."""
    off = q.c2 / SQRT2
    psi = np.array([[q.c1, off], [off, q.c3]], dtype=complex)
    return BiphotonWaveFunction(psi)


def reduced_density(q: QutritState) -> ReducedDensityMatrix:
    """Closed-form reduced density matrix (identical for either photon)."""
    c1, c2, c3 = q.as_tuple()
    a = abs(c1) ** 2 + abs(c2) ** 2 / 2
    d = abs(c3) ** 2 + abs(c2) ** 2 / 2
    b = (c1 * c2.conjugate() + c2 * c3.conjugate()) / SQRT2
    rho = np.array([[a, b], [b.conjugate(), d]], dtype=complex)
    return ReducedDensityMatrix(rho)


def product_wave_function(a: JonesVector, b: JonesVector) -> np.ndarray:
    """``a (x) b`` as a 2x2 array."""
    return np.outer(a.as_array(), b.as_array())


def match_global_phase(target: np.ndarray, candidate: np.ndarray) -> float:
    """Distance ``min_g ||target - e^{ig} candidate||`` (Frobenius).

    The optimal phase is computed explicitly and the difference is formed
    directly; going through ``|<t|c>|`` would lose half the digits.
    """
    ov = np.vdot(candidate, target)
    rot = ov / abs(ov) if abs(ov) > 0 else 1.0
    return float(np.linalg.norm(target - rot * candidate))
