"""Poincare-sphere geometry of a qutrit.

Five vectors describe a state: the Stokes vectors ``S_A`` and ``S_B`` of
the two factorizing modes, ``S_plus`` and ``S_minus`` of the Schmidt modes
and the per-photon biphoton vector ``S_biph``.  They are coplanar,
``S_plus = -S_minus``, and ``S_biph`` lies along ``S_plus`` and along the
bisector of ``S_A`` and ``S_B``.

Stokes numbering follows :class:`biqutrit.core.state.StokesVector`
(``s3`` is the H/V axis, ``s2`` circular).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from biqutrit.core import (
    JonesVector,
    QutritState,
    StokesVector,
    concurrence,
    factorize,
    schmidt_decomposition,
    stokes_vector,
)
from biqutrit.errors import NotAntipodalError, NotNormalizedError, OutOfRangeError, ZeroVectorError
from biqutrit.tolerances import EPS_GEOM, EPS_NORM

__all__ = [
    "BisectorReport",
    "SphereFrame",
    "SphereScene",
    "StokesVector",
    "angle_between",
    "biphoton_stokes_composition",
    "bisector_check",
    "bisector_coefficient",
    "concurrence_from_angle",
    "polarization_from_angle",
    "schmidt_frame",
    "sphere_scene",
    "stokes_of_jones",
]


def stokes_of_jones(j: JonesVector) -> StokesVector:
    """Stokes vector of the pure state ``j``.

    For ``j`` proportional to ``(1, -x)`` this is
    ``((-2 Re x, -2 Im x, 1 - |x|^2) / (1 + |x|^2))``.
    """
    h, v = complex(j.h), complex(j.v)
    n2 = abs(h) ** 2 + abs(v) ** 2
    if abs(n2 - 1.0) > 10 * EPS_NORM:
        raise NotNormalizedError(f"Jones vector norm^2 = {n2!r}")
    hv = h.conjugate() * v
    return StokesVector(2 * hv.real, 2 * hv.imag, abs(h) ** 2 - abs(v) ** 2)


def angle_between(a: StokesVector, b: StokesVector) -> float:
    na, nb = a.norm(), b.norm()
    if na == 0 or nb == 0:
        raise ZeroVectorError("angle with a zero Stokes vector is undefined")
    # atan2 keeps full precision near 0 and pi, unlike arccos of the dot product
    cross = np.linalg.norm(np.cross(a.as_array(), b.as_array()))
    return math.atan2(cross, a.dot(b))


def _check_angle(theta: float) -> float:
    if not (-EPS_GEOM <= theta <= math.pi + EPS_GEOM):
        raise OutOfRangeError(f"angle {theta!r} outside [0, pi]")
    return min(math.pi, max(0.0, theta))


def concurrence_from_angle(theta_ab: float) -> float:
    """``C = (1 - cos t)/(3 + cos t)`` for the angle ``t`` between S_A, S_B."""
    c = math.cos(_check_angle(theta_ab))
    return (1.0 - c) / (3.0 + c)


def polarization_from_angle(theta_ab: float) -> float:
    """``P = 4|cos(t/2)|/(3 + cos t)``."""
    t = _check_angle(theta_ab)
    return 4.0 * abs(math.cos(t / 2)) / (3.0 + math.cos(t))


def bisector_coefficient(theta_ab: float) -> float:
    """Scalar ``k`` with ``S_biph = k (S_A + S_B)``, i.e. ``P / |S_A + S_B|``.

    Since ``|S_A + S_B| = 2 cos(t/2)`` this reduces to ``2/(3 + cos t)``.
    """
    return 2.0 / (3.0 + math.cos(_check_angle(theta_ab)))


def biphoton_stokes_composition(
    lambda_plus: float, lambda_minus: float, s_plus: StokesVector, s_minus: StokesVector
) -> StokesVector:
    """``lambda_plus S_plus + lambda_minus S_minus``."""
    if abs(lambda_plus + lambda_minus - 1.0) > 10 * EPS_NORM:
        raise ValueError(f"weights must sum to 1, got {lambda_plus + lambda_minus!r}")
    if s_plus.dot(s_minus) > -1.0 + EPS_GEOM:
        raise NotAntipodalError("Schmidt-mode Stokes vectors are not antipodal")
    out = lambda_plus * s_plus.as_array() + lambda_minus * s_minus.as_array()
    return StokesVector.from_array(out)


@dataclass(frozen=True)
class BisectorReport:
    degenerate: bool
    theta_ab: float
    coefficient: float
    # |S_biph - P (S_A + S_B)/|S_A + S_B||
    direction_residual: float
    # |S_biph - coefficient (S_A + S_B)|
    coefficient_residual: float


def bisector_check(q: QutritState) -> BisectorReport:
    """Check that ``S_biph`` bisects ``S_A`` and ``S_B`` with the closed-form
    coefficient.  ``S_biph`` comes from the reduced density matrix, the
    other two from the factorization.  Unpolarized states (``P`` below
    ``EPS_GEOM``) come back flagged as degenerate with zero residuals."""
    f = factorize(q)
    sa = stokes_of_jones(f.mode_a)
    sb = stokes_of_jones(f.mode_b)
    sbiph = stokes_vector(q).as_array()
    theta = angle_between(sa, sb)
    p = float(np.linalg.norm(sbiph))
    total = sa.as_array() + sb.as_array()
    if p < EPS_GEOM:
        return BisectorReport(True, theta, float("nan"), 0.0, 0.0)
    coef = bisector_coefficient(theta)
    direction = p * total / np.linalg.norm(total)
    return BisectorReport(
        degenerate=False,
        theta_ab=theta,
        coefficient=coef,
        direction_residual=float(np.linalg.norm(sbiph - direction)),
        coefficient_residual=float(np.linalg.norm(sbiph - coef * total)),
    )


@dataclass(frozen=True, eq=False)
class SphereFrame:
    """Rotation of the sphere; ``apply`` maps lab Stokes vectors into the frame."""

    rotation: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        r = np.asarray(self.rotation, dtype=float)
        if np.max(np.abs(r @ r.T - np.eye(3))) > 10 * EPS_NORM or abs(np.linalg.det(r) - 1) > 10 * EPS_NORM:
            raise ValueError("rotation must be orthogonal with determinant +1")
        r.setflags(write=False)
        object.__setattr__(self, "rotation", r)

    def apply(self, s: StokesVector) -> StokesVector:
        return StokesVector.from_array(self.rotation @ s.as_array())


def _unit(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v)


def schmidt_frame(q: QutritState) -> SphereFrame:
    """Rotation sending ``S_plus`` to ``(0, 0, 1)`` and ``S_A`` into the
    ``s1 = 0`` plane with ``s2 >= 0``.

    If ``S_A`` is parallel to ``S_plus`` (product states) the remaining
    freedom is fixed by keeping the lab ``s2`` axis as close as possible,
    so an H-polarized Schmidt mode gives the identity.
    """
    f = factorize(q)
    s = schmidt_decomposition(q, f)
    e3 = _unit(stokes_of_jones(s.mode_plus).as_array())
    sa = stokes_of_jones(f.mode_a).as_array()
    e2 = None
    for candidate in (sa, np.array([0.0, 1.0, 0.0]), np.array([1.0, 0.0, 0.0])):
        perp = candidate - np.dot(candidate, e3) * e3
        if np.linalg.norm(perp) > EPS_GEOM:
            e2 = _unit(perp)
            break
    e1 = np.cross(e2, e3)
    return SphereFrame(np.vstack([e1, e2, e3]), degenerate=s.basis_free)


@dataclass(frozen=True)
class SphereScene:
    """Named Stokes vectors with weights, for external plotting."""

    frame: str
    vectors: list = field(default_factory=list)  # (name, StokesVector, weight)
    degenerate_frame: bool = False

    def to_dict(self) -> dict:
        return {
            "frame": self.frame,
            "degenerate_frame": self.degenerate_frame,
            "vectors": [
                {"name": name, "s1": s.s1 + 0.0, "s2": s.s2 + 0.0, "s3": s.s3 + 0.0, "weight": w}
                for name, s, w in self.vectors
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "s1", "s2", "s3", "weight"])
        for name, s, w in self.vectors:
            writer.writerow([name] + [f"{x:.17g}" for x in (s.s1, s.s2, s.s3, w)])
        return buf.getvalue()


def sphere_scene(q: QutritState, frame: str = "lab") -> SphereScene:
    """Vectors ``S_A``, ``S_B``, ``S_plus``, ``S_minus``, ``S_biph``.

    Schmidt-mode vectors carry their eigenvalues as weights, the rest
    weight 1.  ``frame`` is ``"lab"`` or ``"schmidt"``.
    """
    if frame not in ("lab", "schmidt"):
        raise ValueError(f"unknown frame {frame!r}")
    f = factorize(q)
    s = schmidt_decomposition(q, f)
    vectors = [
        ("S_A", stokes_of_jones(f.mode_a), 1.0),
        ("S_B", stokes_of_jones(f.mode_b), 1.0),
        ("S_plus", stokes_of_jones(s.mode_plus), s.lambda_plus),
        ("S_minus", stokes_of_jones(s.mode_minus), s.lambda_minus),
        ("S_biph", stokes_vector(q), 1.0),
    ]
    degenerate = s.basis_free or concurrence(q) >= 1.0 - EPS_GEOM
    if frame == "schmidt":
        rot = schmidt_frame(q)
        vectors = [(name, rot.apply(v), w) for name, v, w in vectors]
    return SphereScene(frame=frame, vectors=vectors, degenerate_frame=degenerate)
