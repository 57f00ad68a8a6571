"""Closed-form eigendecomposition of a 2x2 Hermitian matrix.

Used as the independent check on the algebraic Schmidt construction, so it
deliberately shares no code with :mod:`biqutrit.core.factorization`.
"""

from __future__ import annotations

import math

import numpy as np

from biqutrit.errors import NotHermitianError
from biqutrit.tolerances import EPS_NORM


def eigen_oracle(rho, eps: float = EPS_NORM) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(eigenvalues, eigenvectors)`` of a Hermitian 2x2 matrix.

    Eigenvalues are sorted descending; ``eigenvectors[:, i]`` belongs to
    ``eigenvalues[i]``.  When the spectrum is degenerate the standard basis
    is returned.

    Accepts an array or a :class:`ReducedDensityMatrix`.
    """
    m = np.asarray(getattr(rho, "rho", rho), dtype=complex)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > eps:
        raise NotHermitianError("matrix is not Hermitian within tolerance")

    # work on a scaled copy so tiny entries do not underflow in the vectors
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return np.zeros(2), np.eye(2, dtype=complex)
    a = m[0, 0].real / scale
    d = m[1, 1].real / scale
    b = 0.5 * (m[0, 1] + m[1, 0].conjugate())
    b = complex(b.real / scale, b.imag / scale)  # complex / float overflows for subnormal scale
    half = 0.5 * (a - d)
    mean = 0.5 * (a + d)
    r = math.hypot(half, abs(b))
    vals = scale * np.array([mean + r, mean - r])

    if r == 0.0:
        return vals, np.eye(2, dtype=complex)

    # pick the row of (rho - lambda) whose null vector avoids cancellation
    if half >= 0:
        v_plus = np.array([half + r, b.conjugate()])
        v_minus = np.array([-b, half + r])
    else:
        v_plus = np.array([b, r - half])
        v_minus = np.array([r - half, -b.conjugate()])
    return vals, np.column_stack([_normalize(v_plus), _normalize(v_minus)])


def _normalize(v: np.ndarray) -> np.ndarray:
    big = np.max(np.abs(v))
    v = v.real / big + 1j * (v.imag / big)
    return v / np.linalg.norm(v)
