"""Schmidt decomposition built from the factorizing modes.

With the phases of the factorization applied, ``psi_A + psi_B`` and
``psi_B - psi_A`` are orthogonal and are the two Schmidt modes, so no
eigenproblem has to be solved.  :func:`biqutrit.core.oracle.eigen_oracle`
is the independent check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from biqutrit.core.factorization import FactorizationResult, factorize
from biqutrit.core.measures import schmidt_eigenvalues
from biqutrit.core.state import (
    JonesVector,
    QutritState,
    make_jones,
    match_global_phase,
    product_wave_function,
    wave_function,
)
from biqutrit.tolerances import EPS_NORM

# below this norm the difference psi_B - psi_A is dominated by rounding and
# only its phase is used
_DIFF_FLOOR = 1e-4
_ROUNDING_FLOOR = 16 * np.finfo(float).eps


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``Psi = sqrt(l+) m+ (x) m+ + e^{2i phi} sqrt(l-) m- (x) m-`` up to a
    global phase.  Modes follow the Jones phase convention (first nonzero
    component real positive); ``phi`` lies in ``[0, pi)``.

    ``basis_free`` marks a degenerate spectrum, where any orthonormal pair
    works and the factorization-derived one is returned.
    """

    lambda_plus: float
    lambda_minus: float
    mode_plus: JonesVector
    mode_minus: JonesVector
    phi: float
    basis_free: bool = False

    def reconstruct(self) -> np.ndarray:
        pp = product_wave_function(self.mode_plus, self.mode_plus)
        mm = product_wave_function(self.mode_minus, self.mode_minus)
        psi = math.sqrt(self.lambda_plus) * pp + cmath.exp(2j * self.phi) * math.sqrt(self.lambda_minus) * mm
        return psi / np.linalg.norm(psi)


def schmidt_modes_from_factorization(f: FactorizationResult) -> tuple[JonesVector, JonesVector]:
    """Unnormalized-phase Schmidt modes ``(psi_A + psi_B, i(psi_B - psi_A))``,
    each scaled to unit norm."""
    a = f.mode_a.as_array()
    b = f.mode_b.as_array()
    plus = make_jones(*(a + b))
    diff = 1j * (b - a)
    dn = np.linalg.norm(diff)
    minus = plus.orthogonal()
    if dn > _DIFF_FLOOR:
        minus = make_jones(*diff)
    elif dn > 0:
        ov = minus.overlap(JonesVector(*(diff / dn)))
        if ov != 0:
            minus = minus.scaled(ov / abs(ov))
    return plus, minus


def _flush(m: JonesVector) -> JonesVector:
    # a component at the rounding floor must not choose the phase convention
    h = 0j if abs(m.h) <= _ROUNDING_FLOOR else m.h
    v = 0j if abs(m.v) <= _ROUNDING_FLOOR else m.v
    return make_jones(h, v)


def schmidt_decomposition(q: QutritState, f: FactorizationResult | None = None) -> SchmidtDecomposition:
    f = factorize(q) if f is None else f
    lp, lm = schmidt_eigenvalues(q)
    plus, minus = schmidt_modes_from_factorization(f)
    plus = _flush(plus).canonical()
    minus = _flush(minus).canonical()

    psi = wave_function(q).psi
    a = np.vdot(product_wave_function(plus, plus), psi)
    b = np.vdot(product_wave_function(minus, minus), psi)
    phi = 0.0
    if abs(b) > EPS_NORM and abs(a) > 0:
        phi = 0.5 * cmath.phase(b * a.conjugate()) % math.pi
        if phi >= math.pi:  # rounding of the modulo
            phi = 0.0
    return SchmidtDecomposition(
        lambda_plus=lp,
        lambda_minus=lm,
        mode_plus=plus,
        mode_minus=minus,
        phi=phi,
        basis_free=abs(lp - lm) <= EPS_NORM,
    )


def schmidt_residual(q: QutritState, s: SchmidtDecomposition | None = None) -> float:
    s = schmidt_decomposition(q) if s is None else s
    return match_global_phase(wave_function(q).psi, s.reconstruct())
