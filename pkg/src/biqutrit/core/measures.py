"""Entanglement and polarization measures of a pure qutrit."""

from __future__ import annotations

import math

from biqutrit.core.state import QutritState, StokesVector, reduced_density


def concurrence(q: QutritState) -> float:
    """Wootters concurrence ``|2 c1 c3 - c2^2|``, clipped to [0, 1]."""
    return min(1.0, abs(2 * q.c1 * q.c3 - q.c2 * q.c2))


def degree_of_polarization(q: QutritState) -> float:
    """``P``, equal to ``sqrt(1 - C^2)`` for a pure qutrit.

    Evaluated as ``hypot(|c1|^2 - |c3|^2, sqrt2 |c1* c2 + c2* c3|)``, which
    has no cancellation near ``C = 1`` where ``sqrt(1 - C^2)`` loses half
    the digits.  :func:`stokes_vector` (through the reduced density
    matrix) and the ``C^2 + P^2 = 1`` identity are the checks.
    """
    c1, c2, c3 = q.as_tuple()
    axial = abs(c1) ** 2 - abs(c3) ** 2
    transverse = math.sqrt(2.0) * abs(c1.conjugate() * c2 + c2.conjugate() * c3)
    return min(1.0, math.hypot(axial, transverse))


def stokes_vector(q: QutritState) -> StokesVector:
    """Single-photon Stokes vector ``Tr(rho_r sigma)`` of the qutrit."""
    rho = reduced_density(q).rho
    off = rho[1, 0]
    return StokesVector(
        float(2 * off.real),
        float(2 * off.imag),
        float((rho[0, 0] - rho[1, 1]).real),
    )


def schmidt_eigenvalues(q: QutritState) -> tuple[float, float]:
    """``(lambda_plus, lambda_minus) = ((1 + P)/2, (1 - P)/2)``.

    ``lambda_minus`` is taken from ``lambda_plus lambda_minus = C^2/4`` so
    that it keeps full relative precision for nearly product states.
    """
    lp = (1.0 + degree_of_polarization(q)) / 2
    c = concurrence(q)
    return lp, c * c / (4.0 * lp)


def _xlog2x(x: float) -> float:
    return 0.0 if x <= 0 else x * math.log2(x)


def schmidt_k_and_entropy(q: QutritState) -> tuple[float, float]:
    """Schmidt number ``K = 1/sum(lambda^2)`` and the reduced-state entropy
    in bits, with ``0 log 0 = 0``."""
    lp, lm = schmidt_eigenvalues(q)
    k = 1.0 / (lp * lp + lm * lm)
    entropy = -(_xlog2x(lp) + _xlog2x(lm))
    return k, max(0.0, entropy)


def concurrence_from_k(k: float) -> float:
    return math.sqrt(max(0.0, 2.0 * (1.0 - 1.0 / k)))


def concurrence_from_commutator(f) -> float:
    """``(1 - k^2)/(1 + k^2)`` with ``k`` the cross-commutator ``[A, B^+]``.

    Accepts a :class:`~biqutrit.core.factorization.FactorizationResult` or
    the bare commutator value.
    """
    k = float(getattr(f, "commutator", f))
    k2 = k * k
    return (1.0 - k2) / (1.0 + k2)
