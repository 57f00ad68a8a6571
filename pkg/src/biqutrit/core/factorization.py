"""Operator factorization ``|Psi> = N A^+ B^+ |0>``.

The creation operator ``c1/sqrt2 a_H^+^2 + c2 a_H^+ a_V^+ + c3/sqrt2 a_V^+^2``
is factored like the polynomial ``Q(x) = c1/sqrt2 x^2 + c2 x + c3/sqrt2``;
each root ``x`` gives a factor ``a_H^+ - x a_V^+``, i.e. the photon mode
``(1, -x)/sqrt(1 + |x|^2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from biqutrit.core.state import (
    JONES_V,
    SQRT2,
    JonesVector,
    QutritState,
    match_global_phase,
    product_wave_function,
    wave_function,
)

AT_INFINITY = complex(math.inf, 0.0)
"""Root lost when ``c1 = 0``; its mode is pure V."""


def is_at_infinity(x: complex) -> bool:
    return cmath.isinf(x)


@dataclass(frozen=True)
class FactorizationResult:
    x_a: complex
    x_b: complex
    phi0: float
    mode_a: JonesVector
    mode_b: JonesVector
    commutator: float
    norm_n: float

    def symmetrized_product(self) -> np.ndarray:
        """Wave function of ``N A^+ B^+ |0>``."""
        ab = product_wave_function(self.mode_a, self.mode_b)
        return self.norm_n * (ab + ab.T) / SQRT2


def quadratic_roots(q: QutritState) -> tuple[complex, complex]:
    """Roots ``(x_A, x_B)`` of ``Q(x)``; ``x_A`` takes the ``+`` branch of
    the principal square root.

    The root that would suffer cancellation is recovered from the product
    ``x_A x_B = c3/c1``.  With ``c1 = 0`` the finite root of the linear
    polynomial is ``x_A`` and ``x_B`` is :data:`AT_INFINITY`.
    """
    c1, c2, c3 = q.as_tuple()
    if c1 == 0:
        if c2 == 0:
            return AT_INFINITY, AT_INFINITY
        return -c3 / (SQRT2 * c2) + 0, AT_INFINITY
    d = cmath.sqrt(c2 * c2 - 2 * c1 * c3)
    num_plus = -c2 + d
    num_minus = -c2 - d
    if abs(num_plus) >= abs(num_minus):
        x_a = num_plus / (SQRT2 * c1)
        x_b = SQRT2 * c3 / num_plus if num_plus != 0 else 0j
    else:
        x_b = num_minus / (SQRT2 * c1)
        x_a = SQRT2 * c3 / num_minus
    # adding 0 turns signed zeros into +0 so serialized output is stable
    return x_a + 0, x_b + 0


def root_mode(x: complex) -> JonesVector:
    """Unit mode ``(1, -x)/sqrt(1 + |x|^2)``; ``(0, 1)`` at infinity."""
    if is_at_infinity(x):
        return JONES_V
    ax = abs(x)
    if ax <= 1.0:
        n = math.sqrt(1.0 + ax * ax)
        return JonesVector(complex(1.0 / n), -x / n)
    inv = 1.0 / ax
    n = math.sqrt(1.0 + inv * inv)
    return JonesVector(complex(inv / n), -(x / ax) / n)


def factorize(q: QutritState) -> FactorizationResult:
    """Factorizing modes, the phase ``phi0``, ``[A, B^+]`` and ``N``.

    ``phi0`` is chosen so that ``[A, B^+] = e^{-2i phi0} <u_A|u_B>`` is real
    and nonnegative (``u`` the unphased root modes); it is 0 when the modes
    are orthogonal.  ``e^{+i phi0}`` goes on ``A^+`` and ``e^{-i phi0}`` on
    ``B^+``.
    """
    x_a, x_b = quadratic_roots(q)
    u_a = root_mode(x_a)
    u_b = root_mode(x_b)
    w = u_a.overlap(u_b)
    phi0 = 0.5 * math.atan2(w.imag, w.real) if w != 0 else 0.0
    k = min(1.0, abs(w))
    mode_a = u_a.scaled(cmath.exp(1j * phi0))
    mode_b = u_b.scaled(cmath.exp(-1j * phi0))
    return FactorizationResult(
        x_a=x_a,
        x_b=x_b,
        phi0=phi0,
        mode_a=mode_a,
        mode_b=mode_b,
        commutator=k,
        norm_n=1.0 / math.sqrt(1.0 + k * k),
    )


def factorization_residual(q: QutritState, f: FactorizationResult | None = None) -> float:
    """Frobenius distance, up to global phase, between the wave function of
    ``q`` and ``N sym(psi_A (x) psi_B)``."""
    f = factorize(q) if f is None else f
    return match_global_phase(wave_function(q).psi, f.symmetrized_product())
