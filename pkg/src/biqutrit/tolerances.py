"""Numerical tolerances shared across the package.

``EPS_NORM`` guards normalization/Hermiticity of closed-form quantities,
``EPS_REC`` bounds reconstruction residuals and ``EPS_GEOM`` is used for
geometric predicates on the Poincare sphere, where angle extraction near
0 or pi costs precision.  ``QUTRIT_EPS`` in the environment overrides
``EPS_REC``.
"""

import os

EPS_NORM = 1e-12
EPS_REC = 1e-10
EPS_GEOM = 1e-9


def eps_rec() -> float:
    value = os.environ.get("QUTRIT_EPS")
    if not value:
        return EPS_REC
    eps = float(value)
    if not eps > 0:
        raise ValueError(f"QUTRIT_EPS must be positive, got {value!r}")
    return eps
