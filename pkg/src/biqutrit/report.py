"""Canonical JSON forms of the value types and the analysis report.

Complex numbers are ``{"re": x, "im": y}``, states are
``{"c1": ..., "c2": ..., "c3": ...}``, a root at infinity is the string
``"infinity"``.  Floats use Python's shortest round-trip repr, and dict
key order is fixed by construction, so equal inputs give byte-identical
output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from biqutrit.core import (
    FactorizationResult,
    JonesVector,
    QutritState,
    SchmidtDecomposition,
    StokesVector,
    concurrence,
    concurrence_from_commutator,
    degree_of_polarization,
    eigen_oracle,
    factorization_residual,
    factorize,
    is_at_infinity,
    make_qutrit,
    reduced_density,
    schmidt_decomposition,
    schmidt_k_and_entropy,
    schmidt_residual,
    stokes_vector,
)
from biqutrit.tolerances import eps_rec

INFINITY_TAG = "infinity"


def _f(x) -> float | None:
    x = float(x)
    return x if math.isfinite(x) else None


def complex_to_json(z: complex):
    z = complex(z)
    if is_at_infinity(z):
        return INFINITY_TAG
    return {"re": float(z.real) + 0.0, "im": float(z.imag) + 0.0}


def complex_from_json(obj) -> complex:
    if obj == INFINITY_TAG:
        return complex(math.inf, 0.0)
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return complex(obj)
    if isinstance(obj, dict) and set(obj) <= {"re", "im"}:
        re, im = obj.get("re", 0.0), obj.get("im", 0.0)
        for part in (re, im):
            if isinstance(part, bool) or not isinstance(part, (int, float)):
                raise ValueError(f"complex parts must be numbers, got {obj!r}")
        return complex(re, im)
    raise ValueError(f"not a complex number: {obj!r}")


def state_to_json(q: QutritState) -> dict:
    return {"c1": complex_to_json(q.c1), "c2": complex_to_json(q.c2), "c3": complex_to_json(q.c3)}


def state_from_json(obj) -> QutritState:
    """Parse ``{"c1":..,"c2":..,"c3":..}``; a report with a ``state`` key is
    accepted too.  Missing amplitudes default to 0."""
    if isinstance(obj, dict) and "state" in obj and isinstance(obj["state"], dict):
        obj = obj["state"]
    if not isinstance(obj, dict) or not set(obj) & {"c1", "c2", "c3"}:
        raise ValueError("expected an object with keys c1, c2, c3")
    unknown = set(obj) - {"c1", "c2", "c3"}
    if unknown:
        raise ValueError(f"unexpected keys {sorted(unknown)}")
    return make_qutrit(*(complex_from_json(obj.get(k, 0.0)) for k in ("c1", "c2", "c3")))


def jones_to_json(j: JonesVector) -> dict:
    return {"h": complex_to_json(j.h), "v": complex_to_json(j.v)}


def stokes_to_json(s: StokesVector) -> dict:
    return {"s1": float(s.s1) + 0.0, "s2": float(s.s2) + 0.0, "s3": float(s.s3) + 0.0}


def factorization_to_json(f: FactorizationResult) -> dict:
    return {
        "x_a": complex_to_json(f.x_a),
        "x_b": complex_to_json(f.x_b),
        "phi0": float(f.phi0),
        "mode_a": jones_to_json(f.mode_a),
        "mode_b": jones_to_json(f.mode_b),
        "commutator": float(f.commutator),
        "norm_n": float(f.norm_n),
    }


def schmidt_to_json(s: SchmidtDecomposition) -> dict:
    return {
        "lambda_plus": float(s.lambda_plus),
        "lambda_minus": float(s.lambda_minus),
        "mode_plus": jones_to_json(s.mode_plus),
        "mode_minus": jones_to_json(s.mode_minus),
        "phi": float(s.phi),
        "basis_free": s.basis_free,
    }


def oracle_comparison(q: QutritState, s: SchmidtDecomposition) -> dict:
    """Eigenvalue and eigenvector agreement with the closed-form oracle.

    The mode deficit ``1 - |<oracle|mode>|`` is ``None`` for a degenerate
    spectrum, where the eigenbasis is arbitrary.
    """
    vals, vecs = eigen_oracle(reduced_density(q))
    eig = max(abs(vals[0] - s.lambda_plus), abs(vals[1] - s.lambda_minus))
    mode = None
    if not s.basis_free:
        mode = max(
            1.0 - abs(np.vdot(vecs[:, 0], s.mode_plus.as_array())),
            1.0 - abs(np.vdot(vecs[:, 1], s.mode_minus.as_array())),
        )
    return {"eigenvalue_error": float(eig), "mode_overlap_deficit": None if mode is None else float(mode)}


@dataclass(frozen=True)
class AnalysisReport:
    state: QutritState
    concurrence: float
    polarization: float
    lambda_plus: float
    lambda_minus: float
    k: float
    entropy: float
    stokes_biphoton: StokesVector
    factorization: FactorizationResult
    schmidt: SchmidtDecomposition
    residuals: dict
    eps_rec: float

    @property
    def passed(self) -> bool:
        return (
            self.residuals["schmidt_reconstruction"] < self.eps_rec
            and self.residuals["factorization_reconstruction"] < self.eps_rec
        )

    def to_dict(self) -> dict:
        return {
            "state": state_to_json(self.state),
            "concurrence": self.concurrence,
            "polarization": self.polarization,
            "lambda_plus": self.lambda_plus,
            "lambda_minus": self.lambda_minus,
            "K": self.k,
            "entropy": self.entropy,
            "stokes_biphoton": stokes_to_json(self.stokes_biphoton),
            "factorization": factorization_to_json(self.factorization),
            "schmidt": schmidt_to_json(self.schmidt),
            "residuals": self.residuals,
            "eps_rec": self.eps_rec,
            "passed": self.passed,
        }


def analyze(q: QutritState) -> AnalysisReport:
    f = factorize(q)
    s = schmidt_decomposition(q, f)
    c = concurrence(q)
    p = degree_of_polarization(q)
    k, entropy = schmidt_k_and_entropy(q)
    stokes = stokes_vector(q)
    residuals = {
        "schmidt_reconstruction": schmidt_residual(q, s),
        "factorization_reconstruction": factorization_residual(q, f),
        "polarization_vs_stokes": abs(p - stokes.norm()),
        "concurrence_vs_commutator": abs(concurrence_from_commutator(f) - c),
        **oracle_comparison(q, s),
    }
    return AnalysisReport(
        state=q,
        concurrence=c,
        polarization=p,
        lambda_plus=s.lambda_plus,
        lambda_minus=s.lambda_minus,
        k=k,
        entropy=entropy,
        stokes_biphoton=stokes,
        factorization=f,
        schmidt=s,
        residuals=residuals,
        eps_rec=eps_rec(),
    )


def record_to_json(rec) -> dict:
    return {
        "r0": rec.r0,
        "r90": rec.r90,
        "r45": rec.r45,
        "cross": rec.cross,
        "n_pairs": rec.n_pairs,
    }


def simulation_to_json(sim, det) -> dict:
    from biqutrit.expsim import aligned_phase

    est = sim.estimate
    phi = aligned_phase(sim.aligned)
    return {
        "state": state_to_json(sim.state),
        "detector": {"eta1": det.eta1, "eta2": det.eta2, "dark_rate": det.dark_rate},
        "n_pairs": sim.expected.n_pairs,
        "seed": sim.seed,
        "exact": sim.counts is None,
        "plates": {
            "quarter_axis": sim.plates.quarter.axis_angle,
            "half_axis": sim.plates.half.axis_angle,
            "degenerate": sim.plates.degenerate,
        },
        "aligned_state": state_to_json(sim.aligned),
        "truth": {
            "lambda_plus": abs(sim.aligned.c1) ** 2,
            "lambda_minus": abs(sim.aligned.c3) ** 2,
            "phi": phi,
            "cos_2phi": math.cos(2 * phi),
            "concurrence": sim.concurrence,
        },
        "expected": record_to_json(sim.expected),
        "counts": None if sim.counts is None else record_to_json(sim.counts),
        "estimate": {
            "lambda_plus": est.lambda_plus,
            "lambda_minus": est.lambda_minus,
            "cos_2phi": _f(est.cos_2phi),
            "clamped": est.clamped,
            "phase_undefined": est.phase_undefined,
        },
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"
