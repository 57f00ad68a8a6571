"""Simulation of the Schmidt-mode measurement with waveplates, a PBS and
coincidence counting.

The beamsplitter/detector topology is collapsed into per-setting
coincidence rates.  After the plates have sent the Schmidt mode ``m+`` to H
the state reads ``sqrt(l+) |2_H> + e^{2i phi} sqrt(l-) |2_V>`` and, for N
pairs and efficiencies eta1, eta2,

    R0  = eta1 eta2 l+ N / 2
    R90 = eta1 eta2 l- N / 2
    R45 = eta1 eta2 (1 + 2 sqrt(l+ l-) cos 2phi) N / 4

The 50% beamsplitter loss is part of the factor 1/2; absorb any other
loss into the efficiencies.  ``phi`` here is the phase of the aligned
state, which depends on the plate convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from biqutrit.core import (
    QutritState,
    concurrence,
    make_qutrit,
    schmidt_decomposition,
    wave_function,
)
from biqutrit.core.state import SQRT2
from biqutrit.errors import NoCountsError, NotAlignedError, NotUnitaryError
from biqutrit.tolerances import EPS_NORM, EPS_REC

_ROUNDING_FLOOR = 16 * np.finfo(float).eps

RETARDANCE = {"quarter": math.pi / 2, "half": math.pi}


@dataclass(frozen=True)
class WaveplateSetting:
    kind: Literal["quarter", "half"]
    axis_angle: float

    def __post_init__(self):
        if self.kind not in RETARDANCE:
            raise ValueError(f"unknown waveplate kind {self.kind!r}")
        if not 0.0 <= self.axis_angle < math.pi:
            raise ValueError(f"axis angle {self.axis_angle!r} outside [0, pi)")


@dataclass(frozen=True)
class DetectorModel:
    eta1: float = 1.0
    eta2: float = 1.0
    # expected accidental coincidences per input pair, added to every channel
    dark_rate: float = 0.0

    def __post_init__(self):
        for name in ("eta1", "eta2"):
            eta = getattr(self, name)
            if not 0.0 <= eta <= 1.0:
                raise ValueError(f"{name}={eta!r} outside [0, 1]")
        if self.dark_rate < 0:
            raise ValueError("dark_rate must be nonnegative")


@dataclass(frozen=True)
class CoincidenceRecord:
    """Coincidences with the PBS at 0, 90 and 45 degrees.

    ``cross`` is the rate between different PBS ports, which only dark
    counts populate for correctly aligned plates.
    """

    r0: float
    r90: float
    r45: float
    n_pairs: int
    cross: float = 0.0

    def __post_init__(self):
        for name in ("r0", "r90", "r45", "cross"):
            value = getattr(self, name)
            if value < 0 or value > self.n_pairs:
                raise ValueError(f"{name}={value!r} outside [0, n_pairs]")


@dataclass(frozen=True)
class PhasePlate:
    """Pair of tilted birefringent plates.  ``length_l`` is measured in
    units of the reduced wavelength (lambda / 2 pi), so the phase needs no
    extra factor."""

    delta_n: float
    length_l: float
    tilt_delta: float = 0.0

    def __post_init__(self):
        if not abs(self.tilt_delta) < math.pi:
            raise ValueError("|tilt_delta| must be below pi")


@dataclass(frozen=True)
class Estimate:
    lambda_plus: float
    lambda_minus: float
    cos_2phi: float
    clamped: bool = False
    phase_undefined: bool = False


@dataclass(frozen=True)
class TwoQubitState:
    """``a |H1 H2> + b |V1 V2>`` after postselection at a 50% splitter."""

    a: complex
    b: complex

    def amplitudes(self) -> np.ndarray:
        """Amplitudes on ``HH, HV, VH, VV``."""
        return np.array([self.a, 0, 0, self.b], dtype=complex)

    def concurrence(self) -> float:
        return 2 * abs(self.a * self.b)


def jones_of_waveplate(w: WaveplateSetting) -> np.ndarray:
    """Retarder ``R(t) diag(1, e^{i G}) R(-t)`` with fast axis at ``t``."""
    c, s = math.cos(w.axis_angle), math.sin(w.axis_angle)
    rot = np.array([[c, -s], [s, c]])
    ret = np.diag([1.0, cmath.exp(1j * RETARDANCE[w.kind])])
    return rot @ ret @ rot.T


def plates_unitary(*plates: WaveplateSetting) -> np.ndarray:
    """Composite unitary of plates traversed in the given order."""
    u = np.eye(2, dtype=complex)
    for w in plates:
        u = jones_of_waveplate(w) @ u
    return u


def transform_qutrit(q: QutritState, u) -> QutritState:
    """Apply the same single-photon unitary to both photons."""
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > 10 * EPS_NORM:
        raise NotUnitaryError("transform is not a 2x2 unitary")
    psi = u @ wave_function(q).psi @ u.T
    c = np.array([psi[0, 0], SQRT2 * psi[0, 1], psi[1, 1]])
    # amplitudes at the rounding floor would otherwise pick the global phase
    c[np.abs(c) <= _ROUNDING_FLOOR * np.max(np.abs(c))] = 0
    return make_qutrit(*c)


def _wrap(angle: float) -> float:
    # angle mod pi; a tiny negative input would otherwise round to pi itself
    out = angle % math.pi
    return 0.0 if out >= math.pi else out


def _linearizing_angle(h: complex, v: complex) -> float:
    # orientation of the polarization ellipse, measured from H
    hv = h.conjugate() * v
    return 0.5 * math.atan2(2 * hv.real, abs(h) ** 2 - abs(v) ** 2)


@dataclass(frozen=True)
class AlignmentPlates:
    quarter: WaveplateSetting
    half: WaveplateSetting
    degenerate: bool = False

    def unitary(self) -> np.ndarray:
        return plates_unitary(self.quarter, self.half)


def schmidt_aligning_plates(q: QutritState) -> AlignmentPlates:
    """Quarter- then half-wave plate sending the Schmidt mode ``m+`` to H.

    The quarter-wave plate sits on the major axis of the ``m+`` ellipse,
    which makes the light linear; the half-wave plate then rotates that
    line onto H.
    """
    s = schmidt_decomposition(q)
    h, v = s.mode_plus.h, s.mode_plus.v
    quarter = WaveplateSetting("quarter", _wrap(_linearizing_angle(h, v)))
    out = jones_of_waveplate(quarter) @ np.array([h, v])
    lead = out[0] if abs(out[0]) >= abs(out[1]) else out[1]
    out = out * (abs(lead) / lead)
    beta = math.atan2(out[1].real, out[0].real)
    half = WaveplateSetting("half", _wrap(beta / 2))
    return AlignmentPlates(quarter, half, degenerate=s.basis_free)


def align(q: QutritState) -> tuple[QutritState, AlignmentPlates]:
    plates = schmidt_aligning_plates(q)
    return transform_qutrit(q, plates.unitary()), plates


def _check_aligned(q: QutritState, eps: float) -> None:
    if abs(q.c2) > eps:
        raise NotAlignedError(f"|c2| = {abs(q.c2):.3g} exceeds {eps:.3g}")


def expected_rates(
    q_aligned: QutritState, det: DetectorModel, n_pairs: int, eps: float = EPS_REC
) -> CoincidenceRecord:
    _check_aligned(q_aligned, eps)
    lp = abs(q_aligned.c1) ** 2
    lm = abs(q_aligned.c3) ** 2
    cos2phi = math.cos(cmath.phase(q_aligned.c3) - cmath.phase(q_aligned.c1)) if lp * lm > 0 else 1.0
    gain = det.eta1 * det.eta2 * n_pairs
    dark = det.dark_rate * n_pairs
    return CoincidenceRecord(
        r0=gain * lp / 2 + dark,
        r90=gain * lm / 2 + dark,
        r45=gain * (1 + 2 * math.sqrt(lp * lm) * cos2phi) / 4 + dark,
        n_pairs=n_pairs,
        cross=dark,
    )


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def sample_counts(expected: CoincidenceRecord, seed) -> CoincidenceRecord:
    """Independent Poisson counts per channel.

    ``seed`` is an int or a ``numpy.random.Generator``.  Counts are capped
    at ``n_pairs`` so that the record stays physical for tiny N.
    """
    rng = make_rng(seed)
    lam = [expected.r0, expected.r90, expected.r45, expected.cross]
    draws = rng.poisson(lam)
    r0, r90, r45, cross = (min(int(d), expected.n_pairs) for d in draws)
    return CoincidenceRecord(r0, r90, r45, expected.n_pairs, cross)


def estimate_parameters(rec: CoincidenceRecord) -> Estimate:
    """Schmidt eigenvalues and ``cos 2phi`` from the three coincidence
    counts.  Efficiencies and N cancel."""
    total = rec.r0 + rec.r90
    if total <= 0:
        raise NoCountsError("R0 + R90 = 0")
    lp = rec.r0 / total
    lm = rec.r90 / total
    if rec.r0 * rec.r90 == 0:
        return Estimate(lp, lm, float("nan"), phase_undefined=True)
    raw = (2 * rec.r45 - rec.r0 - rec.r90) / (2 * math.sqrt(rec.r0 * rec.r90))
    clamped = not -1.0 <= raw <= 1.0
    return Estimate(lp, lm, min(1.0, max(-1.0, raw)), clamped=clamped)


def phase_plate_delay(p: PhasePlate) -> float:
    return 2 * p.delta_n * p.length_l / math.cos(p.tilt_delta / 2)


def apply_phase_delay(q_aligned: QutritState, delta_phi: float, eps: float = EPS_REC) -> QutritState:
    """Shift ``phi -> phi + delta_phi`` by delaying the V pair."""
    _check_aligned(q_aligned, eps)
    return make_qutrit(q_aligned.c1, 0.0, q_aligned.c3 * cmath.exp(2j * delta_phi))


def aligned_phase(q_aligned: QutritState) -> float:
    """``phi`` in ``[0, pi)`` of an aligned state (0 if either pair is empty)."""
    if q_aligned.c1 == 0 or q_aligned.c3 == 0:
        return 0.0
    return _wrap(0.5 * cmath.phase(q_aligned.c3 / q_aligned.c1))


def postselect_split(q_aligned: QutritState, eps: float = EPS_REC) -> TwoQubitState:
    """Two-photon state conditioned on one photon per splitter port."""
    _check_aligned(q_aligned, eps)
    a, b = q_aligned.c1, q_aligned.c3
    n = math.hypot(abs(a), abs(b))
    return TwoQubitState(a / n, b / n)


def two_qubit_concurrence(amplitudes) -> float:
    """Wootters concurrence ``|<psi| sy (x) sy |psi*>|`` of a pure two-qubit
    state given on ``HH, HV, VH, VV``."""
    psi = np.asarray(amplitudes, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    sy = np.array([[0, -1j], [1j, 0]])
    return float(abs(psi.conj() @ np.kron(sy, sy) @ psi.conj()))


def r45_curve(q_aligned: QutritState, det: DetectorModel, n_pairs: int, phis) -> np.ndarray:
    """Expected R45 as the aligned phase is swept over ``phis`` (absolute
    values of phi, not offsets)."""
    base = aligned_phase(q_aligned)
    return np.array(
        [expected_rates(apply_phase_delay(q_aligned, phi - base), det, n_pairs).r45 for phi in phis]
    )


def visibility(curve) -> float:
    """Fringe swing over twice the peak, ``(max - min) / (2 max)``.

    For R45 this equals ``C/(1 + C)``.  The Michelson contrast
    ``(max - min)/(max + min)`` is :func:`contrast` and equals ``C``.
    """
    curve = np.asarray(curve, dtype=float)
    hi, lo = curve.max(), curve.min()
    return 0.0 if hi == 0 else float((hi - lo) / (2 * hi))


def contrast(curve) -> float:
    curve = np.asarray(curve, dtype=float)
    hi, lo = curve.max(), curve.min()
    return 0.0 if hi + lo == 0 else float((hi - lo) / (hi + lo))


@dataclass(frozen=True)
class SimulationResult:
    state: QutritState
    plates: AlignmentPlates
    aligned: QutritState
    expected: CoincidenceRecord
    counts: CoincidenceRecord | None
    estimate: Estimate
    seed: int | None
    concurrence: float


def simulate(
    q: QutritState,
    det: DetectorModel,
    n_pairs: int,
    seed: int | None = None,
    exact: bool = False,
) -> SimulationResult:
    """Align, compute expected rates, optionally sample, and estimate."""
    aligned, plates = align(q)
    expected = expected_rates(aligned, det, n_pairs)
    counts = None if exact else sample_counts(expected, seed)
    estimate = estimate_parameters(expected if exact else counts)
    return SimulationResult(
        state=q,
        plates=plates,
        aligned=aligned,
        expected=expected,
        counts=counts,
        estimate=estimate,
        seed=seed,
        concurrence=concurrence(q),
    )
