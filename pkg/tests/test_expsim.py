import math

import numpy as np
import pytest
from hypothesis import given, settings

from biqutrit.core import alpha_family, concurrence, make_qutrit, schmidt_decomposition
from biqutrit.core.state import match_global_phase
from biqutrit.errors import NoCountsError, NotAlignedError, NotUnitaryError
from biqutrit.expsim import (
    CoincidenceRecord,
    DetectorModel,
    PhasePlate,
    WaveplateSetting,
    align,
    aligned_phase,
    apply_phase_delay,
    contrast,
    estimate_parameters,
    expected_rates,
    jones_of_waveplate,
    phase_plate_delay,
    postselect_split,
    r45_curve,
    sample_counts,
    schmidt_aligning_plates,
    simulate,
    transform_qutrit,
    two_qubit_concurrence,
    visibility,
)

from conftest import qutrits

S = 1 / math.sqrt(2)
IDEAL = DetectorModel()


def _equal_up_to_phase(a, b, tol=1e-12):
    return match_global_phase(np.asarray(a), np.asarray(b)) < tol


def test_waveplate_matrices():
    assert _equal_up_to_phase(jones_of_waveplate(WaveplateSetting("half", 0)), np.diag([1, -1]))
    assert _equal_up_to_phase(jones_of_waveplate(WaveplateSetting("quarter", 0)), np.diag([1, 1j]))
    out = jones_of_waveplate(WaveplateSetting("half", math.pi / 4)) @ [1, 0]
    assert _equal_up_to_phase(out, [0, 1])


def test_waveplate_setting_validation():
    with pytest.raises(ValueError):
        WaveplateSetting("full", 0.0)
    with pytest.raises(ValueError):
        WaveplateSetting("half", math.pi)


def test_transform_examples():
    q = make_qutrit(0.3, 0.4j, -0.5)
    assert transform_qutrit(q, np.eye(2)).as_array() == pytest.approx(q.as_array(), abs=1e-15)
    swap = jones_of_waveplate(WaveplateSetting("half", math.pi / 4))
    assert transform_qutrit(make_qutrit(1, 0, 0), swap).as_array() == pytest.approx([0, 0, 1], abs=1e-15)
    with pytest.raises(NotUnitaryError):
        transform_qutrit(q, 2 * np.eye(2))


@settings(max_examples=50)
@given(qutrits, qutrits)
def test_local_unitary_invariance(q, r):
    # any SU(2) built from r's first two amplitudes
    a, b = r.c1, r.c2
    n = math.hypot(abs(a), abs(b))
    if n < 1e-3:
        return
    u = np.array([[a, -b.conjugate()], [b, a.conjugate()]]) / n
    q2 = transform_qutrit(q, u)
    assert concurrence(q2) == pytest.approx(concurrence(q), abs=1e-10)
    s1, s2 = schmidt_decomposition(q), schmidt_decomposition(q2)
    assert s2.lambda_plus == pytest.approx(s1.lambda_plus, abs=1e-10)


def test_alignment_identity_for_h_pair():
    aligned, plates = align(make_qutrit(1, 0, 0))
    assert _equal_up_to_phase(plates.unitary() @ [1, 0], [1, 0])
    assert aligned == make_qutrit(1, 0, 0)


def test_alignment_half_pi_plates():
    # mode+ at 45 degrees: quarter plate on it, half plate at 22.5 degrees
    plates = schmidt_aligning_plates(alpha_family(math.pi / 2))
    assert plates.quarter.axis_angle == pytest.approx(math.pi / 4, abs=1e-12)
    assert plates.half.axis_angle == pytest.approx(math.pi / 8, abs=1e-12)
    assert _equal_up_to_phase(plates.unitary() @ [S, S], [1, 0])
    assert plates.degenerate


@given(qutrits)
def test_alignment_property(q):
    aligned, _ = align(q)
    s = schmidt_decomposition(q)
    assert abs(aligned.c2) < 1e-10
    assert aligned.c1.imag == 0 and aligned.c1.real >= 0
    assert abs(aligned.c1) ** 2 == pytest.approx(s.lambda_plus, abs=1e-10)


def test_expected_rates_examples():
    rec = expected_rates(make_qutrit(S, 0, S), IDEAL, 4)
    assert (rec.r0, rec.r90, rec.r45) == pytest.approx((1, 1, 2))
    det = DetectorModel(0.5, 0.8)
    rec = expected_rates(make_qutrit(1, 0, 0), det, 1000)
    assert rec.r90 == 0
    assert rec.r45 == pytest.approx(1000 / 4 * 0.4)
    with pytest.raises(NotAlignedError):
        expected_rates(make_qutrit(1, 1, 0), IDEAL, 10)


def test_dark_counts_fill_every_channel():
    rec = expected_rates(make_qutrit(1, 0, 0), DetectorModel(dark_rate=1e-3), 1000)
    assert rec.r90 == pytest.approx(1.0)
    assert rec.cross == pytest.approx(1.0)


def test_detector_and_record_validation():
    with pytest.raises(ValueError):
        DetectorModel(eta1=1.5)
    with pytest.raises(ValueError):
        DetectorModel(dark_rate=-1)
    with pytest.raises(ValueError):
        CoincidenceRecord(11, 0, 0, 10)


def test_sample_counts_zero_and_golden():
    assert sample_counts(CoincidenceRecord(0, 0, 0, 10), 1).r0 == 0
    rec = CoincidenceRecord(100, 100, 100, 10**6)
    got = sample_counts(rec, 1234)
    assert (got.r0, got.r90, got.r45, got.cross) == (118, 95, 92, 0)
    assert sample_counts(rec, 1234) == got


def test_sample_counts_mean():
    rng = np.random.default_rng(99)
    rec = CoincidenceRecord(50, 50, 50, 10**6)
    draws = [sample_counts(rec, rng).r0 for _ in range(10_000)]
    assert abs(np.mean(draws) - 50) < 3 * math.sqrt(50) / math.sqrt(10_000)


def test_sample_counts_capped():
    rec = CoincidenceRecord(3, 3, 3, 3)
    for seed in range(20):
        assert sample_counts(rec, seed).r0 <= 3


def test_estimator_examples():
    est = estimate_parameters(CoincidenceRecord(100, 100, 100, 1000))
    assert (est.lambda_plus, est.lambda_minus, est.cos_2phi) == (0.5, 0.5, 0.0)
    est = estimate_parameters(CoincidenceRecord(100, 0, 25, 1000))
    assert (est.lambda_plus, est.lambda_minus) == (1.0, 0.0)
    assert est.phase_undefined and math.isnan(est.cos_2phi)
    with pytest.raises(NoCountsError):
        estimate_parameters(CoincidenceRecord(0, 0, 5, 1000))


def test_estimator_clamps_with_flag():
    est = estimate_parameters(CoincidenceRecord(100, 100, 300, 1000))
    assert est.cos_2phi == 1.0 and est.clamped


@given(qutrits)
def test_noiseless_round_trip(q):
    aligned, _ = align(q)
    lp = abs(aligned.c1) ** 2
    lm = abs(aligned.c3) ** 2
    if lm < 1e-12:
        return
    for det in (DetectorModel(0.1, 0.6), IDEAL):
        est = estimate_parameters(expected_rates(aligned, det, 10**6))
        assert est.lambda_plus == pytest.approx(lp, abs=1e-15)
        assert est.cos_2phi == pytest.approx(math.cos(2 * aligned_phase(aligned)), abs=1e-10)


def test_phase_plate_delay():
    assert phase_plate_delay(PhasePlate(0.01, 50.0)) == pytest.approx(1.0)
    assert phase_plate_delay(PhasePlate(0.0, 50.0, 0.3)) == 0
    assert phase_plate_delay(PhasePlate(0.01, 50.0, 1.0)) == pytest.approx(1 / math.cos(0.5))
    with pytest.raises(ValueError):
        PhasePlate(0.01, 1.0, math.pi)


def test_phase_delay_makes_coefficients_real():
    aligned = make_qutrit(math.sqrt(0.9), 0, math.sqrt(0.1) * np.exp(2j * 0.4))
    phi = aligned_phase(aligned)
    assert phi == pytest.approx(0.4)
    out = apply_phase_delay(aligned, math.pi - phi)
    assert out.as_array() == pytest.approx([math.sqrt(0.9), 0, math.sqrt(0.1)], abs=1e-15)


def test_postselection_examples():
    bell = postselect_split(make_qutrit(S, 0, S))
    assert bell.concurrence() == pytest.approx(1, abs=1e-15)
    assert postselect_split(make_qutrit(1, 0, 0)).concurrence() == 0
    aligned, _ = align(alpha_family(math.pi / 3))
    pair = postselect_split(aligned)
    assert pair.concurrence() == pytest.approx(0.6, abs=1e-12)
    assert two_qubit_concurrence(pair.amplitudes()) == pytest.approx(0.6, abs=1e-12)


def test_visibility_and_contrast():
    aligned, _ = align(alpha_family(math.pi / 3))
    curve = r45_curve(aligned, IDEAL, 1000, np.linspace(0, math.pi, 181))
    assert visibility(curve) == pytest.approx(0.6 / 1.6, abs=1e-10)
    assert contrast(curve) == pytest.approx(0.6, abs=1e-10)
    assert visibility([0, 0]) == 0


def test_simulate_seeded_is_reproducible():
    q = alpha_family(math.pi / 3)
    a = simulate(q, DetectorModel(0.6, 0.6), 10**5, seed=5)
    b = simulate(q, DetectorModel(0.6, 0.6), 10**5, seed=5)
    assert a == b
    exact = simulate(q, DetectorModel(0.6, 0.6), 10**5, exact=True)
    assert exact.counts is None
    assert exact.estimate.lambda_plus == pytest.approx(0.9, abs=1e-15)
