import math

import numpy as np
import pytest
from hypothesis import given

from biqutrit.core import (
    JonesVector,
    alpha_family,
    make_jones,
    make_qutrit,
    reduced_density,
    wave_function,
)
from biqutrit.errors import AllZeroError, NonFiniteError, NotNormalizedError

from conftest import qutrits, amplitudes


@pytest.mark.parametrize(
    "raw, expected",
    [
        ((0, 1, 0), (0, 1, 0)),
        ((2j, 0, 0), (1, 0, 0)),
        ((1, 1, 1), (1 / math.sqrt(3),) * 3),
        ((0, 0, -3j), (0, 0, 1)),
    ],
)
def test_make_qutrit_examples(raw, expected):
    q = make_qutrit(*raw)
    np.testing.assert_allclose(q.as_array(), expected, atol=1e-15)


def test_make_qutrit_rejects_null_and_nonfinite():
    with pytest.raises(AllZeroError):
        make_qutrit(0, 0, 0)
    with pytest.raises(NonFiniteError):
        make_qutrit(1, float("nan"), 0)
    with pytest.raises(NonFiniteError):
        make_qutrit(complex(0, math.inf), 1, 0)


def test_make_qutrit_extreme_magnitudes():
    q = make_qutrit(1e-300, 1e-300j, 0)
    np.testing.assert_allclose(q.as_array(), [1 / math.sqrt(2), 1j / math.sqrt(2), 0], atol=1e-15)
    q = make_qutrit(1e300, 1e300, 0)
    assert abs(q.norm() - 1) < 1e-15


@given(amplitudes)
def test_phase_convention_and_idempotence(t):
    q = make_qutrit(*t)
    assert abs(q.norm() - 1) < 1e-12
    lead = next(z for z in q.as_tuple() if z != 0)
    assert lead.imag == 0 and lead.real > 0
    assert make_qutrit(*q.as_tuple()) == q


@pytest.mark.parametrize(
    "raw, psi",
    [
        ((1, 0, 0), [[1, 0], [0, 0]]),
        ((0, 1, 0), [[0, 1 / math.sqrt(2)], [1 / math.sqrt(2), 0]]),
        ((0, 0, 1), [[0, 0], [0, 1]]),
    ],
)
def test_wave_function_basis(raw, psi):
    np.testing.assert_array_almost_equal(wave_function(make_qutrit(*raw)).psi, psi, decimal=15)


@given(qutrits)
def test_wave_function_symmetric_unit(q):
    psi = wave_function(q).psi
    assert np.array_equal(psi, psi.T)
    assert abs(np.linalg.norm(psi) - 1) < 1e-12


def partial_trace_oracle(q):
    # trace photon 2 out of |Psi><Psi| written as a 4-index tensor
    psi = wave_function(q).psi
    full = np.einsum("ab,cd->abcd", psi, psi.conj())  # rho[s1, s2; s1', s2']
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            out[i, j] = sum(full[i, k, j, k] for k in range(2))
    return out


def test_reduced_density_examples():
    np.testing.assert_allclose(reduced_density(make_qutrit(0, 1, 0)).rho, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(reduced_density(make_qutrit(1, 0, 0)).rho, [[1, 0], [0, 0]], atol=1e-15)
    # frozen from the partial-trace oracle: diagonal 1/2, off-diagonal sqrt(2)/3
    rho = reduced_density(make_qutrit(1, 1, 1)).rho
    np.testing.assert_allclose(rho, [[0.5, math.sqrt(2) / 3], [math.sqrt(2) / 3, 0.5]], atol=1e-15)
    np.testing.assert_allclose(rho, partial_trace_oracle(make_qutrit(1, 1, 1)), atol=1e-15)


@given(qutrits)
def test_reduced_density_matches_partial_trace(q):
    rho = reduced_density(q).rho
    np.testing.assert_allclose(rho, partial_trace_oracle(q), atol=1e-14)
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.allclose(rho, rho.conj().T, atol=1e-15)
    assert np.linalg.eigvalsh(rho).min() > -1e-12


def test_jones_vector_validation():
    with pytest.raises(NotNormalizedError):
        JonesVector(1, 1)
    j = make_jones(3, 4j)
    assert j == JonesVector(0.6, 0.8j)
    assert abs(j.overlap(j.orthogonal())) < 1e-16
    assert j.canonical().h.imag == 0


def test_alpha_family_amplitudes():
    a = math.pi / 3
    q = alpha_family(a)
    d = math.sqrt(1 + math.cos(a) ** 2)
    np.testing.assert_allclose(q.as_array(), [math.sqrt(2) * math.cos(a) / d, math.sin(a) / d, 0], atol=1e-15)
