import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centralqfi.model import ModelParams
from centralqfi.state import (
    InitialAngles,
    QubitBloch,
    bloch_norm,
    coherence,
    evolve,
    prepare_initial,
    purity,
    qubit_amplitudes,
    reduced_bloch,
)
from conftest import bloch_of, partial_trace_bath

bounded = st.floats(-2, 2, allow_nan=False)
params_st = st.builds(ModelParams, bounded, bounded, bounded, bounded)
angle = st.floats(-10, 10, allow_nan=False)
angles_st = st.builds(InitialAngles, angle, angle, angle, angle)

R = math.sqrt(0.5)


def test_prepare_examples():
    np.testing.assert_array_equal(prepare_initial(InitialAngles(0, 1.3, 0, 2.1)), [1, 0, 0, 0])
    np.testing.assert_allclose(prepare_initial(InitialAngles(math.pi / 4, 0, 0, 0.7)), [R, 0, R, 0], atol=1e-15)
    np.testing.assert_allclose(prepare_initial(InitialAngles(math.pi, math.pi, math.pi, 0)), [1, 0, 0, 0], atol=1e-15)


def test_angle_wrapping():
    a = InitialAngles(-math.pi / 4, 2 * math.pi + 0.5, math.pi, -0.25)
    assert a.theta1 == pytest.approx(3 * math.pi / 4)
    assert a.phi1 == pytest.approx(0.5)
    assert a.theta2 == math.pi
    assert a.phi2 == pytest.approx(2 * math.pi - 0.25)
    assert InitialAngles(0.0, 2 * math.pi).phi1 == 0.0
    with pytest.raises(ValueError):
        InitialAngles(math.nan, 0.0)


@settings(max_examples=200, deadline=None)
@given(angles_st)
def test_wrapped_ranges(a):
    assert 0 <= a.theta1 <= math.pi and 0 <= a.theta2 <= math.pi
    assert 0 <= a.phi1 < 2 * math.pi and 0 <= a.phi2 < 2 * math.pi


@settings(max_examples=100, deadline=None)
@given(angle, angle, angle, angle)
def test_wrapping_preserves_observables(t1, p1, t2, p2):
    raw = np.kron(
        [math.cos(t1), math.sin(t1) * np.exp(-1j * p1)], [math.cos(t2), math.sin(t2) * np.exp(-1j * p2)]
    )
    wrapped = prepare_initial(InitialAngles(t1, p1, t2, p2))
    np.testing.assert_allclose(np.outer(raw, raw.conj()), np.outer(wrapped, wrapped.conj()), atol=1e-12)


def test_qubit_amplitudes():
    np.testing.assert_allclose(qubit_amplitudes(math.pi / 2, math.pi / 2), [0, -1j], atol=1e-15)


def test_reduced_bloch_examples():
    assert reduced_bloch([1, 0, 0, 0]) == QubitBloch(0, 0, 1)
    np.testing.assert_allclose(reduced_bloch([R, 0, 0, R]).vector, [0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(reduced_bloch([R, 0, R, 0]).vector, [1, 0, 0], atol=1e-15)


def test_sy_sign_convention():
    # (|0> + i|1>)/sqrt2 points along +y
    np.testing.assert_allclose(reduced_bloch([R, 0, 1j * R, 0]).vector, [0, 1, 0], atol=1e-15)
    assert coherence([R, 0, 1j * R, 0]) == pytest.approx(-0.5j)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1, 1), min_size=8, max_size=8))
def test_reduced_bloch_matches_partial_trace(xs):
    psi = np.array(xs[:4]) + 1j * np.array(xs[4:])
    norm = np.linalg.norm(psi)
    if norm < 1e-3:
        return
    psi = psi / norm
    np.testing.assert_allclose(reduced_bloch(psi).vector, bloch_of(partial_trace_bath(psi)), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(angles_st)
def test_initial_bloch_double_angle(a):
    s = reduced_bloch(prepare_initial(a)).vector
    th, ph = a.theta1, a.phi1
    expected = [math.sin(2 * th) * math.cos(ph), -math.sin(2 * th) * math.sin(ph), math.cos(2 * th)]
    np.testing.assert_allclose(s, expected, atol=1e-12)


def test_evolve_zero_time_and_negative():
    p = ModelParams(0.1, 0.3, 0.5, 0.2)
    psi0 = prepare_initial(InitialAngles(0.4, 1.0, 0.9, 2.0))
    np.testing.assert_array_equal(evolve(psi0, p, 0.0), psi0)
    with pytest.raises(ValueError):
        evolve(psi0, p, -1.0)


@settings(max_examples=200, deadline=None)
@given(angles_st, params_st, st.floats(0, 20))
def test_norm_conservation(a, p, t):
    assert abs(np.linalg.norm(evolve(prepare_initial(a), p, t)) - 1) < 1e-12


@settings(max_examples=200, deadline=None)
@given(angle, angle, st.sampled_from([0.0, math.pi / 2, math.pi]), angle, params_st, st.floats(0, 20))
def test_purity_dichotomy_single_sector(t1, p1, t2, p2, p, t):
    s = reduced_bloch(evolve(prepare_initial(InitialAngles(t1, p1, t2, p2)), p, t))
    assert abs(bloch_norm(s) - 1) < 1e-10


@settings(max_examples=200, deadline=None)
@given(angles_st, params_st, st.floats(0, 20))
def test_bloch_norm_bounded(a, p, t):
    assert bloch_norm(reduced_bloch(evolve(prepare_initial(a), p, t))) <= 1 + 1e-12


def test_norm_and_purity_examples():
    assert bloch_norm(QubitBloch(0, 0, 1)) == 1 and purity(QubitBloch(0, 0, 1)) == 1
    assert bloch_norm(QubitBloch(0, 0, 0)) == 0 and purity(QubitBloch(0, 0, 0)) == 0.5
    assert bloch_norm(QubitBloch(0.6, 0, 0)) == pytest.approx(0.6)
    assert purity(QubitBloch(0.6, 0, 0)) == pytest.approx(0.68)
