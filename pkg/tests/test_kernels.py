import math

import numpy as np
import pytest

from centralqfi import _pykernels
from centralqfi._backend import BACKEND, available_backends
from centralqfi.bath import BathSpec, reduced_bloch_bath, sector_arrays
from centralqfi.model import BathSector, ModelParams, sector_propagator
from centralqfi.qfi import EstimatedParameter, central_derivative
from centralqfi.state import qubit_amplitudes

WEIGHT = EstimatedParameter.WEIGHT


def test_backend_registry():
    backends = available_backends()
    assert "python" in backends
    assert BACKEND in backends


def test_rk4_matches_analytic(backend):
    rng = np.random.default_rng(0)
    cases = [(ModelParams(*rng.uniform(-2, 2, 4)), col) for _ in range(10) for col in range(2)]
    cz, w1, w, v0 = [], [], [], []
    for p, col in cases:
        s = BathSector.up(p)
        cz.append(s.effective_detuning + p.omega / 2)
        w1.append(p.omega1)
        w.append(p.omega)
        v0.append(np.eye(2)[col])
    out = backend.rk4_lab_batch(np.array(cz), np.array(w1), np.array(w), np.array(v0, dtype=complex), 5.0, 1e-3)
    for (p, col), v in zip(cases, out):
        np.testing.assert_allclose(v, sector_propagator(p, BathSector.up(p), 5.0)[:, col], atol=1e-6)


def test_rk4_zero_time_and_bad_step(backend):
    v0 = np.array([[0.6, 0.8j]])
    args = (np.array([0.3]), np.array([0.5]), np.array([0.2]), v0)
    np.testing.assert_array_equal(backend.rk4_lab_batch(*args, 0.0, 1e-3), v0)
    with pytest.raises(ValueError):
        backend.rk4_lab_batch(*args, 1.0, 0.0)


def _sweep_inputs(n=3):
    p = ModelParams(0.1, 0.3, 0.5, 0.4)
    deltas, w = sector_arrays(BathSpec(n, p.g), p)
    thetas = np.linspace(0, math.pi, 7)
    q0 = np.array([qubit_amplitudes(th, 0.8) for th in thetas])
    dq0 = np.array([central_derivative(th, 0.8, WEIGHT) for th in thetas])
    weights = np.tile(w, (len(thetas), 1))
    times = np.linspace(0, 12, 9)
    return p, deltas, weights, thetas, q0, dq0, times


@pytest.mark.parametrize("dressed", [True, False])
def test_mixture_sweep_matches_pointwise(backend, dressed):
    p, deltas, weights, thetas, q0, dq0, times = _sweep_inputs()
    s, ds = backend.mixture_sweep(deltas, weights, p.omega1, p.omega, dressed, q0, dq0, times, True)
    assert s.shape == ds.shape == (len(thetas), len(times), 3)
    for k, th in enumerate(thetas):
        for j, t in enumerate(times):
            ref = reduced_bloch_bath(th, 0.8, BathSpec(3, p.g), p, t, WEIGHT, dressed)
            np.testing.assert_allclose(s[k, j], ref.s.vector, atol=1e-13)
            np.testing.assert_allclose(ds[k, j], ref.ds, atol=1e-13)


def test_mixture_sweep_without_derivative(backend):
    p, deltas, weights, _, q0, dq0, times = _sweep_inputs()
    s_full, _ = backend.mixture_sweep(deltas, weights, p.omega1, p.omega, True, q0, dq0, times, True)
    s, ds = backend.mixture_sweep(deltas, weights, p.omega1, p.omega, True, q0, dq0, times, False)
    np.testing.assert_allclose(s, s_full, atol=1e-15)
    assert ds is None or not np.any(ds)


def test_backends_agree():
    backends = available_backends()
    if len(backends) < 2:
        pytest.skip("compiled kernels not built")
    p, deltas, weights, _, q0, dq0, times = _sweep_inputs(7)
    results = [b.mixture_sweep(deltas, weights, p.omega1, p.omega, True, q0, dq0, times, True) for b in backends.values()]
    for s, ds in results[1:]:
        np.testing.assert_allclose(s, results[0][0], atol=1e-14)
        np.testing.assert_allclose(ds, results[0][1], atol=1e-14)


def test_fallback_chunking_is_transparent(monkeypatch):
    p, deltas, weights, _, q0, dq0, times = _sweep_inputs()
    whole = _pykernels.mixture_sweep(deltas, weights, p.omega1, p.omega, True, q0, dq0, times, True)
    monkeypatch.setattr(_pykernels, "_CHUNK_ELEMENTS", 1)
    pieces = _pykernels.mixture_sweep(deltas, weights, p.omega1, p.omega, True, q0, dq0, times, True)
    np.testing.assert_array_equal(whole[0], pieces[0])
    np.testing.assert_array_equal(whole[1], pieces[1])
