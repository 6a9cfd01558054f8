import numpy as np
import pytest

from centralqfi._backend import available_backends

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)

ACCEPTANCE_LINES = []


def expm_hermitian(h, t):
    """exp(-i t H) through the eigendecomposition of a Hermitian H."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def partial_trace_bath(psi):
    """Central-qubit density matrix of a |central, bath> 4-vector."""
    m = np.asarray(psi).reshape(2, 2)
    return m @ m.conj().T


def bloch_of(rho):
    return np.array([np.trace(rho @ s).real for s in (SX, SY, SZ)])


def sld_qfi(rho, drho, cutoff=1e-12):
    """QFI from the spectral form sum 2 |<i|drho|j>|^2 / (l_i + l_j)."""
    lam, vec = np.linalg.eigh(rho)
    d = vec.conj().T @ drho @ vec
    total = 0.0
    for i in range(len(lam)):
        for j in range(len(lam)):
            s = lam[i] + lam[j]
            if s > cutoff:
                total += 2 * abs(d[i, j]) ** 2 / s
    return total


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("[")[1].split("]")[0])):
            terminalreporter.write_line(line)
