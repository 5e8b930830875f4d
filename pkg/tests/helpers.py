"""Shared test utilities: random objects and independent mini-oracles."""

import math

import numpy as np

from qurel.states import DensityOperator

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def random_density(rng, dims):
    """Full-rank random state: normalized G G† with Gaussian G."""
    n = int(np.prod(dims))
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m = g @ g.conj().T
    return DensityOperator(m / np.trace(m).real, tuple(dims))


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2.0


def random_pauli_rotation_unitary(rng, n_qubits):
    """Unitary composed from random single- and two-qubit Pauli rotations."""
    paulis = [I2, SX, SY, SZ]
    dim = 2 ** n_qubits
    u = np.eye(dim, dtype=complex)
    for _ in range(6):
        factors = [paulis[rng.integers(0, 4)] for _ in range(n_qubits)]
        string = factors[0]
        for f in factors[1:]:
            string = np.kron(string, f)
        angle = rng.uniform(0.0, 2.0 * np.pi)
        # exp(i a P) = cos(a) I + i sin(a) P since P^2 = I
        u = (math.cos(angle) * np.eye(dim) + 1j * math.sin(angle) * string) @ u
    return u


def unchecked_density(matrix, dims):
    """Bypass DensityOperator validation; for oracle construction only."""
    obj = object.__new__(DensityOperator)
    object.__setattr__(obj, "matrix", np.asarray(matrix, dtype=complex))
    object.__setattr__(obj, "dims", tuple(dims))
    return obj


def bell_state():
    v = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    return DensityOperator(np.outer(v, v.conj()), (2, 2))


def ghz_state(n_qubits=3):
    dim = 2 ** n_qubits
    v = np.zeros(dim, dtype=complex)
    v[0] = v[-1] = 1.0 / np.sqrt(2)
    return DensityOperator(np.outer(v, v.conj()), (2,) * n_qubits)


def pure_state(vector, dims):
    v = np.asarray(vector, dtype=complex)
    v = v / np.linalg.norm(v)
    return DensityOperator(np.outer(v, v.conj()), tuple(dims))


def thermal_elements(d, j, t):
    """Verbatim analytic thermal-state elements (unnormalized) and Z.

    Safe only at moderate beta; the tests use it on grids with t >= 0.2.
    Returns (r11, r22, r23, z) with r44 = r11, r33 = r22.
    """
    beta = 1.0 / t
    delta = 2.0 * j * math.sqrt(1.0 + d * d)
    theta = math.atan(d)
    r11 = math.exp(-beta * j / 2.0)
    r22 = math.exp(beta * (j - delta) / 2.0) * (1.0 + math.exp(beta * delta)) / 2.0
    r23 = (np.exp(1j * theta) * math.exp(beta * (j - delta) / 2.0)
           * (1.0 - math.exp(beta * delta)) / 2.0)
    z = 2.0 * math.exp(-beta * j / 2.0) * (1.0 + math.exp(beta * j) * math.cosh(beta * delta / 2.0))
    return r11, r22, r23, z


def thermal_matrix(d, j, t):
    """Normalized analytic thermal matrix (moderate beta only)."""
    r11, r22, r23, z = thermal_elements(d, j, t)
    return np.array([[r11, 0, 0, 0],
                     [0, r22, r23, 0],
                     [0, np.conj(r23), r22, 0],
                     [0, 0, 0, r11]], dtype=complex) / z


#: the model cross-check grid used throughout the tests
GRID = [(d, j, t)
        for d in (0.0, 0.5, 1.0, 2.0)
        for j in (0.5, -0.5, 1.0, -1.0, 2.0, -2.0)
        for t in (0.2, 0.5, 1.0, 2.0, 5.0)]
