"""Two-site spin model: XY exchange plus a z-axis antisymmetric coupling.

The Hamiltonian is

    H = (J/2) [ sx sx + sy sy + sz sz + D (sx sy - sy sx) ]

with real coupling J (antiferromagnetic for J > 0) and antisymmetric
strength D >= 0. Its thermal state at temperature T (k = 1) is an
X-shaped matrix whose only coherence sits between |01> and |10>, and
mixedness and concurrence of that state have closed forms. Both the
Gibbs construction and the closed forms are exposed so they can be
cross-checked against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ValidationError
from .linalg import SIGMA_X, SIGMA_Y, SIGMA_Z, eig_hermitian, kron
from .states import DensityOperator

#: coldest supported temperature; beta <= 1000 keeps the shifted
#: exponentials well-behaved while projecting onto the ground state to
#: machine precision for |J| >= 0.5
T_MIN = 1e-3

_XX = kron(SIGMA_X, SIGMA_X)
_YY = kron(SIGMA_Y, SIGMA_Y)
_ZZ = kron(SIGMA_Z, SIGMA_Z)
_DM = kron(SIGMA_X, SIGMA_Y) - kron(SIGMA_Y, SIGMA_X)


@dataclass(frozen=True)
class ModelParams:
    """Model point (d, j, t): antisymmetric strength, coupling, temperature."""

    d: float
    j: float
    t: float

    def __post_init__(self):
        if not (self.d >= 0.0):
            raise ValidationError(f"d must be >= 0, got {self.d}")
        if self.j == 0.0 or not math.isfinite(self.j):
            raise ValidationError(f"j must be nonzero and finite, got {self.j}")
        if not (self.t >= T_MIN):
            raise ValidationError(f"t must be >= {T_MIN}, got {self.t}")

    @property
    def beta(self) -> float:
        return 1.0 / self.t

    @property
    def delta(self) -> float:
        """Signed level splitting 2 J sqrt(1 + D^2)."""
        return 2.0 * self.j * math.sqrt(1.0 + self.d * self.d)

    @property
    def theta_dm(self) -> float:
        """Phase of (1 + iD): the argument of the thermal off-diagonal element."""
        return math.atan(self.d)


def hamiltonian(p: ModelParams) -> np.ndarray:
    """4x4 Hermitian matrix of the model.

    Eigenvalues are {J/2, J/2, -J/2 + delta/2, -J/2 - delta/2} and the
    inner matrix element <01|H|10> equals J(1 + iD).
    """
    return (p.j / 2.0) * (_XX + _YY + _ZZ + p.d * _DM)


def thermal_state(p: ModelParams) -> DensityOperator:
    """Gibbs state exp(-H/T) / Z as a validated two-qubit density operator.

    The spectral exponent is shifted by its maximum before
    exponentiation; the shift cancels against the partition function, so
    arbitrarily large beta*|J| cannot overflow.
    """
    w, v = eig_hermitian(hamiltonian(p))
    x = -p.beta * w
    weights = np.exp(x - np.max(x))
    z = float(weights.sum())
    rho = (v * (weights / z)) @ v.conj().T
    if not np.all(np.isfinite(rho.view(float))):
        raise RangeError(f"thermal state overflowed at {p}")
    return DensityOperator(rho, (2, 2))


def _shifted_weights(p: ModelParams) -> tuple[float, float, float]:
    """The three Boltzmann factors exp(-bJ/2), exp(b(J+delta)/2),
    exp(b(J-delta)/2), jointly rescaled by their maximum.

    Every closed form below is a ratio of terms of equal total degree in
    these factors, so the common rescaling cancels exactly and no
    exponential ever exceeds 1.
    """
    beta = p.beta
    e1 = -beta * p.j / 2.0
    e2 = beta * (p.j + p.delta) / 2.0
    e3 = beta * (p.j - p.delta) / 2.0
    shift = max(e1, e2, e3)
    a = math.exp(e1 - shift)
    b = math.exp(e2 - shift)
    c = math.exp(e3 - shift)
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
        raise RangeError(f"Boltzmann factors overflowed at {p}")
    return a, b, c


def closed_form_mixedness(p: ModelParams) -> float:
    """Analytic 1 - Tr(rho^2) of the thermal state."""
    a, b, c = _shifted_weights(p)
    z = 2.0 * a + b + c
    return (2.0 * a * a + 4.0 * a * b + 4.0 * a * c + 2.0 * b * c) / (z * z)


def closed_form_concurrence(p: ModelParams) -> float:
    """Analytic concurrence of the thermal state.

    Equals (2/Z) max(|rho23| - sqrt(rho11 rho44), 0) on the unnormalized
    X-state elements, i.e. (2/Z) max(e^{bJ/2} |sinh(b delta/2)| - e^{-bJ/2}, 0).
    """
    a, b, c = _shifted_weights(p)
    z = 2.0 * a + b + c
    return max(abs(b - c) - 2.0 * a, 0.0) / z
