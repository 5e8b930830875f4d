"""Validated density operators and the state functionals built on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import (
    SIGMA_Y,
    as_square,
    eig_hermitian,
    is_hermitian,
    kron,
    partial_trace,
)

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
#: eigenvalues below this are treated as exactly zero in entropies
EIG_ZERO = 1e-14

_YY = kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True)
class DensityOperator:
    """A quantum state over a declared list of subsystem dimensions.

    Construction validates Hermiticity, unit trace and positive
    semidefiniteness eagerly; a corrupted state would silently poison
    every quantity computed downstream.
    """

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        m = as_square(self.matrix).copy()
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise ValidationError(f"subsystem dims must be >= 2, got {dims}")
        if int(np.prod(dims)) != m.shape[0]:
            raise DimensionError(
                f"dims {dims} do not multiply to matrix dim {m.shape[0]}")
        if not is_hermitian(m):
            raise ValidationError("density matrix is not Hermitian to 1e-10")
        tr = np.trace(m)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace is {tr}, not 1")
        if float(np.min(np.linalg.eigvalsh(m))) < -PSD_TOL:
            raise ValidationError("density matrix has a negative eigenvalue")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def reduced(self, keep) -> "DensityOperator":
        """Reduced state over the kept subsystems."""
        if isinstance(keep, (int, np.integer)):
            keep = (int(keep),)
        keep = sorted(set(int(k) for k in keep))
        sub = partial_trace(self.matrix, self.dims, keep)
        return DensityOperator(sub, tuple(self.dims[k] for k in keep))


def mixedness(rho: DensityOperator) -> float:
    """1 - Tr(rho^2); zero for pure states, 1 - 1/dim when maximally mixed."""
    # Tr(rho^2) equals the squared Frobenius norm for Hermitian rho
    purity = float(np.sum(np.abs(rho.matrix) ** 2))
    return 1.0 - purity


def spectrum_entropy(eigenvalues) -> float:
    """Base-2 entropy of a probability spectrum; 0*log(0) = 0, values
    below EIG_ZERO count as exactly zero."""
    w = np.asarray(eigenvalues, dtype=float)
    w = w[w > EIG_ZERO]
    return float(-(w * np.log2(w)).sum())


def von_neumann_entropy(rho: DensityOperator) -> float:
    """Base-2 von Neumann entropy, with the 0*log(0) = 0 convention."""
    return spectrum_entropy(np.linalg.eigvalsh(rho.matrix))


def concurrence_two_qubit(rho: DensityOperator) -> float:
    """Two-qubit concurrence from the spin-flip spectrum.

    C = max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4)) where the
    mu_i are the descending eigenvalues of
    rho (sy x sy) conj(rho) (sy x sy). The sqrt(mu_i) are computed as the
    singular values of sqrt(rho) (sy x sy) sqrt(rho)^T, which is the same
    spectrum but avoids taking square roots of near-zero eigenvalues (an
    eigenvalue route loses half the significant digits right where the
    entanglement threshold sits). Tiny negative eigenvalues of rho are
    rounding noise and get clamped before the matrix square root.
    """
    if rho.dims != (2, 2):
        raise DimensionError(f"concurrence needs dims (2, 2), got {rho.dims}")
    w, v = eig_hermitian(rho.matrix)
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    flip_core = root @ _YY @ root.T
    s = np.linalg.svd(flip_core, compute_uv=False)
    return float(max(0.0, s[0] - s[1] - s[2] - s[3]))
