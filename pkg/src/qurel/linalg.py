"""Dense complex-matrix primitives for few-qubit states (dimension <= 16).

Everything operates on plain square ``numpy`` arrays of ``complex128`` in
row-major order. All functions are pure; nothing mutates its inputs.
"""

from __future__ import annotations

import numpy as np

from .errors import ConvergenceError, DimensionError, HermiticityError, RangeError

HERMITICITY_TOL = 1e-10

#: single-qubit operator basis
I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _m in (I2, SIGMA_X, SIGMA_Y, SIGMA_Z):
    _m.flags.writeable = False


def as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    return m


def is_hermitian(m, tol: float = HERMITICITY_TOL) -> bool:
    """max |m[i,j] - conj(m[j,i])| <= tol."""
    m = as_square(m)
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square matrices.

    Written as a broadcasted outer product; identical arithmetic to
    numpy's kron without its general-rank shape gymnastics.
    """
    a = as_square(a)
    b = as_square(b)
    da, db = a.shape[0], b.shape[0]
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(da * db, da * db)


def kron_all(*mats) -> np.ndarray:
    """Kronecker product of a sequence of square matrices, left to right."""
    out = as_square(mats[0])
    for m in mats[1:]:
        out = kron(out, m)
    return out


def partial_trace(m, dims, keep) -> np.ndarray:
    """Trace out every subsystem not listed in ``keep``.

    ``dims`` lists the subsystem dimensions whose product must equal the
    matrix dimension; ``keep`` is a nonempty collection of subsystem
    indices. Kept subsystems stay in their original relative order and
    the total trace is preserved.
    """
    m = as_square(m)
    dims = tuple(int(d) for d in dims)
    n = len(dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimensionError(
            f"subsystem dims {dims} do not multiply to matrix dim {m.shape[0]}")
    if isinstance(keep, (int, np.integer)):
        keep = (int(keep),)
    keep = sorted(set(int(k) for k in keep))
    if not keep:
        raise DimensionError("keep must name at least one subsystem")
    if keep[0] < 0 or keep[-1] >= n:
        raise DimensionError(f"keep indices {keep} out of range for {n} subsystems")

    tensor = m.reshape(dims + dims)
    traced = [s for s in range(n) if s not in keep]
    # trace highest-index subsystems first so remaining axis numbers stay valid
    for s in sorted(traced, reverse=True):
        k = tensor.ndim // 2
        tensor = np.trace(tensor, axis1=s, axis2=s + k)
    d_kept = int(np.prod([dims[s] for s in keep]))
    return tensor.reshape(d_kept, d_kept)


def _canonicalize_phases(v: np.ndarray) -> np.ndarray:
    """Rotate each column so its first non-negligible entry is real positive."""
    mag = np.abs(v)
    pivot_rows = (mag > 1e-12).argmax(axis=0)
    pivots = v[pivot_rows, np.arange(v.shape[1])]
    scale = np.abs(pivots)
    phases = np.where(scale > 0.0, np.conj(pivots) / np.where(scale > 0.0, scale, 1.0), 1.0)
    return v * phases


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with real eigenvalues ``w`` ascending and unitary
    ``v`` holding the eigenvectors as columns. Column phases are
    canonicalized and ties between (near-)equal eigenvalues are broken by
    the lexicographic order of the canonicalized real parts, so repeated
    calls on the same input give identical output.
    """
    m = as_square(m)
    if not is_hermitian(m):
        raise HermiticityError("matrix is not Hermitian to 1e-10")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"eigensolver failed: {exc}") from exc
    v = _canonicalize_phases(v)
    if not (np.diff(w) < 1e-12).any():
        return w, v
    # deterministic ordering inside degenerate clusters
    order = list(range(len(w)))
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and w[j] - w[i] < 1e-12:
            j += 1
        if j - i > 1:
            order[i:j] = sorted(order[i:j], key=lambda c: tuple(np.real(v[:, c])))
        i = j
    return w[order].copy(), v[:, order].copy()


def exp_hermitian_scaled(m, s: float) -> np.ndarray:
    """exp(s*m) for Hermitian m, via the spectral decomposition.

    The largest exponent is shifted out before exponentiation and
    restored afterwards, so intermediate overflow cannot occur for
    |s*eigenvalue| up to roughly 700. If the restored result itself is
    not representable, RangeError is raised.
    """
    w, v = eig_hermitian(m)
    x = float(s) * w
    shift = float(np.max(x))
    core = (v * np.exp(x - shift)) @ v.conj().T
    with np.errstate(over="raise"):
        try:
            out = core * np.exp(shift)
        except FloatingPointError as exc:
            raise RangeError(f"exp({shift:.3g}) overflows a float") from exc
    if not np.all(np.isfinite(out.view(float))):
        raise RangeError("matrix exponential overflowed")
    return out


def trace_product(a, b) -> complex:
    """Tr(a @ b) without forming the product matrix."""
    return complex(np.sum(a * b.T))
