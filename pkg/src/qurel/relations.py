"""Evaluators for the uncertainty relations and their tightness ratios.

Three bounds live here:

* the product-form bound on variance pairs (commutator plus
  anticommutator term),
* the operator-weighted additive bound on a variance sum, parameterized
  by an arbitrary operator O and a phase theta,
* the control-assisted bound: the additive bound minus everything a set
  of control measurements explains away, compared against the summed
  residual conditional variances,

plus the memory-assisted entropic bound for comparison. Ratios of a left
side to its bound ("tightness", closer to 1 is tighter) are reported as
None when the bound's magnitude falls below 1e-9; negative bounds are
reported unclamped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateOperator, DegeneracyError, DimensionError, SubsystemError, ValidationError
from .linalg import SIGMA_X, SIGMA_Z, as_square, partial_trace, trace_product
from .measurements import (
    Observable,
    embed,
    projective_decomposition,
    sequential_decomposition,
    variance,
)
from .states import DensityOperator, spectrum_entropy, von_neumann_entropy

#: denominators smaller than this leave a tightness ratio undefined
RATIO_MIN = 1e-9
#: <O†O> below this makes the weighted bound's denominator degenerate
OPERATOR_MIN = 1e-12
IMAG_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementSetup:
    """K (measurement, controls) pairs plus the weighted-bound parameters.

    Every pair holds an observable on the measured subsystem and an
    ordered tuple of control observables on distinct other subsystems.
    The additive bound uses the first two measured observables, the
    weighting operator and the phase theta.
    """

    pairs: tuple
    ltra_operator: np.ndarray
    theta: float

    def __post_init__(self):
        pairs = tuple((q, tuple(controls)) for q, controls in self.pairs)
        if len(pairs) < 2:
            raise ValidationError("at least two measurement pairs are required")
        measured = {q.subsystem for q, _ in pairs}
        if len(measured) != 1:
            raise ValidationError(f"all measured observables must share a subsystem, got {measured}")
        if not (0.0 <= self.theta <= 2.0 * np.pi):
            raise ValidationError(f"theta must lie in [0, 2*pi], got {self.theta}")
        op = as_square(self.ltra_operator).copy()
        op.flags.writeable = False
        object.__setattr__(self, "pairs", pairs)
        object.__setattr__(self, "ltra_operator", op)
        object.__setattr__(self, "theta", float(self.theta))

    @property
    def measured_subsystem(self) -> int:
        return self.pairs[0][0].subsystem


@dataclass(frozen=True)
class QcVurResult:
    lhs: float          # sum over pairs of residual conditional variances
    l_tra: float        # additive bound on the reduced measured state
    subtracted: float   # everything the controls explain away
    w: float            # l_tra - subtracted, the assisted lower bound
    u: float | None     # lhs / w when |w| >= RATIO_MIN


@dataclass(frozen=True)
class QmEurResult:
    h_rb: float
    h_sb: float
    h_ab: float
    overlap_bound: float  # log2(1/c)
    rhs: float            # overlap_bound + h_ab
    u_eur: float | None   # (h_rb + h_sb) / rhs when |rhs| >= RATIO_MIN


def _real(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise ValidationError(f"{what} has imaginary residue {value.imag:.3e}")
    return value.real


def schrodinger_bound(rho_a: DensityOperator, a: Observable, b: Observable):
    """Product-form bound: returns (dA^2 * dB^2, its lower bound)."""
    if len(rho_a.dims) != 1:
        raise DimensionError("expected a single-subsystem state")
    rho = rho_a.matrix
    am, bm = a.matrix, b.matrix
    if am.shape[0] != rho.shape[0] or bm.shape[0] != rho.shape[0]:
        raise DimensionError("observable dimension does not match the state")
    ea = trace_product(rho, am).real
    eb = trace_product(rho, bm).real
    ac = am - ea * np.eye(rho.shape[0])
    bc = bm - eb * np.eye(rho.shape[0])
    lhs = trace_product(rho, ac @ ac).real * trace_product(rho, bc @ bc).real
    comm = trace_product(rho, am @ bm - bm @ am)
    anti = trace_product(rho, ac @ bc + bc @ ac)
    rhs = 0.25 * abs(comm) ** 2 + 0.25 * abs(anti) ** 2
    return lhs, rhs


def _overlap_constant(dec_r, dec_s, dim: int) -> float:
    if len(dec_r.outcomes) != dim or len(dec_s.outcomes) != dim:
        raise DegeneracyError("overlap constant needs nondegenerate spectra")
    best = 0.0
    for _, pr in dec_r.outcomes:
        for _, ps in dec_s.outcomes:
            best = max(best, trace_product(pr, ps).real)
    return best


def maximal_overlap_c(r: Observable, s: Observable) -> float:
    """Largest squared overlap between the eigenbases of two observables.

    Both spectra must be nondegenerate after eigenspace merging: the
    overlap constant is ill-defined for projectors of rank above one.
    """
    if r.subsystem != s.subsystem:
        raise SubsystemError("observables must act on the same subsystem")
    return _overlap_constant(projective_decomposition(r), projective_decomposition(s),
                             r.matrix.shape[0])


def qm_eur(rho: DensityOperator, r: Observable, s: Observable) -> QmEurResult:
    """Memory-assisted entropic bound on a two-qubit state.

    The measured system is qubit 0, the memory qubit 1. Post-measurement
    states keep the memory intact while the measured side is dephased in
    the observable's eigenbasis; they are valid states by construction,
    so their entropies come straight from the spectrum.
    """
    if rho.dims != (2, 2):
        raise DimensionError(f"expected a two-qubit state, got dims {rho.dims}")
    if r.subsystem != 0 or s.subsystem != 0:
        raise SubsystemError("both observables must act on the measured qubit 0")
    dec_r = projective_decomposition(r)
    dec_s = projective_decomposition(s)
    overlap_bound = float(np.log2(1.0 / _overlap_constant(dec_r, dec_s, 2)))
    h_b = spectrum_entropy(np.linalg.eigvalsh(partial_trace(rho.matrix, rho.dims, (1,))))

    def measured_entropy(dec) -> float:
        post = np.zeros_like(rho.matrix)
        for _, proj in dec.outcomes:
            full = embed(proj, rho.dims, 0)
            post += full @ rho.matrix @ full
        return spectrum_entropy(np.linalg.eigvalsh(post))

    h_rb = measured_entropy(dec_r) - h_b
    h_sb = measured_entropy(dec_s) - h_b
    h_ab = von_neumann_entropy(rho) - h_b
    rhs = overlap_bound + h_ab
    u_eur = (h_rb + h_sb) / rhs if abs(rhs) >= RATIO_MIN else None
    return QmEurResult(h_rb=h_rb, h_sb=h_sb, h_ab=h_ab,
                       overlap_bound=overlap_bound, rhs=rhs, u_eur=u_eur)


def l_tra(rho_a: DensityOperator, a: Observable, b: Observable, o, theta: float) -> float:
    """Operator-weighted additive bound on dA^2 + dB^2.

    |<O†(Ac + e^{i theta} Bc)>|^2 / <O†O>  -  <Ac e^{i theta} Bc + h.c.>
    with Ac, Bc the mean-shifted observables, everything evaluated in the
    given single-subsystem state.
    """
    if len(rho_a.dims) != 1:
        raise DimensionError("expected a single-subsystem state")
    rho = rho_a.matrix
    om = as_square(o)
    if om.shape[0] != rho.shape[0] or a.matrix.shape[0] != rho.shape[0] \
            or b.matrix.shape[0] != rho.shape[0]:
        raise DimensionError("operator dimensions do not match the state")
    denom = trace_product(rho, om.conj().T @ om).real
    if denom < OPERATOR_MIN:
        raise DegenerateOperator(f"<O†O> = {denom:.3e} is numerically zero")
    eye = np.eye(rho.shape[0])
    ac = a.matrix - trace_product(rho, a.matrix).real * eye
    bc = b.matrix - trace_product(rho, b.matrix).real * eye
    phase = np.exp(1j * theta)
    num = abs(trace_product(rho, om.conj().T @ (ac + phase * bc))) ** 2
    cross = trace_product(rho, ac @ (phase * bc) + np.conj(phase) * bc @ ac)
    return num / denom - _real(cross, "anticommutator cross term")


def qc_vur(rho: DensityOperator, setup: MeasurementSetup) -> QcVurResult:
    """Control-assisted variance bound and its tightness.

    lhs sums the residual conditional variances over all pairs; the bound
    w subtracts, from the additive bound on the reduced measured state,
    every chain term the control measurements account for. lhs >= w
    always, and lhs + subtracted recombines to the summed unconditional
    variances.
    """
    lhs = 0.0
    subtracted = 0.0
    for q, controls in setup.pairs:
        seq = sequential_decomposition(rho, q, controls)
        lhs += seq.residual
        subtracted += seq.first_term + sum(seq.nested)
    rho_a = rho.reduced(setup.measured_subsystem)
    bound = l_tra(rho_a, setup.pairs[0][0], setup.pairs[1][0],
                  setup.ltra_operator, setup.theta)
    w = bound - subtracted
    u = lhs / w if abs(w) >= RATIO_MIN else None
    return QcVurResult(lhs=lhs, l_tra=bound, subtracted=subtracted, w=w, u=u)


def xz_control_setup(theta: float = 0.5, measured: int = 0, controls=(1,)) -> MeasurementSetup:
    """The standard sweep configuration: K = 2 with Q1 = O1 = sigma_x,
    Q2 = O2 = sigma_z on every control, O = sigma_x + sigma_z."""
    pairs = []
    for q_matrix in (SIGMA_X, SIGMA_Z):
        q = Observable(q_matrix, measured)
        ctrl = tuple(Observable(q_matrix, c) for c in controls)
        pairs.append((q, ctrl))
    return MeasurementSetup(pairs=tuple(pairs), ltra_operator=SIGMA_X + SIGMA_Z, theta=theta)
