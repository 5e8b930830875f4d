"""Projective measurement statistics and conditional-variance decompositions.

A measurement on a control subsystem splits the state into outcome
branches. Averaging the measured system's variance over those branches
(and variancing the branch means) decomposes the unconditional variance
exactly: E[V] + V[E] = V. Chaining over several controls yields the
sequential decomposition

    V(Q) = E[V(Q | c_1..c_N)] + V[E(Q | c_1)]
         + sum_{n=2..N} E[ V( E[Q | c_1..c_n] | c_1..c_{n-1} ) ],

which this module computes term by term from the joint outcome table.
Measurements on disjoint subsystems commute, so that table is
well-defined.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError, NullBranch, SubsystemError, ValidationError
from .linalg import as_square, eig_hermitian, is_hermitian, kron_all, partial_trace, trace_product
from .states import DensityOperator

#: branches below this probability are skipped (their conditional state
#: is undefined); far below any branch weight arising in the sweeps
P_MIN = 1e-12
#: eigenvalues closer than this are merged into one outcome
DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class Observable:
    """Hermitian operator tagged with the subsystem it acts on."""

    matrix: np.ndarray
    subsystem: int

    def __post_init__(self):
        m = as_square(self.matrix).copy()
        if not is_hermitian(m):
            raise ValidationError("observable is not Hermitian to 1e-10")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "subsystem", int(self.subsystem))


@dataclass(frozen=True)
class ProjectiveDecomposition:
    """Spectral outcomes of an observable: (eigenvalue, projector) pairs,
    eigenvalues strictly increasing."""

    outcomes: tuple[tuple[float, np.ndarray], ...]


@dataclass(frozen=True)
class ConditionalStats:
    e_of_v: float  # mean conditional variance  E[V(Q|O)]
    v_of_e: float  # variance of conditional means  V[E(Q|O)]


@dataclass(frozen=True)
class SequentialDecomposition:
    residual: float          # E[V(Q | all controls)]
    first_term: float        # V[E(Q | first control)]
    nested: tuple[float, ...]  # terms n = 2..N of the chain


def projective_decomposition(obs: Observable) -> ProjectiveDecomposition:
    """Eigenvalues and eigenprojectors of an observable.

    Eigenspaces whose eigenvalues differ by less than DEGENERACY_TOL are
    merged into a single outcome, so degenerate (coarse) observables are
    legitimate controls. Results are memoized on the matrix bytes: sweep
    loops decompose the same few control observables at every grid point.
    """
    return _decompose(obs.matrix.tobytes(), obs.matrix.shape[0])


@lru_cache(maxsize=256)
def _decompose(matrix_bytes: bytes, dim: int) -> ProjectiveDecomposition:
    m = np.frombuffer(matrix_bytes, dtype=complex).reshape(dim, dim)
    w, v = eig_hermitian(m)
    outcomes = []
    i = 0
    while i < len(w):
        j = i + 1
        while j < len(w) and w[j] - w[j - 1] < DEGENERACY_TOL:
            j += 1
        block = v[:, i:j]
        proj = block @ block.conj().T
        proj.flags.writeable = False
        outcomes.append((float(np.mean(w[i:j])), proj))
        i = j
    return ProjectiveDecomposition(tuple(outcomes))


def embed(op, dims, subsystem: int) -> np.ndarray:
    """Pad an operator with identities onto the full Hilbert space."""
    op = as_square(op)
    dims = tuple(int(d) for d in dims)
    if not 0 <= subsystem < len(dims):
        raise SubsystemError(f"subsystem {subsystem} out of range for dims {dims}")
    if op.shape[0] != dims[subsystem]:
        raise DimensionError(
            f"operator dim {op.shape[0]} != subsystem dim {dims[subsystem]}")
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[subsystem] = op
    return kron_all(*factors)


def expectation(rho: DensityOperator, obs: Observable) -> float:
    """<O> with the observable identity-padded onto its subsystem."""
    full = embed(obs.matrix, rho.dims, obs.subsystem)
    return trace_product(rho.matrix, full).real


def variance(rho: DensityOperator, obs: Observable) -> float:
    """<Q^2> - <Q>^2."""
    full = embed(obs.matrix, rho.dims, obs.subsystem)
    m1 = trace_product(rho.matrix, full).real
    m2 = trace_product(rho.matrix, full @ full).real
    return m2 - m1 * m1


def condition_on_outcome(rho: DensityOperator, projector, subsystem: int):
    """Probability and post-measurement conditional state for one outcome.

    Returns ``(prob, conditional)`` where the conditional is a validated
    density operator over the remaining subsystems (the measured control
    is traced out). Raises NullBranch when the branch probability falls
    below P_MIN.
    """
    proj_full = embed(projector, rho.dims, subsystem)
    prob = trace_product(proj_full, rho.matrix).real
    if prob < P_MIN:
        raise NullBranch(f"branch probability {prob:.3e} below {P_MIN}")
    sandwiched = proj_full @ rho.matrix @ proj_full
    keep = [s for s in range(len(rho.dims)) if s != subsystem]
    reduced = partial_trace(sandwiched, rho.dims, keep) / prob
    conditional = DensityOperator(reduced, tuple(rho.dims[s] for s in keep))
    return prob, conditional


def conditional_stats(rho: DensityOperator, q: Observable, o: Observable) -> ConditionalStats:
    """Mean conditional variance and variance of conditional means of q,
    after measuring o on a different subsystem.

    The two components always recombine to the unconditional variance
    (law of total variance). Null branches are skipped.
    """
    if q.subsystem == o.subsystem:
        raise SubsystemError("q and o must act on different subsystems")
    q_after = Observable(q.matrix, q.subsystem - (1 if o.subsystem < q.subsystem else 0))
    e_of_v = 0.0
    mean = 0.0
    mean_sq = 0.0
    for _, proj in projective_decomposition(o).outcomes:
        try:
            prob, cond = condition_on_outcome(rho, proj, o.subsystem)
        except NullBranch:
            continue
        e_of_v += prob * variance(cond, q_after)
        e_cond = expectation(cond, q_after)
        mean += prob * e_cond
        mean_sq += prob * e_cond * e_cond
    return ConditionalStats(e_of_v=e_of_v, v_of_e=mean_sq - mean * mean)


def sequential_decomposition(
    rho: DensityOperator, q: Observable, controls
) -> SequentialDecomposition:
    """Chained conditional-variance decomposition over an ordered list of
    controls on distinct subsystems.

    All outcome tuples are enumerated in lexicographic order of ascending
    eigenvalues per control; branch probabilities, first and second
    conditional moments of q come from the joint table, and prefix
    marginals give the nested terms. The components sum to the
    unconditional variance of q.
    """
    controls = list(controls)
    if not controls:
        raise SubsystemError("at least one control is required")
    subsystems = [o.subsystem for o in controls]
    if len(set(subsystems)) != len(subsystems) or q.subsystem in subsystems:
        raise SubsystemError("control subsystems must be distinct and differ from q's")
    span = set(range(len(rho.dims)))
    if q.subsystem not in span or not set(subsystems) <= span:
        raise SubsystemError(f"subsystems out of range for dims {rho.dims}")

    q_full = embed(q.matrix, rho.dims, q.subsystem)
    q2_full = q_full @ q_full
    # per control: embedded projectors in ascending-eigenvalue order
    proj_sets = [
        [embed(proj, rho.dims, o.subsystem) for _, proj in projective_decomposition(o).outcomes]
        for o in controls
    ]

    n_controls = len(controls)
    # full-tuple table: (p, p*E[Q|c], p*E[Q^2|c]); null branches skipped.
    # Projectors on disjoint subsystems commute with each other and with
    # q_full, so the moments reduce to plain traces against rho.
    table = {}
    for combo in itertools.product(*[range(len(ps)) for ps in proj_sets]):
        joint = proj_sets[0][combo[0]]
        for k in range(1, n_controls):
            joint = joint @ proj_sets[k][combo[k]]
        p = trace_product(rho.matrix, joint).real
        if p < P_MIN:
            continue
        s1 = trace_product(rho.matrix, q_full @ joint).real
        s2 = trace_product(rho.matrix, q2_full @ joint).real
        table[combo] = (p, s1, s2)

    # prefix sums S_n = sum over outcome prefixes of p * E[Q|prefix]^2
    s_levels = []
    for n in range(1, n_controls + 1):
        acc = {}
        for combo, (p, s1, _) in table.items():
            key = combo[:n]
            ap, as1 = acc.get(key, (0.0, 0.0))
            acc[key] = (ap + p, as1 + s1)
        s_levels.append(sum(s1 * s1 / p for p, s1 in acc.values() if p >= P_MIN))

    total_mean = sum(s1 for _, s1, _ in table.values())
    residual = sum(s2 - s1 * s1 / p for p, s1, s2 in table.values())
    first_term = s_levels[0] - total_mean * total_mean
    nested = tuple(s_levels[n] - s_levels[n - 1] for n in range(1, n_controls))
    return SequentialDecomposition(residual=residual, first_term=first_term, nested=nested)
