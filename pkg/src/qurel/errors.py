"""Exception types shared across the package."""


class QurelError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(QurelError):
    """Operand shapes or subsystem dimensions do not fit together."""


class HermiticityError(QurelError):
    """A matrix that must be Hermitian is not (beyond tolerance)."""


class ConvergenceError(QurelError):
    """The eigensolver failed to converge."""


class ValidationError(QurelError):
    """A value object violates its invariants."""


class RangeError(QurelError):
    """A numerical result left the representable/achievable range."""


class NullBranch(QurelError):
    """A measurement branch has (numerically) zero probability.

    Callers skip such branches; they contribute zero weight to all
    outcome-averaged sums.
    """


class SubsystemError(QurelError):
    """Subsystem indices are invalid, duplicated, or clash."""


class DegeneracyError(QurelError):
    """An operation requires a nondegenerate spectrum but got one that
    is degenerate after eigenspace merging."""


class DegenerateOperator(QurelError):
    """The weighting operator has (numerically) vanishing norm in the
    given state, so the bound's denominator is undefined."""


class UsageError(QurelError):
    """Bad command-line arguments."""
