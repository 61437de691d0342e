"""Exception types shared across the package."""


class EquigridError(Exception):
    """Base class for all package-specific errors."""


class LengthMismatch(EquigridError):
    """Cell list length does not match the board dimensions."""


class NotAPermutation(EquigridError):
    """Cell values are not a permutation of 0..mn-1."""


class RegionTooLarge(EquigridError):
    """Region height/width exceeds the board height/width."""


class ParseError(EquigridError):
    """Malformed matrix text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class CapExceeded(EquigridError):
    """Problem size exceeds the configured variable cap."""


class Infeasible(EquigridError):
    """No zero-discrepancy board exists for the given dimensions."""

    def __init__(self, reason):
        super().__init__(
            f"no zero-discrepancy board exists ({getattr(reason, 'value', reason)})"
        )
        self.reason = reason


class SizeLimit(EquigridError):
    """No construction strategy succeeded within the configured budget."""


class ParityObstruction(EquigridError):
    """The required row/column sum is not an integer."""


class StrategyFailed(EquigridError):
    """A construction strategy produced a board that failed verification."""


class BudgetExceeded(EquigridError):
    """Search exhausted its node budget before completing."""


class DimensionMismatch(EquigridError):
    """Image dimensions do not match the expected tile dimensions."""


class BadMagic(EquigridError):
    """Input does not start with a supported NetPBM magic number."""


class TruncatedData(EquigridError):
    """NetPBM payload ended before all samples were read."""


class MaxvalOutOfRange(EquigridError):
    """PGM maxval outside 1..65535."""
