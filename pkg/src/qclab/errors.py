"""Exception types shared across the package."""


class QclabError(Exception):
    """Base class for all package-specific errors."""


class CapExceeded(QclabError):
    """A state or register would exceed the configured qubit cap."""


class DimensionMismatch(QclabError):
    """Two operands live in different Hilbert-space dimensions."""


class IndexOutOfRange(QclabError):
    """A qubit index is outside the register."""


class NotHermitian(QclabError):
    """A matrix expected to be Hermitian is not, within tolerance."""


class BadDistribution(QclabError):
    """A probability vector is negative or does not sum to one."""


class ParamTooLarge(QclabError):
    """A toy back-end parameter exceeds its exhaustive-verification limit."""


class SearchExhausted(QclabError):
    """A randomized search ran out of tries.

    Carries the best candidate found so the caller can inspect how close
    the search got.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


class NetTooLarge(QclabError):
    """A covering net would exceed the configured element ceiling."""


class BudgetOverflow(QclabError):
    """A shot budget exceeds the configured ceiling."""


class AdversaryFailure(QclabError):
    """An adversary raised instead of returning a candidate key."""


class ConfigError(QclabError):
    """An experiment configuration is malformed."""


class IoError(QclabError):
    """A report could not be written."""
