"""Exception hierarchy shared across the toolkit."""


class SmtsBenchError(Exception):
    """Base class for all toolkit errors."""


class ConstantSeries(SmtsBenchError):
    """Raised when a series has max == min and cannot be min-max normalized."""


class SpecOutOfBounds(SmtsBenchError):
    """Raised when a drawn characteristic curve loses too much mass to clipping."""


class InvalidScenarioParams(SmtsBenchError):
    """Raised when scenario parameters fall outside the supported grids."""


class MissingContext(SmtsBenchError):
    """Raised when a distance needs dataset context (e.g. Mahalanobis covariance)."""


class ZeroVariance(SmtsBenchError):
    """Raised by correlation-style distances on constant input."""


class ZeroNorm(SmtsBenchError):
    """Raised by cross-correlation distances on all-zero input."""


class WindowTooLarge(SmtsBenchError):
    """Raised when a subsequence window exceeds the series length."""


class LevelTooDeep(SmtsBenchError):
    """Raised when a wavelet decomposition level exceeds the maximum."""


class DegenerateCovariance(SmtsBenchError):
    """Raised when a PCA fit has rank below the requested component count."""


class EmptyInput(SmtsBenchError):
    """Raised by validity indices on empty label vectors."""


class LengthMismatch(SmtsBenchError):
    """Raised when two label vectors differ in length."""


class DegenerateRanks(SmtsBenchError):
    """Raised by the Friedman test when all score columns are identical."""


class TooFewPairs(SmtsBenchError):
    """Raised by the Wilcoxon test when too few non-zero pairs remain."""


class EmptyCluster(SmtsBenchError):
    """Raised internally when a partition refinement step empties a cluster."""


class ThresholdUnderflow(SmtsBenchError):
    """Raised when the BIRCH threshold schedule is exhausted."""


class EigenFailure(SmtsBenchError):
    """Raised when the spectral kernel-width schedule is exhausted."""


class ParseError(SmtsBenchError):
    """Raised on malformed dataset or config files."""


class InvariantViolation(SmtsBenchError):
    """Raised when loaded data breaks a domain invariant."""


class MissingCells(SmtsBenchError):
    """Raised when a report view lacks required result cells."""
