"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes: data-contract violations
(malformed CSV, calendar gaps, non-positive prices, spans too short)
exit with 2, numeric failures on degenerate input (constant samples,
zero actuals under MAPE) exit with 3.
"""


class GoldseasonError(Exception):
    """Base class for every error raised by this package."""


class DataError(GoldseasonError):
    """Input data violates a structural contract (format, gaps, signs, lengths)."""


class NumericError(GoldseasonError):
    """A computation cannot proceed on degenerate numeric input."""
