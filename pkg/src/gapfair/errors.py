"""Exception hierarchy shared across the toolkit.

Two broad families matter to callers: input problems (bad files, bad
schemas, bad configuration) and analysis-degenerate conditions (data
that is structurally unusable for the requested computation, such as a
cohort with a single outcome class). The command line layer maps these
families onto distinct exit codes.
"""


class GapfairError(Exception):
    """Base class for all toolkit errors."""


class FormatError(GapfairError):
    """Raised when an input file cannot be read as the expected format."""


class SchemaError(GapfairError):
    """Raised when required columns or fields are missing or malformed."""


class ConfigError(GapfairError):
    """Raised when a configuration document is invalid or has unknown keys."""


class EmptyCohortError(GapfairError):
    """Raised when cohort filtering removes every record."""


class StratificationError(GapfairError):
    """Raised when a stratified split cannot place a cell on both sides."""


class DegenerateLabelsError(GapfairError):
    """Raised when a computation needs both outcome classes but got one."""


class DegenerateGroupError(GapfairError):
    """Raised when a computation needs every group populated but one is empty."""


class EmptyFrontError(GapfairError):
    """Raised when no trade-off point has a defined value for a notion."""


class DimensionError(GapfairError):
    """Raised when array shapes or lengths do not line up."""


class ArityError(GapfairError):
    """Raised when a computation gets the wrong number of groups or no data."""
