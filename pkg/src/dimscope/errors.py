"""Exception types shared across dimscope modules."""


class DimscopeError(Exception):
    """Base class for all dimscope errors."""


class ParseError(DimscopeError):
    """CSV cell or structure could not be parsed; cites row/column."""

    def __init__(self, message, row=None, column=None):
        loc = []
        if row is not None:
            loc.append(f"row {row}")
        if column is not None:
            loc.append(f"column {column!r}")
        if loc:
            message = f"{message} ({', '.join(loc)})"
        super().__init__(message)
        self.row = row
        self.column = column


class SchemaError(DimscopeError):
    """Column typing is unusable (e.g. fewer than 2 numeric columns)."""


class DegenerateDim(DimscopeError):
    """A dimension has too few usable values for the requested statistic."""


class FingerprintMismatch(DimscopeError):
    """A distance cache was computed from different data."""


class FormatError(DimscopeError):
    """A cache or payload file is malformed."""


class CliqueExplosion(DimscopeError):
    """Maximal-clique count exceeded the configured cap."""

    def __init__(self, cap):
        super().__init__(f"more than {cap} maximal cliques; lower d_select")
        self.cap = cap


class DegenerateLayout(DimscopeError):
    """Fewer than 2 dims available for the 2D layout."""


class InvalidK(DimscopeError):
    """Cluster count outside [1, item count]."""


class NoCategoricalDim(DimscopeError):
    """Rule mining requested without a categorical dimension."""


class ValidationError(DimscopeError):
    """An interaction event was rejected; carries the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.reason = message


class RevisionConflict(DimscopeError):
    """A compare-and-set event named a revision that is no longer current."""

