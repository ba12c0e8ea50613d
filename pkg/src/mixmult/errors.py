"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` that the CLI puts
into its JSON error objects.
"""


class MMError(Exception):
    code = "ERROR"


class InputError(MMError):
    """Malformed or inconsistent inputs (context mismatch, bad arity, ...)."""

    code = "INPUT"


class HomogeneityError(MMError):
    code = "HOMOGENEITY"


class StratumError(MMError):
    """No generators exist in the requested degree stratum."""

    code = "EMPTY_STRATUM"


class NotMPrimaryError(MMError):
    code = "J_NOT_M_PRIMARY"


class NilpotentError(MMError):
    code = "I_NILPOTENT"


class ComputationLimitError(MMError):
    """A Groebner run exceeded its pair or degree cap."""

    code = "COMPUTATION_LIMIT"

    def __init__(self, message, pairs=None, degree=None):
        super().__init__(message)
        self.pairs = pairs
        self.degree = degree


class StabilizationError(MMError):
    """Hilbert data refused to stabilize within the configured caps.

    Carries the last table (or value list) computed so far.
    """

    code = "STABILIZATION"

    def __init__(self, message, table=None):
        super().__init__(message)
        self.table = table


class SearchFailureError(MMError):
    """Randomized element search exhausted its retries.

    Carries the partial sequence record; never a claim of non-existence.
    """

    code = "SEARCH_FAILURE"

    def __init__(self, message, record=None):
        super().__init__(message)
        self.record = record


class InconsistencyError(MMError):
    """Two routes that must agree did not; signals a false stabilization."""

    code = "INTERNAL_INCONSISTENCY"


class ProblemSyntaxError(MMError):
    code = "SYNTAX"

    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", col {col})" if col is not None else ")")
        super().__init__(message + loc)
        self.line = line
        self.col = col
