"""Exception hierarchy shared by all modules."""


class OpextError(Exception):
    pass


class InputError(OpextError):
    """Malformed user input (exit status 2 on the command line)."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownVertex(InputError):
    pass


class RelationViolation(InputError):
    pass


class AlgebraMismatch(OpextError):
    pass


class NotAdmissible(OpextError):
    pass


class NonConfluent(OpextError):
    pass


class FieldTooSmall(OpextError):
    pass


class SearchBudgetExceeded(OpextError):
    pass


class NotRepFinite(OpextError):
    pass


class NotCertified(OpextError):
    pass


class TransportFailure(OpextError):
    def __init__(self, clause, detail=""):
        self.clause = clause
        super().__init__(f"{clause}: {detail}" if detail else clause)


class ComparisonFailure(OpextError):
    def __init__(self, message, differences=None):
        self.differences = differences or {}
        super().__init__(message)


class InfiniteResolution(OpextError):
    """Raised when a resolution neither terminates nor cycles within its cap."""
