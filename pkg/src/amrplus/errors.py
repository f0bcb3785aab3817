"""Exception types shared by the AMR+ toolkit."""


class AmrPlusError(Exception):
    """Base class. ``code`` is a stable machine-readable identifier."""

    code = "ERROR"

    def __init__(self, message, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code

    def __str__(self):
        return f"{self.code}: {self.args[0]}"


class ParseError(AmrPlusError):
    """Lexical or syntactic error, with a 1-based line/column position."""

    code = "SYNTAX"

    def __init__(self, message, line=None, column=None, code=None):
        super().__init__(message, code)
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return super().__str__()
        return f"{self.code} at {self.line}:{self.column}: {self.args[0]}"


class ScopeError(AmrPlusError):
    """Ill-formed context structure.

    Codes: CYCLIC_SCOPE, NO_ROOT, MULTI_ROOT, UNPLACED, DOUBLE_PLACEMENT,
    MISSING_INDEX, RESIDUAL_EQ.
    """

    code = "SCOPE"


class ClauseError(AmrPlusError):
    code = "CLAUSE"


class LogicError(AmrPlusError):
    code = "LOGIC"
