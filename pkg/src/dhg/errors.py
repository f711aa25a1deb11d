"""Exception hierarchy. Every domain error derives from DhgError (CLI exit code 1)."""


class DhgError(Exception):
    pass


class DegenerateTriple(DhgError, ValueError):
    pass


class OutOfRange(DhgError, IndexError):
    pass


class DuplicateEdge(DhgError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class TooLarge(DhgError, ValueError):
    pass


class UnknownName(DhgError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class BadParam(DhgError, ValueError):
    pass


class BadSeed(DhgError, ValueError):
    pass


class BudgetExceeded(DhgError):
    pass


class NotReady(DhgError):
    pass


class NotEFree(DhgError, ValueError):
    pass


class InvariantViolation(DhgError, AssertionError):
    """A runtime-checked property of a procedure failed to hold."""


class ParseError(DhgError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BadHeader(ParseError):
    pass


class BadVertex(ParseError):
    pass


class DuplicateEdgeLine(ParseError):
    pass


class SyntaxProblem(ParseError):
    pass
