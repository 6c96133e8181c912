class KPError(Exception):
    """Base class for workbench errors."""


class RingMismatchError(KPError, ValueError):
    pass


class ScalarParseError(KPError, ValueError):
    pass


class GraphError(KPError, ValueError):
    """Unknown vertices/edges, non-composable paths, bad degrees."""


class ParseError(KPError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SearchExhausted(KPError, RuntimeError):
    """A bounded search ran out of budget before finding what it needed."""


class PreconditionError(KPError, ValueError):
    pass
