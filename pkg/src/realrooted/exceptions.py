"""Exception hierarchy shared by every module."""


class RealRootedError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroPolynomial(RealRootedError, ZeroDivisionError):
    pass


class DegreeTooSmall(RealRootedError, ValueError):
    pass


class NotMonic(RealRootedError, ValueError):
    pass


class NotDepressed(RealRootedError, ValueError):
    pass


class ParseError(RealRootedError, ValueError):
    """Malformed polynomial text. ``position`` is the 0-based character offset."""

    def __init__(self, message, position=None, line=None):
        super().__init__(message)
        self.position = position
        self.line = line

    def __str__(self):
        msg = super().__str__()
        where = []
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.position is not None:
            where.append(f"col {self.position + 1}")
        return f"{', '.join(where)}: {msg}" if where else msg


class InvalidInterval(RealRootedError, ValueError):
    pass


class NotIsolating(RealRootedError, ValueError):
    pass


class NotThreeRealRoots(RealRootedError, ValueError):
    pass


class Unresolved(RealRootedError):
    """An enclosure could not be separated from a decision boundary within budget."""


class SizeMismatch(RealRootedError, ValueError):
    pass


class UnresolvableOrder(Unresolved):
    pass


class ZeroAtDerivativeRoot(RealRootedError):
    """The remainder vanishes at a critical point: a boundary, not a failure."""

    def __init__(self, index):
        super().__init__(f"remainder vanishes at derivative root #{index}")
        self.index = index


class _WithStatus(RealRootedError, ValueError):
    """Carries the tri-state outcome that triggered it (``status`` may be None)."""

    def __init__(self, message, status=None):
        super().__init__(message)
        self.status = status


class PreconditionFailed(_WithStatus):
    pass


class HypothesisFailed(_WithStatus):
    pass


class NegativeDelta2(RealRootedError, ValueError):
    pass


class OutOfRange(RealRootedError, ValueError):
    pass


class DegenerateInput(RealRootedError, ValueError):
    pass
