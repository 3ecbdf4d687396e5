"""Exception hierarchy shared by every module."""


class HopfadError(Exception):
    """Base class for all errors raised by hopfad."""


class DivisionByZero(HopfadError, ZeroDivisionError):
    pass


class FieldMismatch(HopfadError, TypeError):
    pass


class NoSuchRoot(HopfadError, ValueError):
    pass


class DimensionMismatch(HopfadError, ValueError):
    pass


class IndexOutOfRange(HopfadError, IndexError):
    pass


class ShapeMismatch(HopfadError, ValueError):
    pass


class NotAGroup(HopfadError, ValueError):
    pass


class BadCharacteristic(HopfadError, ValueError):
    pass


class UnsupportedCharacteristic(HopfadError, NotImplementedError):
    pass


class PreconditionViolated(HopfadError, ValueError):
    pass


class ActionNotFinitelySupported(HopfadError, ValueError):
    pass


class AlgebraMismatch(HopfadError, ValueError):
    pass


class UnsupportedExtension(HopfadError, ValueError):
    pass


class WindowOverflow(HopfadError, ValueError):
    pass


class HypothesisViolated(HopfadError, ValueError):
    pass


class RecursionCapExceeded(HopfadError, RuntimeError):
    pass


class ParseError(HopfadError, ValueError):
    """Malformed literal or file; carries an optional line/column position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
