import os


class EffectKitError(Exception):
    """Base class for all errors raised by effectkit."""


class FormatError(EffectKitError, ValueError):
    """A table or document is structurally malformed."""


class ParseError(FormatError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class PreconditionError(EffectKitError, ValueError):
    """An operation was called on an input outside its domain."""


class NotLatticeError(PreconditionError):
    pass


class NotMVError(PreconditionError):
    pass


class IntervalError(EffectKitError):
    """The unit interval of a presentation is infinite, too large, or ill-posed."""


class CapExceeded(EffectKitError):
    """A size or search-space cap was hit."""


def cap(default: int) -> int:
    """Resolve a size cap, honouring the ``EFFECTKIT_CAP`` override."""
    value = os.environ.get("EFFECTKIT_CAP")
    if value:
        return int(value)
    return default
