class JordError(Exception):
    """Base class for library errors."""


class DimensionError(JordError, ValueError):
    pass


class CharacteristicError(JordError, ValueError):
    pass


class BoundExceeded(JordError):
    """An exhaustive enumeration would exceed the configured bound."""


class ModeError(JordError, ValueError):
    """Requested check mode cannot run on this input (e.g. exhaustive over Q)."""


class UnverifiedError(JordError, ValueError):
    """An operation requires a Jordan-verified or validated input."""


class ParseError(JordError, ValueError):
    def __init__(self, msg, lineno=None):
        self.msg = msg
        if lineno is not None:
            msg = f"line {lineno}: {msg}"
        super().__init__(msg)
        self.lineno = lineno
