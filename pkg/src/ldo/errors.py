"""Exception types shared across the package."""


class LdoError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(LdoError, ValueError):
    """Malformed word or DIMACS input. ``pos`` is a character offset (word
    format) or a 1-based line number (DIMACS), when known."""

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at {pos})"
        super().__init__(message)


class CapacityError(LdoError):
    """A mask or disk would exceed the configured ``n_max``."""


class MachineHalted(LdoError):
    """A token was fed to a machine that already stopped."""


class UnknownVariable(LdoError, KeyError):
    """A literal names a variable the machine has no disk for."""


class SupplyExhausted(LdoError):
    """The finite blank supply (BSS) ran out."""
