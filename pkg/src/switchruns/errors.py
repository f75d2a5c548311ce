"""Exception and warning types raised across the package."""


class SwitchRunsError(Exception):
    """Base class for all package errors."""


class EmptyInput(SwitchRunsError, ValueError):
    pass


class ParseError(SwitchRunsError, ValueError):
    """Illegal symbol in a bit file; ``offset`` is the 0-based byte offset."""

    def __init__(self, offset, char):
        self.offset = offset
        self.char = char
        super().__init__(f"illegal character {char!r} at byte offset {offset}")


class RangeError(SwitchRunsError, ValueError):
    pass


class BudgetError(SwitchRunsError, ValueError):
    pass


class ConfigError(SwitchRunsError, ValueError):
    pass


class ScheduleError(SwitchRunsError, ValueError):
    pass


class PrecisionWarning(UserWarning):
    """A floor was taken of a value within 2**-40 of an integer."""
