"""Exception types shared across the package."""


class PaftdError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PaftdError):
    """Malformed or inconsistent user input (bad ids, invalid files, ...)."""


class CapacityError(PaftdError):
    """An operation would exceed a configured size cap."""


class BudgetExceeded(PaftdError):
    """The cooperative time budget ran out."""
