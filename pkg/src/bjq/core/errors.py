"""Exception hierarchy. Each error carries the process exit code the CLI reports."""


class BJQError(Exception):
    """Base error for all library failures."""

    exit_code: int = 3


class InputError(BJQError, ValueError):
    """A precondition on the inputs does not hold."""

    exit_code = 2


class GridMismatchError(InputError):
    """Two operands live on incompatible grids."""


class ResolutionError(InputError):
    """The grid cannot resolve the requested function or symbol."""


class FormatError(InputError):
    """A file does not follow the PSF1, OPM1 or CSV layout."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class NumericError(BJQError, ArithmeticError):
    """A computation produced non-finite values or failed to converge."""

    exit_code = 3
