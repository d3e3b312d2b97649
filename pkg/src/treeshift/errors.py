"""Exception types raised across the package."""


class TreeShiftError(Exception):
    """Base class for all package errors."""


class InvalidArgument(TreeShiftError, ValueError):
    pass


class MalformedAddress(InvalidArgument):
    """An address is not in canonical form for the tree it is used with."""


class NotAnAncestor(InvalidArgument):
    pass


class Unsupported(TreeShiftError):
    """The operation is not defined (or not implemented) for this tree or weight."""


class DegenerateExponents(TreeShiftError):
    pass


class NeedsLargerN(TreeShiftError):
    """The chosen iterate is too small for the witness construction.

    ``n_min`` is the smallest iterate from which every larger one is admissible.
    """

    def __init__(self, message, n_min):
        super().__init__(message)
        self.n_min = n_min
