"""Exception taxonomy shared by every module."""


class LiftLabError(Exception):
    """Base class for all library errors."""


class InputError(LiftLabError, ValueError):
    """Malformed input: bad permutation, group mismatch, parse failure."""


class CapacityError(LiftLabError):
    """A configured desk-scale bound was exceeded."""


class PreconditionError(LiftLabError):
    """A documented operation precondition failed; the message names the clause."""


class UnsupportedPrimeError(PreconditionError):
    """p = 2 fed to a verifier whose underlying statement assumes p odd."""


class ConsistencyError(LiftLabError):
    """An internal cross-check failed; carries a witness payload in ``detail``."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail
