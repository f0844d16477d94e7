"""Exception hierarchy.  Every input problem is a ``ComaximalError`` so the CLI
can map it to exit code 2 in one place."""


class ComaximalError(ValueError):
    pass


class TooSmall(ComaximalError):
    pass


class NotSquarefree(ComaximalError):
    pass


class PrimeModulus(ComaximalError):
    pass


class TooManyPrimes(ComaximalError):
    pass


class NotLargerPrime(ComaximalError):
    pass


class RequiresThreePrimes(ComaximalError):
    pass


class OutOfRange(ComaximalError):
    pass


class CoordinateOutOfRange(ComaximalError):
    pass


class ExceedsCap(ComaximalError):
    pass


class NotAVertex(ComaximalError):
    pass


class GraphDisconnected(ComaximalError):
    pass


class FormulaMismatch(AssertionError):
    """Two closed forms that must agree did not.  Always a bug, never bad input."""
