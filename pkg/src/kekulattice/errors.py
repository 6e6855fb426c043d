"""Package exceptions."""


class NumericalError(RuntimeError):
    """Raised when a numerical procedure fails to converge or is inconsistent.

    Covers unbracketed roots, inconsistent characteristic coefficients, and
    non-monotone bisection predicates.  Precondition violations raise
    ``ValueError`` instead.
    """
