"""Exception types raised across the package."""


class PrimeFramesError(Exception):
    pass


class NotPrimeError(PrimeFramesError, ValueError):
    """Modulus is not prime."""


class PrimeTooLargeError(PrimeFramesError, OverflowError):
    """Modulus exceeds the supported range (p < 2**32)."""


class NotInvertibleError(PrimeFramesError, ValueError):
    """Element is 0 mod p and has no multiplicative inverse."""


class NotADivisorError(PrimeFramesError, ValueError):
    """Requested subgroup order does not divide p - 1."""


class ContextMismatchError(PrimeFramesError, ValueError):
    """Two objects were built over different primes."""


class NotInSubgroupError(PrimeFramesError, ValueError):
    """Dilation parameter lies outside the system's subgroup."""


class ZeroWindowError(PrimeFramesError, ValueError):
    """Window signal is (numerically) zero."""


class EigenConvergenceError(PrimeFramesError, ArithmeticError):
    """Jacobi iteration did not reach the off-diagonal threshold."""

    def __init__(self, message, sweeps=None, off_norm=None, threshold=None):
        super().__init__(message)
        self.sweeps = sweeps
        self.off_norm = off_norm
        self.threshold = threshold


class InadmissibleWindowError(PrimeFramesError, ValueError):
    """Window violates a condition of the Parseval construction.

    ``condition`` is ``"i"`` when the DC sample vanishes and ``"ii"`` when
    some coset carries no spectral mass; ``coset`` then holds its index.
    """

    def __init__(self, message, condition, coset=None):
        super().__init__(message)
        self.condition = condition
        self.coset = coset


class SignalFormatError(PrimeFramesError, ValueError):
    """Malformed signal text or inline spectrum spec."""
