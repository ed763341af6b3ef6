"""Exception types shared across the package."""


class ReesseError(Exception):
    """Base class for all domain errors raised by this package."""


class NotCoprime(ReesseError):
    """A modular inverse was requested for a non-unit."""


class NotAUnit(ReesseError):
    """An element shares a factor with the modulus."""


class BadExponent(ReesseError):
    """A root-extraction exponent violates its gcd/divisibility precondition."""


class NotResidue(ReesseError):
    """The target value is not an n-th power residue."""


class Incompatible(ReesseError):
    """The two congruences of a double-congruence system admit no common solution."""


class BadLength(ReesseError):
    """A sequence length violates a parity or minimum-size requirement."""


class TooSmall(ReesseError):
    """A codomain is too small to host the requested injection."""


class PoolExhausted(ReesseError):
    """No valid coprime sequence could be drawn from the pool."""


class ZeroPlaintext(ReesseError):
    """The all-zero block is outside the plaintext space."""


class Malformed(ReesseError):
    """A value does not decode under the run-length exponent rules."""


class NoDecode(ReesseError):
    """No lever-sum candidate produced a confirmed decryption."""


class SearchExhausted(ReesseError):
    """A randomized search hit its trial bound without success."""


class TooLarge(ReesseError):
    """Input exceeds the brute-force bound of a small-scale tool."""


class NotRecovered(ReesseError):
    """The continued-fraction attack failed to pin down the private sequence."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial if partial is not None else []


class KeyFileError(ReesseError):
    """A key, ciphertext or signature file is malformed."""
