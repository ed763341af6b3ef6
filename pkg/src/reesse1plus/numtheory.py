"""Arbitrary-precision modular arithmetic and constructive root/congruence solvers.

Everything here is a pure function of its inputs; big integers are plain
Python ints throughout.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BadExponent, Incompatible, NotAUnit, NotCoprime, NotResidue, TooLarge

# 40 Miller-Rabin rounds: error probability <= 4^-40 = 2^-80.
_MR_ROUNDS = 40
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67)

# Brute-force factoring is only meant for attack-experiment moduli.
FACTOR_BOUND = 1 << 64


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin primality test with error probability at most 2**-80."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # Witnesses drawn from an rng seeded by n itself: deterministic verdicts.
    rng = random.Random(n)
    for _ in range(_MR_ROUNDS):
        a = rng.randrange(2, n - 1)
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def random_prime(bits: int, rng: random.Random) -> int:
    """Uniformly sample odd candidates of exactly `bits` bits until one is prime."""
    if bits < 2:
        raise ValueError("need at least 2 bits")
    while True:
        c = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if is_probable_prime(c):
            return c


def _pollard_rho(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        x = rng.randrange(2, n)
        y = x
        c = rng.randrange(1, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d


def small_factorize(n: int) -> "FactoredInteger":
    """Factor n < 2**64 by trial division plus Pollard rho.

    This deliberately refuses cryptographic sizes; it exists for the
    desk-scale attack experiments.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n >= FACTOR_BOUND:
        raise TooLarge(f"refusing to factor {n.bit_length()}-bit integer")
    value = n
    factors: dict[int, int] = {}
    for p in range(2, 10000):
        if p * p > n:
            break
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    rng = random.Random(n)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m, rng)
        stack.append(d)
        stack.append(m // d)
    return FactoredInteger.from_factors(value, sorted(factors.items()))


@dataclass(frozen=True)
class FactoredInteger:
    """A nonnegative integer together with its complete prime factorization."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @classmethod
    def from_factors(cls, value: int, factors: Iterable[tuple[int, int]]) -> "FactoredInteger":
        fi = cls(value, tuple(factors))
        fi.check()
        return fi

    def check(self) -> None:
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be positive")
            if not is_probable_prime(p):
                raise ValueError(f"{p} is not prime")
            prod *= p ** e
            prev = p
        if prod != self.value:
            raise ValueError("factors do not multiply to value")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


@dataclass(frozen=True)
class Convergent:
    """One convergent p_k/q_k of a simple continued fraction."""

    numerator: int
    denominator: int
    index: int


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """base**exponent mod modulus for nonnegative exponents."""
    if modulus < 2:
        raise ValueError("modulus must be at least 2")
    if exponent < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exponent, modulus)


def mod_inv(a: int, m: int) -> int:
    """Multiplicative inverse of a modulo m."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise NotCoprime(f"gcd({a}, {m}) != 1")
    return pow(a, -1, m)


def element_order(x: int, modulus: int, order_factors: FactoredInteger) -> int:
    """Least e > 0 with x**e = 1 (mod modulus).

    `order_factors` must be the fully factored group order; the order is
    found by dividing out its prime factors, never by factoring here.
    """
    x %= modulus
    if math.gcd(x, modulus) != 1:
        raise NotAUnit(f"{x} shares a factor with the modulus")
    e = order_factors.value
    if pow(x, e, modulus) != 1:
        raise ValueError("supplied group order does not annihilate x")
    for p, _ in order_factors.factors:
        while e % p == 0 and pow(x, e // p, modulus) == 1:
            e //= p
    return e


def find_generator(modulus: int, order_factors: FactoredInteger, rng: random.Random) -> int:
    """Random generator of the multiplicative group mod a prime.

    `order_factors` is the factorization of modulus - 1.
    """
    mbar = modulus - 1
    if order_factors.value != mbar:
        raise ValueError("order_factors must factor modulus - 1")
    if modulus == 3:
        return 2
    checks = [mbar // p for p in order_factors.primes]
    while True:
        g = rng.randrange(2, modulus - 1)
        if all(pow(g, e, modulus) != 1 for e in checks):
            return g


def nth_root_coprime(n: int, c: int, p: int) -> int:
    """The unique n-th root of c mod p when gcd(n, p-1) = 1.

    The root is c**mu with mu the inverse of n modulo p-1.
    """
    if math.gcd(n, p - 1) != 1:
        raise BadExponent(f"gcd({n}, {p - 1}) != 1")
    mu = pow(n, -1, p - 1)
    return pow(c, mu, p)


def nth_root_residue(n: int, c: int, p: int) -> int:
    """One n-th root of an n-th power residue c mod p.

    Requires n | p-1 and gcd(n, (p-1)/n) = 1; the returned root is c**mu
    with mu*n = 1 (mod (p-1)/n), the root expressible as a power of c.
    """
    if (p - 1) % n != 0:
        raise BadExponent(f"{n} does not divide {p - 1}")
    q = (p - 1) // n
    if math.gcd(n, q) != 1:
        raise BadExponent(f"gcd({n}, {q}) != 1")
    if pow(c, q, p) != 1:
        raise NotResidue(f"{c} is not an {n}-th power residue mod {p}")
    mu = pow(n, -1, q)
    return pow(c, mu, p)


def reduce_root_congruence(n: int, c: int, p: int) -> tuple[int, int]:
    """Reduce x**n = c (mod p) to an equivalent x**k = c' with k = gcd(n, p-1).

    Only defined when n does not divide p-1; the two congruences have the
    same solution set.  The exponent mu inverting n/k modulo (p-1)/k is
    lifted until it is coprime to p-1: otherwise c**mu can land inside the
    k-th-power subgroup even when x**n = c is unsolvable, and the reduced
    congruence would gain solutions.  (Checked against exhaustive
    enumeration for every prime below 500.)
    """
    if (p - 1) % n == 0:
        raise BadExponent(f"{n} divides {p - 1}; nothing to reduce")
    k = math.gcd(n, p - 1)
    q = (p - 1) // k
    mu = pow(n // k, -1, q)
    while math.gcd(mu, p - 1) != 1:
        mu += q
    return k, pow(c, mu, p)


def double_congruence_solve(s: int, t: int, a: int, b: int, p: int) -> int:
    """The unique x with x**s = a and x**t = b (mod p), gcd(s, t) = 1.

    Solvable exactly when a**t = b**s (mod p); the solution is a**u * b**v
    with u*s + v*t = 1.
    """
    if math.gcd(s, t) != 1:
        raise ValueError("s and t must be coprime")
    a %= p
    b %= p
    if pow(a, t, p) != pow(b, s, p):
        raise Incompatible(f"a^t != b^s (mod {p})")
    if a == 0 or b == 0:
        return 0  # both are forced to 0 by the compatibility check
    u, v = _bezout(s, t)
    return pow(a, u % (p - 1), p) * pow(b, v % (p - 1), p) % p


def _bezout(s: int, t: int) -> tuple[int, int]:
    old_r, r = s, t
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    return old_u, old_v


def cf_expand(numerator: int, denominator: int) -> list[int]:
    """Canonical simple-continued-fraction quotients of numerator/denominator.

    Canonical form: the last quotient is >= 2 whenever the expansion has
    more than one term, making expansions unique.
    """
    if denominator <= 0:
        raise ValueError("denominator must be positive")
    if numerator < 0:
        raise ValueError("numerator must be nonnegative")
    quotients = []
    while denominator:
        q, r = divmod(numerator, denominator)
        quotients.append(q)
        numerator, denominator = denominator, r
    if len(quotients) > 1 and quotients[-1] == 1:
        quotients.pop()
        quotients[-1] += 1
    return quotients


def cf_convergents(quotients: Sequence[int]) -> list[Convergent]:
    """All convergents of a quotient list, last one equal to the input fraction."""
    out = []
    p_prev, q_prev = 1, 0
    p_prev2, q_prev2 = 0, 1
    for k, a in enumerate(quotients):
        p = a * p_prev + p_prev2
        q = a * q_prev + q_prev2
        out.append(Convergent(p, q, k))
        p_prev2, q_prev2 = p_prev, q_prev
        p_prev, q_prev = p, q
    return out
