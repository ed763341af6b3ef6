"""Coprime sequences, run-length exponent coding, and anomalous subset products.

A coprime sequence is a list of pairwise distinct positive integers where,
for any pair with gcd h != 1, neither member divided by h divides a third
element.  Subset products of such a sequence are injective, which is what
the decryption step relies on.
"""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .errors import Malformed, PoolExhausted, ZeroPlaintext

POOL_MIN = 2
POOL_MAX = 1201  # default element pool {2, ..., 1201}


def validate_coprime(seq: Sequence[int]) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check the coprime-sequence condition.

    Returns (True, None) when valid, else (False, witness): a 2-tuple for a
    duplicate or non-positive element, or the triple (A_i, A_j, A_k) where
    gcd(A_i, A_j) = h != 1 and A_i/h divides A_k.
    """
    n = len(seq)
    for a in seq:
        if a < 1:
            return False, (a, a)
    if len(set(seq)) != n:
        seen = set()
        for a in seq:
            if a in seen:
                return False, (a, a)
            seen.add(a)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            h = math.gcd(seq[i], seq[j])
            if h == 1:
                continue
            reduced = seq[i] // h
            for k in range(n):
                if k in (i, j):
                    continue
                if seq[k] % reduced == 0:
                    return False, (seq[i], seq[j], seq[k])
    return True, None


def _prime_factors(x: int) -> frozenset[int]:
    out = set()
    d = 2
    while d * d <= x:
        while x % d == 0:
            out.add(d)
            x //= d
        d += 1
    if x > 1:
        out.add(x)
    return frozenset(out)


def _extends_validly(accepted: list[int], pairs: list[tuple[int, int]], x: int) -> bool:
    # x as the third element of every existing gcd-sharing pair
    for a_red, b_red in pairs:
        if x % a_red == 0 or x % b_red == 0:
            return False
    # pairs formed by x itself, with every other member as third element
    for a in accepted:
        h = math.gcd(x, a)
        if h == 1:
            continue
        xr, ar = x // h, a // h
        for c in accepted:
            if c == a:
                continue
            if c % xr == 0 or c % ar == 0:
                return False
    return True


def _keeps_private_primes(
    member_primes: list[frozenset[int]], counts: dict[int, int], px: frozenset[int]
) -> bool:
    # Subset-product uniqueness (and the greedy divisibility decode) need
    # every element to own a prime that appears in no other element.
    for primes in member_primes:
        if all(counts[p] > 1 or p in px for p in primes):
            return False
    return True


def _prime_count(pool_max: int) -> int:
    sieve = bytearray([1]) * (pool_max + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(pool_max ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return sum(sieve)


def sample_coprime(
    n: int,
    rng: random.Random,
    pool_max: int = POOL_MAX,
    max_retries: int = 64,
) -> tuple[int, ...]:
    """Greedily draw a valid coprime sequence from a shuffled pool.

    Beyond the pairwise divisor condition, each accepted element must keep a
    prime factor private to itself; without that, an element can divide a
    product of powers of the others and the decryption scan can misfire.
    Deterministic for a given rng state; reshuffles and retries when a pass
    over the pool cannot complete the sequence.
    """
    if pool_max - POOL_MIN + 1 < n:
        raise PoolExhausted(f"pool {POOL_MIN}..{pool_max} smaller than n={n}")
    pool = list(range(POOL_MIN, pool_max + 1))
    total_primes = _prime_count(pool_max)
    for _ in range(max_retries):
        rng.shuffle(pool)
        accepted: list[int] = []
        pairs: list[tuple[int, int]] = []
        member_primes: list[frozenset[int]] = []
        counts: dict[int, int] = {}
        used_primes = 0
        for x in pool:
            px = _prime_factors(x)
            fresh = sum(1 for p in px if counts.get(p, 0) == 0)
            if fresh == 0:
                continue
            # every future element consumes at least one still-unused prime,
            # so never let a draw starve the remaining slots (tight pools)
            if total_primes - used_primes - fresh < n - len(accepted) - 1:
                continue
            if not _keeps_private_primes(member_primes, counts, px):
                continue
            if not _extends_validly(accepted, pairs, x):
                continue
            for a in accepted:
                h = math.gcd(x, a)
                if h != 1:
                    pairs.append((x // h, a // h))
            accepted.append(x)
            member_primes.append(px)
            used_primes += fresh
            for p in px:
                counts[p] = counts.get(p, 0) + 1
            if len(accepted) == n:
                return tuple(accepted)
    raise PoolExhausted(f"no valid sequence of length {n} found in {max_retries} passes")


def encode_anomalous(bits: Sequence[int]) -> tuple[int, ...]:
    """Run-length exponents of a nonzero bit string.

    Each 1-bit absorbs the zero-run before it (weight = run + 1); the
    rightmost 1 additionally absorbs the trailing run, so the weights always
    total exactly len(bits).
    """
    if not any(bits):
        raise ZeroPlaintext("the all-zero block cannot be encoded")
    exps = [0] * len(bits)
    run = 0
    last_one = -1
    for i, b in enumerate(bits):
        if b:
            exps[i] = run + 1
            run = 0
            last_one = i
        else:
            run += 1
    if run:
        exps[last_one] += run
    return tuple(exps)


def decode_anomalous(exps: Sequence[int]) -> tuple[int, ...]:
    """Exact inverse of encode_anomalous; raises Malformed if no bit string fits."""
    bits = tuple(1 if e > 0 else 0 for e in exps)
    if not any(bits):
        raise Malformed("no positive exponent present")
    if encode_anomalous(bits) != tuple(exps):
        raise Malformed(f"{tuple(exps)} is not a run-length exponent vector")
    return bits


def anomalous_product(seq: Sequence[int], exps: Sequence[int], modulus: int) -> int:
    """prod(seq[i] ** exps[i]) mod modulus."""
    if len(seq) != len(exps):
        raise ValueError("sequence and exponent lengths differ")
    out = 1
    for a, e in zip(seq, exps):
        if e:
            out = out * pow(a, e, modulus) % modulus
    return out
