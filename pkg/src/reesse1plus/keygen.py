"""System parameters and keypair generation.

Key transform: C_i = (A_i * W**lever(i))**delta mod M over a prime M whose
predecessor carries a known factorization d*D*T * (smooth part) * q.  The
`strict` profile follows the full-size parameter regime; the `desk` profile
shrinks the search-space constants so small-n keypairs generate in
milliseconds for experiments and tests.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

from .coprime import POOL_MAX, sample_coprime, validate_coprime
from .errors import SearchExhausted
from .lever import LeverAssignment, omega_simple, sample_lever
from .numtheory import (
    FactoredInteger,
    element_order,
    find_generator,
    is_probable_prime,
    mod_inv,
    random_prime,
)

PROFILE_STRICT = "strict"
PROFILE_DESK = "desk"

# Product of the smooth-part exponents must reach this per profile.
_EXP_PRODUCT_TARGET = {PROFILE_STRICT: 1 << 10, PROFILE_DESK: 4}
_DESK_PRIME_BITS = 17


@dataclass(frozen=True)
class SystemParams:
    """Shared arithmetic context: modulus, subgroup orders, root exponent."""

    n: int
    dbar: int
    Dbar: int
    T: int
    S: int
    M: int
    mbar: FactoredInteger  # factorization of M - 1
    smooth: tuple[tuple[int, int], ...]
    profile: str
    pool_max: int = POOL_MAX


@dataclass(frozen=True)
class PublicKey:
    C: tuple[int, ...]
    alpha: int
    beta: int


@dataclass(frozen=True)
class PrivateKey:
    A: tuple[int, ...]
    lever: LeverAssignment
    W: int
    delta: int
    Dbar: int
    dbar: int
    hbar: int
    delta_inv: int  # delta**-1 mod M-1
    winv_sq: int  # W**-2 mod M

    @classmethod
    def build(cls, A, lever, W, delta, Dbar, dbar, hbar, M) -> "PrivateKey":
        return cls(
            A=tuple(A),
            lever=lever,
            W=W,
            delta=delta,
            Dbar=Dbar,
            dbar=dbar,
            hbar=hbar,
            delta_inv=mod_inv(delta, M - 1),
            winv_sq=pow(mod_inv(W, M), 2, M),
        )


def _primes_up_to(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    return [p for p in range(limit + 1) if sieve[p]]


def _smooth_part(n: int, profile: str) -> tuple[tuple[int, int], ...]:
    # primes 2 .. (largest prime <= 2n), exponent product >= profile target
    primes = _primes_up_to(2 * n)
    exps = [1] * len(primes)
    target = _EXP_PRODUCT_TARGET[profile]
    i = 0
    while math.prod(exps) < target:
        exps[i % len(primes)] += 1
        i += 1
    return tuple(zip(primes, exps))


def generate_params(
    n: int,
    profile: str = PROFILE_DESK,
    rng: Optional[random.Random] = None,
    pool_max: int = POOL_MAX,
    trial_bound: int = 1 << 17,
) -> SystemParams:
    """Construct the shared modulus and subgroup orders for block length n.

    M is the least practical prime of the form dbar*Dbar*T*(smooth)*q + 1
    exceeding pool_max**n, with q prime so the factorization of M - 1 is
    known by construction.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError("n must be even and at least 4")
    if profile not in (PROFILE_STRICT, PROFILE_DESK):
        raise ValueError(f"unknown profile {profile!r}")
    rng = rng if rng is not None else random.Random()

    small = [p for p in _primes_up_to(max(4 * n + 64, 128)) if p > 2 * n]
    dbar = rng.choice(small)

    big_bits = n + 1 if profile == PROFILE_STRICT else _DESK_PRIME_BITS
    Dbar = random_prime(big_bits, rng)
    while Dbar == dbar:
        Dbar = random_prime(big_bits, rng)
    T = random_prime(big_bits, rng)
    while T in (dbar, Dbar):
        T = random_prime(big_bits, rng)

    smooth = _smooth_part(n, profile)
    smooth_val = math.prod(p ** e for p, e in smooth)
    core = dbar * Dbar * T * smooth_val

    bound = pool_max ** n
    rem_bits = max(_DESK_PRIME_BITS, bound.bit_length() - core.bit_length() + 2)
    for _ in range(trial_bound):
        q = random_prime(rem_bits, rng)
        if q in (dbar, Dbar, T):
            continue
        mbar_val = core * q
        M = mbar_val + 1
        if M > bound and is_probable_prime(M):
            break
    else:
        raise SearchExhausted(f"no prime modulus found in {trial_bound} trials")

    while True:
        S = random_prime(_DESK_PRIME_BITS, rng)
        if mbar_val % S != 0:
            break

    factors = sorted(list(smooth) + [(dbar, 1), (Dbar, 1), (T, 1), (q, 1)])
    mbar = FactoredInteger.from_factors(mbar_val, factors)
    return SystemParams(
        n=n, dbar=dbar, Dbar=Dbar, T=T, S=S, M=M, mbar=mbar,
        smooth=smooth, profile=profile, pool_max=pool_max,
    )


def generate_keypair(
    params: SystemParams,
    rng: Optional[random.Random] = None,
    max_attempts: int = 256,
) -> tuple[PublicKey, PrivateKey]:
    """Draw a keypair under the given parameters, reproducible per rng seed."""
    rng = rng if rng is not None else random.Random()
    n, M, mb = params.n, params.M, params.M - 1
    dbar, Dbar, T, S = params.dbar, params.Dbar, params.T, params.S
    order = dbar * Dbar * T
    omega = omega_simple(n)

    for _ in range(max_attempts):
        A = sample_coprime(n, rng, params.pool_max)
        lever = sample_lever(n, omega, rng)

        # delta = g**((M-1)/(dbar*Dbar*T)) has order exactly dbar*Dbar*T for a
        # generator g; its value must additionally be a unit mod M - 1.
        for _ in range(max_attempts):
            g = find_generator(M, params.mbar, rng)
            delta = pow(g, mb // order, M)
            if delta > 1 and math.gcd(delta, mb) == 1:
                break
        else:
            raise SearchExhausted("no usable subgroup element found")

        # T must divide the order of W; dbar must not divide W itself, or the
        # signing loop can never satisfy its divisibility condition.
        while True:
            W = rng.randrange(2, M - 1)
            if pow(W, mb // T, M) != 1 and W % dbar != 0:
                break

        alpha = pow(delta, (pow(delta, n, mb) + delta * pow(W, n - 1, mb)) * T % mb, M)
        beta = pow(delta, pow(W, n, mb) * T % mb, M)
        prod_a = math.prod(A)
        hbar = (
            alpha
            * mod_inv(delta, M)
            % M
            * pow(W * prod_a % M, (-delta * S) % mb, M)
            % M
        )
        C = tuple(pow(a * pow(W, l, M) % M, delta, M) for a, l in zip(A, lever.values))
        if len(set(C)) == n and all(c > 1 for c in C):
            pub = PublicKey(C=C, alpha=alpha, beta=beta)
            priv = PrivateKey.build(A, lever, W, delta, Dbar, dbar, hbar, M)
            return pub, priv
    raise SearchExhausted("public-sequence collisions persisted; keypair not generated")


def validate_keypair(
    pub: PublicKey, priv: PrivateKey, params: SystemParams
) -> tuple[bool, Optional[str]]:
    """Re-verify every structural invariant; returns (ok, first failing check)."""
    n, M, mb = params.n, params.M, params.M - 1
    dbar, Dbar, T, S = params.dbar, params.Dbar, params.T, params.S

    def fail(name: str) -> tuple[bool, str]:
        return False, name

    try:
        params.mbar.check()
    except ValueError:
        return fail("params.factorization")
    if params.mbar.value != mb:
        return fail("params.factorization")
    quad = (dbar, Dbar, T, S)
    if any(math.gcd(a, b) != 1 for i, a in enumerate(quad) for b in quad[i + 1 :]):
        return fail("params.pairwise-coprime")
    if not 5 <= dbar <= 1 << 16:
        return fail("params.dbar-range")
    if mb % (dbar * Dbar * T) != 0:
        return fail("params.order-divides")
    if math.gcd(S, mb) != 1:
        return fail("params.s-coprime")
    smooth_val = math.prod(p ** e for p, e in params.smooth)
    largest = _primes_up_to(2 * n)[-1]
    if mb % smooth_val != 0 or params.smooth[-1][0] != largest:
        return fail("params.smooth-divides")
    if math.prod(e for _, e in params.smooth) < _EXP_PRODUCT_TARGET[params.profile]:
        return fail("params.smooth-exponents")
    if params.profile == PROFILE_STRICT and (Dbar < 1 << n or T < 1 << n):
        return fail("params.strict-sizes")
    if M <= params.pool_max ** n:
        return fail("params.modulus-bound")
    if not is_probable_prime(M):
        return fail("params.modulus-prime")

    ok, _ = validate_coprime(priv.A)
    if not ok or not all(2 <= a <= params.pool_max for a in priv.A):
        return fail("priv.coprime-seq")
    omega = set(omega_simple(n).elements)
    if len(set(priv.lever.values)) != n or not set(priv.lever.values) <= omega:
        return fail("priv.lever-injective")
    if math.gcd(priv.delta, mb) != 1:
        return fail("priv.delta-gcd")
    if element_order(priv.delta, M, params.mbar) != dbar * Dbar * T:
        return fail("priv.delta-order")
    if pow(priv.W, mb // T, M) == 1:
        return fail("priv.w-order")
    if priv.W % dbar == 0:
        return fail("priv.w-dbar")

    C = tuple(
        pow(a * pow(priv.W, l, M) % M, priv.delta, M)
        for a, l in zip(priv.A, priv.lever.values)
    )
    if C != pub.C:
        return fail("pub.c-transform")
    if len(set(pub.C)) != n or not all(1 < c < M for c in pub.C):
        return fail("pub.c-distinct")
    alpha = pow(
        priv.delta,
        (pow(priv.delta, n, mb) + priv.delta * pow(priv.W, n - 1, mb)) * T % mb,
        M,
    )
    if alpha != pub.alpha:
        return fail("pub.alpha")
    if pow(priv.delta, pow(priv.W, n, mb) * T % mb, M) != pub.beta:
        return fail("pub.beta")
    prod_a = math.prod(priv.A)
    lhs = priv.delta * priv.hbar % M * pow(priv.W * prod_a % M, priv.delta * S % mb, M) % M
    if lhs != pub.alpha:
        return fail("pub.hbar")
    if priv.delta * priv.delta_inv % mb != 1:
        return fail("priv.cache")
    if pow(priv.W, 2, M) * priv.winv_sq % M != 1:
        return fail("priv.cache")
    return True, None
