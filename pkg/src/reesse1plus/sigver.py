"""Digital signature and verification.

Signing solves for a pair (Q, U) tied together by an S-th root and a
subgroup search; verification checks one discriminant X == Y built from the
public constants alpha and beta.  Message digests are the leading n bits of
SHA-256, re-hashed with a counter byte in the (astronomically unlikely)
all-zero case so the digest is never zero.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import NotCoprime, SearchExhausted
from .keygen import PrivateKey, PublicKey
from .numtheory import mod_inv

DIGEST_ALGORITHM = "sha256"

_ABAR_ATTEMPTS = 1 << 10
_R_ATTEMPTS_FACTOR = 1 << 6  # per-abar r budget; total budget dbar * 2**16


@dataclass(frozen=True)
class Digest:
    """An n-bit digest; value is sum(bits[i] << i), never zero."""

    bits: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class Signature:
    Q: int
    U: int


def digest(message: bytes, n: int) -> Digest:
    """First n bits (big-endian) of SHA-256, counter-salted until nonzero."""
    if not 1 <= n <= 256:
        raise ValueError("n must be between 1 and 256")
    salt = b""
    counter = 0
    while True:
        raw = hashlib.sha256(message + salt).digest()
        bits = tuple((raw[i // 8] >> (7 - i % 8)) & 1 for i in range(n))
        if any(bits):
            return Digest(bits=bits, value=sum(b << i for i, b in enumerate(bits)))
        salt = bytes([counter])
        counter += 1


def _plain_subset_product(C: Sequence[int], bits: Sequence[int], M: int) -> int:
    out = 1
    for c, b in zip(C, bits):
        if b:
            out = out * c % M
    return out


def sign(
    priv: PrivateKey,
    params,
    message: bytes,
    rng: Optional[random.Random] = None,
) -> Signature:
    """Produce a signature (Q, U) on the message digest.

    `params` needs attributes n, M, S and T.  The r-search runs a 64*dbar
    budget per drawn abar and redraws abar up to 1024 times (the same
    dbar * 2**16 total budget as a single flat search, but immune to the
    small orbits that appear when T | abar at desk scale).
    """
    return _sign_transcript(priv, params, message, rng)[0]


def _sign_transcript(
    priv: PrivateKey,
    params,
    message: bytes,
    rng: Optional[random.Random] = None,
) -> tuple[Signature, dict]:
    rng = rng if rng is not None else random.Random()
    n, M, S, T = params.n, params.M, params.S, params.T
    mb = M - 1
    dbar, Dbar = priv.dbar, priv.Dbar
    delta, W, hbar = priv.delta, priv.W, priv.hbar

    d = digest(message, n)
    H = d.value
    kbar = delta * priv.lever.weighted_sum(d.bits) % mb
    g0 = 1
    for b, a in zip(d.bits, priv.A):
        if b == 0:
            g0 *= a
    G0 = pow(g0, delta, M)
    G0_inv = mod_inv(G0, M)
    s_inv = pow(S, -1, mb)
    dh_inv = mod_inv(delta * hbar % M, M)

    for _ in range(_ABAR_ATTEMPTS):
        while True:
            abar = rng.randrange(2, mb)
            if abar % (dbar * T) == 0:
                continue
            Q = (abar * Dbar + W * H) * priv.delta_inv % mb
            if Q > 1 and (W * Q) % dbar != 0:
                break
        R = pow(Q * dh_inv % M, s_inv, M) * G0_inv % M
        U = pow(R * pow(W, (kbar - delta) % mb, M) % M, Q, M)  # r = 0 seed
        gbar = pow(delta, abar * Dbar % mb, M)
        a_, b_ = delta * Q % mb, H * W % mb
        xi = 0
        bpow = 1
        for _ in range(n):
            xi = (xi * a_ + bpow) % mb
            bpow = bpow * b_ % mb
        wq_pow = pow(W * Q % mb, n - 1, mb)
        base = (wq_pow + xi) % mb
        for r in range(1, _R_ATTEMPTS_FACTOR * dbar + 1):
            U = U * gbar % M
            if (base + r * U * S) % mb % dbar == 0:
                if U > 1:
                    transcript = {
                        "H": H, "abar": abar, "Q": Q, "U": U, "r": r,
                        "xi": xi, "kbar": kbar,
                    }
                    return Signature(Q=Q, U=U), transcript
    raise SearchExhausted("signature search budget exhausted")


def verify(pub: PublicKey, params, message: bytes, sig: Signature) -> bool:
    """Accept iff the discriminant X == Y holds for this message and signature.

    `params` needs attributes n, M, S and T.  All exponents are reduced
    modulo M - 1 before exponentiation.
    """
    n, M, S, T = params.n, params.M, params.S, params.T
    mb = M - 1
    Q, U = sig.Q, sig.U
    if not (1 < Q < M and 1 < U < M):
        return False
    d = digest(message, n)
    H = d.value
    gbar = _plain_subset_product(pub.C, d.bits, M)
    try:
        x = (
            pow(pub.alpha * mod_inv(Q, M) % M, Q * U * T % mb, M)
            * pow(pub.alpha, pow(Q, n, mb), M)
            % M
        )
        y = (
            pow(pow(gbar, Q, M) * mod_inv(U, M) % M, U * S * T % mb, M)
            * pow(pub.beta, (H * pow(Q, n - 1, mb) + pow(H, n, mb)) % mb, M)
            % M
        )
    except NotCoprime:
        return False
    return x == y
