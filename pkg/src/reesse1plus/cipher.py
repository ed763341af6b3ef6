"""Probabilistic-structure encryption and the lever-sum search decryption.

A plaintext is a nonzero n-bit block.  Encryption raises each public C_i to
its run-length exponent; decryption strips the mask delta, then walks the
narrow candidate range of the lever-weighted sum (same parity as n) and
greedily divides the resulting integer by powers of the private sequence.
"""

from __future__ import annotations

from typing import Sequence

from .coprime import anomalous_product, encode_anomalous
from .errors import NoDecode
from .keygen import PrivateKey, PublicKey


def encrypt(pub: PublicKey, modulus: int, bits: Sequence[int]) -> int:
    """Anomalous subset product of the public sequence under `bits`.

    alpha and beta play no role here; raises ZeroPlaintext on an all-zero
    block.
    """
    return anomalous_product(pub.C, encode_anomalous(bits), modulus)


def _greedy_strip(value: int, A: Sequence[int]) -> tuple[int, ...] | None:
    """Divide value by A_i**(run+1) left to right; None unless it reaches 1."""
    n = len(A)
    bits = [0] * n
    run = 0
    for i in range(n):
        d = A[i] ** (run + 1)
        if value % d == 0:
            value //= d
            bits[i] = 1
            run = 0
        else:
            run += 1
        if value == 1:
            break
    if value != 1 and 0 < run < n:
        # trailing zero-run: its weight sits on the rightmost recovered 1
        tail = A[n - run - 1] ** run
        if value % tail == 0:
            value //= tail
    if value == 1 and any(bits):
        return tuple(bits)
    return None


def decrypt(priv: PrivateKey, params, ct: int) -> tuple[int, ...]:
    """Recover the plaintext block from a ciphertext produced under this key.

    `params` needs attributes n and M.  Every candidate decode is confirmed
    by re-encryption before being returned; raises NoDecode when no
    lever-sum candidate survives (corrupted ciphertext or key mismatch).
    """
    n, M = params.n, params.M
    if not 0 < ct < M:
        raise NoDecode("ciphertext out of range")
    A = priv.A
    C = tuple(
        pow(a * pow(priv.W, l, M) % M, priv.delta, M)
        for a, l in zip(A, priv.lever.values)
    )
    unmasked = pow(ct, priv.delta_inv, M)
    # lever sums of a weight-n vector over {1, 3, ..., 2n-1} lie in
    # [n, n(2n-1)] and share the parity of n
    value = unmasked * pow(pow(priv.W, n, M), -1, M) % M
    k = n
    k_max = n * (2 * n - 1)
    while k <= k_max:
        bits = _greedy_strip(value, A)
        if bits is not None:
            if anomalous_product(C, encode_anomalous(bits), M) == ct:
                return bits
        k += 2
        value = value * priv.winv_sq % M
    raise NoDecode("no lever-sum candidate produced a confirmed plaintext")
