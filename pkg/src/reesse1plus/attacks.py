"""Cryptanalysis workbench for the unmasked (delta = 1) key transform.

Covers the continued-fraction key recovery against constant lever values,
the convergent probe with its exact-rational bound checks, Monte-Carlo
probe statistics, a cached lever oracle backed by brute-force discrete
logs, the compact-sequence density formula, and brute-force x**x tools.
"""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .coprime import POOL_MAX, sample_coprime
from .errors import NotRecovered, SearchExhausted, TooLarge
from .lever import omega_sumfree
from .numtheory import cf_convergents, cf_expand, find_generator, is_probable_prime, mod_inv, small_factorize

LEVER_CONSTANT = "constant"
LEVER_INJECTIVE = "injective"

# Named convergent bounds: difference G_z/M - L/q must be positive and below
#   tight:        1 / (2**(n-m-h) * q**2)
#   loose:        1 / (2 * q**2)
#   pair-single:  1 / (2**(n-3) * q**2), only defined for m = 2, h = 1
BOUND_TIGHT = "tight"
BOUND_LOOSE = "loose"
BOUND_PAIR_SINGLE = "pair-single"

TLP_BOUND = 1 << 24
ORACLE_MODULUS_BOUND = 1 << 32

_oracle_cache: dict[tuple[tuple[int, ...], int], "LeverOracleAnswer"] = {}
_oracle_lock = threading.Lock()


@dataclass(frozen=True)
class SlackKey:
    """An unmasked key C_i = A_i * W**lever_i mod M with its ground truth."""

    n: int
    C: tuple[int, ...]
    M: int
    A: tuple[int, ...]
    lever: tuple[int, ...]
    W: int
    pool_max: int = POOL_MAX


@dataclass(frozen=True)
class CFProbeResult:
    """Convergent candidates of one probe value, tagged by satisfied bound."""

    gz: int
    n: int
    m: int
    h: int
    candidates: tuple[tuple[int, int, str], ...]  # (L, Ay, bound)


@dataclass(frozen=True)
class ConstantLeverRecovery:
    """Candidate full recoveries (A sequence, common W-power) of an attack run."""

    candidates: tuple[tuple[tuple[int, ...], int], ...]


@dataclass(frozen=True)
class LeverOracleAnswer:
    A: tuple[int, ...]
    W: int
    lever: tuple[int, ...]


@dataclass(frozen=True)
class ProbeStats:
    """Monte-Carlo counts of probes producing convergent candidates."""

    n: int
    m: int
    h: int
    trials: int
    eq_cases: int
    neq_cases: int
    eq_hits: dict
    neq_hits: dict
    candidate_totals: dict

    def rows(self) -> list[tuple[str, str, int, int, int]]:
        """(lever_sums, bound, probes, probes_with_candidates, candidates) rows."""
        if self.trials == 0:
            return []
        out = []
        for label, cases, hits in (
            ("equal", self.eq_cases, self.eq_hits),
            ("unequal", self.neq_cases, self.neq_hits),
        ):
            for bound in (BOUND_TIGHT, BOUND_LOOSE, BOUND_PAIR_SINGLE):
                if bound == BOUND_PAIR_SINGLE and not (self.m == 2 and self.h == 1):
                    continue
                out.append(
                    (label, bound, cases, hits.get(bound, 0),
                     self.candidate_totals.get((label, bound), 0))
                )
        return out


def slack_key_from_parts(
    A: Sequence[int], lever: Sequence[int], W: int, M: int, pool_max: int = POOL_MAX
) -> SlackKey:
    """Assemble a slack key from explicit parts (fixtures, experiments)."""
    C = tuple(a * pow(W, l, M) % M for a, l in zip(A, lever))
    return SlackKey(
        n=len(A), C=C, M=M, A=tuple(A), lever=tuple(lever), W=W, pool_max=pool_max
    )


def make_slack_key(
    n: int,
    lever_mode: str,
    rng: Optional[random.Random] = None,
    pool_max: int = POOL_MAX,
) -> SlackKey:
    """Random slack key with either a constant or an injective lever.

    The modulus is the first prime above max((max A)**n, 4 * prod A), large
    enough for the divisibility reasoning behind the attack bounds.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if lever_mode not in (LEVER_CONSTANT, LEVER_INJECTIVE):
        raise ValueError(f"unknown lever mode {lever_mode!r}")
    rng = rng if rng is not None else random.Random()
    A = sample_coprime(n, rng, pool_max)
    M = max(max(A) ** n, 4 * math.prod(A)) | 1
    while not is_probable_prime(M):
        M += 2
    omega = omega_sumfree(n).elements
    if lever_mode == LEVER_CONSTANT:
        lever = (rng.choice(omega),) * n
    else:
        lever = tuple(rng.sample(omega, n))
    W = rng.randrange(2, M - 1)
    return slack_key_from_parts(A, lever, W, M, pool_max)


def _positive_convergent_candidates(gz: int, M: int, q_limit: int):
    """Convergents L/q of gz/M with L >= 1, q in [2, q_limit], below gz/M."""
    target = Fraction(gz, M)
    for conv in cf_convergents(cf_expand(gz, M)):
        if conv.numerator < 1 or not 2 <= conv.denominator <= q_limit:
            continue
        diff = target - Fraction(conv.numerator, conv.denominator)
        if diff > 0:
            yield conv, diff


def cf_attack_constant_lever(
    C: Sequence[int], M: int, pool_max: int = POOL_MAX
) -> ConstantLeverRecovery:
    """Recover {A_i} and W**k from a constant-lever slack key's public part.

    For every x, the convergents of (C_x * C_n**-1)/M whose denominator
    stays in the pool and obeys the loose bound propose the last sequence
    element; a proposal survives only if it maps every C_i into the pool
    simultaneously.  Raises NotRecovered (with the surviving partial
    proposals attached) when nothing survives.
    """
    n = len(C)
    if n < 2:
        raise ValueError("need at least two public elements")
    cn_inv = mod_inv(C[n - 1], M)
    proposals: set[int] = set()
    for x in range(n - 1):
        gz = C[x] * cn_inv % M
        for conv, diff in _positive_convergent_candidates(gz, M, pool_max):
            if diff < Fraction(1, 2 * conv.denominator ** 2):
                proposals.add(conv.denominator)
    recoveries = []
    for a_last in sorted(proposals):
        w_power = C[n - 1] * mod_inv(a_last, M) % M
        w_inv = mod_inv(w_power, M)
        candidate = tuple(c * w_inv % M for c in C)
        if all(2 <= a <= pool_max for a in candidate):
            recoveries.append((candidate, w_power))
    if not recoveries:
        raise NotRecovered(
            f"no proposal out of {len(proposals)} mapped the whole sequence into the pool",
            partial=sorted(proposals),
        )
    return ConstantLeverRecovery(candidates=tuple(recoveries))


def cf_probe(
    C: Sequence[int],
    M: int,
    x_indices: Sequence[int],
    y_indices: Sequence[int],
    pool_ceiling: int = POOL_MAX,
) -> CFProbeResult:
    """Probe G_z = prod(C_x) * prod(C_y)**-1 for convergent candidates.

    Indices are 1-based and must be disjoint.  Every candidate (L, Ay) is a
    convergent of G_z/M in lowest terms with Ay <= pool_ceiling**h; bound
    membership is decided in exact rational arithmetic.
    """
    n = len(C)
    xs, ys = list(x_indices), list(y_indices)
    if not xs or not ys:
        raise ValueError("index lists must be nonempty")
    if set(xs) & set(ys):
        raise ValueError("index lists must be disjoint")
    if len(set(xs)) != len(xs) or len(set(ys)) != len(ys):
        raise ValueError("indices must be distinct")
    if not all(1 <= i <= n for i in xs + ys):
        raise ValueError("indices out of range")
    m, h = len(xs), len(ys)
    gz = 1
    for i in xs:
        gz = gz * C[i - 1] % M
    for i in ys:
        gz = gz * mod_inv(C[i - 1], M) % M

    q_limit = pool_ceiling ** h
    tight_denom = 1 << max(n - m - h, 0)
    candidates = []
    for conv, diff in _positive_convergent_candidates(gz, M, q_limit):
        L, q = conv.numerator, conv.denominator
        q_sq = q * q
        if diff < Fraction(1, tight_denom * q_sq):
            candidates.append((L, q, BOUND_TIGHT))
        if diff < Fraction(1, 2 * q_sq):
            candidates.append((L, q, BOUND_LOOSE))
        if m == 2 and h == 1 and diff < Fraction(1, (1 << (n - 3)) * q_sq):
            candidates.append((L, q, BOUND_PAIR_SINGLE))
    return CFProbeResult(gz=gz, n=n, m=m, h=h, candidates=tuple(candidates))


def probe_statistics(
    n: int,
    trials: int,
    m: int,
    h: int,
    rng: Optional[random.Random] = None,
    pool_max: int = POOL_MAX,
) -> ProbeStats:
    """Frequency of convergent candidates over random injective-lever keys.

    Each trial draws a fresh slack key and disjoint random index sets, then
    counts which bounds produced candidates, split by whether the lever sums
    over the two index sets happen to be equal.  Counts only; no verdict.
    """
    if m == 0 and h == 0:
        return ProbeStats(n, m, h, 0, 0, 0, {}, {}, {})
    if m < 1 or h < 1 or m + h > n:
        raise ValueError("need 1 <= m, 1 <= h, m + h <= n")
    rng = rng if rng is not None else random.Random()
    eq_cases = neq_cases = 0
    eq_hits: dict[str, int] = {}
    neq_hits: dict[str, int] = {}
    totals: dict[tuple[str, str], int] = {}
    for _ in range(trials):
        key = make_slack_key(n, LEVER_INJECTIVE, rng, pool_max)
        idx = rng.sample(range(1, n + 1), m + h)
        xs, ys = idx[:m], idx[m:]
        x_sum = sum(key.lever[i - 1] for i in xs)
        y_sum = sum(key.lever[i - 1] for i in ys)
        label = "equal" if x_sum == y_sum else "unequal"
        if x_sum == y_sum:
            eq_cases += 1
            hits = eq_hits
        else:
            neq_cases += 1
            hits = neq_hits
        result = cf_probe(key.C, key.M, xs, ys, pool_max)
        seen = set()
        for _, _, bound in result.candidates:
            totals[(label, bound)] = totals.get((label, bound), 0) + 1
            if bound not in seen:
                hits[bound] = hits.get(bound, 0) + 1
                seen.add(bound)
    return ProbeStats(n, m, h, trials, eq_cases, neq_cases, eq_hits, neq_hits, totals)


def lever_oracle(
    C: Sequence[int], M: int, rng: Optional[random.Random] = None
) -> LeverOracleAnswer:
    """Answer C_i = A_i * W**lever_i for a fresh (A, W) via brute-force logs.

    Identical (C, M) queries return the cached identical answer; a permuted
    C counts as a distinct query.  M is capped at 2**32 since the discrete
    logs are found by exhaustive enumeration.
    """
    if M > ORACLE_MODULUS_BOUND:
        raise TooLarge(f"modulus above brute-force bound 2**32")
    key = (tuple(C), M)
    with _oracle_lock:
        cached = _oracle_cache.get(key)
    if cached is not None:
        return cached
    rng = rng if rng is not None else random.Random()
    n = len(C)
    mbar = small_factorize(M - 1)
    pool_hi = min(POOL_MAX, _integer_nth_root(M - 1, n))
    if pool_hi < n + 2:
        pool_hi = min(POOL_MAX, M - 2)
    for _ in range(256):
        W = find_generator(M, mbar, rng)
        A = sample_coprime(n, rng, pool_hi)
        targets = {c * mod_inv(a, M) % M: i for i, (c, a) in enumerate(zip(C, A))}
        if len(targets) != n:
            continue  # colliding C_i * A_i**-1; lever values must be distinct
        lever = [0] * n
        found = 0
        acc = 1
        for exp in range(1, M):
            acc = acc * W % M
            i = targets.get(acc)
            if i is not None:
                lever[i] = exp
                found += 1
                if found == n:
                    break
        if found == n:
            answer = LeverOracleAnswer(A=A, W=W, lever=tuple(lever))
            with _oracle_lock:
                return _oracle_cache.setdefault(key, answer)
    raise SearchExhausted("no sequence with distinct log targets found")


def _integer_nth_root(x: int, n: int) -> int:
    r = int(round(x ** (1.0 / n)))
    while r ** n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def assp_density(n: int, log_m: int) -> Fraction:
    """Density n**2 / log2(M) of the compact sequence behind a ciphertext."""
    if log_m <= 0:
        raise ValueError("log_m must be positive")
    return Fraction(n * n, log_m)


def tlp_brute(y: int, p: int) -> set[int]:
    """All x in [1, p-1] with x**x = y (mod p), by exhaustive search."""
    if p > TLP_BOUND:
        raise TooLarge(f"modulus above brute-force bound 2**24")
    return {x for x in range(1, p) if pow(x, x, p) == y % p}


def tlp_image(p: int) -> set[int]:
    """The image of x -> x**x mod p over [1, p-1]; a proper subset for p > 3."""
    if p > TLP_BOUND:
        raise TooLarge(f"modulus above brute-force bound 2**24")
    return {pow(x, x, p) for x in range(1, p)}
