"""Lever-function codomains and lever assignments.

Two codomain families are supported: the simple odd set {1, 3, ..., 2n-1}
used by key generation, and a greedily built sum-free odd set of 2n
elements (no three distinct members sum to a fourth) used by the
continued-fraction attack experiments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import BadLength, TooSmall

KIND_SIMPLE = "simple"
KIND_SUMFREE = "sumfree"


@dataclass(frozen=True)
class OmegaSet:
    """A strictly increasing odd codomain for lever assignments."""

    elements: tuple[int, ...]
    kind: str

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in set(self.elements)


@dataclass(frozen=True)
class LeverAssignment:
    """An injection i -> values[i-1] from {1..n} into an OmegaSet."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def weighted_sum(self, weights: Sequence[int]) -> int:
        return sum(w * v for w, v in zip(weights, self.values))


def omega_simple(n: int) -> OmegaSet:
    """The n-element odd set {1, 3, ..., 2n-1}; n must be even and >= 2."""
    if n < 2 or n % 2 != 0:
        raise BadLength("n must be even and at least 2")
    return OmegaSet(tuple(range(1, 2 * n, 2)), KIND_SIMPLE)


def omega_sumfree(n: int) -> OmegaSet:
    """Greedy sum-free odd set of exactly 2n elements, starting from {5, 7, 9}.

    A candidate is accepted when it is not the sum of three distinct
    elements already in the set; pair-sum and triple-sum tables are
    maintained incrementally, so construction is quadratic in n.
    """
    if n < 2:
        raise BadLength("n must be at least 2")
    elems = [5, 7, 9]
    pair_sums = {12, 14, 16}
    triple_sums = {21}
    while len(elems) < 2 * n:
        e = elems[-1] + 2
        while e in triple_sums:
            e += 2
        for s in pair_sums:
            triple_sums.add(s + e)
        for x in elems:
            pair_sums.add(x + e)
        elems.append(e)
    return OmegaSet(tuple(elems[: 2 * n]), KIND_SUMFREE)


def validate_sumfree(candidate: Iterable[int]) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Check oddness, distinctness and the three-element sum-free condition.

    Returns (True, None) on success, else (False, witness) where the witness
    is the offending element for a parity violation, a pair for a duplicate,
    or the quadruple (e1, e2, e3, e4) with e1 + e2 + e3 = e4.
    """
    elems = list(candidate)
    for e in elems:
        if e % 2 == 0:
            return False, (e,)
    if len(set(elems)) != len(elems):
        seen = set()
        for e in elems:
            if e in seen:
                return False, (e, e)
            seen.add(e)
    members = set(elems)
    ordered = sorted(members)
    for e1, e2, e3 in combinations(ordered, 3):
        s = e1 + e2 + e3
        if s in members and s not in (e1, e2, e3):
            return False, (e1, e2, e3, s)
    return True, None


def sample_lever(n: int, omega: OmegaSet, rng: random.Random) -> LeverAssignment:
    """Uniformly random injection of {1..n} into omega, reproducible per seed."""
    if len(omega) < n:
        raise TooSmall(f"codomain has {len(omega)} elements, need {n}")
    return LeverAssignment(tuple(rng.sample(omega.elements, n)))
