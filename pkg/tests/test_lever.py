import math
import random

import pytest

from reesse1plus.errors import BadLength, TooSmall
from reesse1plus.lever import (
    omega_simple,
    omega_sumfree,
    sample_lever,
    validate_sumfree,
)


def test_omega_simple():
    assert omega_simple(4).elements == (1, 3, 5, 7)
    om = omega_simple(80)
    assert len(om) == 80 and max(om.elements) == 159
    assert all(e % 2 == 1 for e in om.elements)
    with pytest.raises(BadLength):
        omega_simple(3)
    with pytest.raises(BadLength):
        omega_simple(0)


def test_omega_sumfree_prefix_and_size():
    om = omega_sumfree(16)
    assert om.elements[:9] == (5, 7, 9, 11, 13, 15, 17, 19, 53)
    assert len(om) == 32
    assert om.elements == omega_sumfree(16).elements  # deterministic


@pytest.mark.parametrize("n", [2, 8, 24, 48])
def test_omega_sumfree_validates(n):
    om = omega_sumfree(n)
    assert len(om) == 2 * n
    ok, witness = validate_sumfree(om.elements)
    assert ok, witness


def test_validate_sumfree():
    assert validate_sumfree({5, 7, 9}) == (True, None)
    ok, witness = validate_sumfree({5, 7, 9, 21})
    assert not ok and witness == (5, 7, 9, 21)
    ok, witness = validate_sumfree({3, 5, 8})
    assert not ok and witness == (8,)
    ok, witness = validate_sumfree([3, 5, 3])
    assert not ok and witness == (3, 3)


def test_sample_lever_permutation_and_determinism():
    om = omega_simple(6)
    got = sample_lever(6, om, random.Random(1))
    assert sorted(got.values) == list(om.elements)
    again = sample_lever(6, om, random.Random(1))
    assert got.values == again.values
    with pytest.raises(TooSmall):
        sample_lever(7, om, random.Random(1))


def test_sample_lever_slot_frequencies():
    # injection into a 6-element codomain: each element lands in each slot
    # with frequency 1/6, tested at five sigma over 10**4 draws
    om = omega_simple(6)
    trials = 10_000
    rng = random.Random(99)
    counts = {(slot, e): 0 for slot in range(6) for e in om.elements}
    for _ in range(trials):
        lv = sample_lever(6, om, rng)
        for slot, e in enumerate(lv.values):
            counts[(slot, e)] += 1
    expected = trials / 6
    sigma = math.sqrt(trials * (1 / 6) * (5 / 6))
    worst = max(abs(c - expected) for c in counts.values())
    assert worst <= 5 * sigma


def test_weighted_sum():
    om = omega_simple(4)
    lv = sample_lever(4, om, random.Random(0))
    assert lv.weighted_sum([1, 0, 0, 1]) == lv.values[0] + lv.values[3]
