import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reesse1plus.errors import BadExponent, Incompatible, NotAUnit, NotCoprime, NotResidue, TooLarge
from reesse1plus.numtheory import (
    FACTOR_BOUND,
    Convergent,
    FactoredInteger,
    cf_convergents,
    cf_expand,
    double_congruence_solve,
    element_order,
    find_generator,
    is_probable_prime,
    mod_inv,
    mod_pow,
    nth_root_coprime,
    nth_root_residue,
    reduce_root_congruence,
    small_factorize,
)

F30 = small_factorize(30)
F10 = small_factorize(10)


def test_mod_pow_examples():
    assert mod_pow(3, 12, 31) == 8
    assert mod_pow(7, 0, 13) == 1
    assert mod_pow(5, 7, 11) == 3


def test_mod_pow_rejects_bad_modulus():
    with pytest.raises(ValueError):
        mod_pow(2, 3, 1)
    with pytest.raises(ValueError):
        mod_pow(2, -1, 5)


def test_mod_inv_examples():
    assert mod_inv(10, 11) == 10
    assert mod_inv(1, 97) == 1
    with pytest.raises(NotCoprime):
        mod_inv(4, 8)


@given(st.integers(2, 10**6), st.integers(2, 10**9))
@settings(max_examples=300, deadline=None, derandomize=True)
def test_mod_inv_round_trip(m, a):
    a %= m
    if a == 0 or math.gcd(a, m) != 1:
        return
    assert a * mod_inv(a, m) % m == 1


def test_mod_inv_bulk_random_pairs():
    rng = random.Random(10**4)
    done = 0
    while done < 10_000:
        m = rng.randrange(2, 1 << 64)
        a = rng.randrange(1, m)
        if math.gcd(a, m) != 1:
            continue
        assert a * mod_inv(a, m) % m == 1
        done += 1


def test_element_order_examples():
    assert element_order(3, 31, F30) == 30
    assert element_order(1, 31, F30) == 1
    assert element_order(10, 11, F10) == 2
    with pytest.raises(NotAUnit):
        element_order(22, 11, F10)


def test_find_generator():
    rng = random.Random(0)
    g = find_generator(31, F30, rng)
    assert element_order(g, 31, F30) == 30
    assert find_generator(3, small_factorize(2), rng) == 2
    g11 = find_generator(11, F10, rng)
    assert element_order(g11, 11, F10) == 10


def test_nth_root_coprime_examples():
    assert nth_root_coprime(3, 5, 11) == 3
    assert nth_root_coprime(7, 1, 11) == 1
    with pytest.raises(BadExponent):
        nth_root_coprime(5, 3, 11)  # gcd(5, 10) != 1


@given(st.integers(0, 10**4))
@settings(max_examples=200, deadline=None, derandomize=True)
def test_nth_root_coprime_round_trip(seed):
    rng = random.Random(seed)
    p = 1009
    n = 5  # gcd(5, 1008) = 1
    x = rng.randrange(1, p)
    assert nth_root_coprime(n, pow(x, n, p), p) == x


def test_nth_root_residue_examples():
    assert nth_root_residue(3, 5, 13) == 8
    assert nth_root_residue(3, 1, 13) == 1
    with pytest.raises(NotResidue):
        nth_root_residue(3, 2, 13)
    with pytest.raises(BadExponent):
        nth_root_residue(5, 2, 13)  # 5 does not divide 12
    with pytest.raises(BadExponent):
        nth_root_residue(2, 4, 13)  # gcd(2, 6) != 1


def test_reduce_root_congruence_examples():
    k, cp = reduce_root_congruence(7, 4, 11)
    assert k == 1 and cp == pow(4, 3, 11)  # 7*3 = 21 = 1 (mod 10)
    k, _ = reduce_root_congruence(7, 1, 11)
    assert k == 1
    with pytest.raises(BadExponent):
        reduce_root_congruence(5, 3, 11)  # 5 divides 10


@pytest.mark.parametrize("n", [6, 7, 4, 9])
def test_reduce_root_congruence_solution_sets(n):
    p = 11
    if (p - 1) % n == 0:
        pytest.skip("divisible exponent")
    for c in range(1, p):
        k, cp = reduce_root_congruence(n, c, p)
        orig = {x for x in range(1, p) if pow(x, n, p) == c}
        red = {x for x in range(1, p) if pow(x, k, p) == cp}
        assert orig == red


def test_double_congruence_examples():
    assert double_congruence_solve(3, 5, 8, 10, 11) == 2
    assert double_congruence_solve(3, 5, 1, 1, 11) == 1
    with pytest.raises(Incompatible):
        double_congruence_solve(3, 5, 8, 9, 11)
    with pytest.raises(ValueError):
        double_congruence_solve(4, 6, 1, 1, 11)


@given(st.integers(0, 10**4))
@settings(max_examples=200, deadline=None, derandomize=True)
def test_double_congruence_round_trip(seed):
    rng = random.Random(seed)
    p = 211
    s, t = 4, 9  # coprime
    x = rng.randrange(1, p)
    a, b = pow(x, s, p), pow(x, t, p)
    got = double_congruence_solve(s, t, a, b, p)
    assert pow(got, s, p) == a and pow(got, t, p) == b


def test_cf_expand_examples():
    assert cf_expand(342114, 510931)[:6] == [0, 1, 2, 37, 1, 2]
    assert cf_expand(1, 2) == [0, 2]
    assert cf_expand(8, 5) == [1, 1, 1, 2]


@given(st.integers(0, 10**9), st.integers(1, 10**9))
@settings(max_examples=300, deadline=None, derandomize=True)
def test_cf_canonical_and_reconstruction(num, den):
    q = cf_expand(num, den)
    if len(q) > 1:
        assert q[-1] >= 2
    last = cf_convergents(q)[-1]
    g = math.gcd(num, den)
    assert (last.numerator, last.denominator) == (num // g, den // g)


def test_cf_convergents_examples():
    convs = cf_convergents(cf_expand(342114, 510931))
    assert (convs[2].numerator, convs[2].denominator) == (2, 3)
    small = cf_convergents([0, 2])
    assert [(c.numerator, c.denominator) for c in small] == [(0, 1), (1, 2)]
    assert small[1].index == 1


def test_cf_convergent_quality():
    num, den = 342114, 510931
    convs = cf_convergents(cf_expand(num, den))
    target = Fraction(num, den)
    for a, b in zip(convs, convs[1:]):
        assert math.gcd(a.numerator, a.denominator) == 1
        err = abs(target - Fraction(a.numerator, a.denominator))
        # equality holds at the penultimate convergent of a rational target
        assert err <= Fraction(1, a.denominator * b.denominator)
        if b is not convs[-1]:
            assert err < Fraction(1, a.denominator * b.denominator)


def test_small_factorize():
    fi = small_factorize(30)
    assert fi.factors == ((2, 1), (3, 1), (5, 1))
    big = 2 ** 31 - 1
    assert small_factorize(big * 4).factors == ((2, 2), (big, 1))
    with pytest.raises(TooLarge):
        small_factorize(FACTOR_BOUND + 1)


def test_factored_integer_invariants():
    with pytest.raises(ValueError):
        FactoredInteger.from_factors(12, [(2, 2), (4, 1)])  # 4 not prime
    with pytest.raises(ValueError):
        FactoredInteger.from_factors(12, [(3, 1), (2, 2)])  # not increasing
    with pytest.raises(ValueError):
        FactoredInteger.from_factors(13, [(2, 2), (3, 1)])  # wrong product


def test_is_probable_prime_spot_checks():
    assert is_probable_prime(2) and is_probable_prime(510931 + 12)  # 510943 prime
    assert not is_probable_prime(1)
    assert not is_probable_prime(561)  # Carmichael
    assert is_probable_prime(2 ** 89 - 1)
