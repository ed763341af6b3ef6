import dataclasses
import math
import random

from reesse1plus import cipher, keygen, sigver
from reesse1plus.coprime import validate_coprime
from reesse1plus.numtheory import element_order, is_probable_prime

from conftest import make_keypair


def test_params_postconditions(keypair8):
    params, _, _ = keypair8
    mb = params.M - 1
    assert is_probable_prime(params.M)
    assert params.M > 1201 ** 8  # log2 M >= 8 * log2 1201, about 82
    assert mb % (params.dbar * params.Dbar * params.T) == 0
    assert math.gcd(params.S, mb) == 1
    assert params.mbar.value == mb
    params.mbar.check()
    smooth_val = math.prod(p ** e for p, e in params.smooth)
    assert mb % smooth_val == 0
    assert math.prod(e for _, e in params.smooth) >= 4
    assert params.smooth[-1][0] == 13  # largest prime <= 2n = 16
    quad = (params.dbar, params.Dbar, params.T, params.S)
    assert all(math.gcd(a, b) == 1 for i, a in enumerate(quad) for b in quad[i + 1 :])
    assert 2 * 8 < params.dbar <= 1 << 16


def test_keypair_construction(keypair8):
    params, pub, priv = keypair8
    n, M, mb = params.n, params.M, params.M - 1
    recomputed = tuple(
        pow(a * pow(priv.W, l, M) % M, priv.delta, M)
        for a, l in zip(priv.A, priv.lever.values)
    )
    assert recomputed == pub.C

    order = params.dbar * params.Dbar * params.T
    assert pow(priv.delta, order, M) == 1
    for q in (params.dbar, params.Dbar, params.T):
        assert pow(priv.delta, order // q, M) != 1
    assert element_order(priv.delta, M, params.mbar) == order

    # defining identity of the signature constant
    prod_a = math.prod(priv.A)
    lhs = priv.delta * priv.hbar % M * pow(priv.W * prod_a % M, priv.delta * params.S % mb, M) % M
    assert lhs == pub.alpha


def test_validate_keypair(keypair8):
    params, pub, priv = keypair8
    assert keygen.validate_keypair(pub, priv, params) == (True, None)

    perturbed = dataclasses.replace(pub, C=(pub.C[0] + 1,) + pub.C[1:])
    ok, why = keygen.validate_keypair(perturbed, priv, params)
    assert not ok and why == "pub.c-transform"

    squared = dataclasses.replace(priv, delta=pow(priv.delta, 2, params.M))
    ok, why = keygen.validate_keypair(pub, squared, params)
    assert not ok and why in ("priv.delta-order", "pub.c-transform")


def test_determinism():
    a = make_keypair(6, 123)
    b = make_keypair(6, 123)
    assert a[0] == b[0]
    assert a[1] == b[1]
    assert a[2] == b[2]
    c = make_keypair(6, 124)
    assert c[1] != a[1]


def test_exponent_reduction_is_sound(keypair8):
    # Fermat: exponents act modulo M - 1
    params, pub, priv = keypair8
    M, mb = params.M, params.M - 1
    e = (pow(priv.delta, params.n, mb) + priv.delta * pow(priv.W, params.n - 1, mb)) * params.T
    assert pow(priv.delta, e % mb, M) == pow(priv.delta, e, M)
    assert pow(priv.delta, e % mb, M) == pow(priv.delta, e + 3 * mb, M)


def test_twenty_fresh_keypairs_round_trip():
    rng = random.Random(2024)
    for i in range(20):
        params, pub, priv = make_keypair(6, 3000 + i)
        assert keygen.validate_keypair(pub, priv, params) == (True, None)
        assert validate_coprime(priv.A)[0]
        bits = tuple(rng.randint(0, 1) for _ in range(6))
        if not any(bits):
            bits = (1,) + bits[1:]
        ct = cipher.encrypt(pub, params.M, bits)
        assert cipher.decrypt(priv, params, ct) == bits
        msg = bytes([i])
        sig = sigver.sign(priv, params, msg, random.Random(i))
        assert sigver.verify(pub, params, msg, sig)
