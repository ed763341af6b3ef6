import random

from reesse1plus import sigver
from reesse1plus.sigver import Signature, _sign_transcript, digest


def test_digest_shape_and_determinism():
    d = digest(b"some message", 16)
    assert len(d.bits) == 16
    assert d.value == sum(b << i for i, b in enumerate(d.bits))
    assert d.value > 0
    assert digest(b"some message", 16) == d
    assert digest(b"some message!", 16) != d
    assert digest(b"a", 8).bits != digest(b"b", 8).bits


def test_sign_verify_round_trip(keypair8):
    params, pub, priv = keypair8
    for i in range(30):
        msg = f"message {i}".encode()
        sig = sigver.sign(priv, params, msg, random.Random(i))
        assert sigver.verify(pub, params, msg, sig)


def test_transcript_relations(keypair8):
    # the drawn abar ties Q to the digest: abar*Dbar = delta*Q - W*H (mod M-1),
    # and the accepted r satisfies the subgroup divisibility condition
    params, pub, priv = keypair8
    mb = params.M - 1
    for i in range(10):
        msg = f"relation {i}".encode()
        sig, t = _sign_transcript(priv, params, msg, random.Random(i))
        assert (priv.delta * t["Q"] - priv.W * t["H"]) % mb == t["abar"] * priv.Dbar % mb
        wq = pow(priv.W * t["Q"] % mb, params.n - 1, mb)
        delta_check = (wq + t["xi"] + t["r"] * t["U"] * params.S) % mb
        assert delta_check % priv.dbar == 0
        # xi telescopes: xi * (delta*Q - W*H) = (delta*Q)**n - (W*H)**n (mod M-1)
        a = priv.delta * t["Q"] % mb
        b = t["H"] * priv.W % mb
        lhs = t["xi"] * (a - b) % mb
        rhs = (pow(a, params.n, mb) - pow(b, params.n, mb)) % mb
        assert lhs == rhs


def test_signatures_indistinguishable(keypair8):
    # same message, different randomness: distinct signatures, both accepted
    params, pub, priv = keypair8
    for i in range(50):
        msg = f"dup {i}".encode()
        s1 = sigver.sign(priv, params, msg, random.Random(2 * i))
        s2 = sigver.sign(priv, params, msg, random.Random(2 * i + 1))
        assert (s1.Q, s1.U) != (s2.Q, s2.U)
        assert sigver.verify(pub, params, msg, s1)
        assert sigver.verify(pub, params, msg, s2)


def test_tampered_message_rejected(keypair8):
    params, pub, priv = keypair8
    for i in range(30):
        msg = f"payload {i}".encode()
        sig = sigver.sign(priv, params, msg, random.Random(100 + i))
        flipped = bytes([msg[0] ^ 1]) + msg[1:]
        assert not sigver.verify(pub, params, flipped, sig)
        assert not sigver.verify(pub, params, msg, Signature(sig.Q, sig.U + 1))
        assert not sigver.verify(pub, params, msg, Signature(sig.Q + 1, sig.U))


def test_degenerate_signature_values_rejected(keypair8):
    params, pub, priv = keypair8
    msg = b"degenerate"
    assert not sigver.verify(pub, params, msg, Signature(0, 5))
    assert not sigver.verify(pub, params, msg, Signature(1, 5))
    assert not sigver.verify(pub, params, msg, Signature(5, params.M))


def test_exponent_reduction_cross_check(keypair8):
    # exponents fed to the verifier act modulo M - 1
    params, pub, priv = keypair8
    M, mb = params.M, params.M - 1
    sig = sigver.sign(priv, params, b"reduce", random.Random(0))
    e = sig.Q * sig.U * params.T
    assert pow(pub.alpha, e % mb, M) == pow(pub.alpha, e, M)


def test_cross_keypair_rejection(keypair8, keypair6):
    params8, pub8, priv8 = keypair8
    sig = sigver.sign(priv8, params8, b"cross", random.Random(5))
    params6, pub6, _ = keypair6
    assert not sigver.verify(pub6, params6, b"cross", sig)
