"""Plain-text key, ciphertext and signature file formats.

Key files are a fixed header line followed by name=value lines with all
integers in canonical decimal.  Emission order is fixed so parse(emit(k))
round-trips bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import KeyFileError
from .keygen import PrivateKey, PublicKey, SystemParams
from .lever import LeverAssignment
from .numtheory import FactoredInteger
from .sigver import DIGEST_ALGORITHM, Signature

PUBLIC_HEADER = "REESSE1PLUS PUBLIC KEY v1"
PRIVATE_HEADER = "REESSE1PLUS PRIVATE KEY v1"
VERSION = "1"

_PUBLIC_FIELDS = ("version", "profile", "n", "pool", "M", "S", "T", "alpha", "beta", "C")
_PRIVATE_FIELDS = (
    "version", "profile", "n", "pool", "M", "S", "T",
    "A", "L", "W", "delta", "Dbar", "dbar", "hbar", "mbar_factors", "hash",
)


@dataclass(frozen=True)
class PublicKeyFile:
    """A parsed public key with the shared constants it travels with."""

    n: int
    M: int
    S: int
    T: int
    profile: str
    pool_max: int
    key: PublicKey


@dataclass(frozen=True)
class PrivateKeyFile:
    """A parsed private key plus everything needed to rebuild SystemParams."""

    n: int
    M: int
    S: int
    T: int
    profile: str
    pool_max: int
    key: PrivateKey
    mbar: FactoredInteger
    hash_name: str

    def system_params(self) -> SystemParams:
        smooth = tuple((p, e) for p, e in self.mbar.factors if p <= 2 * self.n)
        return SystemParams(
            n=self.n, dbar=self.key.dbar, Dbar=self.key.Dbar, T=self.T, S=self.S,
            M=self.M, mbar=self.mbar, smooth=smooth, profile=self.profile,
            pool_max=self.pool_max,
        )


def _int_list(values) -> str:
    return ",".join(str(v) for v in values)


def emit_public(pub: PublicKey, params, profile: str, pool_max: int) -> str:
    """Render a public key file; `params` needs n, M, S and T."""
    lines = [
        PUBLIC_HEADER,
        f"version={VERSION}",
        f"profile={profile}",
        f"n={params.n}",
        f"pool={pool_max}",
        f"M={params.M}",
        f"S={params.S}",
        f"T={params.T}",
        f"alpha={pub.alpha}",
        f"beta={pub.beta}",
        f"C={_int_list(pub.C)}",
    ]
    return "\n".join(lines) + "\n"


def emit_private(priv: PrivateKey, params: SystemParams) -> str:
    lines = [
        PRIVATE_HEADER,
        f"version={VERSION}",
        f"profile={params.profile}",
        f"n={params.n}",
        f"pool={params.pool_max}",
        f"M={params.M}",
        f"S={params.S}",
        f"T={params.T}",
        f"A={_int_list(priv.A)}",
        f"L={_int_list(priv.lever.values)}",
        f"W={priv.W}",
        f"delta={priv.delta}",
        f"Dbar={priv.Dbar}",
        f"dbar={priv.dbar}",
        f"hbar={priv.hbar}",
        "mbar_factors=" + ",".join(f"{p}^{e}" for p, e in params.mbar.factors),
        f"hash={DIGEST_ALGORITHM}",
    ]
    return "\n".join(lines) + "\n"


def _parse_fields(text: str, header: str, expected: tuple[str, ...]) -> dict[str, str]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != header:
        raise KeyFileError(f"missing header {header!r}")
    fields: dict[str, str] = {}
    for ln in lines[1:]:
        name, sep, value = ln.partition("=")
        if not sep:
            raise KeyFileError(f"not a name=value line: {ln!r}")
        if name in fields:
            raise KeyFileError(f"duplicate field {name!r}")
        if name not in expected:
            raise KeyFileError(f"unknown field {name!r}")
        fields[name] = value
    missing = [f for f in expected if f not in fields]
    if missing:
        raise KeyFileError(f"missing fields: {', '.join(missing)}")
    if fields["version"] != VERSION:
        raise KeyFileError(f"unsupported version {fields['version']!r}")
    return fields


def _to_int(name: str, value: str) -> int:
    if not value.isdigit() or (value != "0" and value[0] == "0"):
        raise KeyFileError(f"field {name!r} is not a canonical decimal integer")
    return int(value)


def _to_int_list(name: str, value: str) -> tuple[int, ...]:
    return tuple(_to_int(name, part) for part in value.split(","))


def parse_public(text: str) -> PublicKeyFile:
    f = _parse_fields(text, PUBLIC_HEADER, _PUBLIC_FIELDS)
    key = PublicKey(
        C=_to_int_list("C", f["C"]),
        alpha=_to_int("alpha", f["alpha"]),
        beta=_to_int("beta", f["beta"]),
    )
    n = _to_int("n", f["n"])
    if len(key.C) != n:
        raise KeyFileError("C length disagrees with n")
    return PublicKeyFile(
        n=n, M=_to_int("M", f["M"]), S=_to_int("S", f["S"]), T=_to_int("T", f["T"]),
        profile=f["profile"], pool_max=_to_int("pool", f["pool"]), key=key,
    )


def parse_private(text: str) -> PrivateKeyFile:
    f = _parse_fields(text, PRIVATE_HEADER, _PRIVATE_FIELDS)
    n = _to_int("n", f["n"])
    M = _to_int("M", f["M"])
    A = _to_int_list("A", f["A"])
    lever = _to_int_list("L", f["L"])
    if len(A) != n or len(lever) != n:
        raise KeyFileError("A/L length disagrees with n")
    factors = []
    for part in f["mbar_factors"].split(","):
        p, sep, e = part.partition("^")
        if not sep:
            raise KeyFileError(f"bad factor entry {part!r}")
        factors.append((_to_int("mbar_factors", p), _to_int("mbar_factors", e)))
    try:
        mbar = FactoredInteger.from_factors(M - 1, factors)
    except ValueError as exc:
        raise KeyFileError(f"inconsistent mbar_factors: {exc}") from exc
    if f["hash"] != DIGEST_ALGORITHM:
        raise KeyFileError(f"unsupported hash {f['hash']!r}")
    try:
        key = PrivateKey.build(
            A=A,
            lever=LeverAssignment(lever),
            W=_to_int("W", f["W"]),
            delta=_to_int("delta", f["delta"]),
            Dbar=_to_int("Dbar", f["Dbar"]),
            dbar=_to_int("dbar", f["dbar"]),
            hbar=_to_int("hbar", f["hbar"]),
            M=M,
        )
    except Exception as exc:
        raise KeyFileError(f"cannot rebuild private key: {exc}") from exc
    return PrivateKeyFile(
        n=n, M=M, S=_to_int("S", f["S"]), T=_to_int("T", f["T"]),
        profile=f["profile"], pool_max=_to_int("pool", f["pool"]),
        key=key, mbar=mbar, hash_name=f["hash"],
    )


def emit_ciphertext(ct: int) -> str:
    return f"{ct}\n"


def parse_ciphertext(text: str) -> int:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 1:
        raise KeyFileError("ciphertext file must hold exactly one integer")
    return _to_int("ciphertext", lines[0].strip())


def emit_signature(sig: Signature) -> str:
    return f"{sig.Q}\n{sig.U}\n"


def parse_signature(text: str) -> Signature:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if len(lines) != 2:
        raise KeyFileError("signature file must hold exactly two integers")
    return Signature(Q=_to_int("Q", lines[0].strip()), U=_to_int("U", lines[1].strip()))
