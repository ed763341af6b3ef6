"""REESSE1+ public-key cryptosystem prototype and cryptanalysis workbench."""

from .cipher import decrypt, encrypt
from .coprime import (
    anomalous_product,
    decode_anomalous,
    encode_anomalous,
    sample_coprime,
    validate_coprime,
)
from .keygen import (
    PrivateKey,
    PublicKey,
    SystemParams,
    generate_keypair,
    generate_params,
    validate_keypair,
)
from .lever import omega_simple, omega_sumfree, sample_lever, validate_sumfree
from .sigver import Signature, digest, sign, verify

__all__ = [
    "PrivateKey",
    "PublicKey",
    "Signature",
    "SystemParams",
    "anomalous_product",
    "decode_anomalous",
    "decrypt",
    "digest",
    "encode_anomalous",
    "encrypt",
    "generate_keypair",
    "generate_params",
    "omega_simple",
    "omega_sumfree",
    "sample_coprime",
    "sample_lever",
    "sign",
    "validate_coprime",
    "validate_keypair",
    "validate_sumfree",
    "verify",
]

__version__ = "0.1.0"
