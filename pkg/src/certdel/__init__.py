"""Certified-deletion encryption: simulator, security bounds, game harness."""

from .bitvec import BitString, IndexSet, index_sets_from_basis
from .scheme import (AuxKey, Ciphertext, DecKey, DecryptOutput,
                     DeletionCertificate, SchemeParams, decrypt, delete,
                     encrypt, keygen, verify)

__all__ = [
    "BitString",
    "IndexSet",
    "index_sets_from_basis",
    "SchemeParams",
    "AuxKey",
    "DecKey",
    "Ciphertext",
    "DeletionCertificate",
    "DecryptOutput",
    "keygen",
    "encrypt",
    "decrypt",
    "delete",
    "verify",
]

__version__ = "0.1.0"
