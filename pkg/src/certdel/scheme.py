"""The certified-deletion encryption scheme: key generation, encryption,
decryption with an accept flag, deletion, and verification, plus the key,
ciphertext, and certificate file formats.
"""
from __future__ import annotations

import json
import struct
from dataclasses import dataclass

import numpy as np

from .bitvec import BitString, IndexSet, index_sets_from_basis
from .hashcode import LinearCode, ToeplitzHash, extended_hamming_8_4, repetition_2_1
from .qsim import QuantumRegister

__all__ = [
    "SchemeParams",
    "AuxKey",
    "DecKey",
    "Ciphertext",
    "DeletionCertificate",
    "DecryptOutput",
    "FormatError",
    "code_for_params",
    "keygen",
    "encrypt",
    "decrypt",
    "delete",
    "verify",
    "serialize_keys",
    "deserialize_keys",
    "serialize_ciphertext",
    "deserialize_ciphertext",
    "serialize_certificate",
    "deserialize_certificate",
]

CIPHERTEXT_MAGIC = b"QCD1"
CERTIFICATE_MAGIC = b"QCDY"
FORMAT_VERSION = 1


class FormatError(ValueError):
    """Raised on malformed key/ciphertext/certificate files."""


@dataclass(frozen=True)
class SchemeParams:
    n: int          # plaintext bits
    m: int          # total qubits
    s: int          # bits used for randomness extraction
    k: int          # bits used for deletion verification
    tau: int        # error-check hash bits
    mu: int         # syndrome bits
    delta: float    # verification threshold rate
    lam: int = 0    # security parameter label, informational

    def __post_init__(self):
        if self.m != self.s + self.k:
            raise ValueError("m must equal s + k")
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.n < 1 or self.tau < 1:
            raise ValueError("n and tau must be positive")
        if not 0.0 <= self.delta < 0.5:
            raise ValueError("delta must lie in [0, 1/2)")
        code = code_for_params(self)
        if self.s % code.block_in:
            raise ValueError("s must be a multiple of the code block length")
        if self.mu != code.syndrome_len(self.s):
            raise ValueError("mu inconsistent with the code and s")

    def as_dict(self) -> dict:
        return {"n": self.n, "m": self.m, "s": self.s, "k": self.k,
                "tau": self.tau, "mu": self.mu, "delta": self.delta}

    @classmethod
    def from_dict(cls, d: dict) -> "SchemeParams":
        return cls(n=int(d["n"]), m=int(d["m"]), s=int(d["s"]), k=int(d["k"]),
                   tau=int(d["tau"]), mu=int(d["mu"]), delta=float(d["delta"]))


def code_for_params(params: "SchemeParams") -> LinearCode:
    """Blockwise [8,4] extended Hamming when s permits, else the [2,1]
    repetition code (used by micro parameter sets with s = 2)."""
    if params.s % 8 == 0:
        return extended_hamming_8_4()
    if params.s % 2 == 0:
        return repetition_2_1()
    raise ValueError("s must be a multiple of 8 or 2")


@dataclass(frozen=True)
class AuxKey:
    r: BitString


@dataclass(frozen=True)
class DecKey:
    theta: BitString
    u: BitString
    d: BitString
    e: BitString
    h_pa: ToeplitzHash
    h_ec: ToeplitzHash

    def index_sets(self) -> tuple[IndexSet, IndexSet]:
        return index_sets_from_basis(self.theta)


@dataclass
class Ciphertext:
    quantum: QuantumRegister
    c: BitString
    p: BitString
    q: BitString


@dataclass(frozen=True)
class DeletionCertificate:
    y: BitString


@dataclass(frozen=True)
class DecryptOutput:
    plaintext: BitString
    flag: int


def _sample_basis(m: int, k: int, rng: np.random.Generator) -> BitString:
    positions = rng.choice(m, size=k, replace=False)
    arr = np.zeros(m, dtype=np.uint8)
    arr[positions] = 1
    return BitString.from_array(arr)


def keygen(params: SchemeParams, rng: np.random.Generator) -> tuple[AuxKey, DecKey]:
    # All uniform bit fields come from one draw; the basis string needs a
    # without-replacement sample and is drawn separately.
    lengths = (params.m, params.n, params.tau, params.mu,
               params.s + params.n - 1, params.s + params.tau - 1)
    buf = rng.bytes(sum((ln + 7) // 8 for ln in lengths))
    fields = []
    off = 0
    for ln in lengths:
        nbytes = (ln + 7) // 8
        value = int.from_bytes(buf[off:off + nbytes], "little")
        fields.append(BitString(value & ((1 << ln) - 1), ln))
        off += nbytes
    r, u, d, e, hpa_seed, hec_seed = fields
    theta = _sample_basis(params.m, params.k, rng)
    h_pa = ToeplitzHash(params.s, params.n, hpa_seed)
    h_ec = ToeplitzHash(params.s, params.tau, hec_seed)
    return AuxKey(r), DecKey(theta, u, d, e, h_pa, h_ec)


def encrypt(msg: BitString, aux: AuxKey, key: DecKey,
            params: SchemeParams) -> Ciphertext:
    if msg.length != params.n:
        raise ValueError("message length mismatch")
    code = code_for_params(params)
    r_i = aux.r.select(key.theta, 0)
    x = key.h_pa(r_i)
    p = key.h_ec(r_i) ^ key.d
    q = code.synd(r_i) ^ key.e
    quantum = QuantumRegister.prepare(aux.r, key.theta)
    c = msg ^ x ^ key.u
    return Ciphertext(quantum, c, p, q)


def decrypt(key: DecKey, ct: Ciphertext, params: SchemeParams,
            rng: np.random.Generator) -> DecryptOutput:
    code = code_for_params(params)
    r = ct.quantum.measure_all(key.theta, rng)
    r_prime = code.corr(r.select(key.theta, 0), ct.q ^ key.e)
    p_prime = key.h_ec(r_prime) ^ key.d
    flag = 1 if p_prime == ct.p else 0
    plaintext = ct.c ^ key.h_pa(r_prime) ^ key.u
    return DecryptOutput(plaintext, flag)


def delete(ct: Ciphertext, params: SchemeParams,
           rng: np.random.Generator) -> DeletionCertificate:
    hadamard = ~BitString.zeros(params.m)
    return DeletionCertificate(ct.quantum.measure_all(hadamard, rng))


def verify(aux: AuxKey, key: DecKey, cert: DeletionCertificate,
           params: SchemeParams) -> int:
    if cert.y.length != params.m:
        raise ValueError("certificate length mismatch")
    mismatches = ((cert.y.value ^ aux.r.value) & key.theta.value).bit_count()
    return 1 if mismatches < params.k * params.delta else 0


# -- serialization ----------------------------------------------------------

def serialize_keys(params: SchemeParams, aux: AuxKey, key: DecKey) -> str:
    doc = {
        "version": FORMAT_VERSION,
        "params": params.as_dict(),
        "aux": {"r": aux.r.to_hex()},
        "dec": {
            "theta": key.theta.to_hex(),
            "u": key.u.to_hex(),
            "d": key.d.to_hex(),
            "e": key.e.to_hex(),
            "hpa_seed": key.h_pa.seed.to_hex(),
            "hec_seed": key.h_ec.seed.to_hex(),
        },
    }
    return json.dumps(doc, indent=2)


def deserialize_keys(text: str) -> tuple[SchemeParams, AuxKey, DecKey]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"key file is not valid JSON: {exc}") from exc
    try:
        if doc["version"] != FORMAT_VERSION:
            raise FormatError(f"unsupported key file version {doc['version']}")
        params = SchemeParams.from_dict(doc["params"])
        aux = AuxKey(BitString.from_hex(doc["aux"]["r"], params.m))
        dec = doc["dec"]
        key = DecKey(
            theta=BitString.from_hex(dec["theta"], params.m),
            u=BitString.from_hex(dec["u"], params.n),
            d=BitString.from_hex(dec["d"], params.tau),
            e=BitString.from_hex(dec["e"], params.mu),
            h_pa=ToeplitzHash(params.s, params.n,
                              BitString.from_hex(dec["hpa_seed"],
                                                 params.s + params.n - 1)),
            h_ec=ToeplitzHash(params.s, params.tau,
                              BitString.from_hex(dec["hec_seed"],
                                                 params.s + params.tau - 1)),
        )
    except (KeyError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed key file: {exc}") from exc
    if key.theta.weight() != params.k:
        raise FormatError("basis string weight does not equal k")
    return params, aux, key


_CT_HEADER = struct.Struct("<4sBIIIIII d")


def serialize_ciphertext(params: SchemeParams, ct: Ciphertext) -> bytes:
    header = _CT_HEADER.pack(CIPHERTEXT_MAGIC, FORMAT_VERSION,
                             params.n, params.m, params.s, params.k,
                             params.tau, params.mu, params.delta)
    values = BitString(ct.quantum.values, params.m)
    bases = BitString(ct.quantum.bases, params.m)
    return b"".join([header, values.to_bytes(), bases.to_bytes(),
                     ct.c.to_bytes(), ct.p.to_bytes(), ct.q.to_bytes()])


def deserialize_ciphertext(data: bytes) -> tuple[SchemeParams, Ciphertext]:
    if len(data) < _CT_HEADER.size:
        raise FormatError("ciphertext file truncated")
    magic, version, n, m, s, k, tau, mu, delta = _CT_HEADER.unpack_from(data)
    if magic != CIPHERTEXT_MAGIC:
        raise FormatError("bad ciphertext magic")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported ciphertext version {version}")
    try:
        params = SchemeParams(n=n, m=m, s=s, k=k, tau=tau, mu=mu, delta=delta)
    except ValueError as exc:
        raise FormatError(f"inconsistent ciphertext header: {exc}") from exc
    sizes = [(m + 7) // 8, (m + 7) // 8, (n + 7) // 8,
             (tau + 7) // 8, (mu + 7) // 8]
    if len(data) != _CT_HEADER.size + sum(sizes):
        raise FormatError("ciphertext payload length mismatch")
    off = _CT_HEADER.size
    fields = []
    for size, nbits in zip(sizes, [m, m, n, tau, mu]):
        try:
            fields.append(BitString.from_bytes(data[off:off + size], nbits))
        except ValueError as exc:
            raise FormatError(f"malformed ciphertext payload: {exc}") from exc
        off += size
    values, bases, c, p, q = fields
    return params, Ciphertext(QuantumRegister.prepare(values, bases), c, p, q)


_CERT_HEADER = struct.Struct("<4sBI")


def serialize_certificate(cert: DeletionCertificate) -> bytes:
    return (_CERT_HEADER.pack(CERTIFICATE_MAGIC, FORMAT_VERSION, cert.y.length)
            + cert.y.to_bytes())


def deserialize_certificate(data: bytes) -> DeletionCertificate:
    if len(data) < _CERT_HEADER.size:
        raise FormatError("certificate file truncated")
    magic, version, m = _CERT_HEADER.unpack_from(data)
    if magic != CERTIFICATE_MAGIC:
        raise FormatError("bad certificate magic")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported certificate version {version}")
    body = data[_CERT_HEADER.size:]
    if len(body) != (m + 7) // 8:
        raise FormatError("certificate payload length mismatch")
    try:
        return DeletionCertificate(BitString.from_bytes(body, m))
    except ValueError as exc:
        raise FormatError(f"malformed certificate payload: {exc}") from exc
