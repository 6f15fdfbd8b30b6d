"""Simulated quantum layer.

Honest BB84/Wiesner qubits are tracked symbolically as (value, basis)
pairs: measuring in the preparation basis is deterministic, measuring in
the conjugate basis is an ideal fair coin, and measurement collapses the
qubit to the observed outcome in the measured basis.  This is exactly
equivalent to the single-qubit Born rule, which the small dense
state-vector engine below serves to verify and to power the exact
entanglement-based game oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bitvec import BitString

__all__ = [
    "PreparedQubit",
    "QuantumRegister",
    "NoiseModel",
    "prepare_wiesner",
    "measure",
    "apply_noise",
    "StateVector",
    "make_epr_pairs",
    "sv_measure",
    "sv_measure_probs",
    "povm_overlap",
    "COMPUTATIONAL_POVM",
    "HADAMARD_POVM",
]

MAX_QUBITS = 12


@dataclass
class PreparedQubit:
    value: int
    basis: int  # 0 = computational, 1 = Hadamard
    disturbed: int = 0


def prepare_wiesner(r: BitString, theta: BitString) -> list[PreparedQubit]:
    if r.length != theta.length:
        raise ValueError("value and basis strings must have equal length")
    return [PreparedQubit(v, b) for v, b in zip(r, theta)]


def measure(qubit: PreparedQubit, basis: int, rng: np.random.Generator) -> int:
    """Measure a qubit; collapses it to (outcome, basis, undisturbed)."""
    if basis == qubit.basis and not qubit.disturbed:
        outcome = qubit.value
    else:
        outcome = int(rng.integers(2))
    qubit.value = outcome
    qubit.basis = basis
    qubit.disturbed = 0
    return outcome


@dataclass(frozen=True)
class NoiseModel:
    flip_probability: float

    def __post_init__(self):
        if not 0.0 <= self.flip_probability <= 1.0:
            raise ValueError("flip probability must be in [0, 1]")


class QuantumRegister:
    """Batch of Wiesner qubits with word-parallel measurement.

    Semantically identical to a list of PreparedQubit, but values and
    bases are packed into integers so that whole-register operations cost
    a handful of word operations.
    """

    __slots__ = ("values", "bases", "length")

    def __init__(self, values: int, bases: int, length: int):
        self.values = values
        self.bases = bases
        self.length = length

    @classmethod
    def prepare(cls, r: BitString, theta: BitString) -> "QuantumRegister":
        if r.length != theta.length:
            raise ValueError("value and basis strings must have equal length")
        return cls(r.value, theta.value, r.length)

    @classmethod
    def from_qubits(cls, qubits: list[PreparedQubit]) -> "QuantumRegister":
        values = sum(q.value << i for i, q in enumerate(qubits))
        bases = sum(q.basis << i for i, q in enumerate(qubits))
        return cls(values, bases, len(qubits))

    def to_qubits(self) -> list[PreparedQubit]:
        return [PreparedQubit((self.values >> i) & 1, (self.bases >> i) & 1)
                for i in range(self.length)]

    def _coins(self, rng: np.random.Generator) -> int:
        return BitString.random(self.length, rng).value

    def measure_all(self, bases: BitString, rng: np.random.Generator) -> BitString:
        """Measure every qubit in the given per-qubit basis; collapses all."""
        if bases.length != self.length:
            raise ValueError("basis string length mismatch")
        agree = ~(self.bases ^ bases.value)
        outcomes = (self.values & agree) | (self._coins(rng) & ~agree)
        outcomes &= (1 << self.length) - 1
        self.values = outcomes
        self.bases = bases.value
        return BitString(outcomes, self.length)

    def measure_masked(self, mask: BitString, bases: BitString,
                       rng: np.random.Generator) -> BitString:
        """Measure only qubits selected by mask; other positions of the
        returned string are 0 and the qubits stay untouched."""
        if mask.length != self.length or bases.length != self.length:
            raise ValueError("mask/basis length mismatch")
        agree = ~(self.bases ^ bases.value)
        outcomes = ((self.values & agree) | (self._coins(rng) & ~agree)) & mask.value
        self.values = (self.values & ~mask.value) | outcomes
        self.bases = (self.bases & ~mask.value) | (bases.value & mask.value)
        return BitString(outcomes, self.length)


def apply_noise(qubits, model: NoiseModel, rng: np.random.Generator):
    """Independently flip each encoded value bit with the model probability.

    Accepts a QuantumRegister or a list of PreparedQubit; mutates in place
    and returns the argument.
    """
    p = model.flip_probability
    if isinstance(qubits, QuantumRegister):
        flips = rng.random(qubits.length) < p
        mask = BitString.from_array(flips.astype(np.uint8)).value
        qubits.values ^= mask
        return qubits
    for q in qubits:
        if rng.random() < p:
            q.value ^= 1
    return qubits


# -- dense state-vector oracle ---------------------------------------------

_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


class StateVector:
    """Dense state on up to MAX_QUBITS qubits.

    Amplitude index convention is little-endian: bit ``i`` of the
    amplitude index is the value of qubit ``i``.
    """

    def __init__(self, amplitudes: np.ndarray):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        n = int(round(np.log2(amps.size)))
        if 1 << n != amps.size:
            raise ValueError("amplitude vector length must be a power of two")
        if n > MAX_QUBITS:
            raise ValueError(f"state capped at {MAX_QUBITS} qubits")
        if abs(np.vdot(amps, amps).real - 1.0) > 1e-12:
            raise ValueError("state is not normalized")
        self.amplitudes = amps
        self.n_qubits = n

    @classmethod
    def basis_state(cls, bits: BitString) -> "StateVector":
        amps = np.zeros(1 << bits.length, dtype=np.complex128)
        amps[bits.value] = 1.0
        return cls(amps)

    def apply_1q(self, gate: np.ndarray, qubit: int) -> "StateVector":
        n = self.n_qubits
        t = self.amplitudes.reshape([2] * n)
        # numpy axis 0 is the most significant index bit = qubit n-1
        axis = n - 1 - qubit
        t = np.moveaxis(t, axis, 0)
        t = np.tensordot(gate, t, axes=([1], [0]))
        t = np.moveaxis(t, 0, axis)
        out = StateVector.__new__(StateVector)
        out.amplitudes = np.ascontiguousarray(t.reshape(-1))
        out.n_qubits = n
        return out

    def apply_hadamards(self, mask: int) -> "StateVector":
        out = self
        for i in range(self.n_qubits):
            if (mask >> i) & 1:
                out = out.apply_1q(_H, i)
        return out

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def make_epr_pairs(count: int) -> StateVector:
    """Tensor product of EPR pairs; qubits 2i and 2i+1 form pair i."""
    if 2 * count > MAX_QUBITS:
        raise ValueError(f"state capped at {MAX_QUBITS} qubits")
    pair = np.zeros(4, dtype=np.complex128)
    pair[0b00] = pair[0b11] = 1 / np.sqrt(2)
    amps = np.array([1.0], dtype=np.complex128)
    for _ in range(count):
        amps = np.kron(pair, amps)
    return StateVector(amps)


def sv_measure_probs(state: StateVector, qubit_index: int, basis: int):
    """Exact branch decomposition: ((p0, state0), (p1, state1)).

    A branch with probability 0 carries a None state.
    """
    if not 0 <= qubit_index < state.n_qubits:
        raise ValueError("qubit index out of range")
    work = state.apply_1q(_H, qubit_index) if basis else state
    amps = work.amplitudes
    idx = (np.arange(amps.size) >> qubit_index) & 1
    branches = []
    for outcome in (0, 1):
        sel = amps * (idx == outcome)
        p = float(np.vdot(sel, sel).real)
        if p <= 0.0:
            branches.append((0.0, None))
            continue
        post = StateVector(sel / np.sqrt(p))
        if basis:
            post = post.apply_1q(_H, qubit_index)
        branches.append((p, post))
    return tuple(branches)


def sv_measure(state: StateVector, qubit_index: int, basis: int,
               rng: np.random.Generator):
    """Sample one measurement outcome from the Born rule; returns
    (outcome, post-measurement state)."""
    (p0, s0), (p1, s1) = sv_measure_probs(state, qubit_index, basis)
    if rng.random() < p0:
        return 0, s0
    return 1, s1


def _psd_sqrt(op: np.ndarray) -> np.ndarray:
    vals, vecs = np.linalg.eigh(op)
    if np.min(vals) < -1e-10:
        raise ValueError("operator is not positive semidefinite")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def povm_overlap(povm_a, povm_b) -> float:
    """max over outcome pairs of the squared operator norm of sqrt(M) sqrt(N)."""
    best = 0.0
    for m in povm_a:
        sm = _psd_sqrt(np.asarray(m, dtype=np.complex128))
        for n in povm_b:
            sn = _psd_sqrt(np.asarray(n, dtype=np.complex128))
            best = max(best, float(np.linalg.norm(sm @ sn, 2) ** 2))
    return best


COMPUTATIONAL_POVM = (
    np.array([[1, 0], [0, 0]], dtype=np.complex128),
    np.array([[0, 0], [0, 1]], dtype=np.complex128),
)
_plus = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=np.complex128)
_minus = np.array([[0.5, -0.5], [-0.5, 0.5]], dtype=np.complex128)
HADAMARD_POVM = (_plus, _minus)
