"""Universal hash families and blockwise linear-code syndrome decoding.

The hash family is the family of binary Toeplitz matrices: a seed of
``in_len + out_len - 1`` bits defines the matrix ``T`` with
``T[i][j] = seed[i + in_len - 1 - j]``, and hashing is the GF(2)
matrix-vector product ``T @ x``.  Any two distinct inputs collide with
probability at most ``2**-out_len`` over a uniform seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .bitvec import BitString

__all__ = [
    "ToeplitzHash",
    "sample_hash",
    "LinearCode",
    "extended_hamming_8_4",
    "repetition_2_1",
]


@dataclass(frozen=True)
class ToeplitzHash:
    in_len: int
    out_len: int
    seed: BitString
    _rows: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.out_len < 1 or self.in_len < 1:
            raise ValueError("hash dimensions must be positive")
        if self.seed.length != self.in_len + self.out_len - 1:
            raise ValueError("seed length must be in_len + out_len - 1")
        # Row i has bit j = seed[i + in_len - 1 - j]; in the reversed seed
        # that is a contiguous window starting at out_len - 1 - i, so all
        # rows come from one sliding-window view, packed bytewise for
        # popcount evaluation.
        rev = np.ascontiguousarray(self.seed.to_array()[::-1])
        windows = np.lib.stride_tricks.as_strided(
            rev, shape=(self.out_len, self.in_len), strides=(1, 1))
        rows = np.packbits(windows[::-1], axis=1, bitorder="little")
        object.__setattr__(self, "_rows", rows)

    def __call__(self, x: BitString) -> BitString:
        if x.length != self.in_len:
            raise ValueError("input length mismatch")
        xb = np.frombuffer(x.to_bytes(), dtype=np.uint8)
        parities = (np.bitwise_count(self._rows & xb).sum(axis=1) & 1)
        packed = np.packbits(parities.astype(np.uint8),
                             bitorder="little").tobytes()
        return BitString(int.from_bytes(packed, "little"), self.out_len)

    def matrix(self) -> np.ndarray:
        """Dense 0/1 matrix of shape (out_len, in_len)."""
        m = np.zeros((self.out_len, self.in_len), dtype=np.uint8)
        for i in range(self.out_len):
            for j in range(self.in_len):
                m[i, j] = self.seed[i + self.in_len - 1 - j]
        return m


def sample_hash(in_len: int, out_len: int, rng: np.random.Generator) -> ToeplitzHash:
    seed = BitString.random(in_len + out_len - 1, rng)
    return ToeplitzHash(in_len, out_len, seed)


class LinearCode:
    """Blockwise syndrome decoder for a short [block_in, block_in - block_syn]
    binary linear code.

    The decode table maps every syndrome to its coset leader: the
    minimum-weight error pattern, ties broken by the lowest
    index-lexicographic pattern.  Inputs longer than one block are
    processed block by block and the per-block syndromes concatenated.
    """

    def __init__(self, parity_check: np.ndarray, distance: int):
        h = np.asarray(parity_check, dtype=np.uint8) & 1
        self.block_syn, self.block_in = h.shape
        self.parity_check = h
        self.distance = distance
        self._powers = (1 << np.arange(self.block_syn)).astype(np.int64)
        self._block_powers = (1 << np.arange(self.block_in)).astype(np.int64)
        self._build_table()

    def _build_table(self):
        n_syn = 1 << self.block_syn
        leaders = np.full(n_syn, -1, dtype=np.int64)
        found = 0
        for w in range(self.block_in + 1):
            for pos in combinations(range(self.block_in), w):
                e = np.zeros(self.block_in, dtype=np.uint8)
                e[list(pos)] = 1
                s = int((self.parity_check @ e % 2) @ self._powers)
                if leaders[s] < 0:
                    leaders[s] = int(e @ self._block_powers)
                    found += 1
                    if found == n_syn:
                        break
            if found == n_syn:
                break
        if found != n_syn:
            raise ValueError("parity-check matrix does not have full row rank")
        self._leaders = leaders
        self._leader_bits = np.zeros((n_syn, self.block_in), dtype=np.uint8)
        for s in range(n_syn):
            v = int(leaders[s])
            self._leader_bits[s] = [(v >> j) & 1 for j in range(self.block_in)]

    def _blocks(self, x: BitString) -> np.ndarray:
        if x.length % self.block_in:
            raise ValueError("length must be a multiple of the block size")
        return x.to_array().reshape(-1, self.block_in)

    def syndrome_len(self, in_len: int) -> int:
        if in_len % self.block_in:
            raise ValueError("length must be a multiple of the block size")
        return in_len // self.block_in * self.block_syn

    def synd(self, x: BitString) -> BitString:
        blocks = self._blocks(x)
        syn = blocks @ self.parity_check.T % 2
        return BitString.from_array(syn.reshape(-1))

    def corr(self, y: BitString, target: BitString) -> BitString:
        blocks = self._blocks(y)
        if target.length != blocks.shape[0] * self.block_syn:
            raise ValueError("target syndrome length mismatch")
        tgt = target.to_array().reshape(-1, self.block_syn)
        syn = (blocks @ self.parity_check.T + tgt) % 2
        idx = syn @ self._powers
        corrected = blocks ^ self._leader_bits[idx]
        return BitString.from_array(corrected.reshape(-1))


@lru_cache(maxsize=None)
def extended_hamming_8_4() -> LinearCode:
    """[8,4] extended Hamming code, distance 4; corrects one error per block."""
    h = np.array([
        [0, 0, 0, 1, 1, 1, 1, 0],
        [0, 1, 1, 0, 0, 1, 1, 0],
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 1, 1, 1, 1, 1, 1],
    ], dtype=np.uint8)
    return LinearCode(h, distance=4)


@lru_cache(maxsize=None)
def repetition_2_1() -> LinearCode:
    """[2,1] repetition code, distance 2; detects but cannot correct errors."""
    return LinearCode(np.array([[1, 1]], dtype=np.uint8), distance=2)
