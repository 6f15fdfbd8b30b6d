"""Packed GF(2) bitstrings and index sets.

Bits are stored LSB-first in a single Python integer: bit ``i`` of the
string is bit ``i`` of ``value``.  Serialization is LSB-first within each
byte, bytes in increasing position order, so ``to_bytes`` / ``from_bytes``
round-trip for any length, including lengths that are not a multiple of 8.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

__all__ = ["BitString", "IndexSet", "index_sets_from_basis"]


@dataclass(frozen=True)
class BitString:
    """Immutable bit vector of fixed length over GF(2)."""

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value does not fit in declared length")

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, length: int) -> "BitString":
        return cls(0, length)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitString":
        value = 0
        n = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            value |= b << n
            n += 1
        return cls(value, n)

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "BitString":
        if len(data) != (length + 7) // 8:
            raise ValueError("byte count does not match length")
        value = int.from_bytes(data, "little")
        if value >> length:
            raise ValueError("padding bits must be zero")
        return cls(value, length)

    @classmethod
    def from_hex(cls, text: str, length: int) -> "BitString":
        return cls.from_bytes(bytes.fromhex(text), length)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "BitString":
        arr = np.asarray(arr, dtype=np.uint8)
        packed = np.packbits(arr, bitorder="little").tobytes()
        return cls(int.from_bytes(packed, "little"), len(arr))

    @classmethod
    def random(cls, length: int, rng: np.random.Generator) -> "BitString":
        nbytes = (length + 7) // 8
        if nbytes == 0:
            return cls(0, 0)
        value = int.from_bytes(rng.bytes(nbytes), "little")
        return cls(value & ((1 << length) - 1), length)

    # -- element access -----------------------------------------------

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.value >> i) & 1

    def __iter__(self) -> Iterator[int]:
        v = self.value
        for _ in range(self.length):
            yield v & 1
            v >>= 1

    # -- string operations --------------------------------------------

    def weight(self) -> int:
        return self.value.bit_count()

    def __xor__(self, other: "BitString") -> "BitString":
        if self.length != other.length:
            raise ValueError("length mismatch in xor")
        return BitString(self.value ^ other.value, self.length)

    def __invert__(self) -> "BitString":
        return BitString(~self.value & ((1 << self.length) - 1), self.length)

    def concat(self, other: "BitString") -> "BitString":
        return BitString(self.value | (other.value << self.length),
                         self.length + other.length)

    def restrict(self, index_set: "IndexSet") -> "BitString":
        if index_set.universe != self.length:
            raise ValueError("index set universe does not match length")
        if not index_set.positions:
            return BitString(0, 0)
        arr = self.to_array()
        return BitString.from_array(arr[list(index_set.positions)])

    def select(self, mask: "BitString", bit: int = 1) -> "BitString":
        """Bits at positions where mask equals bit, in position order.

        Equivalent to restrict() with the index set of those positions,
        but without materializing the index set.
        """
        if mask.length != self.length:
            raise ValueError("mask length mismatch")
        arr = self.to_array()
        return BitString.from_array(arr[mask.to_array() == bit])

    def scatter(self, index_set: "IndexSet") -> "BitString":
        """Inverse of restrict: place bits at the indexed positions of a
        zero string of length ``index_set.universe``."""
        if len(index_set) != self.length:
            raise ValueError("index set size does not match length")
        arr = np.zeros(index_set.universe, dtype=np.uint8)
        arr[list(index_set.positions)] = self.to_array()
        return BitString.from_array(arr)

    # -- serialization ------------------------------------------------

    def to_bytes(self) -> bytes:
        return self.value.to_bytes((self.length + 7) // 8, "little")

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    def to_array(self) -> np.ndarray:
        raw = np.frombuffer(self.to_bytes(), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little", count=self.length)

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


@dataclass(frozen=True)
class IndexSet:
    """Sorted set of distinct zero-based positions within a universe [0, m)."""

    positions: tuple
    universe: int

    def __post_init__(self):
        pos = tuple(self.positions)
        if list(pos) != sorted(set(pos)):
            raise ValueError("positions must be sorted and distinct")
        if pos and (pos[0] < 0 or pos[-1] >= self.universe):
            raise ValueError("position out of range")
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return len(self.positions)

    def __iter__(self):
        return iter(self.positions)

    def complement(self) -> "IndexSet":
        members = set(self.positions)
        rest = tuple(i for i in range(self.universe) if i not in members)
        return IndexSet(rest, self.universe)

    def mask(self) -> BitString:
        value = 0
        for i in self.positions:
            value |= 1 << i
        return BitString(value, self.universe)


def index_sets_from_basis(theta: BitString) -> tuple[IndexSet, IndexSet]:
    """Split positions of a basis string into (zero positions, one positions)."""
    arr = theta.to_array()
    zeros = tuple(int(i) for i in np.flatnonzero(arr == 0))
    ones = tuple(int(i) for i in np.flatnonzero(arr))
    return IndexSet(zeros, theta.length), IndexSet(ones, theta.length)
