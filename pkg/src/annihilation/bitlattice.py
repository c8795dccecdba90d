"""Bit-vector configurations of an L-site lattice.

A configuration ``b = b_1 b_2 ... b_L`` is identified with the integer
``(b)_2 = b_L + 2 b_{L-1} + ... + 2^{L-1} b_1``, so ``b_1`` is the most
significant bit.  Every matrix and vector in the package is indexed by this
integer order.

Two layers are offered: :class:`BitState` for readable, validated values, and
plain ``*_value`` helpers working on integers for the inner loops.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence, Tuple


@dataclass(frozen=True, order=True)
class BitState:
    """A length-``length`` bit vector stored by its value ``(b)_2``."""

    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"lattice size must be positive, got {self.length}")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} out of range for L={self.length}")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitState":
        value = 0
        for bit in bits:
            if bit not in (0, 1):
                raise ValueError(f"bits must be 0/1, got {bit!r}")
            value = (value << 1) | bit
        return cls(value, len(bits))

    @classmethod
    def parse(cls, text: str) -> "BitState":
        """Parse a string such as ``"101"`` (``b_1`` first)."""
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @property
    def bits(self) -> Tuple[int, ...]:
        return tuple(bit_value(self.value, j, self.length) for j in range(1, self.length + 1))

    def __getitem__(self, j: int) -> int:
        """Component ``b_j`` with 1-based ``j``."""
        _check_site(j, self.length)
        return bit_value(self.value, j, self.length)

    @property
    def weight(self) -> int:
        return bin(self.value).count("1")

    def __xor__(self, other: "BitState") -> "BitState":
        _check_same_length(self, other)
        return BitState(self.value ^ other.value, self.length)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b")


def _check_site(j: int, L: int) -> None:
    if not 1 <= j <= L:
        raise ValueError(f"site index {j} out of range 1..{L}")


def _check_same_length(b: BitState, c: BitState) -> None:
    if b.length != c.length:
        raise ValueError(f"length mismatch: {b.length} != {c.length}")


# -- integer-level helpers ---------------------------------------------------

def site_mask(j: int, L: int) -> int:
    """Integer mask of site ``j`` (1-based, site 1 is the top bit)."""
    return 1 << (L - j)


def bit_value(value: int, j: int, L: int) -> int:
    return (value >> (L - j)) & 1


def phi_value(value: int, j: int, L: int) -> int:
    return value ^ site_mask(j, L)


def psi_value(value: int, j: int, L: int) -> int:
    """Complement sites ``j`` and ``j+1``; only site ``L`` when ``j == L``."""
    if j == L:
        return value ^ 1
    return value ^ (3 << (L - j - 1))


def dot_value(b: int, c: int) -> int:
    return bin(b & c).count("1") & 1


def weight_value(value: int) -> int:
    return bin(value).count("1")


def bits_of(value: int, L: int) -> Tuple[int, ...]:
    return tuple((value >> (L - j)) & 1 for j in range(1, L + 1))


def format_value(value: int, L: int) -> str:
    return format(value, f"0{L}b")


@lru_cache(maxsize=None)
def delta_matrix(L: int) -> Tuple[Tuple[int, ...], ...]:
    """The L x L binary matrix of the Delta map: row j has ones in columns 1..L-j+1."""
    return tuple(tuple(1 if i <= L - j + 1 else 0 for i in range(1, L + 1)) for j in range(1, L + 1))


def _apply_binary(matrix: Tuple[Tuple[int, ...], ...], value: int, L: int) -> int:
    bits = bits_of(value, L)
    out = 0
    for row in matrix:
        out = (out << 1) | (sum(r & x for r, x in zip(row, bits)) & 1)
    return out


def _invert_binary(matrix: Tuple[Tuple[int, ...], ...]) -> Tuple[Tuple[int, ...], ...]:
    """Gauss-Jordan inversion over GF(2)."""
    n = len(matrix)
    rows = [list(row) + [int(i == k) for k in range(n)] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col]), None)
        if pivot is None:
            raise ValueError("binary matrix is singular")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        for r in range(n):
            if r != col and rows[r][col]:
                rows[r] = [x ^ y for x, y in zip(rows[r], rows[col])]
    return tuple(tuple(row[n:]) for row in rows)


@lru_cache(maxsize=None)
def delta_inverse_matrix(L: int) -> Tuple[Tuple[int, ...], ...]:
    return _invert_binary(delta_matrix(L))


@lru_cache(maxsize=None)
def delta_table(L: int) -> Tuple[int, ...]:
    """``delta_table(L)[v]`` is the value of ``b^Delta`` for ``(b)_2 = v``."""
    m = delta_matrix(L)
    return tuple(_apply_binary(m, v, L) for v in range(1 << L))


@lru_cache(maxsize=None)
def delta_inverse_table(L: int) -> Tuple[int, ...]:
    m = delta_inverse_matrix(L)
    return tuple(_apply_binary(m, v, L) for v in range(1 << L))


# -- BitState-level operations ----------------------------------------------

def dot(b: BitState, c: BitState) -> int:
    """Scalar product over the binary field."""
    _check_same_length(b, c)
    return dot_value(b.value, c.value)


def phi(j: int, b: BitState) -> BitState:
    _check_site(j, b.length)
    return BitState(phi_value(b.value, j, b.length), b.length)


def psi(j: int, b: BitState) -> BitState:
    _check_site(j, b.length)
    return BitState(psi_value(b.value, j, b.length), b.length)


def delta(b: BitState) -> BitState:
    return BitState(delta_table(b.length)[b.value], b.length)


def delta_inv(b: BitState) -> BitState:
    return BitState(delta_inverse_table(b.length)[b.value], b.length)


def states(L: int) -> Iterator[BitState]:
    """All configurations in increasing value order."""
    for v in range(1 << L):
        yield BitState(v, L)
