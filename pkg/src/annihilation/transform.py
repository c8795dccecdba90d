"""Walsh-Hadamard transforms and the Delta-rearranged conjugation.

All transforms use the integer matrix ``Hhat = [(-1)^{b.c}]``; the
``2^{-L/2}`` normalization of the orthogonal Hadamard matrix is carried as an
explicit power of two so nothing irrational ever appears.  With
``HD = [(-1)^{c . Delta b}]`` the normalized rearranged matrix is
``Htilde = 2^{-L/2} HD``, which is symmetric and an involution.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence

from .bitlattice import delta_table
from .operators import DenseOperator, Params, build_B, build_M_general


def log2_length(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"length {n} is not a power of two")
    return n.bit_length() - 1


def fwht(v: Sequence) -> List:
    """Unnormalized fast Walsh-Hadamard transform ``Hhat v`` (butterflies of adds and subtracts)."""
    log2_length(len(v))
    a = list(v)
    h = 1
    n = len(a)
    while h < n:
        for i in range(0, n, 2 * h):
            for j in range(i, i + h):
                x, y = a[j], a[j + h]
                a[j], a[j + h] = x + y, x - y
        h *= 2
    return a


def htilde_apply(v: Sequence) -> List:
    """``HD v`` where ``HD[c, b] = (-1)^{c . b^Delta}``: scatter by Delta, then transform."""
    L = log2_length(len(v))
    table = delta_table(L)
    u = [None] * len(v)
    for b, x in enumerate(v):
        u[table[b]] = x
    return fwht(u)


def htilde_conjugate(m: DenseOperator) -> DenseOperator:
    """``Htilde m Htilde = 2^{-L} HD m HD`` computed column-wise with the fast transform."""
    if m.nrows != m.ncols:
        raise ValueError("conjugation needs a square operator")
    L = log2_length(m.nrows)
    left = DenseOperator([htilde_apply(col) for col in m.cols], m.nrows)
    # HD is symmetric, so (X HD)^T = HD X^T.
    both = DenseOperator([htilde_apply(row) for row in left.rows()], m.nrows).transpose()
    scale = Fraction(1, 1 << L)
    return both.scale(scale)


def hadamard_column(b: int, L: int) -> List[int]:
    """Column ``w^b`` of ``Hhat``: entries ``(-1)^{b.c}``."""
    return [(-1) ** (bin(b & c).count("1") & 1) for c in range(1 << L)]


def verify_B_transform(L: int, beta: Sequence) -> bool:
    """``Htilde B_L(beta) Htilde == B_L(beta^rev)^T``."""
    symbols = next((x.symbols for x in beta if hasattr(x, "symbols")), ())
    p = Params(L, {}, tuple(beta), symbols)
    rev = Params(L, {}, tuple(reversed(beta)), symbols)
    return htilde_conjugate(build_B(p)) == build_B(rev).transpose()


def conjugated_generator(p: Params) -> DenseOperator:
    return htilde_conjugate(build_M_general(p))
