"""Generators of the asymmetric annihilation process and its generalization.

Conventions: entry ``(i, j)`` of an operator is the rate from configuration
``j`` to configuration ``i``; rows and columns follow the value order of
:mod:`annihilation.bitlattice`.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Sequence, Tuple, Union

from .bitlattice import BitState, bit_value, psi_value, site_mask
from .exactalg import Poly, make_symbols
from .exactalg.poly import format_rational

DENSE_MAX_L = 12


@dataclass(frozen=True)
class Params:
    """Generalized parameters: ``alpha[c]`` per configuration (sparse) and ``beta[j-1] = beta_j``."""

    L: int
    alpha: Mapping[int, object]
    beta: Tuple[object, ...]
    symbols: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.L < 1:
            raise ValueError(f"L must be positive, got {self.L}")
        alpha = {}
        for key, val in dict(self.alpha).items():
            if isinstance(key, BitState):
                if key.length != self.L:
                    raise ValueError(f"alpha key {key} has length {key.length}, expected {self.L}")
                key = key.value
            if not 0 <= key < (1 << self.L):
                raise ValueError(f"alpha key {key} out of range for L={self.L}")
            if val != 0:
                alpha[key] = val
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", tuple(self.beta))
        if len(self.beta) != self.L:
            raise ValueError(f"beta must have length {self.L}, got {len(self.beta)}")

    @property
    def is_symbolic(self) -> bool:
        return any(isinstance(x, Poly) for x in list(self.alpha.values()) + list(self.beta))

    def alpha_bar(self):
        return sum(self.alpha.values(), Fraction(0))

    def beta_rev(self) -> Tuple[object, ...]:
        return tuple(reversed(self.beta))

    def zero(self):
        return Poly(self.symbols) if self.symbols else Fraction(0)

    def evaluate(self, values: Mapping[str, object]) -> "Params":
        """Numeric parameters obtained by substituting ``values`` for the symbols."""
        ev = lambda x: x.evaluate(values) if isinstance(x, Poly) else Fraction(x)
        return Params(self.L, {k: ev(v) for k, v in self.alpha.items()}, tuple(ev(b) for b in self.beta))


def specialized_params(L: int, alpha, beta) -> Params:
    """Parameters that reduce the general model to the original Markov matrix."""
    symbols = alpha.symbols if isinstance(alpha, Poly) else (beta.symbols if isinstance(beta, Poly) else ())
    return Params(L, {0: -alpha, 1 << (L - 1): alpha}, (1,) * (L - 1) + (beta,), symbols)


def two_symbols() -> Tuple[Poly, Poly]:
    """The symbols ``a`` (for alpha) and ``b`` (for beta) of the two-parameter model."""
    return make_symbols("a", "b")


def general_symbols(L: int) -> Params:
    """Fully symbolic parameters: ``a<bits>`` for each configuration and ``b1..bL``."""
    names = [f"a{format(v, f'0{L}b')}" for v in range(1 << L)] + [f"b{j}" for j in range(1, L + 1)]
    syms = make_symbols(*names)
    n = 1 << L
    return Params(L, {v: syms[v] for v in range(n)}, syms[n:], tuple(names))


# -- dense operators ---------------------------------------------------------

class DenseOperator:
    """Column-major dense matrix of exact scalars (possibly rectangular)."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, cols: List[List], nrows: int | None = None):
        self.cols = cols
        self.ncols = len(cols)
        self.nrows = nrows if nrows is not None else (len(cols[0]) if cols else 0)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, zero=Fraction(0)) -> "DenseOperator":
        return cls([[zero] * nrows for _ in range(ncols)], nrows)

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "DenseOperator":
        return cls([[one if i == j else zero for i in range(n)] for j in range(n)], n)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "DenseOperator":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        return cls([[rows[i][j] for i in range(nrows)] for j in range(ncols)], nrows)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.cols[j][i]

    def rows(self) -> List[List]:
        return [[self.cols[j][i] for j in range(self.ncols)] for i in range(self.nrows)]

    def transpose(self) -> "DenseOperator":
        return DenseOperator([list(r) for r in self.rows()], self.ncols)

    def map(self, f: Callable) -> "DenseOperator":
        return DenseOperator([[f(x) for x in col] for col in self.cols], self.nrows)

    def __add__(self, other: "DenseOperator") -> "DenseOperator":
        self._same_shape(other)
        return DenseOperator([[x + y for x, y in zip(c1, c2)] for c1, c2 in zip(self.cols, other.cols)], self.nrows)

    def __sub__(self, other: "DenseOperator") -> "DenseOperator":
        self._same_shape(other)
        return DenseOperator([[x - y for x, y in zip(c1, c2)] for c1, c2 in zip(self.cols, other.cols)], self.nrows)

    def scale(self, k) -> "DenseOperator":
        return DenseOperator([[x * k for x in col] for col in self.cols], self.nrows)

    def _same_shape(self, other: "DenseOperator") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def matvec(self, v: Sequence) -> List:
        if len(v) != self.ncols:
            raise ValueError(f"vector length {len(v)} != {self.ncols}")
        zero = 0
        if self.cols and self.nrows:
            probe = self.cols[0][0] * v[0]
            zero = probe - probe  # zero of the product's type
        out = [zero] * self.nrows
        for col, x in zip(self.cols, v):
            if x == 0:
                continue
            for i, a in enumerate(col):
                if a != 0:
                    out[i] = out[i] + a * x
        return out

    def __matmul__(self, other: "DenseOperator") -> "DenseOperator":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return DenseOperator([self.matvec(col) for col in other.cols], self.nrows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DenseOperator):
            return NotImplemented
        return self.shape == other.shape and all(
            x == y for c1, c2 in zip(self.cols, other.cols) for x, y in zip(c1, c2))

    def first_difference(self, other: "DenseOperator"):
        """``(i, j, self[i,j], other[i,j])`` for the first differing entry in row-major order, else ``None``."""
        self._same_shape(other)
        for i in range(self.nrows):
            for j in range(self.ncols):
                if self.cols[j][i] != other.cols[j][i]:
                    return i, j, self.cols[j][i], other.cols[j][i]
        return None

    def is_zero(self) -> bool:
        return all(x == 0 for col in self.cols for x in col)

    def column_sums(self) -> List:
        return [sum(col[1:], col[0]) if col else 0 for col in self.cols]

    def diagonal(self) -> List:
        return [self.cols[i][i] for i in range(min(self.nrows, self.ncols))]

    def is_upper_triangular(self) -> bool:
        return all(self.cols[j][i] == 0 for j in range(self.ncols) for i in range(j + 1, self.nrows))

    def is_lower_triangular(self) -> bool:
        return all(self.cols[j][i] == 0 for j in range(self.ncols) for i in range(min(j, self.nrows)))

    def to_csv(self) -> str:
        """``row,col,value`` triplets for nonzero entries, row-major."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "col", "value"])
        for i in range(self.nrows):
            for j in range(self.ncols):
                x = self.cols[j][i]
                if x != 0:
                    w.writerow([i, j, scalar_str(x)])
        return buf.getvalue()


def scalar_str(x) -> str:
    if isinstance(x, (int, Fraction)):
        return format_rational(Fraction(x))
    return str(x)


def _check_dense(L: int) -> None:
    if L > DENSE_MAX_L:
        raise ValueError(f"dense construction is capped at L <= {DENSE_MAX_L}; use apply_M")


def build_A(p: Params) -> DenseOperator:
    """``<b|A|c> = alpha[b xor c]``."""
    _check_dense(p.L)
    n = 1 << p.L
    zero = p.zero()
    return DenseOperator([[p.alpha.get(b ^ c, zero) for b in range(n)] for c in range(n)], n)


def build_B(p: Params) -> DenseOperator:
    """Weighted sum of the projectors ``P_{L,j}``; upper triangular with zero column sums."""
    _check_dense(p.L)
    L = p.L
    n = 1 << L
    zero = p.zero()
    cols = []
    for c in range(n):
        col = [zero] * n
        for j in range(1, L + 1):
            if bit_value(c, j, L):
                bj = p.beta[j - 1]
                col[c] = col[c] + bj
                t = psi_value(c, j, L)
                col[t] = col[t] - bj
        cols.append(col)
    return DenseOperator(cols, n)


def build_M_general(p: Params) -> DenseOperator:
    return build_A(p) - build_B(p)


def transition_rates(L: int, alpha, beta) -> List[List[Tuple[int, object]]]:
    """Outgoing ``(target, rate)`` pairs per configuration, straight from the model rules.

    Site 1 flips at rate alpha (left creation / left annihilation with
    lambda = 1); ``10 -> 01`` and ``11 -> 00`` at sites ``(j, j+1)`` with rate 1;
    a particle on site L leaves at rate beta.
    """
    out = []
    for c in range(1 << L):
        moves = [(c ^ site_mask(1, L), alpha)]
        for j in range(1, L):
            if bit_value(c, j, L):
                moves.append((psi_value(c, j, L), 1))
        if bit_value(c, L, L):
            moves.append((c ^ 1, beta))
        out.append(moves)
    return out


def build_M_specialized(L: int, alpha, beta) -> DenseOperator:
    """The original Markov matrix: off-diagonal rates from the rules, diagonal from zero column sums."""
    _check_dense(L)
    n = 1 << L
    symbols = alpha.symbols if isinstance(alpha, Poly) else (beta.symbols if isinstance(beta, Poly) else ())
    zero = Poly(symbols) if symbols else Fraction(0)
    cols = []
    for c, moves in enumerate(transition_rates(L, alpha, beta)):
        col = [zero] * n
        for t, rate in moves:
            col[t] = col[t] + rate
        col[c] = zero - sum((col[i] for i in range(n) if i != c), zero)
        cols.append(col)
    return DenseOperator(cols, n)


def apply_M(p: Params, v: Sequence) -> List:
    """``M_L(alpha, beta) v`` without building the matrix."""
    L = p.L
    n = 1 << L
    if len(v) != n:
        raise ValueError(f"vector length {len(v)} != 2^{L}")
    zero = p.zero()
    out = [zero] * n
    for d, a in p.alpha.items():
        for i in range(n):
            out[i] = out[i] + a * v[i ^ d]
    for c in range(n):
        x = v[c]
        if x == 0:
            continue
        for j in range(1, L + 1):
            if bit_value(c, j, L):
                w = p.beta[j - 1] * x
                out[c] = out[c] - w
                t = psi_value(c, j, L)
                out[t] = out[t] + w
    return out


def sigma_kron_identity(L: int, one=Fraction(1), zero=Fraction(0)) -> DenseOperator:
    """``sigma (x) 1_{L-2}``: the 2^{L-1} x 2^{L-1} flip of the leading bit."""
    n = 1 << (L - 1)
    half = n >> 1
    return DenseOperator([[one if i == (c ^ half) else zero for i in range(n)] for c in range(n)], n)


def block_assemble(tl: DenseOperator, tr: DenseOperator, bl: DenseOperator, br: DenseOperator) -> DenseOperator:
    """``[[tl, tr], [bl, br]]``."""
    left = [c1 + c2 for c1, c2 in zip(tl.cols, bl.cols)]
    right = [c1 + c2 for c1, c2 in zip(tr.cols, br.cols)]
    return DenseOperator(left + right, tl.nrows + bl.nrows)


def block_recursion(L: int, alpha, beta) -> DenseOperator:
    """Assemble ``M_L`` from ``M_{L-1}`` by the order-one block recursion."""
    if L < 2:
        raise ValueError("block recursion needs L >= 2")
    prev = build_M_specialized(L - 1, alpha, beta)
    n = prev.nrows
    symbols = alpha.symbols if isinstance(alpha, Poly) else ()
    one = Poly.constant(symbols, 1) if symbols else Fraction(1)
    zero = Poly(symbols) if symbols else Fraction(0)
    eye = DenseOperator.identity(n, one, zero)
    s = sigma_kron_identity(L, one, zero)
    return block_assemble(
        prev - s.scale(alpha), eye.scale(alpha) + s,
        eye.scale(alpha), prev - eye - s.scale(alpha),
    )


def check_block_recursion(L: int, alpha, beta) -> bool:
    return block_recursion(L, alpha, beta) == build_M_specialized(L, alpha, beta)
