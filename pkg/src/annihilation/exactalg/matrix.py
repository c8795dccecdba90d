"""Exact dense linear algebra on row-lists: determinants, rank, characteristic polynomials."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List, Sequence

from .poly import Poly, format_rational

Rows = Sequence[Sequence]


def _square(m: Rows) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError("matrix is not square")
    return n


def _is_rational(m: Rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for row in m for x in row)


def bareiss_det(m: Rows):
    """Determinant by fraction-free (Bareiss) elimination.

    Rational matrices are scaled row-wise to integers first; polynomial
    matrices use exact polynomial division at every step.
    """
    n = _square(m)
    if n == 0:
        return Fraction(1)
    if _is_rational(m):
        scale = Fraction(1)
        a: List[list] = []
        for row in m:
            l = 1
            for x in row:
                d = Fraction(x).denominator
                l = l * d // math.gcd(l, d)
            scale *= l
            a.append([int(Fraction(x) * l) for x in row])
        return Fraction(_bareiss(a, lambda p, q: p // q)) / scale
    a = [list(row) for row in m]

    def exact(p, q):
        if isinstance(p, Poly):
            r = p.divide_exact(q)
            if r is None:
                raise ArithmeticError("Bareiss step not exact")
            return r
        return p / q

    return _bareiss(a, exact)


def _bareiss(a: List[list], divide):
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = divide(ri[j] * akk - aik * rk[j], prev)
        prev = akk
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def rank(m: Rows) -> int:
    """Rank of a rational matrix by Gaussian elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in m]
    if not a:
        return 0
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        pr = a[r]
        inv = 1 / pr[c]
        for i in range(r + 1, rows):
            f = a[i][c]
            if f:
                f *= inv
                ai = a[i]
                for j in range(c, cols):
                    if pr[j]:
                        ai[j] -= f * pr[j]
        r += 1
        if r == rows:
            break
    return r


class UniPoly:
    """Dense univariate polynomial in ``x``; coefficients ascending, any exact ring."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @classmethod
    def x_plus(cls, c) -> "UniPoly":
        return cls([c, 1])

    @classmethod
    def from_roots(cls, roots) -> "UniPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "UniPoly") -> "UniPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + [0] * (n - len(self.coeffs))
        b = other.coeffs + [0] * (n - len(other.coeffs))
        return UniPoly([x + y for x, y in zip(a, b)])

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        p = UniPoly([1])
        for _ in range(n):
            p = p * self
        return p

    def __eq__(self, other) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divide_root(self, r):
        """Synthetic division by ``x - r``: returns ``(quotient, remainder)``."""
        if not self.coeffs:
            return UniPoly(), 0
        out = []
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * r + c
            out.append(acc)
        rem = out.pop()
        return UniPoly(list(reversed(out))), rem

    def root_multiplicity(self, r) -> int:
        k = 0
        p = self
        while p.coeffs:
            q, rem = p.divide_root(r)
            if rem != 0:
                break
            k += 1
            p = q
        return k

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            cs = format_rational(c) if isinstance(c, (int, Fraction)) else f"({c})"
            if mono and cs == "1":
                parts.append(mono)
            elif mono:
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(cs)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UniPoly({self})"


def interpolate(nodes: Sequence[int], values: Sequence) -> UniPoly:
    """Newton divided-difference interpolant through ``(nodes[i], values[i])``."""
    xs = [Fraction(x) for x in nodes]
    dd = [Fraction(v) for v in values]
    n = len(xs)
    coef = [dd[0]]
    for k in range(1, n):
        dd = [(dd[i + 1] - dd[i]) / (xs[i + k] - xs[i]) for i in range(n - k)]
        coef.append(dd[0])
    p = UniPoly([coef[-1]])
    for k in range(n - 2, -1, -1):
        p = p * UniPoly([-xs[k], 1]) + UniPoly([coef[k]])
    return p


def char_matrix_at(m: Rows, x) -> List[list]:
    n = len(m)
    return [[(x if i == j else 0) - m[i][j] for j in range(n)] for i in range(n)]


def interpolate_charpoly(m: Rows) -> UniPoly:
    """``det(xI - m)`` for a rational matrix, by Bareiss at ``x = 0..n`` and interpolation."""
    n = _square(m)
    if not _is_rational(m):
        raise TypeError("interpolate_charpoly needs a rational matrix")
    nodes = list(range(n + 1))
    values = [bareiss_det(char_matrix_at(m, x)) for x in nodes]
    p = interpolate(nodes, values)
    if p.degree() != n or p.leading() != 1:
        raise ArithmeticError("interpolant is not monic of full degree")
    return p
