"""Transfer matrices ``T_{L,L+1}`` intertwining ``M_{L+1} T = T M_L``.

Two recursions are offered.  ``"printed"`` assembles the blocks exactly as
published, including the ``alpha^{-1}`` terms.  It fails the intertwining
identity from ``L = 2`` on; :func:`verify_tma` reports where.  ``"derived"``
keeps the published ``T_2`` blocks and replaces the ``T_1`` blocks by the
unique constant-coefficient solution found by solving the intertwining
equations at ``L = 2``::

    T_1' = [[2 T_1 - T_2 S,  T_2 + T_1 S],
            [T_2,            T_1 - T_2 S]]      S = sigma (x) 1_{L-2}
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactalg import FactoredRational, LinearForm, Poly
from .operators import DenseOperator, block_assemble, build_M_specialized, sigma_kron_identity, scalar_str
from .spectrum import Report
from .steadystate import steady_state
from .operators import specialized_params

RECURSIONS = ("printed", "derived")


def _ring(alpha, beta):
    symbols = alpha.symbols if isinstance(alpha, Poly) else (beta.symbols if isinstance(beta, Poly) else ())
    if symbols:
        return symbols, Poly.constant(symbols, 1), Poly(symbols)
    return (), Fraction(1), Fraction(0)


def initial_transfer(alpha, beta) -> DenseOperator:
    """The 4 x 2 matrix ``T_{1,2}``."""
    a, b = alpha, beta
    rows = [
        [1 + b + a * b, a + b + a * b],
        [a, 1 + 0 * a],
        [a + a * b, a * b],
        [0 * a, a],
    ]
    return DenseOperator.from_rows(rows)


def _split(t: DenseOperator):
    h = t.nrows // 2
    top = DenseOperator([col[:h] for col in t.cols], h)
    bottom = DenseOperator([col[h:] for col in t.cols], h)
    return top, bottom


def _vstack(top: DenseOperator, bottom: DenseOperator) -> DenseOperator:
    return DenseOperator([c1 + c2 for c1, c2 in zip(top.cols, bottom.cols)], top.nrows + bottom.nrows)


def build_T(L: int, alpha, beta, recursion: str = "printed") -> DenseOperator:
    """``T_{L,L+1}`` (shape ``2^{L+1} x 2^L``) by iterating the chosen block recursion from ``T_{1,2}``."""
    if L < 1:
        raise ValueError("L must be positive")
    if recursion not in RECURSIONS:
        raise ValueError(f"unknown recursion {recursion!r}; choose from {RECURSIONS}")
    symbols, one, zero = _ring(alpha, beta)
    if recursion == "printed":
        if symbols:
            a_form = LinearForm.from_poly(alpha)
            inv_alpha = FactoredRational(symbols, 1).divide_form(a_form)
        else:
            if alpha == 0:
                raise ZeroDivisionError("the printed recursion needs alpha != 0")
            inv_alpha = 1 / Fraction(alpha)
    t = initial_transfer(alpha, beta)
    if recursion == "printed" and symbols:
        t = t.map(lambda x: FactoredRational.from_scalar(symbols, x))
        one = FactoredRational(symbols, 1)
        zero = FactoredRational(symbols, 0)
    for size in range(2, L + 1):
        t1, t2 = _split(t)
        s = sigma_kron_identity(size, one, zero)
        h = t1.nrows
        if recursion == "printed":
            new1 = block_assemble(
                t1 + t2.scale(inv_alpha), t2.scale(2) + t2.scale(inv_alpha),
                s @ t2, t2.scale(inv_alpha),
            )
        else:
            new1 = block_assemble(
                t1.scale(2) - t2 @ s, t2 + t1 @ s,
                t2, t1 - t2 @ s,
            )
        new2 = block_assemble(t2.scale(2), t2 @ s, DenseOperator.zeros(h, h, zero), t2)
        t = _vstack(new1, new2)
    return t


def _entry(x) -> str:
    return scalar_str(x)


def verify_tma(L: int, alpha, beta, recursion: str = "printed", t: Optional[DenseOperator] = None) -> Report:
    """Exact check of ``M_{L+1} T = T M_L`` and ``M_{L+1} T != 0``."""
    t = t if t is not None else build_T(L, alpha, beta, recursion)
    lhs = build_M_specialized(L + 1, alpha, beta) @ t
    rhs = t @ build_M_specialized(L, alpha, beta)
    report = Report(f"tma[{recursion}]", L, True)
    diff = lhs.first_difference(rhs)
    if diff is not None:
        i, j, x, y = diff
        mismatches = sum(1 for c1, c2 in zip(lhs.cols, rhs.cols) for u, v in zip(c1, c2) if u != v)
        report.passed = False
        report.details.update({"first_row": i, "first_col": j, "lhs": _entry(x), "rhs": _entry(y),
                               "mismatched_entries": mismatches, "total_entries": lhs.nrows * lhs.ncols})
        report.failure = (f"(M T)[{i},{j}] = {_entry(x)} but (T M)[{i},{j}] = {_entry(y)}; "
                          f"{mismatches} of {lhs.nrows * lhs.ncols} entries differ")
        return report
    if lhs.is_zero():
        report.passed = False
        report.failure = "M_{L+1} T vanishes identically (trivial intertwiner)"
    return report


def propagate_steady(L: int, alpha, beta, recursion: str = "printed") -> Report:
    """Check ``T v_L`` is a nonzero multiple of ``v_{L+1}``; the multiple is ``<1|T v_L>`` since ``v_{L+1}`` sums to one."""
    t = build_T(L, alpha, beta, recursion)
    v = steady_state(specialized_params(L, alpha, beta)).x
    w = steady_state(specialized_params(L + 1, alpha, beta)).x
    tv = t.matvec(v)
    report = Report(f"propagate[{recursion}]", L, True)
    if all(x == 0 for x in tv):
        report.passed = False
        report.failure = "T v_L = 0"
        return report
    scalar = sum(tv[1:], tv[0])
    report.details["scalar"] = _entry(scalar)
    if scalar == 0:
        report.passed = False
        report.failure = "T v_L is nonzero but sums to zero, so it is not proportional to v_{L+1}"
        return report
    for i, (x, y) in enumerate(zip(tv, w)):
        if x != scalar * y:
            report.passed = False
            report.failure = f"(T v_L)[{i}] = {_entry(x)} is not {_entry(scalar)} * v_{{L+1}}[{i}]"
            break
    return report
