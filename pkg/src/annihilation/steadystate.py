"""Steady states from the triangular system in the rearranged Hadamard basis.

In that basis the generator is lower triangular, so the eigenvector for the
column-sum eigenvalue ``alpha_bar`` is obtained by forward substitution in
increasing value order, starting from ``y_0 = 1``.  Transforming back with
``2^{-L} HD`` gives the probability vector directly (its entries sum to one).
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Set

import numpy as np

from .bitlattice import bit_value, delta_table, dot_value, format_value, psi_value, weight_value
from .exactalg import FactoredRational, FactorProduct, LinearForm, Poly, lcm_denominators
from .exactalg.factored import _expand
from .operators import Params, specialized_params, transition_rates, two_symbols
from .spectrum import Report, beta_rev_dot
from .transform import fwht, htilde_apply


class ResonanceError(ArithmeticError):
    """A pivot form vanishes, so the triangular solve has no unique solution."""

    def __init__(self, witness: int, L: int, form):
        self.witness = witness
        self.L = L
        self.form = form
        super().__init__(f"pivot {form} vanishes at b={format_value(witness, L)}")


def lambda_star(p: Params, b: int):
    """``2 * sum of alpha_c over c with b.c = 1``."""
    total = Fraction(0)
    for c, a in p.alpha.items():
        if dot_value(b, c):
            total = total + a
    return 2 * total


def pivot(p: Params, b: int):
    """Coefficient of ``y_b`` in its own equation: ``lambda*_{b^Delta} + beta^rev . b``."""
    return lambda_star(p, delta_table(p.L)[b]) + beta_rev_dot(p, b)


def lambda_star_table(p: Params) -> List[Fraction]:
    """All ``lambda*_b = alpha_bar - lambda_b`` at once via the Walsh transform (rational alpha only)."""
    den = 1
    for a in p.alpha.values():
        den = den * Fraction(a).denominator // math.gcd(den, Fraction(a).denominator)
    vec = [0] * (1 << p.L)
    for c, a in p.alpha.items():
        vec[c] = int(a * den)
    walsh = fwht(vec)
    return [Fraction(walsh[0] - w, den) for w in walsh]


def _as_form(x, symbols) -> LinearForm:
    if isinstance(x, Poly):
        return LinearForm.from_poly(x)
    return LinearForm(symbols, x)


@dataclass
class TriangularSolution:
    L: int
    y: List  # indexed by value; Fraction or FactoredRational
    pivots: List  # pivots[0] is unused (the zero equation is void)
    symbols: tuple = ()


def solve_y(p: Params) -> TriangularSolution:
    """Forward substitution for the ``alpha_bar`` eigenvector in the triangular basis."""
    L = p.L
    n = 1 << L
    symbolic = p.is_symbolic
    symbols = p.symbols
    if symbolic and not symbols:
        raise ValueError("symbolic parameters must declare their symbols")
    y: List = [None] * n
    pivots: List = [None] * n
    y[0] = FactoredRational(symbols, 1) if symbolic else Fraction(1)
    if not symbolic:
        table = delta_table(L)
        stars = lambda_star_table(p)
    for b in range(1, n):
        piv = pivot(p, b) if symbolic else stars[table[b]] + beta_rev_dot(p, b)
        rhs = FactoredRational(symbols, 0) if symbolic else Fraction(0)
        for j in range(1, L + 1):
            if bit_value(b, j, L):
                rhs = rhs + p.beta[L - j] * y[psi_value(b, j, L)]
        if symbolic:
            form = _as_form(piv, symbols)
            if form.is_zero():
                raise ResonanceError(b, L, form)
            pivots[b] = form
            y[b] = rhs / form
        else:
            if piv == 0:
                raise ResonanceError(b, L, piv)
            pivots[b] = piv
            y[b] = rhs / piv
    return TriangularSolution(L, y, pivots, symbols)


@dataclass
class SteadyStateVector:
    L: int
    x: List  # probabilities indexed by value
    Z: object  # FactorProduct (symbolic) or int (rational parameters)


def _to_common_denominator(values: Sequence[FactoredRational], symbols) -> tuple:
    """Numerators over the multiset-lcm of the denominators (integer content folded in)."""
    common: Counter = Counter()
    den_int = 1
    for v in values:
        common |= v.denominator
        d = v.denominator_content()
        den_int = den_int * d // math.gcd(den_int, d)
    nums = []
    for v in values:
        if v.is_zero():
            nums.append(Poly(symbols))
            continue
        factor = _expand(common - v.denominator, symbols)
        nums.append(v.numerator * factor * (v.content * den_int))
    return nums, common, den_int


def steady_state(p: Params, solution: Optional[TriangularSolution] = None) -> SteadyStateVector:
    """Normalized ``alpha_bar`` eigenvector ``x = 2^{-L} HD y``."""
    sol = solution or solve_y(p)
    L = p.L
    scale = 1 << L
    if p.is_symbolic:
        symbols = sol.symbols
        nums, common, den_int = _to_common_denominator(sol.y, symbols)
        table = delta_table(L)
        scattered: List = [None] * len(nums)
        for b, num in enumerate(nums):
            scattered[table[b]] = num
        transformed = fwht(scattered)
        x = [FactoredRational(symbols, Fraction(1, den_int * scale), t, common) for t in transformed]
        return SteadyStateVector(L, x, lcm_denominators(x))
    # integer numerators over one common denominator keep the butterfly cheap
    den = 1
    for v in sol.y:
        den = den * v.denominator // math.gcd(den, v.denominator)
    nums = [v.numerator * (den // v.denominator) for v in sol.y]
    x = [Fraction(t, den * scale) for t in htilde_apply(nums)]
    z = 1
    for v in x:
        z = z * v.denominator // math.gcd(z, v.denominator)
    return SteadyStateVector(L, x, z)


# -- partition functions ----------------------------------------------------

def partition_general(p: Params, weights: Optional[Set[int]] = None) -> FactorProduct:
    """``prod_{b != 0} (lambda*_{b^Delta} + beta^rev . b)``, optionally restricted to Hamming weights."""
    symbols = p.symbols
    forms: Counter = Counter()
    content = Fraction(1)
    for b in range(1, 1 << p.L):
        if weights is not None and weight_value(b) not in weights:
            continue
        piv = pivot(p, b)
        if isinstance(piv, Poly):
            forms[LinearForm.from_poly(piv)] += 1
        else:
            content *= piv
    return FactorProduct(symbols, content, forms)


def partition_specialized(L: int) -> FactorProduct:
    """``2^{C(L-1,2)} (1+2a)^{L-1} (1+b)^{L-1} (2a+b)`` over the symbols ``a``, ``b``."""
    if L < 1:
        raise ValueError("L must be positive")
    s = ("a", "b")
    return FactorProduct(s, 2 ** comb(L - 1, 2), {
        LinearForm(s, 1, {"a": 2}): L - 1,
        LinearForm(s, 1, {"b": 1}): L - 1,
        LinearForm(s, 0, {"a": 2, "b": 1}): 1,
    })


def reachable_below(b: int, L: int) -> Set[int]:
    """Nonzero configurations reachable from ``b`` by decreasing psi-moves (including ``b``)."""
    seen = set()
    stack = [b]
    while stack:
        c = stack.pop()
        if c in seen or c == 0:
            continue
        seen.add(c)
        for j in range(1, L + 1):
            if bit_value(c, j, L):
                stack.append(psi_value(c, j, L))
    return seen


def verify_partition(L: int) -> Report:
    """Two-symbol check of the lcm of steady-state denominators against both product formulas."""
    a, b = two_symbols()
    p = specialized_params(L, a, b)
    ss = steady_state(p)
    report = Report("partition", L, True, {"Z": str(ss.Z)})
    closed = partition_specialized(L)
    if ss.Z != closed:
        only_lcm, only_closed = ss.Z.difference(closed)
        report.passed = False
        report.failure = (f"lcm {ss.Z} != {closed}; content {ss.Z.content} vs {closed.content}; "
                          f"extra {dict(only_lcm)}, missing {dict(only_closed)}")
        return report
    sub = partition_general(p, weights={1, 2})
    if sub != closed:
        report.passed = False
        report.failure = f"weight-1,2 sub-product {sub} != {closed}"
    total = sum(ss.x, FactoredRational(p.symbols, 0))
    if total != 1:
        report.passed = False
        report.failure = f"entries sum to {total}"
    return report


def verify_partition_general(L: int) -> Report:
    """Fully symbolic model: lcm of denominators equals the ``2^L - 1`` factor product."""
    from .operators import general_symbols

    p = general_symbols(L)
    sol = solve_y(p)
    ss = steady_state(p, sol)
    closed = partition_general(p)
    report = Report("partition-general", L, ss.Z == closed, {"Z": str(ss.Z)})
    if not report.passed:
        report.failure = f"lcm {ss.Z} != product {closed}"
        return report
    for b in range(1, 1 << L):
        expected = Counter(sol.pivots[c].primitive()[1] for c in reachable_below(b, L))
        expected = +Counter({f: m for f, m in expected.items() if not f.is_constant()})
        if sol.y[b].denominator != expected:
            report.passed = False
            report.failure = f"denominator of y_{format_value(b, L)} is not the reachable-set product"
            break
    return report


def check_eigen_equation(p: Params, x: Sequence) -> bool:
    """``M x == alpha_bar x`` evaluated matrix-free."""
    from .operators import apply_M

    if not p.is_symbolic and all(isinstance(v, (int, Fraction)) for v in x):
        # the identity is homogeneous in x and in the parameters, so clear all denominators
        den = 1
        for v in x:
            den = den * Fraction(v).denominator // math.gcd(den, Fraction(v).denominator)
        x = [int(v * den) for v in x]
        k = 1
        for a in list(p.alpha.values()) + list(p.beta):
            k = k * Fraction(a).denominator // math.gcd(k, Fraction(a).denominator)
        p = Params(p.L, {c: int(a * k) for c, a in p.alpha.items()}, tuple(int(b * k) for b in p.beta))
    ab = p.alpha_bar()
    return all(u == ab * v for u, v in zip(apply_M(p, x), x))


# -- stochastic cross-check ---------------------------------------------------

@dataclass
class SimulationResult:
    L: int
    alpha: float
    beta: float
    events: int
    seed: int
    empirical: np.ndarray
    exact: List[Fraction]
    tv_distance: float
    burn_in: int

    def rows(self):
        for v in range(1 << self.L):
            yield format_value(v, self.L), float(self.empirical[v]), self.exact[v]


def total_variation(p: Sequence[float], q: Sequence[float]) -> float:
    return 0.5 * float(np.abs(np.asarray(p, dtype=float) - np.asarray(q, dtype=float)).sum())


def simulate_ctmc(L: int, alpha, beta, events: int, seed: int = 42, burn_in: float = 0.1,
                  start: int = 0) -> SimulationResult:
    """Gillespie simulation of the original chain; time-weighted occupation after burn-in."""
    if alpha <= 0 or beta <= 0:
        raise ValueError("alpha and beta must be positive")
    if events < 1:
        raise ValueError("events must be at least 1")
    exact_alpha, exact_beta = Fraction(alpha), Fraction(beta)
    moves = transition_rates(L, float(alpha), float(beta))
    n = 1 << L
    targets = [np.array([t for t, _ in m]) for m in moves]
    cum = [np.cumsum([r for _, r in m]) for m in moves]
    totals = [c[-1] for c in cum]

    rng = np.random.default_rng(seed)
    waits = rng.standard_exponential(events)
    picks = rng.random(events)
    skip = int(burn_in * events)
    occupation = np.zeros(n)
    state = start
    for k in range(events):
        dt = waits[k] / totals[state]
        if k >= skip:
            occupation[state] += dt
        i = int(np.searchsorted(cum[state], picks[k] * totals[state], side="right"))
        state = int(targets[state][min(i, len(targets[state]) - 1)])
    empirical = occupation / occupation.sum()
    exact = steady_state(specialized_params(L, exact_alpha, exact_beta)).x
    return SimulationResult(L, float(alpha), float(beta), events, seed, empirical, exact,
                            total_variation(empirical, [float(v) for v in exact]), skip)
