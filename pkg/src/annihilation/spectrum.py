"""Closed-form spectra, the factored characteristic polynomial, and their verification."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Tuple

from .bitlattice import bit_value, delta_table, dot_value, format_value, weight_value
from .exactalg import LinearForm, Poly, UniPoly, interpolate_charpoly, rank
from .operators import DenseOperator, Params, build_M_general, build_M_specialized, specialized_params
from .transform import htilde_conjugate

CHAR_SYMBOLS = ("x", "a", "b")


@dataclass(frozen=True)
class SpectrumEntry:
    eigenvalue: object  # LinearForm for symbolic parameters, Fraction otherwise
    multiplicity: int
    witness: int  # value of the first configuration b producing it

    def witness_str(self, L: int) -> str:
        return format_value(self.witness, L)


def _canonical(x):
    if isinstance(x, Poly):
        return LinearForm.from_poly(x)
    return Fraction(x)


def walsh_eigenvalue(p: Params, b: int):
    """``lambda_b = sum_c alpha_c (-1)^{b.c}``, summed over the nonzero alpha only."""
    total = Fraction(0)
    for c, a in p.alpha.items():
        total = total - a if dot_value(b, c) else total + a
    return total


def beta_rev_dot(p: Params, b: int):
    """``beta^rev . b = sum_j beta_{L-j+1} b_j``."""
    L = p.L
    total = Fraction(0)
    for j in range(1, L + 1):
        if bit_value(b, j, L):
            total = total + p.beta[L - j]
    return total


def diagonal_eigenvalue(p: Params, b: int):
    """Entry ``b`` of the triangularized diagonal: ``lambda_{b^Delta} - beta^rev . b``."""
    return walsh_eigenvalue(p, delta_table(p.L)[b]) - beta_rev_dot(p, b)


def eigenvalues_closed_form(p: Params) -> List[SpectrumEntry]:
    """Distinct eigenvalues with algebraic multiplicities, ordered by witness."""
    mult: Dict[object, int] = {}
    witness: Dict[object, int] = {}
    for b in range(1 << p.L):
        lam = _canonical(diagonal_eigenvalue(p, b))
        if lam not in mult:
            mult[lam] = 0
            witness[lam] = b
        mult[lam] += 1
    return [SpectrumEntry(lam, mult[lam], witness[lam]) for lam in sorted(mult, key=witness.get)]


def spectrum_multiset(p: Params) -> Counter:
    return Counter({e.eigenvalue: e.multiplicity for e in eigenvalues_closed_form(p)})


# -- factored characteristic polynomials ------------------------------------

def _form(constant=0, x=0, a=0, b=0) -> LinearForm:
    return LinearForm(CHAR_SYMBOLS, constant, {"x": x, "a": a, "b": b})


@dataclass
class FactoredCharPoly:
    """``prod factor^exponent`` with factors linear in ``x``, ``a`` (alpha), ``b`` (beta)."""

    factors: Counter = field(default_factory=Counter)

    def degree(self) -> int:
        return sum(self.factors.values())

    def distinct(self) -> int:
        return len(self.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, FactoredCharPoly) and +self.factors == +other.factors

    def expand(self, alpha, beta) -> UniPoly:
        """Expand in ``x`` after substituting alpha and beta (rationals or polynomials)."""
        p = UniPoly([1])
        for form, e in self.factors.items():
            c = form.constant + form.coefficient("a") * alpha + form.coefficient("b") * beta
            p = p * (UniPoly([c, form.coefficient("x")]) ** e)
        return p

    def roots(self, alpha, beta) -> Counter:
        """Root multiset at a parameter point (each factor is ``x + c``)."""
        out: Counter = Counter()
        for form, e in self.factors.items():
            out[-(form.constant + form.coefficient("a") * alpha + form.coefficient("b") * beta)] += e
        return out

    def __str__(self) -> str:
        parts = []
        for form, e in sorted(self.factors.items(), key=lambda t: str(t[0])):
            parts.append(f"({form})" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"


def _family(L: int, odd: bool, a: int = 0, b: int = 0, shift: int = 0) -> Counter:
    """``A_L(x + shift + 2a*alpha + b*beta)`` (odd=False) or the ``B_L`` analogue."""
    out: Counter = Counter()
    for k in range(L + 1):
        m = 2 * k + 1 if odd else 2 * k
        e = comb(L - 1, m)
        if e:
            out[_form(m + shift, 1, a, b)] += e
    return out


def charpoly_specialized(L: int) -> FactoredCharPoly:
    """``P_L(x) = A_L(x) A_L(x+2a+b) B_L(x+b) B_L(x+2a)``."""
    if L < 1:
        raise ValueError("L must be positive")
    f = _family(L, False) + _family(L, False, a=2, b=1) + _family(L, True, b=1) + _family(L, True, a=2)
    return FactoredCharPoly(f)


def charpoly_by_classification(L: int) -> FactoredCharPoly:
    """The same polynomial, enumerating configurations by weight parity and first bit.

    With ``alpha_0 = -a`` and ``alpha_1 = a`` the eigenvalue of ``b`` is
    ``-a + (-1)^{|b|} a - b_1 * beta - |b_2 ... b_L|``.
    """
    f: Counter = Counter()
    for v in range(1 << L):
        w = weight_value(v)
        first = bit_value(v, 1, L)
        tail = w - first
        a_coeff = 0 if w % 2 == 0 else 2
        # factor is x - eigenvalue
        f[_form(tail, 1, a_coeff, first)] += 1
    return FactoredCharPoly(f)


def charpoly_ratio(L: int) -> FactoredCharPoly:
    """``P_{L+1}/P_L = B_L(x+1) B_L(x+2a+b+1) A_L(x+b+1) A_L(x+2a+1)``."""
    f = (_family(L, True, shift=1) + _family(L, True, a=2, b=1, shift=1)
         + _family(L, False, b=1, shift=1) + _family(L, False, a=2, shift=1))
    return FactoredCharPoly(f)


def ratio_by_difference(L: int) -> Tuple[FactoredCharPoly, Counter]:
    """Multiset quotient ``P_{L+1} / P_L`` and any factors of ``P_L`` missing from ``P_{L+1}``."""
    big, small = charpoly_specialized(L + 1).factors, charpoly_specialized(L).factors
    return FactoredCharPoly(big - small), small - big


# -- verification -----------------------------------------------------------

@dataclass
class Report:
    name: str
    L: int
    passed: bool
    details: Dict[str, object] = field(default_factory=dict)
    failure: Optional[str] = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = f": {self.failure}" if self.failure else ""
        return f"{status} {self.name} L={self.L}{extra}"

    def to_dict(self) -> Dict[str, object]:
        d = {"check": self.name, "L": self.L, "passed": self.passed}
        if self.details:
            d["details"] = self.details
        if self.failure:
            d["failure"] = self.failure
        return d


def verify_spectrum(p: Params, charpoly_oracle: bool = True) -> Report:
    """Triangularity, diagonal against the closed form, and (rational params) the interpolated characteristic polynomial."""
    L = p.L
    m = build_M_general(p)
    c = htilde_conjugate(m)
    report = Report("triangular", L, True)
    for j in range(c.ncols):
        for i in range(j):
            if c[i, j] != 0:
                report.passed = False
                report.failure = f"entry ({format_value(i, L)},{format_value(j, L)}) above diagonal is {c[i, j]}"
                return report
    for b, d in enumerate(c.diagonal()):
        expected = diagonal_eigenvalue(p, b)
        if d != expected:
            report.passed = False
            report.failure = f"diagonal at {format_value(b, L)} is {d}, closed form gives {expected}"
            return report
    diag = Counter(_canonical(x) for x in c.diagonal())
    if diag != spectrum_multiset(p):
        report.passed = False
        report.failure = "diagonal multiset differs from closed-form spectrum"
        return report
    if charpoly_oracle and not p.is_symbolic:
        interp = interpolate_charpoly(m.rows())
        closed = UniPoly.from_roots([diagonal_eigenvalue(p, b) for b in range(1 << L)])
        report.details["charpoly_checked"] = True
        if interp != closed:
            report.passed = False
            report.failure = "interpolated characteristic polynomial differs from closed-form product"
    return report


def verify_charpoly(L: int, alpha: Fraction, beta: Fraction) -> Report:
    """Interpolation oracle on the dense Markov matrix against the expanded factored ``P_L``."""
    report = Report("charpoly", L, True, {"alpha": str(alpha), "beta": str(beta)})
    closed = charpoly_specialized(L)
    if closed != charpoly_by_classification(L):
        report.passed = False
        report.failure = "binomial families disagree with the weight/first-bit classification"
        return report
    if closed.degree() != 1 << L:
        report.passed = False
        report.failure = f"degree {closed.degree()} != 2^{L}"
        return report
    interp = interpolate_charpoly(build_M_specialized(L, alpha, beta).rows())
    if interp != closed.expand(alpha, beta):
        report.passed = False
        report.failure = "interpolated characteristic polynomial differs from P_L"
    return report


def verify_ratio(L: int) -> Report:
    report = Report("ratio", L, True)
    quotient, leftover = ratio_by_difference(L)
    if leftover:
        report.passed = False
        report.failure = f"P_{L} does not divide P_{L + 1}: {dict(leftover)}"
    elif quotient != charpoly_ratio(L):
        report.passed = False
        report.failure = f"quotient {quotient} != closed form {charpoly_ratio(L)}"
    report.details["degree"] = charpoly_ratio(L).degree()
    return report


@dataclass(frozen=True)
class MultiplicityRow:
    eigenvalue: Fraction
    algebraic: int
    geometric: int
    predicted_algebraic: int


def geometric_multiplicities(L: int, alpha: Fraction, beta: Fraction) -> List[MultiplicityRow]:
    """Per distinct eigenvalue: root multiplicity in the interpolated charpoly and ``2^L - rank(M - mu I)``.

    This is a report on the maximal-degeneracy question; nothing is asserted
    about the geometric multiplicities.
    """
    m = build_M_specialized(L, alpha, beta)
    n = m.nrows
    charpoly = interpolate_charpoly(m.rows())
    predicted = charpoly_specialized(L).roots(alpha, beta)
    rows = m.rows()
    out = []
    for mu in sorted(predicted, reverse=True):
        shifted = [[x - (mu if i == j else 0) for j, x in enumerate(r)] for i, r in enumerate(rows)]
        out.append(MultiplicityRow(mu, charpoly.root_multiplicity(mu), n - rank(shifted), predicted[mu]))
    return out
