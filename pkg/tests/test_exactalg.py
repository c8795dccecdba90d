from collections import Counter
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from annihilation.exactalg import (FactoredRational, FactorProduct, LinearForm, Poly, UniPoly, bareiss_det,
                                   format_rational, interpolate, interpolate_charpoly, lcm_denominators,
                                   make_symbols, parse_rational, rank, reduce)

AB = ("a", "b")


def cofactor_det(m):
    """Leibniz expansion, independent of the fraction-free elimination."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = sign
        for i, j in enumerate(perm):
            term = term * m[i][j]
        total = total + term
    return total


def form(constant=0, a=0, b=0):
    return LinearForm(AB, constant, {"a": a, "b": b})


# -- parsing ----------------------------------------------------------------

def test_parse_rational_accepts_exact_literals():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational(" -2 ") == -2
    assert parse_rational("6/4") == Fraction(3, 2)
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-5)) == "-5"


@pytest.mark.parametrize("text, where", [("0.5", "position 1"), ("1e3", "position 1"), ("1/2/3", "position 3"),
                                         ("", "empty"), ("1/", "incomplete")])
def test_parse_rational_rejects_with_position(text, where):
    with pytest.raises(ValueError, match=where):
        parse_rational(text)


def test_parse_rational_zero_denominator():
    with pytest.raises(ValueError):
        parse_rational("1/0")


# -- polynomials ------------------------------------------------------------

def test_poly_render_and_arithmetic():
    a, b = make_symbols("a", "b")
    p = (2 * a + b) * (2 * a + 1) * b
    assert str(p) == "4*a^2*b + 2*a*b^2 + 2*a*b + b^2"
    assert p.evaluate({"a": 1, "b": 2}) == 2 * 4 * 3 * 2 // 2
    assert (p - p).is_zero()
    assert str(-a + 1) == "-a + 1"


def test_divide_linear_and_exact():
    a, b = make_symbols("a", "b")
    p = (2 * a + b) * (1 + b) ** 2
    assert p.divide_linear(2 * a + b) == (1 + b) ** 2
    assert p.divide_linear(1 + 2 * a) is None
    assert p.divide_exact((1 + b) * (2 * a + b)) == 1 + b
    assert p.divide_exact(a) is None


poly_strategy = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-20, max_value=20, max_denominator=7),
    max_size=5,
).map(lambda d: Poly(AB, d))


@settings(max_examples=60, deadline=None)
@given(poly_strategy, poly_strategy, poly_strategy)
def test_poly_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    point = {"a": Fraction(3, 7), "b": Fraction(-2, 5)}
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    if not q.is_zero():
        assert (p * q).divide_exact(q) == p


# -- determinants and interpolation ----------------------------------------

def test_det_examples():
    assert bareiss_det([[Fraction(5, 3)]]) == Fraction(5, 3)
    alpha, beta = 1, 2
    m1 = [[-alpha, alpha + beta], [alpha, -alpha - beta]]
    assert bareiss_det(m1) == 0
    x = 1
    char = [[x - m1[0][0], -m1[0][1]], [-m1[1][0], x - m1[1][1]]]
    # x (x + 2 alpha + beta) at x = 1
    assert bareiss_det(char) == 5 == cofactor_det(char)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_integers(m):
    assert bareiss_det(m) == cofactor_det(m)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=6),
                                min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor_rationals(m):
    assert bareiss_det(m) == cofactor_det(m)


def test_bareiss_symbolic_matches_cofactor():
    a, b = make_symbols("a", "b")
    m = [[-a, a + b, 1], [a, -a - b, b], [2, a * b, -1]]
    assert bareiss_det(m) == cofactor_det(m)


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    assert rank([[0, 0], [0, 0]]) == 0


def test_interpolate_recovers_polynomial():
    p = UniPoly([Fraction(1, 2), -3, 0, 2])
    nodes = list(range(5))
    assert interpolate(nodes, [p(x) for x in nodes]) == p


def test_interpolate_charpoly_examples():
    assert interpolate_charpoly([[1, 0], [0, 1]]) == UniPoly.from_roots([1, 1])
    a, b = Fraction(1, 2), Fraction(1)
    m1 = [[-a, a + b], [a, -a - b]]
    assert interpolate_charpoly(m1) == UniPoly.from_roots([0, -2])
    m2 = [[-a, b, a, 1],
          [0, -a - b, 1, a],
          [a, 0, -a - 1, b],
          [0, a, 0, -a - b - 1]]
    # the diagonal completes column sums of the printed M_2
    assert all(sum(r[j] for r in m2) == 0 for j in range(4))
    assert interpolate_charpoly(m2) == UniPoly.from_roots([0, -2, -2, -2])


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_charpoly_monic_with_det_constant(m):
    n = len(m)
    p = interpolate_charpoly(m)
    assert p.degree() == n and p.leading() == 1
    assert (p.coeffs[0] if p.coeffs else 0) == (-1) ** n * bareiss_det(m)


def test_unipoly_root_tools():
    p = UniPoly.from_roots([Fraction(-2), Fraction(-2), Fraction(3)])
    assert p.root_multiplicity(-2) == 2
    assert p.root_multiplicity(3) == 1
    assert p.root_multiplicity(0) == 0


# -- linear forms and factored rational functions -----------------------------

def test_linear_form_render_and_primitive():
    assert str(form(1, a=2)) == "1+2a"
    assert str(form(0, a=2, b=1)) == "2a+b"
    assert str(form(-1, a=-2)) == "-1-2a"
    c, p = form(Fraction(1, 2), a=1).primitive()
    assert c == Fraction(1, 2) and p == form(1, a=2)
    c, p = form(-2, a=-4).primitive()
    assert c == -2 and p == form(1, a=2)


def test_reduce_examples():
    a, b = make_symbols("a", "b")
    f = FactoredRational(AB, 1, 2 * a + b, {form(0, 2, 1): 1})
    assert reduce(f) == 1
    g = FactoredRational(AB, 1, b * (2 * a + b), {form(1, 2, 0): 1, form(0, 2, 1): 1})
    assert g.numerator == b
    assert g.denominator == Counter({form(1, 2, 0): 1})
    y11 = ((2 * a + b) * (2 * a + 1) + 1) * b
    h = FactoredRational(AB, 1, y11, {form(1, 0, 1): 1, form(0, 2, 1): 1, form(1, 2, 0): 1})
    assert len(h.denominator) == 3 and h.numerator == y11


def test_factored_arithmetic_preserves_value():
    a, b = make_symbols("a", "b")
    p = FactoredRational(AB, 3, a + b, {form(1, 2, 0): 1})
    q = FactoredRational(AB, Fraction(1, 2), b, {form(0, 2, 1): 2})
    point = {"a": Fraction(2, 3), "b": Fraction(5, 7)}
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p - p).is_zero()
    assert (p / form(1, 0, 1)).evaluate(point) == p.evaluate(point) / (1 + point["b"])


@settings(max_examples=40, deadline=None)
@given(poly_strategy, st.lists(st.sampled_from([(1, 2, 0), (1, 0, 1), (0, 2, 1), (2, 2, 1)]), max_size=4))
def test_reduce_idempotent_and_value_preserving(num, dens):
    f = FactoredRational(AB, 1, num, Counter(form(*d) for d in dens))
    r = reduce(f)
    assert reduce(r) == r
    point = {"a": Fraction(3, 11), "b": Fraction(5, 13)}
    value = num.evaluate(point)
    for d in dens:
        value /= form(*d).evaluate(point)
    assert r.evaluate(point) == value
    for g in r.denominator:
        assert r.numerator.divide_linear(g.to_poly()) is None


def test_lcm_examples():
    xs = ("x",)
    xp1 = LinearForm(xs, 1, {"x": 1})
    lcm = lcm_denominators([FactoredRational(xs, 1, None, {xp1: 1}), FactoredRational(xs, 1, None, {xp1: 2})])
    assert lcm == FactorProduct(xs, 1, {xp1: 2})
    a, b = make_symbols("a", "b")
    v1 = [FactoredRational(AB, 1, a + b, {form(0, 2, 1): 1}), FactoredRational(AB, 1, a, {form(0, 2, 1): 1})]
    assert str(lcm_denominators(v1)) == "(2a+b)"


def test_factor_product_render():
    z = FactorProduct(AB, 8, {form(1, 2, 0): 3, form(1, 0, 1): 3, form(0, 2, 1): 1})
    assert str(z) == "2^3*(1+2a)^3*(1+b)^3*(2a+b)"
    assert z.degree() == 7
