from fractions import Fraction

import pytest

from annihilation.exactalg import FactoredRational
from annihilation.operators import two_symbols
from annihilation.transfer import build_T, initial_transfer, propagate_steady, verify_tma


def test_initial_transfer_entries():
    a, b = two_symbols()
    t = build_T(1, a, b)
    assert t.shape == (4, 2)
    assert t[0, 0] == 1 + b + a * b
    assert t[3, 0] == 0
    assert t.rows()[3] == [0 * a, a]


def test_one_step_shape():
    a, b = two_symbols()
    for recursion in ("printed", "derived"):
        assert build_T(2, a, b, recursion).shape == (8, 4)
        assert build_T(3, Fraction(1, 3), Fraction(2, 7), recursion).shape == (16, 8)


def test_printed_recursion_block_values():
    a, b = two_symbols()
    t = build_T(2, a, b, "printed")
    assert all(isinstance(x, FactoredRational) for col in t.cols for x in col)
    # top-right block is (2 + 1/a) T_2 with T_2[0, 0] = a + a b
    assert t[0, 2] == FactoredRational.from_scalar(("a", "b"), 2 * a + 2 * a * b + 1 + b)
    # bottom-right block of T_1 is T_2 / a
    assert t[2, 2] == FactoredRational.from_scalar(("a", "b"), 1 + b)


def test_printed_recursion_needs_nonzero_alpha():
    with pytest.raises(ZeroDivisionError):
        build_T(2, Fraction(0), Fraction(1), "printed")


def test_unknown_recursion():
    with pytest.raises(ValueError):
        build_T(2, Fraction(1), Fraction(1), "other")


@pytest.mark.parametrize("recursion", ["printed", "derived"])
def test_base_case_intertwines(recursion):
    a, b = two_symbols()
    assert verify_tma(1, a, b, recursion).passed
    r = propagate_steady(1, a, b, recursion)
    assert r.passed
    assert r.details["scalar"] == "2*a*b + 2*a + b + 1"


def test_base_case_numeric():
    assert verify_tma(1, Fraction(1, 3), Fraction(2, 7)).passed


def test_perturbation_breaks_intertwining():
    a, b = Fraction(1, 3), Fraction(2, 7)
    t = initial_transfer(a, b)
    t.cols[0][1] += 1
    r = verify_tma(1, a, b, t=t)
    assert not r.passed
    assert "entries differ" in r.failure


def test_printed_recursion_fails_at_two_sites():
    # The printed T_1 blocks do not intertwine M_2 and M_3; the report names the first bad entry.
    a, b = two_symbols()
    r = verify_tma(2, a, b, "printed")
    assert not r.passed
    assert r.details["first_row"] == 0 and r.details["first_col"] == 0
    assert r.details["mismatched_entries"] == 24
    assert r.details["lhs"] == "a^2*b + 2*a^2 - a"
    assert r.details["rhs"] == "a^2*b + 2*a^2 - a*b - a"


@pytest.mark.parametrize("L", [2, 3, 4])
def test_printed_recursion_fails_numerically(L):
    assert not verify_tma(L, Fraction(1, 3), Fraction(2, 7), "printed").passed


@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_derived_recursion_symbolic(L):
    a, b = two_symbols()
    assert verify_tma(L, a, b, "derived").passed
    r = propagate_steady(L, a, b, "derived")
    assert r.passed, r.failure
    # T v_L = 2^{L-1} (1+2a)(1+b) v_{L+1}, the ratio Z_{L+1} / Z_L
    assert r.details["scalar"] == str(2 ** (L - 1) * (1 + 2 * a) * (1 + b))


@pytest.mark.parametrize("L", [5, 6, 7])
def test_derived_recursion_numeric(L):
    a, b = Fraction(1, 3), Fraction(2, 7)
    assert verify_tma(L, a, b, "derived").passed


def test_derived_propagation_special_point():
    r = propagate_steady(3, Fraction(1, 2), Fraction(1), "derived")
    assert r.passed and r.details["scalar"] == "16"
