import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from annihilation.bitlattice import bit_value, delta_table, dot_value, psi_value
from annihilation.exactalg import make_symbols
from annihilation.operators import DenseOperator, Params, build_B, build_M_specialized, two_symbols
from annihilation.transform import (fwht, hadamard_column, htilde_apply, htilde_conjugate,
                                    verify_B_transform)

# 2^{3/2} Htilde_3 as displayed for three sites
HTILDE3_SCALED = [
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
]


def test_fwht_examples():
    assert fwht([1, 0]) == [1, 1]
    assert fwht([1, 1]) == [2, 0]
    assert fwht([1] + [0] * 7) == [1] * 8


def test_rearranged_hadamard_matches_display():
    cols = [htilde_apply([int(i == j) for i in range(8)]) for j in range(8)]
    assert DenseOperator(cols, 8).rows() == HTILDE3_SCALED
    m = DenseOperator.from_rows(HTILDE3_SCALED)
    assert m == m.transpose()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10).flatmap(
    lambda L: st.lists(st.integers(-50, 50), min_size=1 << L, max_size=1 << L)))
def test_fwht_twice_scales(v):
    assert fwht(fwht(v)) == [len(v) * x for x in v]


@pytest.mark.parametrize("L", range(1, 7))
def test_character_property(L):
    n = 1 << L
    for b in range(n):
        w = hadamard_column(b, L)
        for c in range(n):
            permuted = [w[i ^ c] for i in range(n)]
            sign = -1 if dot_value(b, c) else 1
            assert permuted == [sign * x for x in w]


def projector(L, j):
    """P_{L,j} as a dense integer matrix (column b: +1 at b, -1 at psi_j b when b_j = 1)."""
    beta = [0] * L
    beta[j - 1] = 1
    return build_B(Params(L, {}, tuple(beta)))


@pytest.mark.parametrize("L", range(1, 6))
def test_projector_action_on_rearranged_columns(L):
    table = delta_table(L)
    for j in range(1, L + 1):
        p = projector(L, j)
        k = L - j + 1
        for b in range(1 << L):
            w = hadamard_column(table[b], L)
            image = p.matvec(w)
            if bit_value(b, k, L):
                assert image == w
            else:
                other = hadamard_column(table[psi_value(b, k, L)], L)
                assert image == [-x for x in other]


def test_conjugate_identity():
    eye = DenseOperator.identity(8)
    assert htilde_conjugate(eye) == eye


def test_B_transform_three_sites_display():
    be, ga, de = make_symbols("be", "ga", "de")
    sym = ("be", "ga", "de")
    lhs = htilde_conjugate(build_B(Params(3, {}, (be, ga, de), sym)))
    assert lhs == build_B(Params(3, {}, (de, ga, be), sym)).transpose()
    rows = lhs.rows()
    assert rows[1][0] == -be and rows[1][1] == be
    assert rows[3][3] == be + ga


@pytest.mark.parametrize("L", range(1, 6))
def test_B_transform_symbolic(L):
    assert verify_B_transform(L, make_symbols(*[f"b{j}" for j in range(1, L + 1)]))


@pytest.mark.parametrize("L", [6, 7, 8])
def test_B_transform_numeric(L):
    rng = random.Random(L)
    assert verify_B_transform(L, [Fraction(rng.randint(1, 999), rng.randint(1, 999)) for _ in range(L)])


def test_conjugated_M2_lower_triangular():
    a, b = two_symbols()
    c = htilde_conjugate(build_M_specialized(2, a, b))
    assert c.is_lower_triangular()
    assert c.diagonal() == [0 * a, -1 - 2 * a, -2 * a - b, -b - 1]


@pytest.mark.parametrize("L", range(1, 9))
def test_conjugated_M_lower_triangular_numeric(L):
    rng = random.Random(50 + L)
    a, b = Fraction(rng.randint(1, 999), rng.randint(1, 999)), Fraction(rng.randint(1, 999), rng.randint(1, 999))
    assert htilde_conjugate(build_M_specialized(L, a, b)).is_lower_triangular()
