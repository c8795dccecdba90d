import pytest
from hypothesis import given, settings, strategies as st

from annihilation.bitlattice import (BitState, bit_value, delta, delta_inv, delta_matrix, delta_table,
                                     delta_inverse_table, dot, dot_value, phi, phi_value, psi, psi_value,
                                     states)


def S(text):
    return BitState.parse(text)


def test_value_order_msb_first():
    b = S("100")
    assert b.value == 4
    assert b.bits == (1, 0, 0)
    assert b[1] == 1 and b[3] == 0
    assert BitState.from_bits([0, 1, 1]) == S("011")
    assert [str(s) for s in states(2)] == ["00", "01", "10", "11"]


def test_validation():
    with pytest.raises(ValueError):
        BitState(8, 3)
    with pytest.raises(ValueError):
        BitState(0, 0)
    with pytest.raises(ValueError):
        BitState.parse("102")
    with pytest.raises(ValueError):
        S("101")[4]
    with pytest.raises(ValueError):
        dot(S("10"), S("101"))


@pytest.mark.parametrize("b, c, expected", [("000", "101", 0), ("011", "011", 0), ("011", "001", 1)])
def test_dot_examples(b, c, expected):
    assert dot(S(b), S(c)) == expected


@pytest.mark.parametrize("j, b, expected", [(1, "101", "011"), (3, "101", "100"), (1, "10", "01")])
def test_psi_examples(j, b, expected):
    assert psi(j, S(b)) == S(expected)


def test_phi_flips_one_site():
    assert phi(2, S("101")) == S("111")


@pytest.mark.parametrize("b, expected", [("000", "000"), ("001", "100"), ("110", "001")])
def test_delta_examples(b, expected):
    assert delta(S(b)) == S(expected)


@pytest.mark.parametrize("b, expected", [("000", "000"), ("100", "001"), ("111", "100")])
def test_delta_inv_examples(b, expected):
    assert delta_inv(S(b)) == S(expected)


def test_delta_table_three_sites():
    # full L=3 table of b -> b^Delta
    expected = ["000", "100", "110", "010", "111", "011", "001", "101"]
    assert [str(delta(s)) for s in states(3)] == expected


def test_delta_definition_by_prefix_parity():
    for L in range(1, 8):
        for b in states(L):
            d = delta(b)
            for j in range(1, L + 1):
                assert d[j] == sum(b.bits[: L - j + 1]) % 2


@pytest.mark.parametrize("L", range(1, 11))
def test_delta_structure(L):
    m = delta_matrix(L)
    assert all(m[i][j] == m[j][i] for i in range(L) for j in range(L))
    table, inv = delta_table(L), delta_inverse_table(L)
    assert sorted(table) == list(range(1 << L))
    assert all(inv[table[v]] == v for v in range(1 << L))


@pytest.mark.parametrize("L", range(1, 11))
def test_psi_conjugates_to_phi(L):
    table = delta_table(L)
    for v in range(1 << L):
        for j in range(1, L + 1):
            assert table[psi_value(v, j, L)] == phi_value(table[v], L - j + 1, L)


@pytest.mark.parametrize("L", range(1, 7))
def test_dot_after_psi(L):
    table = delta_table(L)
    n = 1 << L
    for b in range(n):
        bd = table[b]
        for c in range(n):
            for j in range(1, L + 1):
                assert dot_value(bd, psi_value(c, j, L)) == dot_value(bd, c) ^ bit_value(b, L - j + 1, L)


@pytest.mark.parametrize("L", range(1, 9))
def test_involutions_and_monotone_moves(L):
    for v in range(1 << L):
        for j in range(1, L + 1):
            assert psi_value(psi_value(v, j, L), j, L) == v
            assert phi_value(phi_value(v, j, L), j, L) == v
            assert (psi_value(v, j, L) < v) == bool(bit_value(v, j, L))


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_delta_linear_over_gf2(data):
    L = data.draw(st.integers(1, 16))
    b = data.draw(st.integers(0, (1 << L) - 1))
    c = data.draw(st.integers(0, (1 << L) - 1))
    assert delta(BitState(b ^ c, L)) == delta(BitState(b, L)) ^ delta(BitState(c, L))
    assert delta_inv(delta(BitState(b, L))) == BitState(b, L)
