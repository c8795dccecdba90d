import random
from collections import Counter
from fractions import Fraction

import pytest

from annihilation.bitlattice import dot_value
from annihilation.exactalg import FactoredRational, LinearForm, lcm_denominators
from annihilation.operators import Params, apply_M, build_M_specialized, general_symbols, specialized_params, two_symbols
from annihilation.spectrum import walsh_eigenvalue
from annihilation.steadystate import (ResonanceError, check_eigen_equation, lambda_star, partition_general,
                                      partition_specialized, reachable_below, simulate_ctmc, solve_y,
                                      steady_state, total_variation, verify_partition,
                                      verify_partition_general)
from annihilation.transform import fwht, htilde_apply

AB = ("a", "b")


def ab(constant=0, a=0, b=0):
    return LinearForm(AB, constant, {"a": a, "b": b})


def rand_q(rng, positive=False):
    q = Fraction(rng.randint(1, 1000), rng.randint(1, 1000))
    return q if positive or rng.random() < 0.5 else -q


def random_params(L, rng, density=1.0):
    alpha = {c: rand_q(rng) for c in range(1 << L) if rng.random() < density}
    return Params(L, alpha, tuple(rand_q(rng, True) for _ in range(L)))


def test_y_one_site():
    a, b = two_symbols()
    y = solve_y(specialized_params(1, a, b)).y
    assert y[1] == FactoredRational(AB, 1, b, {ab(0, 2, 1): 1})


def test_y_two_sites():
    a, b = two_symbols()
    y = solve_y(specialized_params(2, a, b)).y
    assert y[1] == FactoredRational(AB, 1, None, {ab(1, 2): 1})
    assert y[2] == FactoredRational(AB, 1, b, {ab(0, 2, 1): 1, ab(1, 2): 1})
    num = ((2 * a + b) * (2 * a + 1) + 1) * b
    assert y[3] == FactoredRational(AB, 1, num, {ab(1, 0, 1): 1, ab(0, 2, 1): 1, ab(1, 2): 1})
    assert str(lcm_denominators(y)) == "(1+2a)*(1+b)*(2a+b)"


def test_steady_state_one_site():
    a, b = two_symbols()
    x = steady_state(specialized_params(1, a, b)).x
    assert x[0] == FactoredRational(AB, 1, a + b, {ab(0, 2, 1): 1})
    assert x[1] == FactoredRational(AB, 1, a, {ab(0, 2, 1): 1})


def test_steady_state_kernel_two_sites():
    a, b = Fraction(1, 2), Fraction(1)
    x = steady_state(specialized_params(2, a, b)).x
    assert all(v == 0 for v in build_M_specialized(2, a, b).matvec(x))
    assert x == [Fraction(19, 32), Fraction(5, 32), Fraction(7, 32), Fraction(1, 32)]


def test_steady_state_positive_four_sites():
    x = steady_state(specialized_params(4, Fraction(1, 3), Fraction(2, 7))).x
    assert sum(x) == 1
    assert all(v > 0 for v in x)


def test_numeric_and_symbolic_paths_agree():
    a, b = two_symbols()
    point = {"a": Fraction(3, 5), "b": Fraction(7, 4)}
    sym = steady_state(specialized_params(3, a, b)).x
    num = steady_state(specialized_params(3, point["a"], point["b"])).x
    assert [v.evaluate(point) for v in sym] == num


@pytest.mark.parametrize("L", range(1, 6))
def test_lambda_star_two_formulas(L):
    rng = random.Random(L)
    p = random_params(L, rng, density=0.6)
    for b in range(1 << L):
        direct = 2 * sum((a for c, a in p.alpha.items() if dot_value(b, c)), Fraction(0))
        assert lambda_star(p, b) == direct == p.alpha_bar() - walsh_eigenvalue(p, b)


@pytest.mark.parametrize("L", range(1, 7))
def test_general_eigen_equation(L):
    rng = random.Random(10 + L)
    p = random_params(L, rng, density=1.0 if L % 2 else 0.4)
    x = steady_state(p).x
    assert check_eigen_equation(p, x)
    assert sum(x) == 1


@pytest.mark.parametrize("L", [7])
def test_general_eigen_equation_matrix_free(L):
    p = random_params(L, random.Random(L), density=0.2)
    x = steady_state(p).x
    assert check_eigen_equation(p, x) and sum(x) == 1


@pytest.mark.parametrize("L", range(1, 6))
def test_transform_normalization(L):
    rng = random.Random(30 + L)
    y = solve_y(random_params(L, rng)).y
    assert sum(htilde_apply(y)) == (1 << L) * y[0]
    assert fwht(fwht(y)) == [(1 << L) * v for v in y]


def test_resonance_detected():
    # alpha = -beta/2 kills the pivot 2a+b at b = 1 for one site
    with pytest.raises(ResonanceError):
        solve_y(specialized_params(1, Fraction(-1, 2), Fraction(1)))


def test_partition_examples():
    assert str(partition_specialized(1)) == "(2a+b)"
    assert str(partition_specialized(2)) == "(1+2a)*(1+b)*(2a+b)"
    assert str(partition_specialized(4)) == "2^3*(1+2a)^3*(1+b)^3*(2a+b)"
    a, b = two_symbols()
    assert partition_general(specialized_params(1, a, b)) == partition_specialized(1)


def test_partition_general_two_sites_has_three_forms():
    z = partition_general(general_symbols(2))
    assert z.degree() == 3 and z.content == 1


def test_partition_general_three_sites_specialized_multiset():
    a, b = two_symbols()
    z = partition_general(specialized_params(3, a, b))
    assert z.content == 2
    assert z.factors == Counter({ab(0, 2, 1): 1, ab(1, 2): 2, ab(1, 0, 1): 2, ab(2, 2, 1): 1})
    sub = partition_general(specialized_params(3, a, b), weights={1, 2})
    assert sub == partition_specialized(3)


def test_partition_value_at_half_one():
    # the product formula at alpha = 1/2, beta = 1 is 2^{C(L+1,2)}
    for L in range(1, 8):
        assert partition_specialized(L).evaluate({"a": Fraction(1, 2), "b": 1}) == 2 ** (L * (L + 1) // 2)


@pytest.mark.parametrize("L", range(1, 6))
def test_verify_partition(L):
    r = verify_partition(L)
    assert r.passed, r.failure


@pytest.mark.parametrize("L", [1, 2, 3])
def test_verify_partition_general(L):
    r = verify_partition_general(L)
    assert r.passed, r.failure


def test_reachable_below():
    # 11 -> 10 (last particle leaves) -> 01; 11 -> 00 is dropped
    assert reachable_below(0b11, 2) == {0b11, 0b10, 0b01}
    assert reachable_below(0b10, 2) == {0b10, 0b01}


def test_total_variation():
    assert total_variation([1, 0], [0, 1]) == 1
    assert total_variation([0.5, 0.5], [0.5, 0.5]) == 0


def test_simulator_deterministic():
    r1 = simulate_ctmc(2, Fraction(1, 2), 1, 20000, seed=3)
    r2 = simulate_ctmc(2, Fraction(1, 2), 1, 20000, seed=3)
    assert (r1.empirical == r2.empirical).all() and r1.tv_distance == r2.tv_distance


def test_simulator_one_site():
    r = simulate_ctmc(1, 1, 1, 100000, seed=7)
    assert r.exact == [Fraction(2, 3), Fraction(1, 3)]
    assert r.tv_distance < 0.01


def test_simulator_two_sites():
    r = simulate_ctmc(2, Fraction(1, 2), 1, 200000, seed=42)
    assert r.tv_distance < 0.01


def test_simulator_tv_shrinks_with_budget():
    small = simulate_ctmc(4, Fraction(1, 2), 1, 10_000, seed=42)
    large = simulate_ctmc(4, Fraction(1, 2), 1, 1_000_000, seed=42)
    assert large.tv_distance < small.tv_distance / 2


def test_simulator_rejects_bad_input():
    with pytest.raises(ValueError):
        simulate_ctmc(2, 0, 1, 10)
    with pytest.raises(ValueError):
        simulate_ctmc(2, 1, 1, 0)
