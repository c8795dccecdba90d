"""Verification suites driven by the ``verify`` command.

Each suite runs over a range of lattice sizes and returns :class:`Report`
objects.  Random parameter draws come from a seeded :class:`random.Random`
and are recorded in the report details so a run can be replayed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .bitlattice import delta_table
from .exactalg import make_symbols
from .operators import Params, apply_M, check_block_recursion, specialized_params, two_symbols
from .spectrum import (Report, beta_rev_dot, charpoly_specialized, geometric_multiplicities, verify_charpoly,
                       verify_ratio, verify_spectrum)
from .steadystate import (check_eigen_equation, lambda_star_table, steady_state, verify_partition,
                          verify_partition_general)
from .transfer import propagate_steady, verify_tma
from .transform import verify_B_transform

MAX_NUMERATOR = 1000


class InfeasibleSize(ValueError):
    pass


def random_rational(rng: random.Random, positive: bool = True) -> Fraction:
    q = Fraction(rng.randint(1, MAX_NUMERATOR), rng.randint(1, MAX_NUMERATOR))
    if not positive and rng.random() < 0.5:
        q = -q
    return q


def generic_point(L: int, rng: random.Random) -> Tuple[Fraction, Fraction]:
    """Random positive ``(alpha, beta)`` at which the 2L closed-form eigenvalues are distinct."""
    while True:
        alpha, beta = random_rational(rng), random_rational(rng)
        roots = charpoly_specialized(L).roots(alpha, beta)
        if len(roots) == 2 * L:
            return alpha, beta


def random_general_params(L: int, rng: random.Random, density: float = 1.0) -> Params:
    """Random rational general parameters with nonvanishing pivots."""
    while True:
        alpha = {c: random_rational(rng, positive=False) for c in range(1 << L) if rng.random() < density}
        beta = tuple(random_rational(rng) for _ in range(L))
        p = Params(L, alpha, beta)
        stars, table = lambda_star_table(p), delta_table(L)
        if all(stars[table[b]] + beta_rev_dot(p, b) != 0 for b in range(1, 1 << L)):
            return p


@dataclass
class SuiteSpec:
    name: str
    theorem: str
    run: Callable[..., List[Report]]
    symbolic_max: Optional[int]
    numeric_max: Optional[int]
    min_L: int = 1
    default_lmax: int = 4


def _triangular(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    if symbolic:
        a, b = two_symbols()
        return [verify_spectrum(specialized_params(L, a, b))]
    out = []
    for k in range(samples):
        alpha, beta = generic_point(L, rng)
        r = verify_spectrum(specialized_params(L, alpha, beta), charpoly_oracle=(k == 0 and L <= 6))
        r.details.update({"alpha": str(alpha), "beta": str(beta)})
        out.append(r)
    return out


def _charpoly(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    alpha, beta = generic_point(L, rng)
    return [verify_charpoly(L, alpha, beta)]


def _ratio(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    return [verify_ratio(L)]


def _blockrec(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    if symbolic:
        a, b = two_symbols()
        return [Report("blockrec", L, check_block_recursion(L, a, b), {"mode": "symbolic"})]
    alpha, beta = generic_point(L, rng)
    return [Report("blockrec", L, check_block_recursion(L, alpha, beta),
                   {"alpha": str(alpha), "beta": str(beta)})]


def _btransform(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    if symbolic:
        beta = make_symbols(*[f"b{j}" for j in range(1, L + 1)])
        return [Report("btransform", L, verify_B_transform(L, beta), {"mode": "symbolic"})]
    beta = tuple(random_rational(rng) for _ in range(L))
    return [Report("btransform", L, verify_B_transform(L, beta), {"beta": [str(b) for b in beta]})]


def _partition(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    out = [verify_partition(L)]
    if L <= 3:
        out.append(verify_partition_general(L))
    return out


def _tma(L: int, symbolic: bool, rng: random.Random, samples: int, recursion: str = "printed") -> List[Report]:
    if symbolic:
        a, b = two_symbols()
        details = {"mode": "symbolic"}
    else:
        a, b = generic_point(L + 1, rng)
        details = {"alpha": str(a), "beta": str(b)}
    out = []
    for r in (verify_tma(L, a, b, recursion), propagate_steady(L, a, b, recursion)):
        r.details.update(details)
        out.append(r)
    return out


def _steady(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    out = []
    if symbolic:
        a, b = two_symbols()
        p = specialized_params(L, a, b)
        x = steady_state(p).x
        ok = check_eigen_equation(p, x) and sum(x[1:], x[0]) == 1
        return [Report("steady", L, ok, {"mode": "symbolic"})]
    for k in range(samples):
        # fully dense alpha makes exact entries thousands of digits long beyond L = 6
        density = (1.0 if k % 2 == 0 else 0.3) if L <= 6 else 0.2
        p = random_general_params(L, rng, density=density)
        x = steady_state(p).x
        ok = check_eigen_equation(p, x) and sum(x) == 1
        r = Report("steady", L, ok, {"alpha": {format(c, f"0{L}b"): str(v) for c, v in sorted(p.alpha.items())},
                                      "beta": [str(v) for v in p.beta]})
        if not ok:
            r.failure = "M x != alpha_bar x or entries do not sum to 1"
        out.append(r)
    alpha, beta = generic_point(L, rng)
    p = specialized_params(L, alpha, beta)
    x = steady_state(p).x
    ok = all(v == 0 for v in apply_M(p, x)) and sum(x) == 1 and all(v > 0 for v in x)
    out.append(Report("steady-specialized", L, ok, {"alpha": str(alpha), "beta": str(beta)}))
    return out


def _multiplicity(L: int, symbolic: bool, rng: random.Random, samples: int) -> List[Report]:
    alpha, beta = generic_point(L, rng)
    rows = geometric_multiplicities(L, alpha, beta)
    algebraic_ok = (len(rows) == 2 * L and all(r.algebraic == r.predicted_algebraic for r in rows)
                    and sum(r.algebraic for r in rows) == 1 << L)
    r = Report("multiplicity", L, algebraic_ok, {
        "alpha": str(alpha), "beta": str(beta),
        "entries": [{"eigenvalue": str(r.eigenvalue), "alg_mult": r.algebraic, "geo_mult": r.geometric}
                    for r in rows],
        "all_geometric_one": all(r.geometric == 1 for r in rows),
    })
    if not algebraic_ok:
        r.failure = "algebraic multiplicities differ from the binomial families"
    return [r]


SUITES: Dict[str, SuiteSpec] = {
    "triangular": SuiteSpec("triangular", "triangularization theorem: Htilde M_L Htilde is lower triangular with diagonal lambda_{b^Delta} - beta^rev.b",
                            _triangular, symbolic_max=4, numeric_max=10, default_lmax=5),
    "charpoly": SuiteSpec("charpoly", "characteristic polynomial theorem: P_L = A_L(x) A_L(x+2a+b) B_L(x+b) B_L(x+2a)",
                          _charpoly, symbolic_max=None, numeric_max=7, default_lmax=5),
    "ratio": SuiteSpec("ratio", "ratio identity for P_{L+1}/P_L as a factor multiset", _ratio, symbolic_max=40, numeric_max=40,
                       default_lmax=5),
    "blockrec": SuiteSpec("blockrec", "block decomposition theorem: M_L from sigma (x) 1, the identity and M_{L-1}", _blockrec, symbolic_max=5,
                          numeric_max=10, min_L=2, default_lmax=6),
    "btransform": SuiteSpec("btransform", "B-transform proposition: Htilde B_L(beta) Htilde = B_L^t(beta^rev)", _btransform,
                            symbolic_max=6, numeric_max=10, default_lmax=5),
    "partition": SuiteSpec("partition", "partition function corollary and the general product theorem for Z_L",
                           _partition, symbolic_max=6, numeric_max=6, default_lmax=4),
    "tma": SuiteSpec("tma", "transfer matrix theorem: M_{L+1} T = T M_L and T v_L proportional to v_{L+1}",
                     _tma, symbolic_max=4, numeric_max=8, default_lmax=3),
    "steady": SuiteSpec("steady", "steady state: M x = alpha_bar x solved in the triangular basis, entries summing to 1", _steady,
                        symbolic_max=5, numeric_max=12, default_lmax=6),
    "multiplicity": SuiteSpec("multiplicity", "degeneracy conjecture probe: 2L distinct eigenvalues, geometric multiplicities reported only", _multiplicity,
                              symbolic_max=None, numeric_max=6, default_lmax=4),
}

REPORT_ONLY = {"multiplicity"}


def run_suite(name: str, sizes: Sequence[int], symbolic: bool = False, seed: int = 42,
              samples: int = 5, recursion: str = "printed") -> List[Report]:
    """Run one suite over ``sizes``; ``recursion`` only affects the ``tma`` suite."""
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    spec = SUITES[name]
    cap = spec.symbolic_max if symbolic else spec.numeric_max
    mode = "symbolic" if symbolic else "numeric"
    if cap is None:
        raise InfeasibleSize(f"suite {name} has no {mode} mode")
    for L in sizes:
        if L < spec.min_L or L > cap:
            raise InfeasibleSize(f"suite {name} supports {spec.min_L} <= L <= {cap} in {mode} mode, got L={L}")
    rng = random.Random(seed)
    out: List[Report] = []
    for L in sizes:
        if name == "tma":
            out.extend(_tma(L, symbolic, rng, samples, recursion))
        else:
            out.extend(spec.run(L, symbolic, rng, samples))
    return out
