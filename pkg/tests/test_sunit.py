from fractions import Fraction as F
from itertools import product

import pytest
import sympy

from dynshaf.arith import PrimeSet, is_s_unit
from dynshaf.projective import ProjPoint, standard_frame
from dynshaf.sunit import (
    enumerate_pi,
    hyperplane_arrangement_membership,
    pi_zero,
    solve_unit_equation,
    stable_bound,
    symmetry_closure_check,
)

# frozen after agreeing with the integer-triple oracle below
SUNIT_COUNT = {(2,): 3, (2, 3): 21, (2, 5): 9, (3,): 0}
PI_N2_23 = {"filtered": 124, "unfiltered": 445}


def smooth_numbers(S, limit):
    out = {1}
    for p in S:
        out = {a * p**e for a in out for e in range(limit.bit_length() + 1) if a * p**e <= limit}
    return sorted(out)


def triple_oracle(S, limit):
    """u + v = 1 from coprime positive S-smooth a + b = c, spread over the S_3 orbit."""
    sm = smooth_numbers(S, limit)
    smset = set(sm)
    sols = set()
    for a in sm:
        for b in sm:
            c = a + b
            if c in smset and sympy.gcd(a, b) == 1:
                u, v = F(a, c), F(b, c)
                for x, y in [(u, v), (v, u)]:
                    sols |= {(x, y), (1 / x, -y / x), (-x / y, 1 / y)}
    return sols


@pytest.mark.parametrize("S", [(2,), (2, 3), (2, 5), (3,)])
def test_solutions_match_integer_oracle(S):
    sols = solve_unit_equation(PrimeSet(S), 20)
    assert set(sols) == triple_oracle(S, 10**6)
    assert len(sols) == SUNIT_COUNT[S]


def test_every_solution_verified_by_sympy():
    S = PrimeSet.of(2, 3)
    for u, v in solve_unit_equation(S, 20):
        assert u + v == 1
        for q in (u, v):
            primes = set(sympy.factorint(q.numerator)) | set(sympy.factorint(q.denominator))
            primes.discard(-1)
            assert primes <= {2, 3}


def test_examples():
    assert len(solve_unit_equation(PrimeSet(), 5)) == 0
    for B in (3, 4, 10):
        assert set(solve_unit_equation(PrimeSet.of(2), B)) == {(2, -1), (-1, 2), (F(1, 2), F(1, 2))}
    sols = set(solve_unit_equation(PrimeSet.of(2, 3), 10))
    assert {(4, -3), (9, -8), (F(3, 4), F(1, 4))} <= sols
    assert len(sols) == 21


def test_symmetry_closure():
    assert symmetry_closure_check(solve_unit_equation(PrimeSet.of(2, 3), 20))
    assert symmetry_closure_check([(2, -1), (-1, 2), (F(1, 2), F(1, 2))])
    assert not symmetry_closure_check([(F(2), F(-1))])
    assert symmetry_closure_check([])


def test_stable_bound():
    assert stable_bound(PrimeSet.of(2), 10) <= 3
    assert stable_bound(PrimeSet.of(2, 3), 20) <= 7


def test_json_report():
    js = solve_unit_equation(PrimeSet.of(2), 4).to_json()
    assert js["complete_up_to_bound"] == 4 and js["count"] == 3
    assert ["1/2", "1/2"] in js["solutions"]


def test_pi_zero():
    assert set(pi_zero(PrimeSet.of(2), 3)) == {2, -1, F(1, 2)}
    assert pi_zero(PrimeSet(), 4) == ()
    assert pi_zero(PrimeSet.of(3), 5) == ()
    for t in pi_zero(PrimeSet.of(2, 3), 20):
        assert is_s_unit(t, (2, 3)) and is_s_unit(1 - t, (2, 3))


def test_enumerate_pi_examples():
    pi = enumerate_pi(1, PrimeSet.of(2), 3)
    extra = {ProjPoint((1, 2)), ProjPoint((1, -1)), ProjPoint((F(1), F(1, 2)))}
    assert set(pi.points) == set(standard_frame(1)) | extra
    assert set(enumerate_pi(1, PrimeSet(), 9).points) == set(standard_frame(1))
    # every pair of {2, -1, 1/2} differs by 3, 3/2 or 5/2: nothing survives the filter
    assert set(enumerate_pi(2, PrimeSet.of(2), 3, filtered=True).points) == set(standard_frame(2))
    assert len(enumerate_pi(1, PrimeSet.of(2, 3), 20)) == 24


def test_enumerate_pi_n2_oracle():
    S = PrimeSet.of(2, 3)
    ts = pi_zero(S, 20)
    brute = {(1, a, b) for a, b in product(ts, repeat=2)
             if a != b and is_s_unit(a - b, S)}
    pi = enumerate_pi(2, S, 20, filtered=True)
    assert set(pi.points) == set(standard_frame(2)) | {ProjPoint(x) for x in brute}
    assert len(pi) == PI_N2_23["filtered"]
    assert len(enumerate_pi(2, S, 20)) == PI_N2_23["unfiltered"]


def test_arrangement():
    assert hyperplane_arrangement_membership(ProjPoint((1, 0, 0)))
    assert hyperplane_arrangement_membership(ProjPoint((1, 1, 2)))
    assert not hyperplane_arrangement_membership(ProjPoint((1, 2, 4)))
