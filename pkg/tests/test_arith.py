from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from dynshaf.arith import (
    PrimeSet,
    ResidueElement,
    factor_integer,
    is_prime,
    is_s_integer,
    is_s_unit,
    outside_primes,
    primitive_vector,
    reduce_mod_p,
    s_unit_exponents,
    valuation,
)

nonzero_q = st.fractions(max_denominator=10**6).filter(lambda q: q != 0)


@pytest.mark.parametrize("q,p,v", [(12, 2, 2), (Fraction(4, 9), 3, -2), (1, 5, 0)])
def test_valuation_examples(q, p, v):
    assert valuation(q, p) == v


def test_valuation_of_zero():
    with pytest.raises(ValueError):
        valuation(0, 2)


@given(nonzero_q, nonzero_q, st.sampled_from([2, 3, 5, 7, 101]))
def test_valuation_is_additive(a, b, p):
    assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


@pytest.mark.parametrize("q,S,expected", [
    (Fraction(8, 9), (2, 3), True),
    (5, (2, 3), False),
    (-1, (), True),
    (0, (2,), False),
    (Fraction(-3, 16), (2, 3), True),
])
def test_is_s_unit_examples(q, S, expected):
    assert is_s_unit(q, PrimeSet(S)) is expected


def test_s_integers_and_exponents():
    S = PrimeSet.of(2, 3)
    assert is_s_integer(Fraction(5, 6), S)
    assert not is_s_integer(Fraction(1, 5), S)
    assert s_unit_exponents(Fraction(-8, 9), S) == (-1, (3, -2))
    assert s_unit_exponents(10, S) is None
    assert outside_primes(2 * 3 * 5 * 49, S) == (5, 7)


def test_primeset_parsing_and_validation():
    assert PrimeSet.parse("3, 2,3").primes == (2, 3)
    assert PrimeSet.parse("").primes == ()
    assert 3 in PrimeSet.of(2, 3) and 5 not in PrimeSet.of(2, 3)
    with pytest.raises(ValueError):
        PrimeSet.of(4)


@pytest.mark.parametrize("n", [1, 2, 12, -7, 2**61 - 1, 600851475143, 10**18 + 9,
                               (2**31 - 1) * (2**61 - 1), 3**40, 1000003 * 999983 * 17])
def test_factor_matches_sympy(n):
    expected = tuple(sorted(sympy.factorint(abs(n)).items()))
    assert factor_integer(n) == expected


@given(st.integers(min_value=1, max_value=10**14))
def test_factor_product_and_primality(n):
    fs = factor_integer(n)
    prod = 1
    for p, e in fs:
        assert is_prime(p)
        prod *= p**e
    assert prod == n


@given(st.integers(min_value=-10, max_value=10**30))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == bool(sympy.isprime(n))


def test_is_prime_strong_pseudoprimes_and_large():
    # strong pseudoprime to the first several prime bases
    assert not is_prime(3825123056546413051)
    assert is_prime(2**89 - 1)
    assert not is_prime((2**89 - 1) * (2**61 - 1))


def test_factor_zero():
    with pytest.raises(ValueError):
        factor_integer(0)


@pytest.mark.parametrize("q,p,r", [(Fraction(3, 5), 2, 1), (4, 2, 0), (Fraction(2, 3), 5, 4)])
def test_reduce_mod_p_examples(q, p, r):
    assert reduce_mod_p(q, p).value == r


def test_reduce_mod_p_not_integral():
    with pytest.raises(ValueError):
        reduce_mod_p(Fraction(1, 2), 2)


@given(nonzero_q, nonzero_q, st.sampled_from([3, 5, 7, 11, 13]))
def test_reduction_is_a_ring_map(a, b, p):
    if a.denominator % p == 0 or b.denominator % p == 0:
        return
    ra, rb = reduce_mod_p(a, p), reduce_mod_p(b, p)
    assert reduce_mod_p(a + b, p) == ra + rb
    assert reduce_mod_p(a * b, p) == ra * rb
    if ra.value:
        assert (ra * ra.inverse()).value == 1


def test_residue_mixing_primes():
    with pytest.raises(ValueError):
        ResidueElement(1, 3) + ResidueElement(1, 5)


@given(st.lists(st.fractions(max_denominator=50), min_size=2, max_size=5).filter(any),
       nonzero_q)
def test_primitive_vector_is_projective(v, c):
    p = primitive_vector(v)
    assert primitive_vector([c * a for a in v]) == p
    assert sympy.gcd_list([sympy.Integer(a) for a in p]) == 1
    assert next(a for a in p if a) > 0
