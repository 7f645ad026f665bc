import math

import pytest
from hypothesis import given, strategies as st

from jesma.arith import (
    ArithError,
    factorize,
    is_perfect_power_of,
    is_prime,
    modpow,
    mult_order,
    radical,
    valuation,
)


def test_modpow_examples():
    assert modpow(5, 0, 7) == 1
    assert modpow(2, 10, 33) == 1
    assert modpow(101, 2, 17) == 1


def test_modpow_rejects_bad_modulus():
    with pytest.raises(ArithError):
        modpow(2, 3, 1)
    with pytest.raises(ArithError):
        modpow(2, 3, -5)


def test_mult_order_examples():
    assert mult_order(1, 97) == 1
    assert mult_order(2, 33) == 10
    assert mult_order(101, 17) == 2


def test_mult_order_rejects_non_units():
    with pytest.raises(ArithError):
        mult_order(6, 33)


def test_valuation_examples():
    assert valuation(2, 20) == (2, 5)
    assert valuation(3, 99) == (2, 11)
    assert valuation(101, 7 * 101**3) == (3, 7)


def test_valuation_errors():
    with pytest.raises(ArithError):
        valuation(2, 0)
    with pytest.raises(ArithError):
        valuation(4, 12)


def test_radical_examples():
    assert radical(1) == 1
    assert radical(2**20) == 2
    assert radical(12) == 6
    with pytest.raises(ArithError):
        radical(0)


def test_factorize_examples():
    assert factorize(99).pairs == ((3, 2), (11, 1))
    assert factorize(101).pairs == ((101, 1),)
    assert factorize(8281).pairs == ((7, 2), (13, 2))
    assert factorize(1).pairs == ()


def test_factorize_large_semiprime():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q).pairs == ((p, 1), (q, 1))


def test_perfect_power_examples():
    assert is_perfect_power_of(8281, 91) == 2
    assert is_perfect_power_of(91, 91) == 1
    assert is_perfect_power_of(90, 91) is None
    assert is_perfect_power_of(1, 7) is None
    with pytest.raises(ArithError):
        is_perfect_power_of(0, 2)
    with pytest.raises(ArithError):
        is_perfect_power_of(9, 1)


def test_is_prime_small():
    primes_below_100 = {p for p in range(100) if is_prime(p)}
    sieve = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97}
    assert primes_below_100 == sieve


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_reconstructs(n):
    f = factorize(n)
    prod = 1
    prev = 0
    for p, e in f.pairs:
        assert p > prev and e >= 1 and is_prime(p)
        prev = p
        prod *= p**e
    assert prod == n
    assert n % f.radical() == 0


@given(st.integers(min_value=1, max_value=10**9), st.sampled_from([2, 3, 5, 7, 11, 101]))
def test_valuation_consistency(n, p):
    e, cofactor = valuation(p, n)
    assert p**e * cofactor == n
    assert cofactor % p != 0


@given(st.integers(min_value=2, max_value=400), st.integers(min_value=2, max_value=400))
def test_mult_order_is_least(a, m):
    if math.gcd(a, m) != 1:
        return
    d = mult_order(a, m)
    assert pow(a, d, m) == 1
    assert all(pow(a, q, m) != 1 for q in range(1, d))


@given(st.integers(min_value=2, max_value=300), st.integers(min_value=1, max_value=25))
def test_perfect_power_round_trip(base, z):
    assert is_perfect_power_of(base**z, base) == z
