import math
import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quotarith.core_arith import (
    Factorization,
    carmichael_lambda,
    delta,
    euler_phi,
    factorize,
    is_prime,
    iterated_totient_radical,
    multiplicative_order,
    phi_iterate,
    radical,
)
from quotarith.errors import NotCoprime


def unit_orders(m):
    """Order of every unit mod m: the least divisor e of the unit count with a**e == 1."""
    units = np.array([a for a in range(m) if math.gcd(a, m) == 1], dtype=np.int64)
    if m == 1:
        return np.array([1])
    count = units.size
    orders = np.zeros(count, dtype=np.int64)
    for e in (e for e in range(1, count + 1) if count % e == 0):
        power = np.ones_like(units)
        base, k = units.copy(), e
        while k:
            if k & 1:
                power = power * base % m
            base = base * base % m
            k >>= 1
        orders[(power == 1) & (orders == 0)] = e
    return orders


@pytest.mark.parametrize(
    "n, pairs",
    [(1, []), (57, [(3, 1), (19, 1)]), (1552, [(2, 4), (97, 1)]), (2, [(2, 1)]), (1024, [(2, 10)])],
)
def test_factorize_examples(n, pairs):
    assert factorize(n).pairs == tuple(pairs)


def test_factorize_reconstructs_every_n_below_a_million():
    for n in range(1, 10**6 + 1):
        assert factorize(n).value == n


@pytest.mark.parametrize(
    "n",
    [
        1_000_000_007 * 998_244_353,
        (2**31 - 1) * 2_147_483_629,
        2**61 - 1,
        2**63 - 25,
        3**39,
        999_983**3,
        2**62 * 1 + 0,
        600_851_475_143,
        10**7 + 19,
    ],
)
def test_factorize_large_matches_sympy(n):
    assert dict(factorize(n).pairs) == sympy.factorint(n)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=1, max_value=2**63 - 1))
def test_factorize_random_words(n):
    f = factorize(n)
    assert f.value == n
    assert all(is_prime(p) for p in f.primes)


def test_factorization_rejects_noncanonical():
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        Factorization(((2, 0),))


@pytest.mark.parametrize("n, expected", [(1, False), (97, True), (1827, False), (2, True), (561, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sympy():
    for n in range(1, 20_000):
        assert is_prime(n) == sympy.isprime(n)
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(2**40, 2**63)
        assert is_prime(n) == sympy.isprime(n)
    # strong pseudoprimes to several small bases
    for n in (3_215_031_751, 2_152_302_898_747, 3_474_749_660_383, 341_550_071_728_321):
        assert not is_prime(n)


@pytest.mark.parametrize("n, expected", [(1, 1), (9, 6), (1552, 768)])
def test_euler_phi_examples(n, expected):
    assert euler_phi(factorize(n)) == expected
    assert euler_phi(n) == expected


def test_euler_phi_counts_units():
    for m in range(1, 400):
        assert euler_phi(m) == sum(1 for a in range(m) if math.gcd(a, m) == 1)


@pytest.mark.parametrize("n, expected", [(8, 2), (1, 1), (12, 2), (2, 1), (4, 2), (16, 4), (1552, 96)])
def test_carmichael_lambda_examples(n, expected):
    assert carmichael_lambda(factorize(n)) == expected


def test_carmichael_lambda_is_the_group_exponent():
    for m in range(1, 3001):
        assert carmichael_lambda(m) == int(np.lcm.reduce(unit_orders(m))), m


def test_lambda_divides_phi():
    for m in range(1, 10**5 + 1):
        f = factorize(m)
        assert euler_phi(f) % carmichael_lambda(f) == 0


@pytest.mark.parametrize("n, expected", [(1, 1), (1552, 194), (57, 57), (72, 6)])
def test_radical(n, expected):
    assert radical(n) == expected


@pytest.mark.parametrize("m, expected", [(1, 1), (2, 1), (8, 2), (12, 2), (6, 1)])
def test_delta(m, expected):
    assert delta(m) == expected


@pytest.mark.parametrize("a, m, expected", [(1, 7, 1), (1, 1, 1), (2, 9, 6), (3, 8, 2), (-1, 5, 2)])
def test_multiplicative_order(a, m, expected):
    assert multiplicative_order(a, m) == expected


def test_multiplicative_order_not_coprime():
    with pytest.raises(NotCoprime):
        multiplicative_order(6, 9)


def test_orders_agree_with_vector_oracle():
    for m in (1, 2, 15, 16, 97, 360):
        units = [a for a in range(m) if math.gcd(a, m) == 1]
        assert [multiplicative_order(a, m) for a in units] == unit_orders(m).tolist()


@pytest.mark.parametrize("n, k, expected", [(12, 0, 12), (5, 2, 2), (1, 5, 1), (7, 1, 6), (100, 3, 8)])
def test_phi_iterate(n, k, expected):
    assert phi_iterate(n, k) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (5, 2), (7, 6), (4, 1), (11, 2 * 5)])
def test_iterated_totient_radical_examples(n, expected):
    assert iterated_totient_radical(n) == expected


def test_iterated_totient_radical_is_squarefree_and_coprime():
    for n in range(1, 10**4 + 1):
        F = iterated_totient_radical(n)
        assert math.gcd(n, F) == 1
        assert factorize(F).is_squarefree()
