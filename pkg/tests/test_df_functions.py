import math

import pytest

from quotarith.core_arith import carmichael_lambda, delta, euler_phi, factorize, radical
from quotarith.df_functions import big_d, d_of, df_record, f_of, predicted_df, predictor_threshold
from quotarith.errors import RangeTooSmall


@pytest.mark.parametrize("m, expected", [(1, 1), (8, 2), (57, 3), (1552, 16), (2**10, 2)])
def test_d_of(m, expected):
    assert d_of(m) == expected


@pytest.mark.parametrize("m, expected", [(8, 1), (1552, 8), (1, 1), (2**10, 1)])
def test_f_of(m, expected):
    assert f_of(m) == expected


@pytest.mark.parametrize("p", [2, 3, 5, 97, 1_000_003, 2**61 - 1])
def test_f_of_prime_is_one(p):
    assert f_of(p) == 1 == d_of(p)


@pytest.mark.parametrize("m, expected", [(6, 2), (1, 1), (57, 3)])
def test_big_d(m, expected):
    assert big_d(m) == expected


@pytest.mark.parametrize(
    "m, d, f, ratio", [(57, 3, 3, 1), (1552, 16, 8, 2), (1, 1, 1, 1), (8, 2, 1, 2), (24, 4, 1, 4)]
)
def test_df_record(m, d, f, ratio):
    r = df_record(m)
    assert (r.d, r.f, r.ratio) == (d, f, ratio)
    assert r.pair == (f, d)


def test_identities_scalar_path():
    for m in range(1, 30_001):
        fac = factorize(m)
        phi, lam, rad = euler_phi(fac), carmichael_lambda(fac), radical(fac)
        d, f = d_of(m), f_of(m)
        assert d % f == 0 and m % d == 0
        assert d // f == math.gcd(m // f, phi // lam)
        assert math.gcd(m, phi // lam * f) == d
        assert delta(m) * lam * euler_phi(rad) % phi == 0
        assert d == math.gcd(m, delta(m) * euler_phi(rad))
        if fac.is_squarefree():
            assert d == f == big_d(m)


def test_predictor_threshold():
    y = math.log(math.log(1e100))
    assert predictor_threshold(1e100) == pytest.approx(y / math.log(y))
    assert predictor_threshold(1e100) == pytest.approx(3.2116, abs=1e-4)
    assert predictor_threshold(1e100, relaxed=True) == pytest.approx(5.4392, abs=1e-4)


@pytest.mark.parametrize(
    "m, relaxed, expected",
    [(2**4 * 97, False, 16), (15, False, 3), (35, False, 1), (15, True, 15), (2**3 * 3**2 * 5, False, 72)],
)
def test_predicted_df(m, relaxed, expected):
    assert predicted_df(m, 1e100, relaxed) == expected


def test_predicted_df_range_too_small():
    with pytest.raises(RangeTooSmall):
        predicted_df(10, 10**5)
    with pytest.raises(RangeTooSmall):
        predicted_df(2, 2)
    assert predicted_df(12, 10**7) == 4
