import math
import pickle
import random

import pytest
from hypothesis import given, strategies as st

from sternbrocot.rational import (
    INFINITE,
    Factorization,
    Fraction,
    SeedPair,
    cross_determinant,
    factorize,
    make_fraction,
    mediant,
    mod_inverse,
    p_adic_valuation,
    parse_fraction,
)

naturals = st.integers(min_value=0, max_value=10**30)
finite_fractions = st.builds(Fraction, naturals, st.integers(min_value=1, max_value=10**30))


@pytest.mark.parametrize("num, den, expected", [
    (9, 21, (3, 7)),
    (0, 5, (0, 1)),
    (7, 0, (1, 0)),
    (12, 4, (3, 1)),
])
def test_make_fraction_reduces(num, den, expected):
    f = make_fraction(num, den)
    assert (f.num, f.den) == expected


@pytest.mark.parametrize("num, den", [(0, 0), (-1, 2), (1, -2)])
def test_make_fraction_rejects(num, den):
    with pytest.raises(ValueError):
        make_fraction(num, den)


def test_make_fraction_rejects_floats():
    with pytest.raises(TypeError):
        make_fraction(0.5, 1)


@given(naturals, naturals)
def test_constructed_fractions_are_reduced(n, d):
    if n == 0 and d == 0:
        return
    f = Fraction(n, d)
    assert math.gcd(f.num, f.den) == 1
    assert f.num * d == n * f.den


def test_fraction_is_immutable_and_hashable():
    f = Fraction(1, 2)
    with pytest.raises(AttributeError):
        f.num = 3
    assert {Fraction(2, 4): "x"}[Fraction(1, 2)] == "x"
    assert pickle.loads(pickle.dumps(f)) == f


def test_infinity_orders_last():
    inf = Fraction(1, 0)
    assert Fraction(10**40, 1) < inf
    assert not inf < inf
    assert sorted([inf, Fraction(0, 1), Fraction(3, 2)]) == [Fraction(0, 1), Fraction(3, 2), inf]


@pytest.mark.parametrize("text, expected", [("3/7", (3, 7)), ("1/0", (1, 0)), ("6/4", (3, 2))])
def test_parse_fraction(text, expected):
    assert tuple(parse_fraction(text)) == expected


@pytest.mark.parametrize("text", ["3 /7", "3", "-1/2", "1/2/3", "a/b", "", "1.5/2", " 1/2"])
def test_parse_fraction_rejects(text):
    with pytest.raises(ValueError):
        parse_fraction(text)


def test_text_round_trip():
    for f in (Fraction(0, 1), Fraction(1, 0), Fraction(355, 113)):
        assert parse_fraction(str(f)) == f
    assert str(Fraction(1, 0)) == "1/0"


@pytest.mark.parametrize("a, b, expected, g", [
    ((0, 1), (1, 1), (1, 2), 1),
    ((2, 5), (7, 16), (3, 7), 3),
    ((1, 1), (1, 0), (2, 1), 1),
])
def test_mediant(a, b, expected, g):
    m, factor = mediant(Fraction(*a), Fraction(*b))
    assert tuple(m) == expected
    assert factor == g


@given(finite_fractions, finite_fractions)
def test_mediant_lies_strictly_between(a, b):
    if a == b:
        return
    lo, hi = min(a, b), max(a, b)
    m, _ = mediant(lo, hi)
    assert lo < m < hi


@given(finite_fractions, finite_fractions)
def test_reduction_divides_determinant_symmetrically(a, b):
    m, g = mediant(a, b)
    D = cross_determinant(a, b)
    assert g * cross_determinant(a, m) == D
    assert g * cross_determinant(m, b) == D


@pytest.mark.parametrize("a, b, expected", [
    ((0, 1), (1, 1), 1),
    ((1, 3), (1, 2), 1),
    ((2, 5), (5, 11), 3),
    ((1, 1), (0, 1), -1),
])
def test_cross_determinant(a, b, expected):
    assert cross_determinant(Fraction(*a), Fraction(*b)) == expected


def test_seed_pair():
    s = SeedPair.parse("2/5,5/11")
    assert s.det == 3
    assert SeedPair.parse("0/1,inf").det == 1
    assert SeedPair.parse("1/2,1/0") == SeedPair(Fraction(1, 2), Fraction(1, 0))
    for bad in ("1/2,1/2", "1/1,0/1", "1/2", "1/2,3/4,5/6"):
        with pytest.raises(ValueError):
            SeedPair.parse(bad)


@pytest.mark.parametrize("p, n, expected", [(3, 9, 2), (2, 12, 2), (5, 0, INFINITE), (7, 1, 0)])
def test_p_adic_valuation(p, n, expected):
    assert p_adic_valuation(p, n) == expected


def test_p_adic_rejects_composite():
    with pytest.raises(ValueError):
        p_adic_valuation(4, 8)


def test_infinite_sentinel_orders_above_ints():
    assert min(INFINITE, 3) == 3
    assert INFINITE > 10**100
    assert not INFINITE < 0


@pytest.mark.parametrize("a, m, expected", [(2, 3, 2), (5, 9, 2), (1, 7, 1)])
def test_mod_inverse(a, m, expected):
    assert mod_inverse(a, m) == expected


def test_mod_inverse_non_invertible():
    with pytest.raises(ValueError):
        mod_inverse(6, 9)


def test_mod_inverse_random_pairs():
    rng = random.Random(20261015)
    done = 0
    while done < 1000:
        m = rng.randint(2, 10**6)
        a = rng.randint(1, 10**9)
        if math.gcd(a, m) != 1:
            continue
        inv = mod_inverse(a, m)
        assert 1 <= inv <= m - 1
        assert inv * a % m == 1
        done += 1


@pytest.mark.parametrize("n, expected", [(12, [(2, 2), (3, 1)]), (1, []), (9, [(3, 2)]),
                                         (97, [(97, 1)]), (2**10 * 3**4 * 101, [(2, 10), (3, 4), (101, 1)])])
def test_factorize(n, expected):
    assert list(factorize(n)) == expected


@given(st.integers(min_value=1, max_value=10**7))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert f.value == n
    primes = [p for p, _ in f]
    assert primes == sorted(set(primes))


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization([(4, 1)])
    with pytest.raises(ValueError):
        Factorization([(3, 1), (2, 1)])
