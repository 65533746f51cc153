from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from taucalc.exactmath import (
    bernoulli,
    binomial_int,
    double_factorial,
    format_rational,
    multinomial,
    nonincreasing_vectors,
    parse_rational,
    subset_splits,
    weak_compositions,
)


def bernoulli_akiyama_tanigawa(n):
    # independent algorithm; yields B_1 = +1/2, irrelevant for the even indices compared
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


@pytest.mark.parametrize("m, want", [(5, 15), (-1, 1), (6, 48), (0, 1), (1, 1)])
def test_double_factorial_examples(m, want):
    assert double_factorial(m) == want


def test_double_factorial_rejects_below_minus_one():
    with pytest.raises(ValueError):
        double_factorial(-3)


@pytest.mark.parametrize("m", range(1, 30))
def test_double_factorial_recurrence(m):
    assert double_factorial(m) == m * double_factorial(m - 2)


@pytest.mark.parametrize("p, k, want", [(-1, 2, 1), (5, -3, 0), (3, 0, 1), (-3, 3, -10), (2, 5, 0)])
def test_binomial_examples(p, k, want):
    assert binomial_int(p, k) == want


def test_binomial_falling_factorial_definition():
    for p in range(-8, 9):
        for k in range(1, 7):
            num = 1
            for i in range(k):
                num *= p - i
            assert binomial_int(p, k) * factorial(k) == num


@given(st.integers(0, 40), st.integers(0, 40))
def test_binomial_matches_classical(p, k):
    if p >= k:
        assert binomial_int(p, k) == comb(p, k)


@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(0, 10))
def test_vandermonde_type_convolution(a, b, n):
    left = sum(binomial_int(i + a, i) * binomial_int(n - i + b, n - i) for i in range(n + 1))
    assert left == binomial_int(n + a + b + 1, n)


def test_multinomial():
    assert multinomial([3]) == 1
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([2, 3]) == 10


@pytest.mark.parametrize("n, want", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)),
                                     (4, Fraction(-1, 30)), (12, Fraction(-691, 2730))])
def test_bernoulli_examples(n, want):
    assert bernoulli(n) == want


def test_bernoulli_even_against_independent_algorithm():
    for n in range(0, 51, 2):
        assert bernoulli(n) == bernoulli_akiyama_tanigawa(n)


def test_bernoulli_odd_vanish():
    assert all(bernoulli(n) == 0 for n in range(3, 40, 2))


def test_rational_format_roundtrip():
    for q in [Fraction(0), Fraction(-7, 3), Fraction(5), Fraction(29, 5760)]:
        assert parse_rational(format_rational(q)) == q
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 30)) == "-1/30"


@pytest.mark.parametrize("bad", ["0.5", "1e3", "", "1/0", "x"])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_enumerators():
    comps = list(weak_compositions(3, 2))
    assert sorted(comps) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    assert list(weak_compositions(2, 3, minimum=1)) == []
    assert sorted(nonincreasing_vectors(4, 2)) == [(2, 2), (3, 1), (4, 0)]
    splits = list(subset_splits(3))
    assert len(splits) == 8
    assert len(set(splits)) == 8
    for I, J in splits:
        assert sorted(I + J) == [0, 1, 2]
