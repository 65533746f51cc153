from fractions import Fraction

import pytest

from taucalc.exactmath import bernoulli, double_factorial, weak_compositions
from taucalc.faber import (
    cor32_alternating_sum,
    cor32_value,
    cor46_check,
    cor46_value,
    faber_lhs_eq3,
    faber_rhs_eq3,
    kappa_pushforward_coeff,
    kappa_sigma_expansion,
    lambda_gg1_value,
    verify_cor32,
    verify_cor46,
    verify_faber,
    verify_zagier,
    zagier_check,
)
from taucalc.npoint import NPointTable


@pytest.fixture(scope="module")
def table():
    return NPointTable()


def test_eq3_examples(table):
    assert faber_lhs_eq3(2, (1,)) == Fraction(1, 24)
    assert faber_lhs_eq3(1, (1, 0)) == Fraction(1, 2)
    assert faber_lhs_eq3(1, (0,)) == Fraction(1, 2)
    assert faber_rhs_eq3(table, 2, (1,)) == Fraction(1, 24)
    assert faber_rhs_eq3(table, 1, (1, 0)) == Fraction(1, 2)


def test_eq3_off_shell_rejected(table):
    with pytest.raises(ValueError):
        faber_lhs_eq3(2, (2,))
    with pytest.raises(ValueError):
        faber_rhs_eq3(table, 1, (1, 1))


def test_eq3_positive_indices(table):
    rep = verify_faber(table, max_genus=4, max_points=4, min_index=1)
    assert rep.passed and rep.slices["eq3"] == 34


def test_eq3_holds_with_at_most_one_zero(table):
    for g in range(1, 5):
        for n in range(1, 5):
            for d in weak_compositions(g + n - 2, n):
                if d.count(0) <= 1:
                    assert faber_lhs_eq3(g, d) == faber_rhs_eq3(table, g, d), (g, d)


def test_eq3_failures_all_have_two_zero_indices(table):
    # the closed form is string-compatible only when at most one index is zero
    rep = verify_faber(table, max_genus=4, max_points=4)
    assert rep.failures
    assert all(f["d"].count(0) >= 2 for f in rep.failures if "lhs" in f)
    assert not [f for f in rep.failures if f.get("form") == "cor32_i"]


def test_eq3_string_obstruction():
    # removing a tau_0 from (0, 0, 2) by the string equation leaves only (0, 1);
    # the closed form gives 1/3 and 1/2, so it cannot hold on both tuples
    assert faber_lhs_eq3(1, (0, 0, 2)) == Fraction(1, 3)
    assert faber_lhs_eq3(1, (0, 1)) == Fraction(1, 2)


@pytest.mark.parametrize(
    "g, k, d, want",
    [(1, 1, (1,), Fraction(1, 12)), (2, 3, (0, 0), 0), (1, 2, (0, 0, 0), 0)],
)
def test_cor32_examples(table, g, k, d, want):
    assert cor32_alternating_sum(table, g, k, d) == want


def test_cor32_closed_form():
    assert cor32_value(1, (1,)) == Fraction(2, 4 * 6)


def test_cor32_symmetric_and_off_shell(table):
    for d in [(1, 2, 0), (3, 0, 1)]:
        assert cor32_alternating_sum(table, 2, 2, d) == cor32_alternating_sum(table, 2, 2, tuple(reversed(d)))
    # 2k + sum d must be 3g - 3 + n + 2
    assert cor32_alternating_sum(table, 2, 1, (1,)) == 0


def test_cor32_sweep(table):
    assert verify_cor32(table).passed


def test_cor46(table):
    assert table.tau(2, (2, 3)) - table.tau(2, (4,)) == Fraction(1, 240)
    assert cor46_value(2, (3,)) == Fraction(1, 240)
    for g, d in [(2, (3,)), (2, (2, 2)), (3, (4,))]:
        assert cor46_check(table, g, d).passed
    assert verify_cor46(table).passed


def test_lambda_values():
    assert lambda_gg1_value(2, (1,)) == Fraction(1, 2880)
    assert lambda_gg1_value(1, (0,)) == Fraction(1, 24)
    with pytest.raises(ValueError):
        lambda_gg1_value(2, (0, 1))


def test_lambda_formula_core():
    # the formula itself at g=2, d=(0,1), outside the shell the op enforces
    core = Fraction(6) * abs(bernoulli(4)) / (2**3 * 24 * double_factorial(-1) * double_factorial(1))
    assert core == Fraction(1, 960)


def test_lambda_ratio_spot_check():
    for g, d in [(2, (1,)), (3, (2, 1)), (3, (2, 1, 1)), (4, (3,)), (3, (0, 3))]:
        n = len(d)
        from math import factorial

        core = Fraction(factorial(2 * g - 3 + n))
        for x in d:
            core /= double_factorial(2 * x - 1)
        assert lambda_gg1_value(g, d) / core == abs(bernoulli(2 * g)) / (2 ** (2 * g - 1) * factorial(2 * g))


def test_kappa_coeff():
    assert kappa_pushforward_coeff(4, (2,)) == 1
    assert kappa_pushforward_coeff(3, (0, 1)) == 5
    # (2g-3+n)! = 2! here; with kappa_0 = 2g-2 this reproduces pi_*(psi^1) = kappa_0
    assert kappa_pushforward_coeff(2, (0,)) == 1
    with pytest.raises(ValueError):
        kappa_pushforward_coeff(2, (1,))


def test_kappa_sigma():
    assert dict(kappa_sigma_expansion((3,))) == {(3,): 1}
    assert dict(kappa_sigma_expansion((0, 1))) == {(1, 0): 1, (1,): 1}
    a, b, c = 5, 3, 1
    exp = kappa_sigma_expansion((a, b, c))
    assert dict(exp) == {(5, 3, 1): 1, (8, 1): 1, (6, 3): 1, (5, 4): 1, (9,): 2}
    big = kappa_sigma_expansion((1, 0, 2, 1))
    assert sum(big.values()) == 24
    assert all(sum(m) == 4 for m in big)
    assert kappa_sigma_expansion((0, 1)).render() == "k1*k0 + k1"


def test_zagier():
    assert zagier_check(1) == (-4, -4, True)
    assert zagier_check(2)[2]
    assert zagier_check(20)[2]
    assert verify_zagier(12).passed
    with pytest.raises(ValueError):
        zagier_check(0)
