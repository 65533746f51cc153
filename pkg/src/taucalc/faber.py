"""Faber's intersection number identity and its relatives.

All right-hand sides are assembled from ordinary (stable) intersection numbers;
a bracket whose (g, n) is unstable or whose degree is off the dimension shell
contributes 0.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
from typing import Sequence

from .exactmath import bernoulli, double_factorial, subset_splits, weak_compositions
from .lseries import LQuery, l_coeff
from .npoint import NPointTable, default_table
from .report import VerificationReport

__all__ = [
    "KappaExpansion",
    "faber_lhs_eq3",
    "faber_rhs_eq3",
    "verify_faber",
    "cor32_alternating_sum",
    "cor32_value",
    "verify_cor32",
    "cor46_rhs",
    "cor46_value",
    "cor46_check",
    "verify_cor46",
    "lambda_gg1_value",
    "kappa_pushforward_coeff",
    "kappa_sigma_expansion",
    "zagier_check",
    "verify_zagier",
]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _odd_df(d: Sequence[int]) -> int:
    out = 1
    for x in d:
        out *= double_factorial(2 * x - 1)
    return out


def _check_shell(g: int, d: Sequence[int], target: int, what: str, min_g: int = 1, min_d: int = 0):
    if g < min_g:
        raise ValueError(f"{what} needs g >= {min_g}")
    if any(x < min_d for x in d):
        raise ValueError(f"{what} needs every d_j >= {min_d}")
    if sum(d) != target:
        raise ValueError(f"{what} needs sum d_j = {target}, got {sum(d)}")


def _t(table: NPointTable, g: int, idx: Sequence[int]) -> Fraction:
    return table.tau(g, tuple(idx), extended=True)


def _split_pairing(table: NPointTable, g: int, top: int, d: Sequence[int]) -> Fraction:
    """sum over all ordered splits (I, J), g', and 0 <= j <= top of
    (-1)^j <tau_j prod_I>_{g'} <tau_{top-j} prod_J>_{g-g'}."""
    total = Fraction(0)
    for I, J in subset_splits(len(d)):
        dI = tuple(d[i] for i in I)
        dJ = tuple(d[i] for i in J)
        for gp in range(g + 1):
            for j in range(top + 1):
                left = _t(table, gp, (j,) + dI)
                if left:
                    total += _sign(j) * left * _t(table, g - gp, (top - j,) + dJ)
    return total


# Faber's identity in pure psi form -----------------------------------------------


def faber_lhs_eq3(g: int, d: Sequence[int]) -> Fraction:
    """(2g-3+n)! / (2^{2g-1} (2g-1)! prod (2d_j-1)!!), with sum d_j = g+n-2."""
    d = tuple(d)
    n = len(d)
    _check_shell(g, d, g + n - 2, "faber_lhs_eq3")
    return Fraction(factorial(2 * g - 3 + n), 2 ** (2 * g - 1) * factorial(2 * g - 1) * _odd_df(d))


def faber_rhs_eq3(table: NPointTable | None, g: int, d: Sequence[int]) -> Fraction:
    table = table or default_table()
    d = tuple(d)
    n = len(d)
    _check_shell(g, d, g + n - 2, "faber_rhs_eq3")
    total = _t(table, g, (2 * g,) + d)
    for j in range(n):
        total -= _t(table, g, (d[j] + 2 * g - 1,) + d[:j] + d[j + 1:])
    loop = Fraction(0)
    for j in range(2 * g - 1):
        loop += _sign(j) * _t(table, g - 1, (2 * g - 2 - j, j) + d)
    total += loop / 2
    total += _split_pairing(table, g, 2 * g - 2, d) / 2
    return total


def verify_faber(
    table: NPointTable | None = None,
    max_genus: int = 4,
    max_points: int = 4,
    cor32_max_genus: int = 3,
    min_index: int = 0,
) -> VerificationReport:
    """Both sides of the psi-form identity on every (g, n, d) with d_j >= min_index.

    The closed form only survives the string equation when at most one d_j is
    zero, so tuples with two or more zero indices fail; ``min_index=1`` is the
    range on which the identity is a theorem.

    Also checks the coefficient [L_g^{0,0}]_{y^{2g-2} x^d} = 0 on the same tuples
    for g <= cor32_max_genus.
    """
    table = table or default_table()
    rep = VerificationReport(
        "faber",
        {"g": [1, max_genus], "n": [1, max_points], "min_index": min_index, "cor32_i_g": [1, cor32_max_genus]},
    )
    for g in range(1, max_genus + 1):
        for n in range(1, max_points + 1):
            for d in weak_compositions(g + n - 2, n, minimum=min_index):
                lhs = faber_lhs_eq3(g, d)
                rhs = faber_rhs_eq3(table, g, d)
                rep.record(lhs == rhs, {"g": g, "d": d, "lhs": lhs, "rhs": rhs}, ("eq3",))
                if g <= cor32_max_genus:
                    v = l_coeff(table, LQuery(g, 0, 0, 2 * g - 2, d))
                    rep.record(v == 0, {"g": g, "d": d, "L00": v, "form": "cor32_i"}, ("cor32_i",))
    return rep


# alternating sums --------------------------------------------------------------------


def cor32_alternating_sum(table: NPointTable | None, g: int, k: int, d: Sequence[int]) -> Fraction:
    """sum_{j=0}^{2k} (-1)^j <tau_{2k-j} tau_j prod tau_{d_i}>_g."""
    table = table or default_table()
    if k < 0 or any(x < 0 for x in d):
        raise ValueError("need k >= 0 and d_j >= 0")
    d = tuple(d)
    return sum(
        (_sign(j) * _t(table, g, (2 * k - j, j) + d) for j in range(2 * k + 1)), Fraction(0)
    )


def cor32_value(g: int, d: Sequence[int]) -> Fraction:
    """(2g+n-1)! / (4^g (2g+1)! prod (2d_j-1)!!) for d_j >= 1, sum (d_j - 1) = g - 1."""
    n = len(d)
    _check_shell(g, d, g - 1 + n, "cor32_value", min_g=0, min_d=1)
    return Fraction(factorial(2 * g + n - 1), 4**g * factorial(2 * g + 1) * _odd_df(d))


def verify_cor32(
    table: NPointTable | None = None, max_genus: int = 3, max_points: int = 3, k_extra: int = 3
) -> VerificationReport:
    table = table or default_table()
    rep = VerificationReport(
        "cor32", {"g": [0, max_genus], "n": [0, max_points], "k": ["g+1", f"g+{k_extra}"]}
    )
    for g in range(max_genus + 1):
        for n in range(max_points + 1):
            for d in weak_compositions(g - 1 + n, n, minimum=1):
                got = cor32_alternating_sum(table, g, g, d)
                want = cor32_value(g, d)
                rep.record(got == want, {"part": "ii", "g": g, "d": d, "got": got, "want": want}, ("cor32_ii",))
            for k in range(g + 1, g + k_extra + 1):
                total = 3 * g + n - 2 * k - 2
                if total < 0:
                    continue
                for d in weak_compositions(total, n):
                    got = cor32_alternating_sum(table, g, k, d)
                    rep.record(got == 0, {"part": "iii", "g": g, "k": k, "d": d, "got": got}, ("cor32_iii",))
    return rep


# shifted top-degree identity -------------------------------------------------------


def cor46_value(g: int, d: Sequence[int]) -> Fraction:
    """(2g-3+n)! / (2^{2g+1} (2g-3)! prod (2d_j-1)!!)."""
    n = len(d)
    _check_shell(g, d, g + n, "cor46", min_g=2, min_d=1)
    return Fraction(factorial(2 * g - 3 + n), 2 ** (2 * g + 1) * factorial(2 * g - 3) * _odd_df(d))


def cor46_rhs(table: NPointTable | None, g: int, d: Sequence[int]) -> Fraction:
    table = table or default_table()
    d = tuple(d)
    n = len(d)
    _check_shell(g, d, g + n, "cor46", min_g=2, min_d=1)
    total = _t(table, g, (2 * g - 2,) + d)
    for j in range(n):
        total -= _t(table, g, (d[j] + 2 * g - 3,) + d[:j] + d[j + 1:])
    total += _split_pairing(table, g, 2 * g - 4, d) / 2
    return total


def cor46_check(table: NPointTable | None, g: int, d: Sequence[int]) -> VerificationReport:
    rep = VerificationReport("cor46", {"g": g, "d": list(d)})
    got, want = cor46_rhs(table, g, d), cor46_value(g, d)
    rep.record(got == want, {"g": g, "d": tuple(d), "got": got, "want": want}, ("cor46",))
    return rep


def verify_cor46(
    table: NPointTable | None = None, genera: Sequence[int] = (2, 3, 4), max_points: int = 3
) -> VerificationReport:
    rep = VerificationReport("cor46", {"g": list(genera), "n": [1, max_points]})
    for g in genera:
        for n in range(1, max_points + 1):
            for d in weak_compositions(g + n, n, minimum=1):
                rep.merge(cor46_check(table, g, d))
    return rep


# Hodge-integral and kappa closed forms ---------------------------------------------------


def lambda_gg1_value(g: int, d: Sequence[int]) -> Fraction:
    """(2g-3+n)! |B_{2g}| / (2^{2g-1} (2g)! prod (2d_j-1)!!), sum d_j = g-2+n."""
    n = len(d)
    _check_shell(g, d, g - 2 + n, "lambda_gg1_value")
    return Fraction(factorial(2 * g - 3 + n)) * abs(bernoulli(2 * g)) / (
        2 ** (2 * g - 1) * factorial(2 * g) * _odd_df(d)
    )


def kappa_pushforward_coeff(g: int, d: Sequence[int]) -> Fraction:
    """(2g-3+n)! / ((2g-2)!! prod (2d_j+1)!!), sum d_j = g-2."""
    n = len(d)
    _check_shell(g, d, g - 2, "kappa_pushforward_coeff", min_g=2)
    den = double_factorial(2 * g - 2)
    for x in d:
        den *= double_factorial(2 * x + 1)
    return Fraction(factorial(2 * g - 3 + n), den)


class KappaExpansion(Counter):
    """Multiset of kappa monomials, each a non-increasing tuple of kappa indices."""

    def render(self) -> str:
        parts = []
        for mono, mult in sorted(self.items(), key=lambda t: (len(t[0]), t[0]), reverse=True):
            body = "*".join(f"k{i}" for i in mono)
            parts.append(body if mult == 1 else f"{mult}*{body}")
        return " + ".join(parts)


def _cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = perm[i]
        out.append(cyc)
    return out


def kappa_sigma_expansion(d: Sequence[int]) -> KappaExpansion:
    """Aggregate kappa_sigma over all permutations of the n positions of d."""
    d = tuple(d)
    if not d:
        raise ValueError("need at least one index")
    out = KappaExpansion()
    for perm in permutations(range(len(d))):
        mono = tuple(sorted((sum(d[i] for i in c) for c in _cycles(perm)), reverse=True))
        out[mono] += 1
    return out


# combinatorial identity ------------------------------------------------------------


def _compositions(total: int, parts: int):
    """Compositions of ``total`` into ``parts`` positive parts, via cut points."""
    for cuts in combinations(range(1, total), parts - 1):
        prev = 0
        comp = []
        for c in cuts:
            comp.append(c - prev)
            prev = c
        comp.append(total - prev)
        yield comp


def zagier_check(g: int) -> tuple[Fraction, Fraction, bool]:
    """Both sides of
    sum_k (-1)^k/k! (2g+1+k) sum_{m_1+..+m_k=g} (2g+k)! / prod (2m_i+1)!  =  (-1)^g 4^g (g!)^2.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    fact = [factorial(i) for i in range(4 * g + 2)]
    lhs = Fraction(0)
    for k in range(1, g + 1):
        top = fact[2 * g + k]
        inner = 0
        for comp in _compositions(g, k):
            den = 1
            for m in comp:
                den *= fact[2 * m + 1]
            inner += top // den
        lhs += Fraction(_sign(k) * (2 * g + 1 + k) * inner, fact[k])
    rhs = Fraction(_sign(g) * 4**g * fact[g] ** 2)
    return lhs, rhs, lhs == rhs


def verify_zagier(max_genus: int = 20) -> VerificationReport:
    rep = VerificationReport("zagier", {"g": [1, max_genus]})
    for g in range(1, max_genus + 1):
        lhs, rhs, ok = zagier_check(g)
        rep.record(ok, {"g": g, "lhs": lhs, "rhs": rhs}, ("zagier",))
    return rep
