"""n-point functions of psi-class intersection numbers.

``F_g(x_1..x_n)`` collects the genus-g numbers <tau_{d_1} ... tau_{d_n}>_g as the
coefficient of prod x_j^{d_j}. Two routes are provided for the normalized
function ``G = exp(-sum x^3 / 24) F``: rescaling the F engine, and an independent
recursion that never touches F. The two must agree exactly.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Mapping, Sequence

from .exactmath import double_factorial
from .polynomial import DivisibilityError, MultiPoly

__all__ = [
    "UnstableError",
    "InvariantViolation",
    "TauSpec",
    "NPointTable",
    "is_stable",
    "dimension",
    "f_poly",
    "g_poly_normalized",
    "g_poly_recursive",
    "tau",
    "verify_cross",
]


class UnstableError(ValueError):
    """(g, n) outside the stable range 2g - 2 + n > 0, or a bad index in stable mode."""


class InvariantViolation(RuntimeError):
    """An internal invariant failed (non-exact division, lost homogeneity, ...)."""


def is_stable(g: int, n: int) -> bool:
    return g >= 0 and n >= 0 and 2 * g - 2 + n > 0


def dimension(g: int, n: int) -> int:
    return 3 * g - 3 + n


@dataclass(frozen=True)
class TauSpec:
    genus: int
    indices: tuple[int, ...]
    mode: str = "stable"

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(self.indices))
        if self.mode not in ("stable", "extended"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.genus < 0:
            raise UnstableError("genus must be nonnegative")
        if self.mode == "stable":
            if any(d < 0 for d in self.indices):
                raise UnstableError(f"negative index in stable mode: {self.indices}")
            if not is_stable(self.genus, len(self.indices)):
                raise UnstableError(
                    f"(g={self.genus}, n={len(self.indices)}) is not in the stable range"
                )


def _splits(n: int):
    """Unordered splits {I, J} of range(n), both nonempty, with 0 in I."""
    rest = list(range(1, n))
    for size in range(0, n - 1):
        for extra in combinations(rest, size):
            I = (0,) + extra
            J = tuple(i for i in rest if i not in extra)
            yield I, J


class NPointTable:
    """Memo of F_g and G_g polynomials keyed by (g, n).

    Also holds an optional store of precomputed tau values (from a cache file),
    keyed by (g, non-increasing index tuple), which ``tau`` consults first.
    """

    def __init__(self, values: Mapping[tuple[int, tuple[int, ...]], Fraction] | None = None):
        self._f: dict[tuple[int, int], MultiPoly] = {}
        self._g_norm: dict[tuple[int, int], MultiPoly] = {}
        self._g_rec: dict[tuple[int, int], MultiPoly] = {}
        self.values: dict[tuple[int, tuple[int, ...]], Fraction] = dict(values or {})
        self.hits = 0
        self.misses = 0
        self._lock = threading.RLock()

    # F ---------------------------------------------------------------------

    def f_poly(self, g: int, n: int) -> MultiPoly:
        if n < 1 or not is_stable(g, n):
            raise UnstableError(f"F_{g} with {n} points is outside the stable range")
        key = (g, n)
        poly = self._f.get(key)
        if poly is not None:
            self.hits += 1
            return poly
        with self._lock:
            poly = self._f.get(key)
            if poly is not None:
                self.hits += 1
                return poly
            self.misses += 1
            poly = self._compute_f(g, n)
            if not poly.is_homogeneous(dimension(g, n)):
                raise InvariantViolation(f"F_{g}({n} points) is not homogeneous")
            self._f[key] = poly
            return poly

    def _compute_f(self, g: int, n: int) -> MultiPoly:
        if g == 0:
            return MultiPoly.var_sum(n) ** (n - 3)
        if n == 1:
            return MultiPoly(1, {(3 * g - 2,): Fraction(1, 24**g * factorial(g))})
        s = MultiPoly.var_sum(n)
        if g == 1 and n == 2:
            # (sum x)^3 F_0(x1, x2) with F_0(x1, x2) = 1 / (x1 + x2)
            term1 = s * s
        else:
            term1 = s**3 * self.f_poly(g - 1, n)
        term1 = term1 / 12
        return (term1 + self._split_sum(g, n, self._weighted_f).div_exact_by_var_sum() / 2) / (
            2 * g + n - 1
        )

    def _weighted_f(self, h: int, I: Sequence[int], n: int) -> MultiPoly:
        """(sum_{i in I} x_i)^2 F_h(x_I) inside n variables, unstable factors in closed form."""
        k = len(I)
        if h == 0 and k == 1:
            return MultiPoly.constant(n, 1)
        if h == 0 and k == 2:
            return MultiPoly.var_sum(n, I)
        s = MultiPoly.var_sum(n, I)
        return s * s * self.f_poly(h, k).embed(n, I)

    def _split_sum(self, g: int, n: int, weighted) -> MultiPoly:
        """sum over ordered nonempty splits (I, J) and genus g' of w_{g'}(I) w_{g-g'}(J).

        Swapping (I, g') with (J, g - g') leaves each product unchanged, so only
        splits with 0 in I are enumerated and the result doubled.
        """
        total = MultiPoly.zero(n)
        memo: dict[tuple[int, tuple[int, ...]], MultiPoly] = {}

        def w(h, I):
            key = (h, I)
            if key not in memo:
                memo[key] = weighted(h, I, n)
            return memo[key]

        for I, J in _splits(n):
            for gp in range(g + 1):
                a = w(gp, I)
                if not a:
                    continue
                b = w(g - gp, J)
                if b:
                    total = total + a * b
        return total * 2

    # G via rescaling F ----------------------------------------------------------

    def g_poly_normalized(self, g: int, n: int) -> MultiPoly:
        """Degree 3g-3+n part of exp(-sum x^3/24) F."""
        if n < 1 or not is_stable(g, n):
            raise UnstableError(f"G_{g} with {n} points is outside the stable range")
        key = (g, n)
        poly = self._g_norm.get(key)
        if poly is not None:
            return poly
        with self._lock:
            cubes = MultiPoly(n, {tuple(3 if j == i else 0 for j in range(n)): 1 for i in range(n)})
            total = MultiPoly.zero(n)
            for d in range(g + 1):
                weight = Fraction((-1) ** d, 24**d * factorial(d))
                h = g - d
                if is_stable(h, n):
                    total = total + (cubes**d * self.f_poly(h, n)) * weight
                elif n == 1:
                    # F_0(x) = x^-2
                    total = total + MultiPoly(1, {(3 * d - 2,): weight})
                else:
                    # F_0(x1, x2) = 1 / (x1 + x2); d = g >= 1 so cubes^d is divisible
                    total = total + (cubes**d).div_exact_by_var_sum() * weight
            self._g_norm[key] = total
            return total

    # G via its own recursion ------------------------------------------------------

    def g_poly_recursive(self, g: int, n: int) -> MultiPoly:
        """G_g from the normalized recursion in P_r and Delta; independent of F."""
        if n < 2 or not is_stable(g, n):
            raise UnstableError(f"recursive G_{g} needs n >= 2 in the stable range (n={n})")
        key = (g, n)
        poly = self._g_rec.get(key)
        if poly is not None:
            return poly
        with self._lock:
            poly = self._compute_g_rec(g, n)
            if not poly.is_homogeneous(dimension(g, n)):
                raise InvariantViolation(f"recursive G_{g}({n} points) is not homogeneous")
            self._g_rec[key] = poly
            return poly

    def _weighted_g(self, h: int, I: Sequence[int], n: int) -> MultiPoly:
        k = len(I)
        if k == 1:
            # G_0(x) = x^-2 and G_h(x) = 0 for h >= 1
            return MultiPoly.constant(n, 1) if h == 0 else MultiPoly.zero(n)
        if h == 0 and k == 2:
            return MultiPoly.var_sum(n, I)
        s = MultiPoly.var_sum(n, I)
        return s * s * self.g_poly_recursive(h, k).embed(n, I)

    def _p_numerator(self, r: int, n: int) -> MultiPoly:
        return self._split_sum(r, n, self._weighted_g)

    def _compute_g_rec(self, g: int, n: int) -> MultiPoly:
        s = MultiPoly.var_sum(n)
        cubes = MultiPoly(n, {tuple(3 if j == i else 0 for j in range(n)): 1 for i in range(n)})
        delta = (s**3 - cubes) / 3
        total = MultiPoly.zero(n)
        top = double_factorial(2 * g + n - 1)
        for r in range(g + 1):
            sdeg = g - r
            coeff = Fraction(double_factorial(2 * r + n - 3), 4**sdeg * top)
            numer = self._p_numerator(r, n)
            if not numer:
                continue
            try:
                if n == 2 and r == 0:
                    # P_0 = 1/(x1 + x2) is not polynomial; Delta is divisible instead
                    term = numer * delta.div_exact_by_var_sum() * delta ** (sdeg - 1)
                else:
                    term = numer.div_exact_by_var_sum() * delta**sdeg
            except DivisibilityError as exc:
                raise InvariantViolation(f"P_{r} for n={n} is not polynomial") from exc
            total = total + term * (coeff / 2)
        return total

    # intersection numbers ---------------------------------------------------------

    def tau(self, g: int, d: Sequence[int], extended: bool = False) -> Fraction:
        """<tau_{d_1} ... tau_{d_n}>_g.

        Returns 0 off the dimension shell. With ``extended`` the genus-0 unstable
        values <tau_{-2}>_0 = 1 and <tau_k tau_{-1-k}>_0 = (-1)^k are admitted,
        unstable (g, n) give 0, and any other negative index gives 0.
        """
        d = tuple(d)
        n = len(d)
        if g < 0:
            raise UnstableError("genus must be nonnegative")
        if any(x < 0 for x in d):
            if not extended:
                raise UnstableError(f"negative index {d} in stable mode")
            if g == 0 and d == (-2,):
                return Fraction(1)
            if g == 0 and n == 2 and d[0] + d[1] == -1:
                return Fraction((-1) ** max(d))
            return Fraction(0)
        if not is_stable(g, n):
            if extended:
                return Fraction(0)
            raise UnstableError(f"(g={g}, n={n}) is not in the stable range")
        if sum(d) != dimension(g, n) or n == 0:
            return Fraction(0)
        key = (g, tuple(sorted(d, reverse=True)))
        v = self.values.get(key)
        if v is not None:
            return v
        return self.f_poly(g, n).coeff(d)

    def stable_values(self, max_genus: int, max_points: int) -> dict[tuple[int, tuple[int, ...]], Fraction]:
        """Every stable tau value with g <= max_genus, 1 <= n <= max_points, keyed by sorted d."""
        from .exactmath import nonincreasing_vectors

        out = {}
        for g in range(max_genus + 1):
            for n in range(1, max_points + 1):
                if not is_stable(g, n):
                    continue
                poly = self.f_poly(g, n)
                for d in nonincreasing_vectors(dimension(g, n), n):
                    out[(g, d)] = poly.coeff(d)
        return out


_default_table = NPointTable()


def default_table() -> NPointTable:
    return _default_table


def f_poly(table: NPointTable | None, g: int, n: int) -> MultiPoly:
    return (table or _default_table).f_poly(g, n)


def g_poly_normalized(table: NPointTable | None, g: int, n: int) -> MultiPoly:
    return (table or _default_table).g_poly_normalized(g, n)


def g_poly_recursive(table: NPointTable | None, g: int, n: int) -> MultiPoly:
    return (table or _default_table).g_poly_recursive(g, n)


def tau(table: NPointTable | None, spec: TauSpec) -> Fraction:
    return (table or _default_table).tau(spec.genus, spec.indices, spec.mode == "extended")


def verify_cross(table: NPointTable | None = None, max_genus: int = 3, max_points: int = 4):
    """G from the independent recursion against G from rescaled F, all stable (g, n) with n >= 2."""
    from .report import VerificationReport

    table = table or _default_table
    rep = VerificationReport("cross", {"g": [0, max_genus], "n": [2, max_points]})
    for g in range(max_genus + 1):
        for n in range(2, max_points + 1):
            if not is_stable(g, n):
                continue
            a = table.g_poly_recursive(g, n)
            b = table.g_poly_normalized(g, n)
            case = {"g": g, "n": n}
            if a != b:
                case["difference_terms"] = len(a - b)
            rep.record(a == b, case, ("g_cross",))
    return rep
