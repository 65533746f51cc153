"""Differential polynomials in U and its t_0-derivatives; Gelfand-Dikii polynomials.

A monomial is a non-increasing tuple of derivative orders, e.g. (2, 0, 0) is
U_2 * U^2. Its weight is sum(order + 2), so R_n is homogeneous of weight 2n.
"""
from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .exactmath import format_rational, subset_splits
from .npoint import NPointTable, default_table
from .report import VerificationReport

__all__ = [
    "DiffPoly",
    "NotIntegrable",
    "d_dt0",
    "integrate_dt0",
    "gelfand_dikii",
    "gelfand_dikii_rhs",
    "kdv_first_eq_check",
    "verify_kdv",
]

Monomial = tuple[int, ...]


def _mono(orders: Sequence[int]) -> Monomial:
    return tuple(sorted(orders, reverse=True))


def weight(m: Monomial) -> int:
    return sum(o + 2 for o in m)


def monomial_key(m: Monomial) -> tuple[int, Monomial]:
    return (weight(m), m)


class NotIntegrable(ArithmeticError):
    """The input is not a total t_0-derivative; ``remainder`` is what could not be integrated."""

    def __init__(self, remainder: DiffPoly):
        super().__init__(f"not a total t0-derivative; irreducible remainder {remainder}")
        self.remainder = remainder


class DiffPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Sequence[int], Fraction | int] | None = None):
        clean: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            m = _mono(m)
            clean[m] = clean.get(m, 0) + Fraction(c)
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def u(cls, order: int = 0) -> DiffPoly:
        return cls({(order,): 1})

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DiffPoly):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: DiffPoly) -> DiffPoly:
        out = Counter(self.terms)
        out.update(other.terms)
        return DiffPoly(out)

    def __neg__(self) -> DiffPoly:
        return DiffPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: DiffPoly) -> DiffPoly:
        return self + (-other)

    def __mul__(self, other: DiffPoly | Fraction | int) -> DiffPoly:
        if not isinstance(other, DiffPoly):
            return DiffPoly({m: c * other for m, c in self.terms.items()})
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono(m1 + m2)
                out[m] = out.get(m, 0) + c1 * c2
        return DiffPoly(out)

    __rmul__ = __mul__

    def weights(self) -> set[int]:
        return {weight(m) for m in self.terms}

    def is_homogeneous(self, w: int) -> bool:
        return self.weights() <= {w}

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: monomial_key(t[0]))

    def __str__(self) -> str:
        """Canonical text, e.g. ``1/2*u0^2 + 1/12*u2``, ascending in the monomial order."""
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            powers = Counter(m)
            body = "*".join(
                f"u{o}" if e == 1 else f"u{o}^{e}" for o, e in sorted(powers.items())
            )
            if not body:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_rational(c)}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"DiffPoly({str(self)!r})"


def d_dt0(p: DiffPoly) -> DiffPoly:
    """Total derivative: u_i -> u_{i+1}, Leibniz across each monomial."""
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        for i in range(len(m)):
            # differentiating equal factors separately adds up the multiplicity
            new = _mono(m[:i] + (m[i] + 1,) + m[i + 1:])
            out[new] = out.get(new, 0) + c
    return DiffPoly(out)


def integrate_dt0(p: DiffPoly) -> DiffPoly:
    """Return q with d_dt0(q) == p and no constant term, or raise NotIntegrable.

    Repeatedly take the largest monomial c * u_N^e * A (A of order < N). A total
    derivative is linear in its top derivative, so e must be 1; then
    c * u_{N-1}^{j+1} A' / (j+1), with A = u_{N-1}^j A', removes that term and
    only introduces terms of lower top order.
    """
    rest = DiffPoly(p.terms)
    q: dict[Monomial, Fraction] = {}
    while rest:
        m = max(rest.terms, key=monomial_key)
        c = rest.terms[m]
        top = m[0]
        if top == 0 or (len(m) > 1 and m[1] == top):
            raise NotIntegrable(rest)
        others = m[1:]
        j = others.count(top - 1)
        cand = _mono((top - 1,) * (j + 1) + tuple(o for o in others if o != top - 1))
        coef = c / (j + 1)
        q[cand] = q.get(cand, 0) + coef
        rest = rest - d_dt0(DiffPoly({cand: coef}))
    return DiffPoly(q)


def gelfand_dikii_rhs(r_n: DiffPoly, n: int) -> DiffPoly:
    """(U_1 R_n + 2 U d(R_n) + d^3(R_n) / 4) / (2n + 1)."""
    u, u1 = DiffPoly.u(0), DiffPoly.u(1)
    d1 = d_dt0(r_n)
    d3 = d_dt0(d_dt0(d1))
    return (u1 * r_n + u * d1 * 2 + d3 * Fraction(1, 4)) * Fraction(1, 2 * n + 1)


@lru_cache(maxsize=None)
def gelfand_dikii(n: int) -> DiffPoly:
    """R_n with R_1 = U and zero integration constants."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return DiffPoly.u(0)
    return integrate_dt0(gelfand_dikii_rhs(gelfand_dikii(n - 1), n - 1))


# first KdV equation against the intersection numbers ---------------------------------


def kdv_first_eq_sides(table: NPointTable | None, g: int, d: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Coefficient form of <<tau_0 tau_1>> = <<tau_0^4>>/12 + <<tau_0^2>>^2 / 2 at insertions d."""
    table = table or default_table()
    d = tuple(d)
    t = lambda h, idx: table.tau(h, idx, extended=True)  # noqa: E731
    lhs = t(g, (0, 1) + d)
    rhs = t(g - 1, (0, 0, 0, 0) + d) / 12 if g >= 1 else Fraction(0)
    pairs = Fraction(0)
    for I, J in subset_splits(len(d)):
        dI = tuple(d[i] for i in I)
        dJ = tuple(d[i] for i in J)
        for gp in range(g + 1):
            left = t(gp, (0, 0) + dI)
            if left:
                pairs += left * t(g - gp, (0, 0) + dJ)
    return lhs, rhs + pairs / 2


def kdv_first_eq_check(table: NPointTable | None, g: int, d: Sequence[int]) -> VerificationReport:
    lhs, rhs = kdv_first_eq_sides(table, g, d)
    rep = VerificationReport("kdv", {"g": g, "d": list(d)})
    rep.record(lhs == rhs, {"g": g, "d": tuple(d), "lhs": lhs, "rhs": rhs}, ("kdv_first",))
    return rep


def verify_kdv(table: NPointTable | None = None, max_genus: int = 3, max_points: int = 3, max_n: int = 6) -> VerificationReport:
    """First-equation check on every shell tuple, plus the Gelfand-Dikii structure checks."""
    from .exactmath import nonincreasing_vectors

    rep = VerificationReport("kdv", {"g": [0, max_genus], "n": [0, max_points], "R_n": [1, max_n]})
    for g in range(max_genus + 1):
        for n in range(max_points + 1):
            if 2 * g + n == 0:
                continue
            for d in nonincreasing_vectors(3 * g - 2 + n, n):
                rep.merge(kdv_first_eq_check(table, g, d))
    for n in range(1, max_n + 1):
        rn = gelfand_dikii(n)
        rep.record(rn.is_homogeneous(2 * n), {"R": n, "weights": sorted(rn.weights())}, ("gd_weight",))
        if n < max_n:
            ok = d_dt0(gelfand_dikii(n + 1)) == gelfand_dikii_rhs(rn, n)
            rep.record(ok, {"R": n + 1, "check": "re-differentiation"}, ("gd_rediff",))
    return rep
