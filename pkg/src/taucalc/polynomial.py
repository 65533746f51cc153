"""Sparse multivariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactmath import format_rational, parse_rational

__all__ = ["MultiPoly", "DivisibilityError", "grlex_key"]

Exponent = tuple[int, ...]


class DivisibilityError(ArithmeticError):
    """Raised when an exact division leaves a nonzero remainder."""


def grlex_key(e: Exponent) -> tuple[int, Exponent]:
    return (sum(e), e)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple([i + j for i, j in zip(a, b)])


class MultiPoly:
    """Polynomial in ``arity`` variables stored as {exponent tuple: Fraction}.

    Treated as immutable once built; zero coefficients are never stored.
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Exponent, Fraction | int] | None = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != arity:
                    raise ValueError(f"exponent {e} does not match arity {arity}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                if c:
                    clean[e] = Fraction(c)
        self.terms = clean

    @classmethod
    def _raw(cls, arity: int, terms: dict[Exponent, Fraction]) -> MultiPoly:
        # trusted constructor: caller guarantees clean terms
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        return p

    # constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, arity: int) -> MultiPoly:
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, c: Fraction | int) -> MultiPoly:
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def variable(cls, arity: int, i: int) -> MultiPoly:
        """The variable x_i, 0-based."""
        e = [0] * arity
        e[i] = 1
        return cls._raw(arity, {tuple(e): Fraction(1)})

    @classmethod
    def var_sum(cls, arity: int, indices: Iterable[int] | None = None) -> MultiPoly:
        """Sum of the variables in ``indices`` (all variables by default)."""
        if indices is None:
            indices = range(arity)
        terms = {}
        for i in indices:
            e = [0] * arity
            e[i] = 1
            terms[tuple(e)] = Fraction(1)
        return cls._raw(arity, terms)

    # basic queries --------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MultiPoly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.arity, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, e: Sequence[int]) -> Fraction:
        if len(e) != self.arity:
            raise ValueError(f"exponent length {len(e)} != arity {self.arity}")
        return self.terms.get(tuple(e), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        """True if every term has the same total degree (``degree`` if given).

        The zero polynomial is homogeneous of every degree.
        """
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return degree is None or degs == {degree}

    # arithmetic -----------------------------------------------------------

    def _check(self, other: MultiPoly) -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.arity, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly._raw(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.arity, other)
        return self + (-other)

    def __rsub__(self, other: Fraction | int) -> MultiPoly:
        return (-self) + other

    def scale(self, c: Fraction | int) -> MultiPoly:
        if not c:
            return MultiPoly.zero(self.arity)
        return MultiPoly._raw(self.arity, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other: MultiPoly | Fraction | int) -> MultiPoly:
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) > len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: dict[Exponent, Fraction] = {}
        get = out.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = _add_exp(ea, eb)
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw(self.arity, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, c: Fraction | int) -> MultiPoly:
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.constant(self.arity, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # structural operations ------------------------------------------------

    def embed(self, arity: int, positions: Sequence[int]) -> MultiPoly:
        """Re-express in ``arity`` variables, sending x_i to x_{positions[i]}."""
        if len(positions) != self.arity:
            raise ValueError("positions must list one target per variable")
        out = {}
        for e, c in self.terms.items():
            t = [0] * arity
            for p, x in zip(positions, e):
                t[p] = x
            out[tuple(t)] = c
        return MultiPoly._raw(arity, out)

    def permute(self, perm: Sequence[int]) -> MultiPoly:
        """Substitute x_i -> x_{perm[i]}."""
        return self.embed(self.arity, perm)

    def specialize_zero(self, i: int) -> MultiPoly:
        """Set the (0-based) variable x_i to zero, dropping it."""
        if not 0 <= i < self.arity:
            raise IndexError(f"variable index {i} out of range for arity {self.arity}")
        out = {e[:i] + e[i + 1:]: c for e, c in self.terms.items() if e[i] == 0}
        return MultiPoly._raw(self.arity - 1, out)

    def div_exact_by_var_sum(self) -> MultiPoly:
        """Return q with q * (x_1 + ... + x_n) == self, or raise DivisibilityError.

        Leading-term elimination in lex order, done one x_1-degree block at a time:
        writing self = sum_k p_k x_1^k and x_1 + t, the quotient blocks satisfy
        q_{k-1} = p_k - t q_k, and the constant block must cancel exactly.
        """
        n = self.arity
        if n == 0:
            raise DivisibilityError("cannot divide by an empty variable sum")
        if not self.terms:
            return MultiPoly.zero(n)
        blocks: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self.terms.items():
            blocks.setdefault(e[0], {})[e[1:]] = c
        top = max(blocks)
        rest = n - 1
        t_terms = []
        for i in range(rest):
            e = [0] * rest
            e[i] = 1
            t_terms.append(tuple(e))

        def times_t(block: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
            out: dict[Exponent, Fraction] = {}
            for e, c in block.items():
                for i in range(rest):
                    f = e[:i] + (e[i] + 1,) + e[i + 1:]
                    out[f] = out.get(f, 0) + c
            return out

        quotient: dict[Exponent, Fraction] = {}
        q_block: dict[Exponent, Fraction] = {}
        for k in range(top, 0, -1):
            nxt = dict(blocks.get(k, {}))
            for e, c in times_t(q_block).items():
                v = nxt.get(e, 0) - c
                if v:
                    nxt[e] = v
                else:
                    nxt.pop(e, None)
            q_block = nxt
            for e, c in q_block.items():
                quotient[(k - 1,) + e] = c
        remainder = dict(blocks.get(0, {}))
        for e, c in times_t(q_block).items():
            v = remainder.get(e, 0) - c
            if v:
                remainder[e] = v
            else:
                remainder.pop(e, None)
        if remainder:
            raise DivisibilityError(
                f"polynomial is not divisible by the sum of its {n} variables"
            )
        return MultiPoly._raw(n, quotient)

    # serialization --------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def to_records(self) -> list[dict]:
        return [
            {"exponents": list(e), "coeff": format_rational(c)}
            for e, c in self.sorted_terms()
        ]

    @classmethod
    def from_records(cls, arity: int, records: Iterable[Mapping]) -> MultiPoly:
        terms: dict[Exponent, Fraction] = {}
        for r in records:
            terms[tuple(r["exponents"])] = parse_rational(r["coeff"])
        return cls(arity, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({self.arity}, {str(self)!r})"
