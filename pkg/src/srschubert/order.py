"""Lexicographic term orders decided at the largest differing variable.

Both orders compare two monomials by finding the largest variable (in the
variable order) whose exponents differ; the monomial with the larger
exponent there is larger.  Sorting the (variable key, exponent) pairs of a
monomial in decreasing key order turns this into plain tuple comparison.
"""

from __future__ import annotations

from enum import IntEnum
from functools import lru_cache
from typing import Iterable

from .monomial import GRID, LINE, MixedIndexError, Monomial, Var, var_family


class Ordering(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def diagonal_rank(offset: int) -> int:
    """Position of diagonal Q_offset in Q_0 < Q_1 < Q_-1 < Q_2 < Q_-2 < ..."""
    if offset > 0:
        return 2 * offset - 1
    return -2 * offset


class TermOrder:
    family: str = ""
    name: str = ""

    def __init__(self):
        self.key = lru_cache(maxsize=1 << 18)(self._key)

    def var_key(self, v: Var):
        raise NotImplementedError

    def _key(self, m: Monomial) -> tuple:
        if m.family not in (None, self.family):
            raise MixedIndexError(f"{self.name} order cannot compare {m.family} monomials")
        return tuple(sorted(((self.var_key(v), e) for v, e in m), reverse=True))

    def compare(self, a: Monomial, b: Monomial) -> Ordering:
        ka, kb = self.key(a), self.key(b)
        if ka == kb:
            return Ordering.EQUAL
        return Ordering.LESS if ka < kb else Ordering.GREATER

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.key(a) < self.key(b)

    def max_monomial(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def sort_variables(self, variables: Iterable[Var]) -> list:
        """Variables in increasing order."""
        return sorted(variables, key=self.var_key)


class InfiniteLex(TermOrder):
    """Lex on k[x_1, x_2, ...] with x_1 < x_2 < ..."""

    family = LINE
    name = "lex"

    def var_key(self, v: Var) -> int:
        if var_family(v) != LINE:
            raise MixedIndexError(f"lex order takes line variables, got {v!r}")
        return v

    def __repr__(self) -> str:
        return "InfiniteLex()"


class AntidiagonalOmega2(TermOrder):
    """Lex on k[x_{i,j}] with variables ordered diagonal by diagonal.

    Diagonals Q_m = {x_{i,j} : j - i = m} come in the order
    Q_0 < Q_1 < Q_-1 < Q_2 < Q_-2 < ..., and x_{i,j} < x_{i+1,j+1} inside
    each one, so the variable order has order type omega^2.
    """

    family = GRID
    name = "antidiag"

    def var_key(self, v: Var) -> tuple:
        if var_family(v) != GRID:
            raise MixedIndexError(f"antidiagonal order takes grid variables, got {v!r}")
        i, j = v
        return (diagonal_rank(j - i), i)

    def __repr__(self) -> str:
        return "AntidiagonalOmega2()"


class Restriction(TermOrder):
    """The parent order on monomials supported in a variable subset."""

    def __init__(self, parent: TermOrder, variables: Iterable[Var]):
        self.parent = parent
        self.variables = frozenset(variables)
        self.family = parent.family
        self.name = f"{parent.name}|{len(self.variables)}"
        super().__init__()

    def var_key(self, v: Var):
        if v not in self.variables:
            raise ValueError(f"{v!r} is outside the restricted variable set")
        return self.parent.var_key(v)

    def __repr__(self) -> str:
        return f"Restriction({self.parent!r}, {len(self.variables)} variables)"


def order_from_name(name: str) -> TermOrder:
    if name in ("antidiag", "antidiagonal"):
        return AntidiagonalOmega2()
    if name == "lex":
        return InfiniteLex()
    raise ValueError(f"unknown term order {name!r}")


def compare(order: TermOrder, a: Monomial, b: Monomial) -> Ordering:
    return order.compare(a, b)
