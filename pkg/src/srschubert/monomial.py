"""Monomials over line-indexed (x_n) or grid-indexed (x_{i,j}) variables.

A variable is a positive ``int`` (line family) or a pair ``(row, col)`` of
positive ints (grid family).  A monomial never mixes the two families.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, Union

Var = Union[int, tuple]

LINE = "line"
GRID = "grid"


class MixedIndexError(ValueError):
    """Raised when line and grid variables meet in one object."""


def var_family(v: Var) -> str:
    if isinstance(v, bool):
        raise TypeError(f"not a variable index: {v!r}")
    if isinstance(v, int):
        if v < 1:
            raise ValueError(f"variable index must be >= 1, got {v}")
        return LINE
    if isinstance(v, tuple) and len(v) == 2 and all(
        isinstance(c, int) and not isinstance(c, bool) for c in v
    ):
        if v[0] < 1 or v[1] < 1:
            raise ValueError(f"grid index must be >= 1, got {v}")
        return GRID
    raise TypeError(f"not a variable index: {v!r}")


def common_family(*families: str | None) -> str | None:
    found = {f for f in families if f is not None}
    if len(found) > 1:
        raise MixedIndexError("line and grid variables cannot be mixed")
    return found.pop() if found else None


def var_name(v: Var) -> str:
    if isinstance(v, tuple):
        return f"x[{v[0]},{v[1]}]"
    return f"x[{v}]"


class Monomial:
    """Immutable, finitely supported exponent map.

    Stored as a tuple of ``(var, exponent)`` pairs sorted by the canonical
    variable order (grid by (row, col), line by index); exponents are > 0.
    """

    __slots__ = ("_items", "_hash", "_family")

    def __init__(self, exponents: Mapping[Var, int] | Iterable[tuple[Var, int]] = ()):
        pairs = exponents.items() if isinstance(exponents, Mapping) else exponents
        acc: dict = {}
        family = None
        for v, e in pairs:
            family = common_family(family, var_family(v))
            if not isinstance(e, int) or isinstance(e, bool) or e < 0:
                raise ValueError(f"exponent must be a nonnegative int, got {e!r}")
            if e:
                acc[v] = acc.get(v, 0) + e
        self._items = tuple(sorted(acc.items()))
        self._family = family if self._items else None
        self._hash = hash(self._items)

    @classmethod
    def _raw(cls, items: tuple, family: str | None) -> "Monomial":
        m = cls.__new__(cls)
        m._items = items
        m._family = family if items else None
        m._hash = hash(items)
        return m

    @classmethod
    def from_vars(cls, variables: Iterable[Var]) -> "Monomial":
        """Squarefree product of the given variables (repeats add up)."""
        return cls((v, 1) for v in variables)

    @classmethod
    def one(cls) -> "Monomial":
        return cls._raw((), None)

    @property
    def family(self) -> str | None:
        return self._family

    @property
    def items(self) -> tuple:
        return self._items

    def __iter__(self) -> Iterator[tuple[Var, int]]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Monomial) and self._items == other._items

    def __repr__(self) -> str:
        return f"Monomial({str(self)!r})"

    def __str__(self) -> str:
        if not self._items:
            return "1"
        return "*".join(var_name(v) + (f"^{e}" if e > 1 else "") for v, e in self._items)

    def exponent(self, v: Var) -> int:
        for w, e in self._items:
            if w == v:
                return e
        return 0

    def as_dict(self) -> dict:
        return dict(self._items)

    def support(self) -> tuple:
        return tuple(v for v, _ in self._items)

    def degree(self) -> int:
        return sum(e for _, e in self._items)

    def is_one(self) -> bool:
        return not self._items

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self._items)

    def sort_key(self) -> tuple:
        """Canonical (non term-order) key: degree first, then exponent pairs."""
        return (self.degree(), self._items)

    def divides(self, other: "Monomial") -> bool:
        common_family(self._family, other._family)
        if len(self._items) > len(other._items):
            return False
        theirs = dict(other._items)
        return all(theirs.get(v, 0) >= e for v, e in self._items)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        family = common_family(self._family, other._family)
        if not other._items:
            return self
        if not self._items:
            return other
        acc = dict(self._items)
        for v, e in other._items:
            acc[v] = acc.get(v, 0) + e
        return Monomial._raw(tuple(sorted(acc.items())), family)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient; raises if ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other} does not divide {self}")
        theirs = dict(other._items)
        items = tuple((v, e - theirs.get(v, 0)) for v, e in self._items if e > theirs.get(v, 0))
        return Monomial._raw(items, self._family)

    def lcm(self, other: "Monomial") -> "Monomial":
        family = common_family(self._family, other._family)
        acc = dict(self._items)
        for v, e in other._items:
            if e > acc.get(v, 0):
                acc[v] = e
        return Monomial._raw(tuple(sorted(acc.items())), family)

    def is_coprime(self, other: "Monomial") -> bool:
        mine = {v for v, _ in self._items}
        return not any(v in mine for v, _ in other._items)

    def project(self, keep) -> "Monomial | None":
        """Image under the map killing variables outside ``keep`` (None means zero)."""
        if all(v in keep for v, _ in self._items):
            return self
        return None


def divides(a: Monomial, b: Monomial) -> bool:
    return a.divides(b)


def total_degree(a: Monomial) -> int:
    return a.degree()


def minimal_generators(gens: Iterable[Monomial]) -> list[Monomial]:
    """Unique inclusion-minimal generating set of the ideal spanned by ``gens``.

    Returned in canonical order (degree, then exponent pairs).
    """
    ordered = sorted(set(gens), key=Monomial.sort_key)
    common_family(*(g.family for g in ordered))
    kept: list[Monomial] = []
    for g in ordered:
        # kept elements all have degree <= deg g, so only they can divide g
        if not any(k.divides(g) for k in kept):
            kept.append(g)
    return kept


class MonomialIdeal:
    """Ideal given by a (not necessarily minimal) list of monomial generators."""

    __slots__ = ("generators", "squarefree")

    def __init__(self, generators: Iterable[Monomial] = (), squarefree: bool = False):
        seen: dict = {}
        for g in generators:
            if not isinstance(g, Monomial):
                raise TypeError(f"generator must be a Monomial, got {g!r}")
            seen.setdefault(g, None)
        gens = tuple(seen)
        common_family(*(g.family for g in gens))
        if squarefree and not all(g.is_squarefree() for g in gens):
            raise ValueError("squarefree ideal given a non-squarefree generator")
        self.generators = gens
        self.squarefree = squarefree

    def __repr__(self) -> str:
        flag = ", squarefree" if self.squarefree else ""
        return f"MonomialIdeal([{', '.join(map(str, self.generators))}]{flag})"

    @property
    def family(self) -> str | None:
        return common_family(*(g.family for g in self.generators))

    def minimal(self) -> "MonomialIdeal":
        return MonomialIdeal(minimal_generators(self.generators), self.squarefree)

    def minimal_generators(self) -> list[Monomial]:
        return minimal_generators(self.generators)

    def contains(self, m: Monomial) -> bool:
        return any(g.divides(m) for g in self.generators)

    def contains_ideal(self, other: "MonomialIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def same_ideal(self, other: "MonomialIdeal") -> bool:
        return self.minimal_generators() == other.minimal_generators()

    def is_zero(self) -> bool:
        return not self.generators

    def support(self) -> set:
        return {v for g in self.generators for v in g.support()}


def contains(ideal: MonomialIdeal, m: Monomial) -> bool:
    return ideal.contains(m)
