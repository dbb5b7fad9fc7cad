"""Exact polynomials over F_p or Q."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .linalg import DEFAULT_PRIME, check_prime
from .monomial import Monomial, Var, common_family

Scalar = Union[int, Fraction]


class PrimeField:
    def __init__(self, p: int = DEFAULT_PRIME):
        self.modulus = check_prime(p)

    @property
    def name(self) -> str:
        return str(self.modulus)

    def __repr__(self) -> str:
        return f"PrimeField({self.modulus})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self) -> int:
        return hash(("F", self.modulus))

    def __call__(self, c) -> int:
        p = self.modulus
        if isinstance(c, Fraction):
            if c.denominator % p == 0:
                raise ZeroDivisionError(f"denominator {c.denominator} vanishes mod {p}")
            return c.numerator * pow(c.denominator, p - 2, p) % p
        return int(c) % p

    def inv(self, c: int) -> int:
        if c % self.modulus == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, self.modulus - 2, self.modulus)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.modulus

    def signed(self, c: int) -> int:
        """Representative in (-p/2, p/2], for printing."""
        return c - self.modulus if c > self.modulus // 2 else c

    def random(self, rng) -> int:
        return rng.randrange(self.modulus)


class RationalField:
    modulus = None
    name = "Q"

    def __repr__(self) -> str:
        return "RationalField()"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __call__(self, c) -> Fraction:
        return Fraction(c)

    def inv(self, c: Fraction) -> Fraction:
        if c == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(c)

    def div(self, a, b) -> Fraction:
        return Fraction(a) * self.inv(b)

    def signed(self, c: Fraction) -> Fraction:
        return c

    def random(self, rng, bound: int = 1000) -> Fraction:
        return Fraction(rng.randint(-bound, bound))


Field = Union[PrimeField, RationalField]


def field_from_spec(spec) -> Field:
    if isinstance(spec, (PrimeField, RationalField)):
        return spec
    if str(spec).upper() == "Q":
        return RationalField()
    return PrimeField(int(spec))


class Polynomial:
    """Immutable finite map Monomial -> nonzero scalar."""

    __slots__ = ("field", "terms", "_family")

    def __init__(self, field: Field, terms: Mapping[Monomial, Scalar] | Iterable[tuple[Monomial, Scalar]] = ()):
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for m, c in pairs:
            if not isinstance(m, Monomial):
                raise TypeError(f"expected Monomial, got {m!r}")
            acc[m] = acc.get(m, 0) + c
        clean = {}
        family = None
        for m, c in acc.items():
            c = field(c)
            if c != 0:
                family = common_family(family, m.family)
                clean[m] = c
        self.field = field
        self.terms = clean
        self._family = family

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.field = field
        p.terms = terms
        p._family = common_family(*(m.family for m in terms))
        return p

    @classmethod
    def variable(cls, field: Field, v: Var) -> "Polynomial":
        return cls(field, {Monomial({v: 1}): 1})

    @classmethod
    def monomial(cls, field: Field, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return cls(field, {m: c})

    @classmethod
    def constant(cls, field: Field, c: Scalar) -> "Polynomial":
        return cls(field, {Monomial.one(): c})

    @classmethod
    def zero(cls, field: Field) -> "Polynomial":
        return cls._raw(field, {})

    @property
    def family(self) -> str | None:
        return self._family

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def monomials(self) -> list[Monomial]:
        return list(self.terms)

    def coefficient(self, m: Monomial):
        return self.terms.get(m, self.field(0))

    def variables(self) -> set:
        return {v for m in self.terms for v in m.support()}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.field, frozenset(self.terms.items())))

    def _check(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
        common_family(self._family, other._family)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return self.add_scaled(other, 1, Monomial.one())

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check(other)
        return self.add_scaled(other, -1, Monomial.one())

    def __neg__(self) -> "Polynomial":
        F = self.field
        return Polynomial._raw(F, {m: F(-c) for m, c in self.terms.items()})

    def add_scaled(self, other: "Polynomial", c: Scalar, m: Monomial) -> "Polynomial":
        """self + c * m * other."""
        F = self.field
        c = F(c)
        out = dict(self.terms)
        if c == 0:
            return Polynomial._raw(F, out)
        for mo, co in other.terms.items():
            key = mo * m
            val = F(out.get(key, 0) + c * co)
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
        return Polynomial._raw(F, out)

    def mul_term(self, c: Scalar, m: Monomial) -> "Polynomial":
        F = self.field
        c = F(c)
        if c == 0:
            return Polynomial.zero(F)
        return Polynomial._raw(F, {mo * m: F(co * c) for mo, co in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        F = self.field
        if isinstance(other, Polynomial):
            self._check(other)
            out: dict = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    key = m1 * m2
                    out[key] = F(out.get(key, 0) + c1 * c2)
            return Polynomial._raw(F, {m: c for m, c in out.items() if c != 0})
        if isinstance(other, (int, Fraction)):
            return self.mul_term(other, Monomial.one())
        return NotImplemented

    __rmul__ = __mul__

    def project(self, keep) -> "Polynomial":
        """Kill every variable outside ``keep``."""
        keep = set(keep)
        return Polynomial._raw(
            self.field, {m: c for m, c in self.terms.items() if all(v in keep for v in m.support())}
        )

    def evaluate(self, point: Mapping[Var, Scalar]):
        """Substitute values; variables missing from ``point`` evaluate to zero."""
        F = self.field
        total = F(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val = F(val * F(point.get(v, 0)) ** e)
            total = F(total + val)
        return total

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, order=None) -> str:
        if not self.terms:
            return "0"
        if order is not None:
            mons = sorted(self.terms, key=order.key, reverse=True)
        else:
            mons = sorted(self.terms, key=Monomial.sort_key, reverse=True)
        parts = []
        for i, m in enumerate(mons):
            c = self.field.signed(self.terms[m])
            neg = c < 0
            mag = -c if neg else c
            if m.is_one():
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)
