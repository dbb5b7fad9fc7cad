"""Division, S-polynomials, Buchberger's criterion and order-compatibility checks."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .monomial import Monomial, MonomialIdeal, Var, minimal_generators
from .order import TermOrder
from .polynomial import Field, Polynomial, PrimeField

DEFAULT_PAIR_BUDGET = 10_000


class ZeroPolynomialError(ValueError):
    pass


class NotGroebnerError(RuntimeError):
    pass


class DivisionInvariantError(RuntimeError):
    pass


class PairBudgetExceeded(RuntimeError):
    pass


def leading_term(f: Polynomial, order: TermOrder):
    """(coefficient, monomial) of the order-largest term."""
    if f.is_zero():
        raise ZeroPolynomialError("the zero polynomial has no leading term")
    m = order.max_monomial(f.terms)
    return f.terms[m], m


def leading_monomial(f: Polynomial, order: TermOrder) -> Monomial:
    return leading_term(f, order)[1]


def s_polynomial(f: Polynomial, g: Polynomial, order: TermOrder) -> Polynomial:
    cf, mf = leading_term(f, order)
    cg, mg = leading_term(g, order)
    F = f.field
    lcm = mf.lcm(mg)
    return f.mul_term(F.inv(cf), lcm / mf) - g.mul_term(F.inv(cg), lcm / mg)


def divide(f: Polynomial, G: Sequence[Polynomial], order: TermOrder, check: bool = True):
    """Multivariate division: returns (quotients, remainder).

    The largest remaining term is processed first and divisors are tried in
    list order, so the remainder is deterministic.
    """
    F = f.field
    leads = [leading_term(g, order) for g in G]
    p = dict(f.terms)
    rem: dict = {}
    quo: list[dict] = [{} for _ in G]
    while p:
        m = max(p, key=order.key)
        c = p[m]
        for i, (cg, mg) in enumerate(leads):
            if mg.divides(m):
                t = m / mg
                coef = F.div(c, cg)
                quo[i][t] = F(quo[i].get(t, 0) + coef)
                for mo, co in G[i].terms.items():
                    key = mo * t
                    val = F(p.get(key, 0) - coef * co)
                    if val == 0:
                        p.pop(key, None)
                    else:
                        p[key] = val
                break
        else:
            rem[m] = c
            del p[m]
    quotients = [Polynomial(F, q) for q in quo]
    remainder = Polynomial(F, rem)
    if check:
        _check_division(f, G, order, quotients, remainder, leads)
    return quotients, remainder


def _check_division(f, G, order, quotients, remainder, leads) -> None:
    for m in remainder.terms:
        for _, mg in leads:
            if mg.divides(m):
                raise DivisionInvariantError(f"remainder term {m} is divisible by {mg}")
    total = remainder
    for h, g in zip(quotients, G):
        if h.is_zero():
            continue
        prod = h * g
        if f.is_zero() or order.less(leading_monomial(f, order), leading_monomial(prod, order)):
            raise DivisionInvariantError("a quotient term exceeds the leading term of the dividend")
        total = total + prod
    if total != f:
        raise DivisionInvariantError("f != sum h_i g_i + r")


def remainder(f: Polynomial, G: Sequence[Polynomial], order: TermOrder, check: bool = True) -> Polynomial:
    return divide(f, G, order, check=check)[1]


@dataclass
class GroebnerReport:
    is_groebner: bool
    pairs_checked: int
    pairs_skipped: int
    failures: list = field(default_factory=list)


def groebner_report(G: Sequence[Polynomial], order: TermOrder, skip_coprime: bool = False,
                    check: bool = True) -> GroebnerReport:
    """Reduce every S-pair of G; the unoptimised path checks all pairs."""
    G = list(G)
    if any(g.is_zero() for g in G):
        raise ZeroPolynomialError("Groebner basis candidates must be nonzero")
    lms = [leading_monomial(g, order) for g in G]
    checked = skipped = 0
    failures = []
    for i, j in combinations(range(len(G)), 2):
        if skip_coprime and lms[i].is_coprime(lms[j]):
            skipped += 1
            continue
        checked += 1
        r = remainder(s_polynomial(G[i], G[j], order), G, order, check=check)
        if not r.is_zero():
            failures.append((i, j, r))
    return GroebnerReport(not failures, checked, skipped, failures)


def is_groebner_basis(G: Sequence[Polynomial], order: TermOrder, skip_coprime: bool = False) -> bool:
    return groebner_report(G, order, skip_coprime).is_groebner


def buchberger(G: Sequence[Polynomial], order: TermOrder, pair_budget: int = DEFAULT_PAIR_BUDGET) -> list[Polynomial]:
    """Complete G to a Groebner basis by adding reduced S-polynomials."""
    basis = [g for g in G if not g.is_zero()]
    pairs = list(combinations(range(len(basis)), 2))
    used = 0
    while pairs:
        i, j = pairs.pop(0)
        used += 1
        if used > pair_budget:
            raise PairBudgetExceeded(f"more than {pair_budget} S-pairs")
        r = remainder(s_polynomial(basis[i], basis[j], order), basis, order, check=False)
        if not r.is_zero():
            c, _ = leading_term(r, order)
            basis.append(r.mul_term(r.field.inv(c), Monomial.one()))
            k = len(basis) - 1
            pairs.extend((a, k) for a in range(k))
    return basis


def initial_ideal(G: Sequence[Polynomial], order: TermOrder, check: bool = True) -> MonomialIdeal:
    """Monomial ideal of leading monomials of G, minimalised."""
    if check:
        rep = groebner_report(G, order)
        if not rep.is_groebner:
            raise NotGroebnerError(f"{len(rep.failures)} S-pairs do not reduce to zero")
    lms = minimal_generators(leading_monomial(g, order) for g in G)
    return MonomialIdeal(lms, squarefree=all(m.is_squarefree() for m in lms))


# -- compatibility of restricted orders ----------------------------------------


def enumerate_monomials(variables: Sequence[Var], max_degree: int) -> list[Monomial]:
    out = []
    for d in range(max_degree + 1):
        for combo in combinations_with_replacement(variables, d):
            out.append(Monomial((v, 1) for v in combo))
    return out


def enumerated_polynomials(variables: Sequence[Var], max_degree: int, field: Field) -> list[Polynomial]:
    """Every monomial and every binomial m1 - m2 of degree <= max_degree."""
    mons = enumerate_monomials(variables, max_degree)
    polys = [Polynomial(field, {m: 1}) for m in mons]
    polys += [Polynomial(field, {a: 1, b: -1}) for a, b in combinations(mons, 2)]
    return polys


def random_polynomials(variables: Sequence[Var], max_degree: int, count: int, seed: int,
                       field: Field, max_terms: int = 4) -> list[Polynomial]:
    rng = random.Random(seed)
    mons = enumerate_monomials(variables, max_degree)
    out = []
    while len(out) < count:
        k = rng.randint(1, max_terms)
        terms = {rng.choice(mons): rng.randint(1, 50) for _ in range(k)}
        p = Polynomial(field, terms)
        if not p.is_zero():
            out.append(p)
    return out


@dataclass
class CompatibilityReport:
    inclusion_checked: int = 0
    projection_checked: int = 0
    skipped: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def check_order_compatibility(small: TermOrder, big: TermOrder, small_vars: Iterable[Var],
                              big_vars: Iterable[Var] | None = None,
                              polynomials: Sequence[Polynomial] | None = None,
                              max_degree: int = 3, field: Field | None = None) -> CompatibilityReport:
    """Test lt(iota f) = iota(lt f) and, when lt(g) survives pi, pi(lt g) = lt(pi g)."""
    small_vars = list(small_vars)
    small_set = set(small_vars)
    if big_vars is None:
        big_vars = getattr(big, "variables", None)
    field = field or PrimeField()
    rep = CompatibilityReport()
    if polynomials is None:
        if big_vars is None:
            raise ValueError("big_vars is required when the big order is not a restriction")
        inc = enumerated_polynomials(sorted(small_vars), max_degree, field)
        proj = enumerated_polynomials(sorted(big_vars), max_degree, field)
    else:
        inc = [f for f in polynomials if f.variables() <= small_set]
        proj = list(polynomials)

    for f in inc:
        if f.is_zero():
            continue
        rep.inclusion_checked += 1
        if leading_term(f, small) != leading_term(f, big):
            rep.counterexamples.append(("inclusion", str(f)))
    for g in proj:
        if g.is_zero():
            continue
        c, m = leading_term(g, big)
        if not set(m.support()) <= small_set:
            rep.skipped += 1
            continue
        rep.projection_checked += 1
        if leading_term(g.project(small_set), small) != (c, m):
            rep.counterexamples.append(("projection", str(g)))
    return rep


@dataclass
class UnionReport:
    initial_of_union: list
    union_of_initials: list

    @property
    def equal(self) -> bool:
        return set(self.initial_of_union) == set(self.union_of_initials)


def check_initial_union(ideal_chain: Sequence[Sequence[Polynomial]], order_chain: Sequence[TermOrder],
                        big_order: TermOrder, pair_budget: int = DEFAULT_PAIR_BUDGET) -> UnionReport:
    """Compare in(union of the ideals) with the union of the levelwise initial ideals.

    Each level must be given by a Groebner basis for its own order.
    """
    if len(ideal_chain) != len(order_chain):
        raise ValueError("one order per level is required")
    right = []
    for n, (G, order) in enumerate(zip(ideal_chain, order_chain), start=1):
        if G and not is_groebner_basis(G, order):
            raise NotGroebnerError(f"level {n} is not a Groebner basis")
        right.extend(leading_monomial(g, order) for g in G)
    union = [g for G in ideal_chain for g in G]
    completed = buchberger(union, big_order, pair_budget) if union else []
    left = minimal_generators(leading_monomial(g, big_order) for g in completed)
    return UnionReport(left, minimal_generators(right))
