import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from srschubert.groebner import (
    DivisionInvariantError,
    PairBudgetExceeded,
    buchberger,
    check_initial_union,
    check_order_compatibility,
    divide,
    groebner_report,
    initial_ideal,
    is_groebner_basis,
    leading_monomial,
    leading_term,
    random_polynomials,
    remainder,
    s_polynomial,
)
from srschubert.monomial import Monomial
from srschubert.order import AntidiagonalOmega2, InfiniteLex, Restriction
from srschubert.polynomial import Polynomial, PrimeField, RationalField
from srschubert.schubert import minor

Q = RationalField()
F = PrimeField(32003)
LEX = InfiniteLex()
AD = AntidiagonalOmega2()


def x(*v):
    return Monomial.from_vars(v)


def poly(field, terms):
    return Polynomial(field, {m: c for c, m in terms})


def test_leading_terms():
    assert leading_term(poly(Q, [(1, x(1)), (1, x(2))]), LEX) == (1, x(2))
    det = minor((1, 2), (1, 2), Q)
    assert leading_term(det, AD) == (-1, x((1, 2), (2, 1)))
    assert leading_term(Polynomial.constant(Q, 5), LEX) == (5, Monomial.one())


def test_s_polynomial_examples():
    f = poly(Q, [(1, Monomial({1: 2})), (-1, x(2))])
    g = poly(Q, [(1, x(1, 2)), (-1, x(1))])
    assert s_polynomial(f, f, LEX).is_zero()
    assert s_polynomial(Polynomial.variable(Q, 1), Polynomial.variable(Q, 2), LEX).is_zero()
    # hand expansion: lt f = -x2, lt g = x1 x2, lcm = x1 x2
    # S = (x1 x2 / -x2) f - (x1 x2 / x1 x2) g = -x1 f - g = -x1^3 + x1 x2 - x1 x2 + x1
    assert s_polynomial(f, g, LEX) == poly(Q, [(-1, Monomial({1: 3})), (1, x(1))])


def test_divide_examples():
    g = poly(Q, [(1, x(1, 2)), (-3, x(3))])
    q, r = divide(g, [g], LEX)
    assert q[0] == Polynomial.constant(Q, 1) and r.is_zero()
    _, r = divide(Polynomial.monomial(Q, x(1, 3)), [Polynomial.monomial(Q, x(1, 2))], LEX)
    assert r == Polynomial.monomial(Q, x(1, 3))


def test_groebner_examples():
    assert is_groebner_basis([Polynomial.variable(Q, 1), Polynomial.variable(Q, 2)], LEX)
    f = poly(Q, [(1, Monomial({1: 2})), (-1, x(2))])
    g = poly(Q, [(1, x(1, 2)), (-1, x(1))])
    rep = groebner_report([f, g], LEX)
    completed = buchberger([f, g], LEX)
    # oracle: the completion is a basis, and G is one iff nothing was added
    assert is_groebner_basis(completed, LEX)
    assert rep.is_groebner == (len(completed) == 2)
    assert not rep.is_groebner


def test_pair_budget():
    f = poly(Q, [(1, Monomial({1: 2})), (-1, x(2))])
    g = poly(Q, [(1, x(1, 2)), (-1, x(1))])
    with pytest.raises(PairBudgetExceeded):
        buchberger([f, g], LEX, pair_budget=1)


def test_initial_ideal_examples():
    assert initial_ideal([Polynomial.variable(Q, 1)], LEX).generators == (x(1),)


def test_compatibility_grid():
    small = [(i, j) for i in (1, 2) for j in (1, 2)]
    big = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    rep = check_order_compatibility(Restriction(AD, small), Restriction(AD, big), small, big, max_degree=3)
    assert rep.ok and rep.inclusion_checked > 0 and rep.projection_checked > 0


def test_compatibility_records_skipped():
    small = [(1, 1)]
    f = Polynomial(F, {x((1, 2)): 1, x((1, 1)): 1})
    rep = check_order_compatibility(Restriction(AD, small), Restriction(AD, [(1, 1), (1, 2)]), small,
                                    polynomials=[f])
    assert rep.skipped == 1 and rep.ok


def test_compatibility_random_500():
    big = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3)]
    small = [(i, j) for i in (1, 2) for j in (1, 2)]
    polys = random_polynomials(big, 2, 500, seed=1, field=F)
    rep = check_order_compatibility(Restriction(AD, small), Restriction(AD, big), small, polynomials=polys)
    assert rep.ok


def test_initial_union_examples():
    g = [Polynomial.variable(Q, 1)]
    u = check_initial_union([g, g, g], [LEX] * 3, LEX)
    assert u.equal and u.initial_of_union == [x(1)]
    u = check_initial_union([[], [Polynomial.monomial(Q, x(1, 2))]], [LEX, LEX], LEX)
    assert u.equal and u.union_of_initials == [x(1, 2)]


def test_division_catches_bad_quotient():
    from srschubert.groebner import _check_division
    f = Polynomial.variable(Q, 1)
    g = Polynomial.variable(Q, 1)
    with pytest.raises(DivisionInvariantError):
        _check_division(f, [g], LEX, [Polynomial.constant(Q, 2)], Polynomial.zero(Q), [leading_term(g, LEX)])


def _random_poly(rng, field, variables, max_deg=3, terms=4):
    out = {}
    for _ in range(rng.randint(1, terms)):
        m = Monomial((rng.choice(variables), 1) for _ in range(rng.randint(0, max_deg)))
        out[m] = rng.randint(-5, 5)
    return Polynomial(field, out)


@given(st.integers(0, 2**32), st.sampled_from(["lex", "ad"]), st.sampled_from(["Q", "F"]))
def test_division_postconditions(seed, kind, fld):
    rng = random.Random(seed)
    field = Q if fld == "Q" else F
    order, variables = (LEX, [1, 2, 3, 4]) if kind == "lex" else (AD, [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3)])
    f = _random_poly(rng, field, variables)
    G = [g for g in (_random_poly(rng, field, variables, 2, 3) for _ in range(rng.randint(1, 3))) if not g.is_zero()]
    if not G:
        return
    q, r = divide(f, G, order)  # check=True asserts the invariants internally
    total = r
    for h, g in zip(q, G):
        total = total + h * g
    assert (f - total).is_zero()
    lms = [leading_monomial(g, order) for g in G]
    assert not any(lm.divides(m) for m in r.terms for lm in lms)
    if not f.is_zero():
        for h, g in zip(q, G):
            if not h.is_zero():
                assert not order.less(leading_monomial(f, order), leading_monomial(h * g, order))


@given(st.integers(0, 2**32))
def test_s_polynomial_antisymmetric(seed):
    rng = random.Random(seed)
    f = _random_poly(rng, F, [1, 2, 3])
    g = _random_poly(rng, F, [1, 2, 3])
    if f.is_zero() or g.is_zero():
        return
    assert (s_polynomial(f, g, LEX) + s_polynomial(g, f, LEX)).is_zero()


@given(st.integers(0, 2**32))
def test_buchberger_output_is_basis(seed):
    rng = random.Random(seed)
    G = [_random_poly(rng, F, [1, 2, 3], 2, 2) for _ in range(2)]
    G = [g for g in G if not g.is_zero()]
    if not G:
        return
    try:
        B = buchberger(G, LEX, pair_budget=200)
    except PairBudgetExceeded:
        return
    assert is_groebner_basis(B, LEX)
    for g in G:
        assert remainder(g, B, LEX).is_zero()
