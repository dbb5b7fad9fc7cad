from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from srschubert.complex import SimplicialComplex
from srschubert.monomial import Monomial, MonomialIdeal
from srschubert.order import AntidiagonalOmega2
from srschubert.polynomial import Polynomial, PrimeField, RationalField
from srschubert.serialize import (
    ParseError,
    complex_from_json,
    complex_to_json,
    dumps,
    ideal_from_json,
    ideal_to_json,
    parse_monomial,
    parse_polynomial,
    polynomial_from_json,
    polynomial_to_json,
    sop_from_json,
    sop_to_json,
    var_from_json,
)
from srschubert.sop import find_good_sop

Q = RationalField()


def test_variables():
    assert var_from_json(3) == 3
    assert var_from_json([1, 2]) == (1, 2)
    assert var_from_json("x[1, 2]") == (1, 2)
    assert var_from_json("x[7]") == 7
    for bad in (True, "y[1]", [1], [1, 2, 3], 1.5):
        with pytest.raises(ParseError):
            var_from_json(bad)


def test_monomial_text():
    m = parse_monomial("x[1,2]*x[2,1]^2")
    assert m == Monomial({(1, 2): 1, (2, 1): 2})
    assert parse_monomial(str(m)) == m
    assert parse_monomial("1").is_one()
    with pytest.raises(ParseError):
        parse_monomial("x[1]**2")


def test_polynomial_text():
    f = parse_polynomial("x[1,3]*x[2,2] - x[1,2]*x[2,3]", Q)
    assert len(f) == 2
    g = parse_polynomial("3/2*x[1]^2 - 1 + x[2]", Q)
    assert g.coefficient(Monomial({1: 2})) == Fraction(3, 2)
    assert g.coefficient(Monomial.one()) == -1
    assert parse_polynomial("0", Q).is_zero()
    assert parse_polynomial("x[1] - x[1]", Q).is_zero()
    h = parse_polynomial("-2*x[1]", PrimeField(5))
    assert h.coefficient(Monomial({1: 1})) == 3
    for bad in ("", "x[1] +", "2*y"):
        with pytest.raises(ParseError):
            parse_polynomial(bad, Q)


def test_polynomial_json_order():
    order = AntidiagonalOmega2()
    f = parse_polynomial("x[1,1]*x[2,2] - x[1,2]*x[2,1]", Q)
    js = polynomial_to_json(f, order)
    assert js[0] == ["-1", "x[1,2]*x[2,1]"]
    assert polynomial_from_json(js, Q) == f


def test_complex_json_forms():
    data = {"vertices": [1, 2, 3], "faces": [[], [1], [2], [3], [1, 2]]}
    d = complex_from_json(data)
    assert d == SimplicialComplex([1, 2, 3], [[1, 2], [3]])
    with pytest.raises(ParseError):
        complex_from_json({"facets": []})
    with pytest.raises(ParseError):
        complex_from_json({"vertices": [1]})


def test_dumps_deterministic():
    a = dumps({"b": 1, "a": {2, 1}, "c": Fraction(1, 2)})
    assert a == dumps({"c": Fraction(1, 2), "a": {1, 2}, "b": 1})
    assert a.endswith("\n") and '"c": "1/2"' in a


@given(complexes(max_vertices=8))
def test_complex_round_trip(delta):
    assert complex_from_json(complex_to_json(delta)) == delta


@given(st.lists(st.lists(st.integers(1, 6), min_size=1, max_size=3, unique=True), min_size=1, max_size=5))
def test_ideal_round_trip(gens):
    ideal = MonomialIdeal([Monomial.from_vars(g) for g in gens], squarefree=True)
    assert ideal_from_json(ideal_to_json(ideal)).generators == ideal.generators


@given(st.dictionaries(st.tuples(st.integers(1, 3), st.integers(1, 3)), st.integers(-50, 50), max_size=6),
       st.integers(0, 3))
def test_polynomial_round_trip(coeffs, shift):
    terms = {Monomial({v: 1 + shift}): c for v, c in coeffs.items()}
    f = Polynomial(Q, terms)
    assert polynomial_from_json(polynomial_to_json(f), Q) == f
    text = " + ".join(f"{c}*{m}" for m, c in terms.items()) or "0"
    assert parse_polynomial(text.replace("+ -", "- "), Q) == f


@given(complexes(max_vertices=6), st.integers(0, 1000))
def test_sop_round_trip(delta, seed):
    M = find_good_sop(delta, 32003, seed, require_pure=False)
    N = sop_from_json(sop_to_json(M), delta)
    assert N.rows == M.rows and list(N.vertices) == list(M.vertices) and N.modulus == M.modulus
