import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complexes
from oracles import quotient_dim
from srschubert.cm import (
    NotAnSopError,
    check_cm,
    quotient_dims,
    reisner_cm,
    sop_quotient_check,
    strip_cone_points,
    verify_theorem_a_hypotheses,
)
from srschubert.complex import InconsistencyError, SimplicialComplex, h_vector
from srschubert.sop import SopBudgetExhausted, SopMatrix, find_good_sop

P = 32003


def test_reisner_examples(triangle, two_edges):
    assert reisner_cm(SimplicialComplex.simplex([1, 2, 3]))
    assert reisner_cm(triangle)
    assert not reisner_cm(two_edges)
    assert not reisner_cm(two_edges, reduce_cones=False)


def test_cone_reduction():
    cone = SimplicialComplex([1, 2, 3, 4], [[1, 2, 4], [3, 4]])
    assert strip_cone_points(cone).facets() == [(1, 2), (3,)]
    assert strip_cone_points(SimplicialComplex.simplex([1, 2])).facets() == [()]


def test_quotient_examples(triangle, two_edges):
    rep = sop_quotient_check(triangle, find_good_sop(triangle, P, 1))
    assert rep.quotient_dims == [1, 1, 1] and rep.sop_quotient_pass
    s = SimplicialComplex.simplex([1, 2])
    rep = sop_quotient_check(s, find_good_sop(s, P, 1))
    assert rep.quotient_dims == [1] and rep.h_vector == [1, 0, 0] and rep.sop_quotient_pass
    rep = sop_quotient_check(two_edges, find_good_sop(two_edges, P, 1))
    assert not rep.sop_quotient_pass and rep.h_vector == [1, 2, -1]


def test_quotient_requires_sop(triangle):
    with pytest.raises(NotAnSopError):
        sop_quotient_check(triangle, SopMatrix([[1, 1, 1], [1, 1, 3]], P, [1, 2, 3], triangle))


def test_check_cm_report(two_edges):
    rep = check_cm(two_edges, P, seed=0)
    assert rep.reisner_pass is False and rep.sop_quotient_pass is False and rep.agree
    assert rep.modulus == P


def test_chain_examples():
    chain = [SimplicialComplex.simplex(range(1, k + 1)) for k in (1, 2, 3)]
    rep = verify_theorem_a_hypotheses(chain, chain[-1], P, seed=1)
    assert rep.passed and rep.union_equals_top and rep.sop_chain["passed"]
    # level 1 misses the edge {1,2} that the top complex has on its vertices
    bad = [SimplicialComplex([1, 2], [[1], [2]]), SimplicialComplex.simplex([1, 2, 3])]
    rep = verify_theorem_a_hypotheses(bad, bad[-1], P, seed=1)
    assert not rep.passed
    lvl = rep.levels[0]
    assert lvl.full_in_top is False and lvl.full_in_next is False and lvl.full_in_next_ideal is False


def test_chain_union_failure():
    a = SimplicialComplex.simplex([1])
    top = SimplicialComplex.simplex([1, 2])
    rep = verify_theorem_a_hypotheses([a], top, P, seed=1)
    assert not rep.union_equals_top and not rep.passed


@given(complexes(max_vertices=7), st.integers(0, 2**32))
def test_two_certificates_agree(delta, seed):
    M = find_good_sop(delta, P, seed, require_pure=False)
    rep = sop_quotient_check(delta, M)
    r = reisner_cm(delta)  # raises if it passes a non-pure complex
    assert r == rep.sop_quotient_pass
    assert r == reisner_cm(delta, reduce_cones=False)
    if r:
        assert delta.is_pure()


@given(complexes(max_vertices=6), st.integers(0, 2**32))
def test_quotient_dims_vs_oracle(delta, seed):
    M = find_good_sop(delta, P, seed, require_pure=False)
    dims = quotient_dims(delta, M)
    verts = list(M.vertices)
    assert dims == [quotient_dim(delta, M.rows, verts, P, t) for t in range(len(dims))]
    assert quotient_dim(delta, M.rows, verts, P, len(dims)) == 0


@given(complexes(max_vertices=8, pure=True))
def test_h_vector_sums_to_facets(delta):
    assert sum(h_vector(delta)) == len(delta.facets())


def test_chain_budget_exhaustion_is_not_a_verdict():
    # over F_2 the only all-nonzero 2x2 matrix is singular: no good SOP for an edge
    chain = [SimplicialComplex.simplex([1]), SimplicialComplex.simplex([1, 2])]
    with pytest.raises(SopBudgetExhausted):
        verify_theorem_a_hypotheses(chain, chain[-1], 2, seed=0, budget=10)
