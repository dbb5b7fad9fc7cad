"""Cohen-Macaulay certificates for finite complexes and chain verification.

Two independent certificates are computed:

* topological: every link has vanishing reduced homology below its top
  dimension (Reisner);
* algebraic: for a linear system of parameters theta, the Hilbert function of
  k[Delta]/(theta) equals the h-vector, i.e. k[Delta] is free over k[theta].
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Sequence

import numpy as np

from .complex import (
    DEFAULT_FACE_CAP,
    InconsistencyError,
    SimplicialComplex,
    fullness_report,
    h_vector,
    is_subcomplex,
    reduced_homology_ranks,
)
from .linalg import DEFAULT_PRIME, rank_mod_p
from .sop import (
    DEFAULT_BUDGET,
    ChainError,
    GoodnessCapExceeded,
    SopBudgetExhausted,
    SopMatrix,
    compatible_chain,
    find_good_sop,
    is_good,
    is_linear_sop,
)


class NotAnSopError(ValueError):
    pass


@dataclass
class CmReport:
    complex_id: str
    pure: bool
    reisner_pass: bool | None
    sop_quotient_pass: bool | None
    h_vector: list
    quotient_dims: list
    modulus: int

    @property
    def agree(self) -> bool:
        return self.reisner_pass == self.sop_quotient_pass

    @property
    def cohen_macaulay(self) -> bool:
        return bool(self.reisner_pass and self.sop_quotient_pass)

    def to_dict(self) -> dict:
        return asdict(self)


def strip_cone_points(delta: SimplicialComplex) -> SimplicialComplex:
    """The base of delta after removing every vertex lying in all facets.

    A cone is Cohen-Macaulay exactly when its base is, so this is a safe
    reduction before running Reisner's criterion.
    """
    common = ~0
    for f in delta.facet_masks:
        common &= f
    if not delta.facet_masks or common == 0:
        return delta
    return delta.link(delta.labels(common))


def reisner_cm(delta: SimplicialComplex, p: int = DEFAULT_PRIME, cap: int = DEFAULT_FACE_CAP,
               reduce_cones: bool = True) -> bool:
    """Every link lk(F), F including the empty face, is acyclic below its dimension."""
    if delta.is_void():
        raise ValueError("Reisner's criterion needs a nonempty complex")
    base = strip_cone_points(delta) if reduce_cones else delta
    ok = True
    for m in base.faces(cap):
        lk = base.link(base.labels(m))
        top = lk.dimension()
        if top < 0:
            continue
        ranks = reduced_homology_ranks(lk, p, cap)
        # ranks[k] is the rank of H_{k-1}
        if any(ranks[:top + 1]):
            ok = False
            break
    if ok and not delta.is_pure():
        raise InconsistencyError("a complex passed Reisner's criterion without being pure")
    return ok


def _face_monomials(delta: SimplicialComplex, n_vertices: int, degree: int, col_mask) -> list[tuple]:
    out = []
    for combo in combinations_with_replacement(range(n_vertices), degree):
        support = 0
        for j in combo:
            support |= col_mask[j]
        if delta.is_face_mask(support):
            out.append(combo)
    return out


def quotient_dims(delta: SimplicialComplex, M: SopMatrix, max_degree: int | None = None) -> list[int]:
    """Graded dimensions of k[Delta]/(theta_1, ..., theta_d), degree 0 upward.

    Degree t is spanned by monomials supported on faces; the image of
    (theta) in degree t is spanned by theta_i * m for m of degree t-1, with
    products leaving the face set read as zero.  Stops at the first zero.
    """
    if delta.is_void():
        raise ValueError("the void complex has no face ring")
    verts = list(M.vertices)
    if set(delta.vertex_set()) - set(verts):
        raise ValueError("matrix columns do not cover the vertices")
    col_mask = [delta.mask([v]) for v in verts]
    n = len(verts)
    if max_degree is None:
        max_degree = 2 * max(n, 1)
    p = M.modulus
    dims = [1]
    prev = [()]
    for t in range(1, max_degree + 1):
        basis = _face_monomials(delta, n, t, col_mask)
        index = {mono: k for k, mono in enumerate(basis)}
        rows = []
        for theta in M.rows:
            for mono in prev:
                row = np.zeros(len(basis), dtype=np.int64)
                for j, a in enumerate(theta):
                    if a:
                        k = index.get(tuple(sorted(mono + (j,))))
                        if k is not None:
                            row[k] = (row[k] + a) % p
                rows.append(row)
        rank = rank_mod_p(np.array(rows).reshape(len(rows), len(basis)), p) if rows and basis else 0
        dim = len(basis) - rank
        if dim == 0:
            return dims
        dims.append(dim)
        prev = basis
    raise NotAnSopError(f"quotient does not vanish by degree {max_degree}; theta is not a system of parameters")


def sop_quotient_check(delta: SimplicialComplex, M: SopMatrix, complex_id: str = "",
                       cap: int = DEFAULT_FACE_CAP) -> CmReport:
    if not is_linear_sop(M, delta):
        raise NotAnSopError("the matrix is not a linear system of parameters for the complex")
    h = list(h_vector(delta, cap))
    dims = quotient_dims(delta, M)
    width = max(len(h), len(dims))
    passed = dims + [0] * (width - len(dims)) == h + [0] * (width - len(h))
    return CmReport(complex_id, delta.is_pure(), None, passed, h, dims, M.modulus)


def check_cm(delta: SimplicialComplex, p: int = DEFAULT_PRIME, seed=0, budget: int = DEFAULT_BUDGET,
             complex_id: str = "", cap: int = DEFAULT_FACE_CAP, M: SopMatrix | None = None) -> CmReport:
    """Run both certificates; they must agree."""
    if M is None:
        M = find_good_sop(delta, p, seed, budget, require_pure=False)
    rep = sop_quotient_check(delta, M, complex_id, cap)
    rep.reisner_pass = reisner_cm(delta, p, cap)
    if not rep.agree:
        raise InconsistencyError(
            f"Reisner ({rep.reisner_pass}) and quotient ({rep.sop_quotient_pass}) certificates disagree"
        )
    return rep


# -- chains -------------------------------------------------------------------


@dataclass
class LevelReport:
    index: int
    pure: bool
    subcomplex_of_next: bool | None
    full_in_next: bool | None
    full_in_next_ideal: bool | None
    full_in_top: bool
    full_in_top_ideal: bool
    cm: dict
    passed: bool


@dataclass
class ChainReport:
    levels: list = field(default_factory=list)
    union_equals_top: bool = False
    sop_chain: dict = field(default_factory=dict)
    modulus: int = DEFAULT_PRIME
    passed: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _union_equals(chain: Sequence[SimplicialComplex], top: SimplicialComplex) -> bool:
    if not all(is_subcomplex(c, top) for c in chain):
        return False
    return all(any(c.is_face(top.labels(f)) for c in chain) for f in top.facet_masks)


def sop_chain_report(chain: Sequence[SimplicialComplex], p: int, seed, budget: int) -> dict:
    try:
        mats = compatible_chain(chain, p, seed, budget)
    except (SopBudgetExhausted, GoodnessCapExceeded):
        raise  # undetermined, not a failed hypothesis
    except (ChainError, ValueError) as exc:
        return {"passed": False, "error": str(exc), "matrices": []}
    good = [is_good(M) for M in mats]
    blocks = [mats[i + 1].block(mats[i].d, mats[i].n) == mats[i].rows for i in range(len(mats) - 1)]
    return {
        "passed": all(good) and all(blocks),
        "good": good,
        "block_equal": blocks,
        "matrices": [{"vertices": list(M.vertices), "rows": [list(r) for r in M.rows]} for M in mats],
    }


def verify_theorem_a_hypotheses(chain: Sequence[SimplicialComplex], top: SimplicialComplex,
                                p: int = DEFAULT_PRIME, seed=0, budget: int = DEFAULT_BUDGET,
                                cap: int = DEFAULT_FACE_CAP, ids: Sequence[str] | None = None) -> ChainReport:
    """Check a finite chain of complexes against the hypotheses of the flat-limit theorem.

    Per level: nested in the next level, full there and in the top complex
    (face test and ideal test), pure and Cohen-Macaulay by both certificates.
    Globally: the chain exhausts the top complex and carries compatible good
    systems of parameters.  Running out of SOP samples or past the goodness
    cap raises instead of recording a failure: nothing was refuted.
    """
    rep = ChainReport(modulus=p)
    ids = list(ids) if ids is not None else [f"level{i}" for i in range(1, len(chain) + 1)]
    for i, delta in enumerate(chain):
        nxt = chain[i + 1] if i + 1 < len(chain) else None
        sub = full = full_ideal = None
        if nxt is not None:
            try:
                fr = fullness_report(delta, nxt)
                sub, full, full_ideal = fr.subcomplex, fr.combinatorial, fr.ideal_route
            except ValueError:
                sub = full = full_ideal = False
        try:
            ft = fullness_report(delta, top)
            top_full, top_full_ideal = ft.combinatorial, ft.ideal_route
        except ValueError:
            top_full = top_full_ideal = False
        try:
            cm = check_cm(delta, p, seed, budget, ids[i], cap).to_dict()
            cm_ok = cm["reisner_pass"] and cm["sop_quotient_pass"]
        except (NotAnSopError, InconsistencyError) as exc:
            cm, cm_ok = {"error": str(exc)}, False
        passed = bool(
            delta.is_pure() and cm_ok and top_full and top_full_ideal
            and (nxt is None or (sub and full and full_ideal))
        )
        rep.levels.append(LevelReport(i + 1, delta.is_pure(), sub, full, full_ideal,
                                      top_full, top_full_ideal, cm, passed))
    rep.union_equals_top = _union_equals(chain, top)
    rep.sop_chain = sop_chain_report(chain, p, seed, budget)
    rep.passed = bool(chain) and all(l.passed for l in rep.levels) and rep.union_equals_top and rep.sop_chain["passed"]
    return rep
