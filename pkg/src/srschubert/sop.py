"""Linear systems of parameters for face rings, tested through minors.

A d x n matrix [a_ij] over F_p encodes theta_i = sum_j a_ij x_j, with columns
indexed by an ordered list of vertices of the complex.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from .complex import DEFAULT_FACE_CAP, SimplicialComplex, is_full_subcomplex, popcount
from .linalg import DEFAULT_PRIME, batch_nonsingular, check_prime, rank_mod_p
from .monomial import Var

DEFAULT_BUDGET = 64
MAX_GOOD_ROWS = 12
_CHUNK = 200_000


class SopBudgetExhausted(RuntimeError):
    pass


class GoodnessCapExceeded(ValueError):
    """The exhaustive goodness test would need too many row subsets."""


class ChainError(ValueError):
    def __init__(self, index: int, message: str):
        super().__init__(f"level {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class SopMatrix:
    rows: tuple
    modulus: int
    vertices: tuple
    complex: SimplicialComplex | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) % self.modulus for x in r) for r in self.rows))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if any(len(r) != len(self.vertices) for r in self.rows):
            raise ValueError("every row needs one entry per vertex")

    @property
    def d(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.d, self.n)

    def block(self, d: int, n: int) -> tuple:
        return tuple(r[:n] for r in self.rows[:d])

    def linear_forms(self) -> list[dict]:
        return [{v: a for v, a in zip(self.vertices, r) if a} for r in self.rows]


def _target(M: SopMatrix, delta: SimplicialComplex | None) -> SimplicialComplex:
    delta = delta if delta is not None else M.complex
    if delta is None:
        raise ValueError("the SOP matrix is not attached to a complex")
    missing = set(delta.vertex_set()) - set(M.vertices)
    if missing:
        raise ValueError(f"vertices without a column: {sorted(missing)}")
    return delta


def _face_columns(M: SopMatrix, delta: SimplicialComplex, masks) -> list[list[int]]:
    col = {v: j for j, v in enumerate(M.vertices)}
    return [[col[v] for v in delta.labels(m)] for m in masks]


def stanley_check(M: SopMatrix, delta: SimplicialComplex | None = None) -> bool:
    """True iff every facet's d x d column minor is nonsingular."""
    delta = _target(M, delta)
    if not delta.is_pure():
        raise ValueError("Stanley's criterion needs a pure complex")
    if M.d != delta.dimension() + 1:
        raise ValueError(f"matrix has {M.d} rows, complex has dimension {delta.dimension()}")
    if M.d == 0:
        return True
    a = M.array()
    cols = np.array(_face_columns(M, delta, delta.facet_masks), dtype=np.int64)
    return bool(batch_nonsingular(a[:, cols].transpose(1, 0, 2), M.modulus).all())


def is_linear_sop(M: SopMatrix, delta: SimplicialComplex | None = None) -> bool:
    """Rank form of the criterion: each facet's column block has full column rank.

    Agrees with stanley_check on pure complexes and also covers non-pure ones.
    """
    delta = _target(M, delta)
    if M.d != delta.dimension() + 1:
        return False
    a = M.array()
    for cols in _face_columns(M, delta, delta.facet_masks):
        if cols and rank_mod_p(a[:, cols], M.modulus) != len(cols):
            return False
    return True


def is_good(M: SopMatrix, delta: SimplicialComplex | None = None, cap: int = DEFAULT_FACE_CAP) -> bool:
    """True iff every b x b minor with columns a face of size b is nonzero."""
    delta = _target(M, delta)
    if M.d > MAX_GOOD_ROWS:
        raise GoodnessCapExceeded(f"goodness test enumerates row subsets; d = {M.d} exceeds {MAX_GOOD_ROWS}")
    a = M.array()
    p = M.modulus
    by_size: dict[int, list[int]] = {}
    for m in delta.faces(cap):
        b = popcount(m)
        if 0 < b <= M.d:
            by_size.setdefault(b, []).append(m)
    for b in sorted(by_size):
        cols = np.array(_face_columns(M, delta, by_size[b]), dtype=np.int64)
        rows = np.array(list(combinations(range(M.d), b)), dtype=np.int64)
        step = max(1, _CHUNK // len(rows))
        for start in range(0, len(cols), step):
            c = cols[start:start + step]
            sub = a[rows[:, None, :, None], c[None, :, None, :]].reshape(-1, b, b)
            if not batch_nonsingular(sub, p).all():
                return False
    return True


def _rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def find_good_sop(delta: SimplicialComplex, p: int = DEFAULT_PRIME, seed=0,
                  budget: int = DEFAULT_BUDGET, vertex_order: Sequence[Var] | None = None,
                  require_pure: bool = True) -> SopMatrix:
    """Sample uniform d x n matrices over F_p until one is good."""
    check_prime(p)
    if require_pure and not delta.is_pure():
        raise ValueError("find_good_sop expects a pure complex")
    rng = _rng(seed)
    verts = tuple(vertex_order) if vertex_order is not None else delta.vertex_set()
    d = delta.dimension() + 1
    for _ in range(budget):
        rows = [[rng.randrange(p) for _ in verts] for _ in range(d)]
        M = SopMatrix(rows, p, verts, delta)
        if is_good(M):
            return M
    raise SopBudgetExhausted(f"no good SOP in {budget} samples over F_{p}; try a larger field")


def extend_good_sop(M: SopMatrix, sigma: SimplicialComplex, seed=0, budget: int = DEFAULT_BUDGET,
                    vertex_order: Sequence[Var] | None = None, check: bool = True) -> SopMatrix:
    """Extend a good SOP of delta to one of sigma keeping M as the top-left block.

    Keeping M's entries there is what makes the projection k[sigma] -> k[delta]
    send the first d new forms to the old ones, since it kills the new vertices.
    """
    delta = _target(M, None)
    if check:
        if not is_full_subcomplex(delta, sigma):
            raise ValueError("delta is not a full subcomplex of sigma")
        if not is_good(M):
            raise ValueError("the given matrix is not good for delta")
    if vertex_order is None:
        old = set(M.vertices)
        vertex_order = M.vertices + tuple(v for v in sigma.vertex_set() if v not in old)
    verts = tuple(vertex_order)
    if verts[:M.n] != M.vertices:
        raise ValueError("sigma's vertex order must extend delta's")
    if set(sigma.vertex_set()) - set(verts):
        raise ValueError("sigma has vertices outside the given order")
    e = sigma.dimension() + 1
    if e < M.d:
        raise ValueError("sigma has smaller dimension than delta")
    rng = _rng(seed)
    p = M.modulus
    for _ in range(budget):
        rows = []
        for i in range(e):
            if i < M.d:
                rows.append(list(M.rows[i]) + [rng.randrange(p) for _ in verts[M.n:]])
            else:
                rows.append([rng.randrange(p) for _ in verts])
        out = SopMatrix(rows, p, verts, sigma)
        if is_good(out):
            return out
        if e == M.d and len(verts) == M.n:
            break
    raise SopBudgetExhausted(f"no good extension in {budget} samples over F_{p}; try a larger field")


def chain_vertex_order(complexes: Sequence[SimplicialComplex]) -> tuple:
    """Label vertices by the first level they appear in, ambient order within a level."""
    seen: dict = {}
    for c in complexes:
        for v in c.vertex_set():
            seen.setdefault(v, None)
    return tuple(seen)


def compatible_chain(complexes: Sequence[SimplicialComplex], p: int = DEFAULT_PRIME, seed=0,
                     budget: int = DEFAULT_BUDGET) -> list[SopMatrix]:
    """Good SOPs M_1, ..., M_N with M_i the top-left block of M_{i+1}."""
    if not complexes:
        return []
    for i, c in enumerate(complexes, start=1):
        if not c.is_pure():
            raise ChainError(i, "complex is not pure")
    for i, (a, b) in enumerate(zip(complexes, complexes[1:]), start=1):
        if not is_full_subcomplex(a, b):
            raise ChainError(i, "not a full subcomplex of the next level")
    order = chain_vertex_order(complexes)
    rng = _rng(seed)

    def prefix(c):
        return order[:len(c.vertex_set())]

    chain = [find_good_sop(complexes[0], p, rng, budget, vertex_order=prefix(complexes[0]))]
    for i, c in enumerate(complexes[1:], start=2):
        try:
            chain.append(extend_good_sop(chain[-1], c, rng, budget, vertex_order=prefix(c), check=False))
        except SopBudgetExhausted as exc:
            raise ChainError(i, str(exc)) from exc
    return chain
