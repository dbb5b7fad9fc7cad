"""Finite simplicial complexes and the Stanley-Reisner correspondence.

Faces are stored as bitmasks over an ordered ambient vertex list.  A complex
always knows its facets and (lazily) its minimal non-faces; the two are dual
under minimal transversals, so either side determines the other without
enumerating faces.  Explicit face lists are materialised on demand and only
while their number stays under a cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .linalg import DEFAULT_PRIME, rank_mod_p
from .monomial import Monomial, MonomialIdeal, Var, common_family, var_family, var_name

DEFAULT_FACE_CAP = 2**22


class FaceCapExceeded(RuntimeError):
    pass


class InconsistencyError(RuntimeError):
    """Two routes that must agree produced different answers."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def maximal_masks(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=lambda m: (-popcount(m), m))
    kept: list[int] = []
    for m in ordered:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal_masks(masks: Iterable[int]) -> list[int]:
    ordered = sorted(set(masks), key=lambda m: (popcount(m), m))
    kept: list[int] = []
    for m in ordered:
        if not any(k & ~m == 0 for k in kept):
            kept.append(m)
    return sorted(kept)


def minimal_transversals(edges: Iterable[int]) -> list[int]:
    """Minimal hitting sets of a hypergraph given as bitmasks (Berge's method).

    An empty edge admits no transversal; no edges admit only the empty set.
    """
    trans = [0]
    for e in minimal_masks(edges):
        if e == 0:
            return []
        grown = []
        for t in trans:
            if t & e:
                grown.append(t)
            else:
                bits = e
                while bits:
                    low = bits & -bits
                    grown.append(t | low)
                    bits ^= low
        trans = minimal_masks(grown)
    return trans


class SimplicialComplex:
    """A simplicial complex on an ordered, finite ambient vertex set V."""

    def __init__(self, vertices: Sequence[Var], facets: Iterable[Iterable[Var]] = ()):
        self._init_vertices(vertices)
        masks = [self.mask(f) for f in facets]
        self._facets = tuple(maximal_masks(masks))
        self._nonfaces: tuple | None = None
        self._faces: list | None = None

    def _init_vertices(self, vertices: Sequence[Var]) -> None:
        verts = tuple(vertices)
        family = None
        for v in verts:
            family = common_family(family, var_family(v))
        if len(set(verts)) != len(verts):
            raise ValueError("ambient vertices must be distinct")
        self.vertices = verts
        self._pos = {v: i for i, v in enumerate(verts)}
        self._full = (1 << len(verts)) - 1

    @classmethod
    def _from_masks(cls, vertices, facets=None, nonfaces=None) -> "SimplicialComplex":
        c = cls.__new__(cls)
        c._init_vertices(vertices)
        if facets is None:
            facets = [c._full ^ t for t in minimal_transversals(nonfaces)]
        c._facets = tuple(maximal_masks(facets))
        c._nonfaces = tuple(minimal_masks(nonfaces)) if nonfaces is not None else None
        c._faces = None
        return c

    @classmethod
    def from_faces(cls, vertices: Sequence[Var], faces: Iterable[Iterable[Var]]) -> "SimplicialComplex":
        c = cls(vertices, ())
        masks = {c.mask(f) for f in faces}
        for m in masks:
            bits = m
            while bits:
                low = bits & -bits
                if m ^ low not in masks:
                    raise ValueError("face family is not closed under taking subsets")
                bits ^= low
        c._facets = tuple(maximal_masks(masks))
        return c

    @classmethod
    def simplex(cls, vertices: Sequence[Var]) -> "SimplicialComplex":
        return cls(vertices, [vertices])

    # -- masks and labels -------------------------------------------------

    def mask(self, labels: Iterable[Var]) -> int:
        m = 0
        for v in labels:
            try:
                m |= 1 << self._pos[v]
            except KeyError:
                raise ValueError(f"{v!r} is not an ambient vertex") from None
        return m

    def labels(self, mask: int) -> tuple:
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(self.vertices[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def _mask_or_none(self, labels: Iterable[Var]) -> int | None:
        m = 0
        for v in labels:
            i = self._pos.get(v)
            if i is None:
                return None
            m |= 1 << i
        return m

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self.facet_sets() == other.facet_sets()

    def __hash__(self) -> int:
        return hash((frozenset(self.vertices), frozenset(self.facet_sets())))

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} ambient vertices, {len(self._facets)} facets)"

    @property
    def facet_masks(self) -> tuple:
        return self._facets

    def facet_sets(self) -> set:
        return {frozenset(self.labels(f)) for f in self._facets}

    def is_void(self) -> bool:
        return not self._facets

    def facets(self) -> list[tuple]:
        return sorted((self.labels(f) for f in self._facets), key=lambda t: [self._pos[v] for v in t])

    def vertex_set(self) -> tuple:
        """V(Delta): ambient vertices v with {v} a face, in ambient order."""
        union = 0
        for f in self._facets:
            union |= f
        return self.labels(union)

    def dimension(self) -> int:
        if not self._facets:
            raise ValueError("the void complex has no dimension")
        return max(popcount(f) for f in self._facets) - 1

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self._facets}) <= 1

    def is_face_mask(self, m: int) -> bool:
        return any(m & ~f == 0 for f in self._facets)

    def is_face(self, labels: Iterable[Var]) -> bool:
        m = self._mask_or_none(labels)
        return m is not None and self.is_face_mask(m)

    def minimal_nonface_masks(self) -> tuple:
        if self._nonfaces is None:
            self._nonfaces = tuple(minimal_transversals(self._full ^ f for f in self._facets))
        return self._nonfaces

    def minimal_nonfaces(self) -> list[tuple]:
        return [self.labels(m) for m in self.minimal_nonface_masks()]

    # -- explicit faces ----------------------------------------------------

    def faces(self, cap: int = DEFAULT_FACE_CAP) -> list[int]:
        """All faces as masks, by backtracking that never extends a non-face.

        Raises FaceCapExceeded once more than ``cap`` faces are found.
        """
        if self._faces is not None:
            if len(self._faces) > cap:
                raise FaceCapExceeded(f"{len(self._faces)} faces exceed cap {cap}")
            return self._faces
        if not self._facets:
            self._faces = []
            return self._faces
        n = len(self.vertices)
        nonfaces = self.minimal_nonface_masks()
        # non-faces indexed by their highest bit: only those can be completed at step i
        by_top: list[list[int]] = [[] for _ in range(n)]
        for g in nonfaces:
            by_top[g.bit_length() - 1].append(g)
        out = [0]
        stack = [(0, 0)]
        while stack:
            face, start = stack.pop()
            for i in range(start, n):
                new = face | (1 << i)
                if any(new & g == g for g in by_top[i]):
                    continue
                out.append(new)
                if len(out) > cap:
                    raise FaceCapExceeded(
                        f"more than {cap} faces; use facet-based operations or raise the cap"
                    )
                stack.append((new, i + 1))
        out.sort(key=lambda m: (popcount(m), m))
        self._faces = out
        return out

    def has_explicit_faces(self) -> bool:
        return self._faces is not None

    def face_count(self, cap: int = DEFAULT_FACE_CAP) -> int:
        return len(self.faces(cap))

    def face_sets(self, cap: int = DEFAULT_FACE_CAP) -> set:
        return {frozenset(self.labels(m)) for m in self.faces(cap)}

    def edges(self) -> list[tuple]:
        """1-faces as label pairs in ambient order (facet-based)."""
        found = set()
        for f in self._facets:
            idx = [i for i in range(len(self.vertices)) if f >> i & 1]
            found.update(combinations(idx, 2))
        return [(self.vertices[i], self.vertices[j]) for i, j in sorted(found)]

    # -- derived complexes -------------------------------------------------

    def link(self, face: Iterable[Var]) -> "SimplicialComplex":
        face = tuple(face)
        m = self._mask_or_none(face)
        if m is None or not self.is_face_mask(m):
            raise ValueError(f"{face!r} is not a face")
        rest = [v for v in self.vertex_set() if v not in face]
        lk = SimplicialComplex(rest, ())
        lk._facets = tuple(maximal_masks(
            lk.mask(self.labels(f & ~m)) for f in self._facets if m & ~f == 0
        ))
        return lk

    def restrict(self, keep: Iterable[Var]) -> "SimplicialComplex":
        """Induced subcomplex on ``keep`` (faces contained in keep)."""
        keep = [v for v in self.vertices if v in set(keep)]
        km = self.mask(keep)
        sub = SimplicialComplex(keep, ())
        sub._facets = tuple(maximal_masks(sub.mask(self.labels(f & km)) for f in self._facets))
        return sub


# -- Stanley-Reisner correspondence ----------------------------------------


def complex_from_ideal(
    ideal: MonomialIdeal,
    vertices: Sequence[Var],
    face_cap: int | None = DEFAULT_FACE_CAP,
) -> SimplicialComplex:
    """The complex of finite A in V with x^A outside the squarefree ideal.

    Faces are materialised when their number fits under ``face_cap``;
    otherwise the complex stays in facet form.
    """
    if not all(g.is_squarefree() for g in ideal.generators):
        raise ValueError("Stanley-Reisner complex needs a squarefree monomial ideal")
    vertices = tuple(vertices)
    pos = set(vertices)
    for g in ideal.generators:
        if not set(g.support()) <= pos:
            raise ValueError(f"generator {g} is not supported on the vertex set")
    probe = SimplicialComplex(vertices, ())
    nonfaces = [probe.mask(g.support()) for g in ideal.generators]
    delta = SimplicialComplex._from_masks(vertices, nonfaces=nonfaces)
    if face_cap is not None:
        try:
            delta.faces(face_cap)
        except FaceCapExceeded:
            delta._faces = None
    return delta


def ideal_from_complex(delta: SimplicialComplex) -> MonomialIdeal:
    """Ideal generated by the minimal non-faces; already minimal."""
    gens = [Monomial.from_vars(delta.labels(m)) for m in delta.minimal_nonface_masks()]
    return MonomialIdeal(sorted(gens, key=Monomial.sort_key), squarefree=True)


# -- counting ---------------------------------------------------------------


def f_vector(delta: SimplicialComplex, cap: int = DEFAULT_FACE_CAP) -> tuple:
    """(f_{-1}, f_0, ..., f_dim): number of faces of each dimension."""
    if delta.is_void():
        return ()
    counts = [0] * (delta.dimension() + 2)
    for m in delta.faces(cap):
        counts[popcount(m)] += 1
    return tuple(counts)


def h_vector_from_f(f: Sequence[int]) -> tuple:
    d = len(f) - 1
    return tuple(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    )


def h_vector(delta: SimplicialComplex, cap: int = DEFAULT_FACE_CAP) -> tuple:
    return h_vector_from_f(f_vector(delta, cap))


def euler_characteristic(delta: SimplicialComplex, cap: int = DEFAULT_FACE_CAP) -> int:
    """Reduced Euler characteristic, sum over i >= -1 of (-1)^i f_i."""
    return sum((-1) ** (k - 1) * c for k, c in enumerate(f_vector(delta, cap)))


# -- homology -----------------------------------------------------------------


def boundary_matrix(faces_hi: Sequence[int], faces_lo: Sequence[int]) -> np.ndarray:
    """Signed incidence matrix, rows = faces of size k, cols = faces of size k - 1."""
    col = {m: j for j, m in enumerate(faces_lo)}
    mat = np.zeros((len(faces_hi), len(faces_lo)), dtype=np.int64)
    for r, m in enumerate(faces_hi):
        bits = m
        k = 0
        while bits:
            low = bits & -bits
            mat[r, col[m ^ low]] = -1 if k % 2 else 1
            bits ^= low
            k += 1
    return mat


def reduced_homology_ranks(
    delta: SimplicialComplex, p: int = DEFAULT_PRIME, cap: int = DEFAULT_FACE_CAP
) -> list[int]:
    """Betti numbers of reduced homology over F_p, indexed -1 .. dim."""
    if delta.is_void():
        raise ValueError("reduced homology needs a nonempty complex")
    dim = delta.dimension()
    by_size: list[list[int]] = [[] for _ in range(dim + 2)]
    for m in delta.faces(cap):
        by_size[popcount(m)].append(m)
    # rank of the boundary from size-k faces to size-(k-1) faces, k = 1 .. dim+1
    ranks = [0] * (dim + 3)
    for k in range(1, dim + 2):
        ranks[k] = rank_mod_p(boundary_matrix(by_size[k], by_size[k - 1]), p)
    return [len(by_size[k]) - ranks[k] - ranks[k + 1] for k in range(dim + 2)]


# -- subcomplexes ----------------------------------------------------------------


def is_subcomplex(delta: SimplicialComplex, sigma: SimplicialComplex) -> bool:
    return all(sigma.is_face(delta.labels(f)) for f in delta.facet_masks)


def is_full_in(delta: SimplicialComplex, sigma: SimplicialComplex) -> bool:
    """Every face of sigma on V(delta) is a face of delta (facet-based test)."""
    vd = set(delta.vertex_set())
    for g in sigma.facet_masks:
        trace = [v for v in sigma.labels(g) if v in vd]
        if not delta.is_face(trace):
            return False
    return True


@dataclass(frozen=True)
class FullnessReport:
    subcomplex: bool
    full: bool
    projection_route: bool
    inclusion_route: bool
    inclusion_route_ambient: bool | None

    @property
    def combinatorial(self) -> bool:
        return self.subcomplex and self.full

    @property
    def ideal_route(self) -> bool:
        return self.projection_route and self.inclusion_route


def fullness_report(delta: SimplicialComplex, sigma: SimplicialComplex) -> FullnessReport:
    """Both characterisations of a full subcomplex.

    The ideal route compares pi(I_sigma) with I_delta and iota(I_delta) with
    I_sigma, taking I_delta on V(delta).  ``inclusion_route_ambient`` repeats
    the iota test on delta's whole ambient set; it can fail for a full
    subcomplex when an ambient non-vertex of delta is a vertex of sigma.
    """
    vd = delta.vertex_set()
    if not set(vd) <= set(sigma.vertices):
        raise ValueError("V(delta) is not contained in the ambient vertex set of sigma")
    vd_set = set(vd)
    sub = is_subcomplex(delta, sigma)
    full = is_full_in(delta, sigma)

    projection = True
    for g in sigma.minimal_nonfaces():
        if all(v in vd_set for v in g) and delta.is_face(g):
            projection = False
            break

    own_nonfaces = [g for g in delta.minimal_nonfaces() if all(v in vd_set for v in g)]
    inclusion = all(not sigma.is_face(g) for g in own_nonfaces)

    ambient = None
    if set(delta.vertices) <= set(sigma.vertices):
        ambient = all(not sigma.is_face(g) for g in delta.minimal_nonfaces())
    return FullnessReport(sub, full, projection, inclusion, ambient)


def is_full_subcomplex(delta: SimplicialComplex, sigma: SimplicialComplex) -> bool:
    rep = fullness_report(delta, sigma)
    if rep.combinatorial != rep.ideal_route or rep.subcomplex != rep.projection_route:
        raise InconsistencyError(f"face test and ideal test disagree: {rep}")
    return rep.combinatorial


# -- drawing --------------------------------------------------------------------


def one_skeleton_dot(delta: SimplicialComplex, name: str = "complex", include_ambient: bool = False) -> str:
    """DOT text for the vertices and edges of delta, in ambient order.

    With ``include_ambient`` the ambient non-vertices are drawn dashed.
    """
    verts = set(delta.vertex_set())
    lines = [f'graph "{name}" {{']
    for v in delta.vertices:
        if v in verts:
            lines.append(f'  "{var_name(v)}";')
        elif include_ambient:
            lines.append(f'  "{var_name(v)}" [style=dashed];')
    for u, v in delta.edges():
        lines.append(f'  "{var_name(u)}" -- "{var_name(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
