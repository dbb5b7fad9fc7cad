"""Partial permutations, Schubert determinantal ideals and their antidiagonal degenerations."""

from __future__ import annotations

import re
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .cm import verify_theorem_a_hypotheses
from .complex import DEFAULT_FACE_CAP, FaceCapExceeded, SimplicialComplex, complex_from_ideal, fullness_report
from .groebner import (
    DEFAULT_PAIR_BUDGET,
    NotGroebnerError,
    check_initial_union,
    check_order_compatibility,
    groebner_report,
    leading_monomial,
    remainder,
)
from .linalg import DEFAULT_PRIME
from .monomial import Monomial, MonomialIdeal, minimal_generators
from .order import AntidiagonalOmega2, Restriction, TermOrder
from .polynomial import Field, Polynomial, PrimeField, RationalField
from .sop import DEFAULT_BUDGET


# -- permutations -------------------------------------------------------------


@dataclass(frozen=True)
class PartialPermutation:
    """An injection [m] -> [n] given by its images sigma(1), ..., sigma(m)."""

    images: tuple
    n: int = 0

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", imgs)
        if len(set(imgs)) != len(imgs):
            raise ValueError(f"images {imgs} repeat a value")
        if any(x < 1 for x in imgs):
            raise ValueError("images must be positive")
        width = max(imgs, default=0)
        n = self.n or width
        if n < width:
            raise ValueError(f"width {n} is smaller than the largest image {width}")
        if len(imgs) > n:
            raise ValueError(f"domain size {len(imgs)} exceeds width {n}")
        object.__setattr__(self, "n", n)

    @property
    def m(self) -> int:
        return len(self.images)

    @classmethod
    def parse(cls, text: str, n: int = 0) -> "PartialPermutation":
        """One-line notation: "2 5 3 1", "2,5,3,1" or, with single digits, "2531"."""
        parts = re.split(r"[\s,]+", text.strip())
        if len(parts) == 1 and parts[0].isdigit() and len(parts[0]) > 1:
            parts = list(parts[0])
        try:
            return cls(tuple(int(p) for p in parts if p), n)
        except ValueError as exc:
            raise ValueError(f"cannot parse partial permutation {text!r}: {exc}") from None

    def __call__(self, j: int) -> int:
        return self.images[j - 1]

    def __str__(self) -> str:
        return " ".join(map(str, self.images))

    def permutation_point(self) -> dict:
        """The 0/1 matrix [sigma] as a point: x_{j, sigma(j)} = 1, all other entries 0."""
        return {(j, s): 1 for j, s in enumerate(self.images, start=1)}


class InfinitePermutation:
    """A bijection of the positive integers that can be truncated."""

    def __call__(self, k: int) -> int:
        raise NotImplementedError

    def truncate(self, m: int) -> PartialPermutation:
        if m < 1:
            raise ValueError("truncation level must be at least 1")
        return PartialPermutation(tuple(self(k) for k in range(1, m + 1)))

    def describe(self) -> str:
        raise NotImplementedError


class FinitelySupported(InfinitePermutation):
    """Identity outside a finite set; ``mapping`` holds the moved points."""

    def __init__(self, mapping: dict | None = None):
        mapping = {int(a): int(b) for a, b in (mapping or {}).items() if int(a) != int(b)}
        if any(a < 1 or b < 1 for a, b in mapping.items()):
            raise ValueError("permutation entries must be positive")
        if set(mapping) != set(mapping.values()):
            raise ValueError("moved points do not form a bijection on their support")
        self.mapping = mapping

    def __call__(self, k: int) -> int:
        return self.mapping.get(k, k)

    def __eq__(self, other):
        return isinstance(other, FinitelySupported) and other.mapping == self.mapping

    def __repr__(self) -> str:
        return f"FinitelySupported({self.mapping})"

    @classmethod
    def from_cycles(cls, text: str) -> "FinitelySupported":
        mapping: dict = {}
        cycles = re.findall(r"\(([^()]*)\)", text)
        if not cycles and text.strip() not in ("", "()"):
            raise ValueError(f"cannot parse cycle notation {text!r}")
        for body in cycles:
            pts = [int(x) for x in re.split(r"[\s,]+", body.strip()) if x]
            if len(set(pts)) != len(pts) or any(p in mapping for p in pts):
                raise ValueError(f"cycles in {text!r} are not disjoint")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                mapping[a] = b
        return cls(mapping)

    @classmethod
    def from_one_line(cls, images: Sequence[int]) -> "FinitelySupported":
        images = [int(x) for x in images]
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("one-line notation for a bijection must permute 1..k")
        return cls({k: s for k, s in enumerate(images, start=1)})

    @classmethod
    def parse(cls, text: str) -> "FinitelySupported":
        text = text.strip()
        if text in ("", "id", "identity", "()"):
            return cls()
        if "(" in text:
            return cls.from_cycles(text)
        return cls.from_one_line(PartialPermutation.parse(text).images)

    def describe(self) -> str:
        if not self.mapping:
            return "identity"
        seen, cycles = set(), []
        for a in sorted(self.mapping):
            if a in seen:
                continue
            cyc, b = [a], self.mapping[a]
            seen.add(a)
            while b != a:
                cyc.append(b)
                seen.add(b)
                b = self.mapping[b]
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(cycles)


class RuleEven(InfinitePermutation):
    """sigma(1) = 1, sigma(2k) = 2k + 1, sigma(2k + 1) = 2k."""

    def __call__(self, k: int) -> int:
        if k < 1:
            raise ValueError("domain is the positive integers")
        if k == 1:
            return 1
        return k + 1 if k % 2 == 0 else k - 1

    def __eq__(self, other):
        return isinstance(other, RuleEven)

    def __repr__(self) -> str:
        return "RuleEven()"

    def describe(self) -> str:
        return "even"


def truncate(sigma: InfinitePermutation, m: int) -> PartialPermutation:
    return sigma.truncate(m)


# -- rank conditions ----------------------------------------------------------


def rank_matrix(sigma: PartialPermutation) -> np.ndarray:
    """r[i-1, j-1] = #{k <= i : sigma(k) <= j}."""
    r = np.zeros((sigma.m, sigma.n), dtype=np.int64)
    for k, s in enumerate(sigma.images):
        r[k:, s - 1:] += 1
    return r


def ambient_variables(sigma: PartialPermutation) -> list:
    """Variables of T_m: the m x max(sigma) grid, in row-major order."""
    return [(i, j) for i in range(1, sigma.m + 1) for j in range(1, sigma.n + 1)]


def _perm_sign(p: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@lru_cache(maxsize=None)
def _leibniz(b: int) -> tuple:
    return tuple((p, _perm_sign(p)) for p in permutations(range(b)))


def minor(rows: Sequence[int], cols: Sequence[int], field: Field) -> Polynomial:
    """det [x_{r,c}] for the given rows and columns, in increasing order."""
    rows, cols = sorted(rows), sorted(cols)
    if len(rows) != len(cols):
        raise ValueError("a minor needs as many rows as columns")
    terms = {}
    for p, s in _leibniz(len(rows)):
        m = Monomial((((rows[i], cols[p[i]]), 1) for i in range(len(rows))))
        terms[m] = s
    return Polynomial(field, terms)


def antidiagonal_monomial(rows: Sequence[int], cols: Sequence[int]) -> Monomial:
    rows, cols = sorted(rows), sorted(cols)
    return Monomial(((r, c), 1) for r, c in zip(rows, reversed(cols)))


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple
    cols: tuple

    @property
    def size(self) -> int:
        return len(self.rows)


def minor_specs(sigma: PartialPermutation) -> list[MinorSpec]:
    """All (r_{k,l}+1)-minors of the top-left k x l blocks, deduplicated and sorted."""
    r = rank_matrix(sigma)
    found = set()
    for k in range(1, sigma.m + 1):
        for l in range(1, sigma.n + 1):
            b = int(r[k - 1, l - 1]) + 1
            if b > min(k, l):
                continue
            for rows in combinations(range(1, k + 1), b):
                for cols in combinations(range(1, l + 1), b):
                    found.add((b, rows, cols))
    return [MinorSpec(rows, cols) for _, rows, cols in sorted(found)]


def antidiagonal_order(sigma: PartialPermutation) -> TermOrder:
    """The omega^2 antidiagonal order restricted to T_m."""
    return Restriction(AntidiagonalOmega2(), ambient_variables(sigma))


def determinantal_ideal(sigma: PartialPermutation, field: Field | None = None,
                        essential: bool = False) -> list[Polynomial]:
    """Minor generators of I_sigma in T_m.

    With ``essential``, a minor is dropped when it reduces to zero against
    the kept minors of smaller size.
    """
    field = field or RationalField()
    specs = minor_specs(sigma)
    gens = [minor(s.rows, s.cols, field) for s in specs]
    if not essential:
        return gens
    order = antidiagonal_order(sigma)
    kept: list[Polynomial] = []
    smaller: list[Polynomial] = []
    size = 0
    for s, g in zip(specs, gens):
        if s.size != size:
            smaller = list(kept)
            size = s.size
        if smaller and remainder(g, smaller, order, check=False).is_zero():
            continue
        kept.append(g)
    return kept


def antidiagonal_initial_ideal(sigma: PartialPermutation, verify: bool = False,
                               gens: Sequence[Polynomial] | None = None) -> MonomialIdeal:
    """Leading monomials of the minors under the antidiagonal order, minimalised."""
    if gens is None:
        gens = determinantal_ideal(sigma, essential=not verify)
    order = antidiagonal_order(sigma)
    if verify and gens:
        rep = groebner_report(gens, order)
        if not rep.is_groebner:
            raise NotGroebnerError(f"minors of {sigma} are not a Groebner basis: {len(rep.failures)} S-pairs fail")
    lms = minimal_generators(leading_monomial(g, order) for g in gens)
    return MonomialIdeal(sorted(lms, key=order.key), squarefree=True)


def initial_complex(sigma: PartialPermutation, face_cap: int = DEFAULT_FACE_CAP,
                    facet_mode: bool = False, ideal: MonomialIdeal | None = None) -> SimplicialComplex:
    """Stanley-Reisner complex of the antidiagonal initial ideal on all of T_m."""
    if ideal is None:
        ideal = antidiagonal_initial_ideal(sigma)
    delta = complex_from_ideal(ideal, ambient_variables(sigma), face_cap)
    if not facet_mode and not delta.has_explicit_faces():
        raise FaceCapExceeded(f"more than {face_cap} faces for {sigma}; use facet mode or raise the cap")
    return delta


# -- the truncation maps ----------------------------------------------------------


def _groebner_level(sigma: PartialPermutation, field: Field):
    """Generators, order and basis flag for one truncation level."""
    gens = determinantal_ideal(sigma, field)
    order = antidiagonal_order(sigma)
    ok = groebner_report(gens, order).is_groebner if gens else True
    return gens, order, ok


def _tag(g: Polynomial, keep: set) -> str:
    if all(v in keep for v in g.variables()):
        return "generator"
    return "killed" if g.project(keep).is_zero() else "reduced"


def verify_inclusions(sigma: InfinitePermutation, m: int, field: Field | None = None,
                      levels: dict | None = None) -> dict:
    """iota_m(I_{sigma_m}) in I_{sigma_{m+1}} and pi_m(I_{sigma_{m+1}}) in I_{sigma_m}, by division."""
    field = field or RationalField()
    levels = levels if levels is not None else {}
    for k in (m, m + 1):
        if k not in levels:
            levels[k] = _groebner_level(sigma.truncate(k), field)
    small, big = sigma.truncate(m), sigma.truncate(m + 1)
    g_small, o_small, ok_small = levels[m]
    g_big, o_big, ok_big = levels[m + 1]
    keep = set(ambient_variables(small))

    up = []
    for g in g_small:
        r = remainder(g, g_big, o_big) if g_big else g
        up.append({"generator": g.to_text(o_small), "in_next": r.is_zero()})
    down = []
    for g in g_big:
        pg = g.project(keep)
        r = remainder(pg, g_small, o_small) if (g_small and not pg.is_zero()) else pg
        down.append({"generator": g.to_text(o_big), "case": _tag(g, keep), "in_previous": r.is_zero()})
    # pi o iota is the identity on T_m
    roundtrip = all(g.project(keep) == g for g in g_small)
    passed = ok_small and ok_big and roundtrip and all(e["in_next"] for e in up) and all(e["in_previous"] for e in down)
    return {
        "m": m,
        "groebner_bases": ok_small and ok_big,
        "iota": up,
        "pi": down,
        "pi_iota_identity": roundtrip,
        "passed": bool(passed),
    }


def truncated_union_check(sigma: InfinitePermutation, m_max: int, field: Field | None = None,
                          levels: dict | None = None) -> dict:
    """Finite shadow of I_sigma = union of eta_n(I_{sigma_n}) T.

    Every generator of I_{sigma_n}, n <= m_max, lies in I_{sigma_{m_max}};
    every generator of I_{sigma_{m_max+1}} written in the variables of
    T_{m_max} already lies in I_{sigma_{m_max}}.
    """
    field = field or RationalField()
    levels = levels if levels is not None else {}
    for k in range(1, m_max + 2):
        if k not in levels:
            levels[k] = _groebner_level(sigma.truncate(k), field)
    top_gens, top_order, _ = levels[m_max]
    keep = set(ambient_variables(sigma.truncate(m_max)))
    lower_ok = True
    for n in range(1, m_max):
        for g in levels[n][0]:
            if top_gens and remainder(g, top_gens, top_order).is_zero():
                continue
            lower_ok = False
    upper, upper_ok = 0, True
    for g in levels[m_max + 1][0]:
        if all(v in keep for v in g.variables()):
            upper += 1
            if not (top_gens and remainder(g, top_gens, top_order).is_zero()):
                upper_ok = False
    return {
        "m_max": m_max,
        "lower_levels_contained": lower_ok,
        "next_level_generators_in_top_variables": upper,
        "next_level_contained": upper_ok,
        "passed": lower_ok and upper_ok,
    }


# -- pipeline ----------------------------------------------------------------------


@dataclass
class PipelineReport:
    permutation: str
    m_max: int
    modulus: int
    seed: int
    levels: list = field(default_factory=list)
    inclusions: list = field(default_factory=list)
    union: dict = field(default_factory=dict)
    initial_union: dict = field(default_factory=dict)
    order_compatibility: list = field(default_factory=list)
    fullness: list = field(default_factory=list)
    chain: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    passed: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


def _ideal_text(ideal: MonomialIdeal) -> list[str]:
    return [str(g) for g in ideal.generators]


def theorem_d_pipeline(sigma: InfinitePermutation, m_max: int, p: int = DEFAULT_PRIME, seed: int = 0,
                       face_cap: int = DEFAULT_FACE_CAP, budget: int = DEFAULT_BUDGET,
                       pair_budget: int = DEFAULT_PAIR_BUDGET, compat_degree: int = 2) -> PipelineReport:
    """Verify the finite-truncation content of the flat-limit statement for I_sigma.

    Polynomial work (minors, Groebner bases, inclusions) is done over Q; the
    linear algebra on complexes is done over F_p.
    """
    if m_max < 1:
        raise ValueError("m_max must be at least 1")
    rep = PipelineReport(sigma.describe(), m_max, p, seed)
    field = RationalField()
    levels: dict = {}
    clock = time.perf_counter()

    complexes = []
    for m in range(1, m_max + 1):
        sm = sigma.truncate(m)
        levels[m] = _groebner_level(sm, field)
        gens, order, ok = levels[m]
        ideal = antidiagonal_initial_ideal(sm, gens=gens)
        delta = initial_complex(sm, face_cap, ideal=ideal)
        complexes.append(delta)
        rep.levels.append({
            "m": m,
            "images": list(sm.images),
            "n": sm.n,
            "ambient_variables": len(ambient_variables(sm)),
            "vertices": len(delta.vertex_set()),
            "generators": len(gens),
            "groebner_basis": ok,
            "initial_ideal": _ideal_text(ideal),
            "facets": len(delta.facet_masks),
            "faces": delta.face_count(face_cap),
            "dimension": delta.dimension(),
            "pure": delta.is_pure(),
        })
    rep.timings["ideals"] = round(time.perf_counter() - clock, 3)

    clock = time.perf_counter()
    rep.inclusions = [verify_inclusions(sigma, m, field, levels) for m in range(1, m_max)]
    rep.union = truncated_union_check(sigma, m_max, field, levels)
    rep.initial_union = _initial_union(levels, m_max, pair_budget)
    for m in range(1, m_max):
        small = set(ambient_variables(sigma.truncate(m)))
        big_order = levels[m + 1][1]
        c = check_order_compatibility(levels[m][1], big_order, small, big_order.variables,
                                      max_degree=compat_degree, field=PrimeField(p))
        rep.order_compatibility.append({
            "m": m, "inclusion_checked": c.inclusion_checked,
            "projection_checked": c.projection_checked, "counterexamples": c.counterexamples[:5],
            "passed": c.ok,
        })
    rep.timings["ideal_checks"] = round(time.perf_counter() - clock, 3)

    clock = time.perf_counter()
    for m in range(1, m_max):
        fr = fullness_report(complexes[m - 1], complexes[m])
        rep.fullness.append({
            "m": m,
            "subcomplex": fr.subcomplex,
            "combinatorial": fr.combinatorial,
            "projection_route": fr.projection_route,
            "inclusion_route": fr.inclusion_route,
            "inclusion_route_ambient": fr.inclusion_route_ambient,
            "passed": fr.combinatorial and fr.ideal_route,
        })
    chain = verify_theorem_a_hypotheses(complexes, complexes[-1], p, seed, budget, face_cap,
                                        ids=[f"sigma_{m}" for m in range(1, m_max + 1)])
    rep.chain = chain.to_dict()
    rep.timings["complex_checks"] = round(time.perf_counter() - clock, 3)

    rep.passed = bool(
        all(l["groebner_basis"] for l in rep.levels)
        and all(i["passed"] for i in rep.inclusions)
        and rep.union["passed"]
        and rep.initial_union["passed"]
        and all(c["passed"] for c in rep.order_compatibility)
        and all(f["passed"] for f in rep.fullness)
        and chain.passed
    )
    return rep


def _initial_union(levels: dict, m_max: int, pair_budget: int) -> dict:
    chain = [levels[m][0] for m in range(1, m_max + 1)]
    orders = [levels[m][1] for m in range(1, m_max + 1)]
    try:
        u = check_initial_union(chain, orders, levels[m_max][1], pair_budget)
    except NotGroebnerError as exc:
        return {"passed": False, "error": str(exc)}
    return {
        "initial_of_union": [str(m) for m in u.initial_of_union],
        "union_of_initials": [str(m) for m in u.union_of_initials],
        "passed": u.equal,
    }


def rank_matrix_text(r: np.ndarray) -> str:
    return "\n".join(" ".join(str(int(x)) for x in row) for row in r)
