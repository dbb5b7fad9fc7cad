"""Text and JSON forms of monomials, polynomials, ideals, complexes and SOP matrices.

Variables print as x[n] or x[i,j]; in JSON they are an int or a pair [i, j].
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .complex import SimplicialComplex
from .monomial import Monomial, MonomialIdeal, Var
from .polynomial import Field, Polynomial
from .sop import SopMatrix

_VAR = r"x\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]"
_FACTOR = re.compile(_VAR + r"(?:\s*\^\s*(\d+))?")
_TERM = re.compile(r"([+-]?)\s*([^+-]+)")


class ParseError(ValueError):
    pass


def var_from_json(v) -> Var:
    if isinstance(v, bool):
        raise ParseError(f"not a variable: {v!r}")
    if isinstance(v, int):
        return v
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(isinstance(x, int) for x in v):
        return (v[0], v[1])
    if isinstance(v, str):
        m = re.fullmatch(r"\s*" + _VAR + r"\s*", v)
        if m:
            return int(m.group(1)) if m.group(2) is None else (int(m.group(1)), int(m.group(2)))
    raise ParseError(f"not a variable: {v!r}")


def var_to_json(v: Var):
    return list(v) if isinstance(v, tuple) else v


def parse_monomial(text: str) -> Monomial:
    """'1', 'x[3]' or 'x[1,2]*x[2,1]^2'."""
    text = text.strip()
    if text == "1":
        return Monomial.one()
    exps: dict = {}
    for part in text.split("*"):
        m = _FACTOR.fullmatch(part.strip())
        if not m:
            raise ParseError(f"bad monomial factor {part!r} in {text!r}")
        v = int(m.group(1)) if m.group(2) is None else (int(m.group(1)), int(m.group(2)))
        exps[v] = exps.get(v, 0) + int(m.group(3) or 1)
    return Monomial(exps)


def _parse_coefficient(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except ValueError:
        raise ParseError(f"bad coefficient {text!r}") from None


def parse_polynomial(text: str, field: Field) -> Polynomial:
    """Sums of terms 'c*x[i,j]^e*...' with c an integer or fraction."""
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return Polynomial.zero(field)
    terms: dict = {}
    pos = 0
    for match in _TERM.finditer(s):
        if match.start() != pos:
            raise ParseError(f"cannot parse {text!r}")
        pos = match.end()
        sign = -1 if match.group(1) == "-" else 1
        body = match.group(2)
        factors = body.split("*")
        coef = Fraction(1)
        if not factors[0].startswith("x"):
            coef = _parse_coefficient(factors[0])
            factors = factors[1:]
        mono = parse_monomial("*".join(factors)) if factors else Monomial.one()
        terms[mono] = terms.get(mono, 0) + sign * coef
    if pos != len(s):
        raise ParseError(f"cannot parse {text!r}")
    return Polynomial(field, terms)


def polynomial_to_json(f: Polynomial, order=None) -> list:
    """[[coefficient as string, monomial text], ...] largest term first when an order is given."""
    mons = sorted(f.terms, key=order.key if order else Monomial.sort_key, reverse=True)
    return [[str(f.field.signed(f.terms[m])), str(m)] for m in mons]


def polynomial_from_json(data, field: Field) -> Polynomial:
    if isinstance(data, str):
        return parse_polynomial(data, field)
    return Polynomial(field, {parse_monomial(m): _parse_coefficient(str(c)) for c, m in data})


def ideal_to_json(ideal: MonomialIdeal) -> dict:
    return {"generators": [str(g) for g in ideal.generators], "squarefree": ideal.squarefree}


def ideal_from_json(data) -> MonomialIdeal:
    gens = data["generators"] if isinstance(data, dict) else data
    mons = [parse_monomial(g) if isinstance(g, str) else Monomial.from_vars(var_from_json(v) for v in g) for g in gens]
    return MonomialIdeal(mons, squarefree=all(m.is_squarefree() for m in mons))


def complex_to_json(delta: SimplicialComplex) -> dict:
    return {
        "vertices": [var_to_json(v) for v in delta.vertices],
        "facets": [[var_to_json(v) for v in f] for f in delta.facets()],
    }


def complex_from_json(data: dict) -> SimplicialComplex:
    if "vertices" not in data:
        raise ParseError("complex JSON needs a 'vertices' list")
    verts = [var_from_json(v) for v in data["vertices"]]
    if "facets" in data:
        return SimplicialComplex(verts, [[var_from_json(v) for v in f] for f in data["facets"]])
    if "faces" in data:
        return SimplicialComplex.from_faces(verts, [[var_from_json(v) for v in f] for f in data["faces"]])
    raise ParseError("complex JSON needs 'facets' or 'faces'")


def sop_to_json(M: SopMatrix) -> dict:
    return {"modulus": M.modulus, "vertices": [var_to_json(v) for v in M.vertices], "rows": [list(r) for r in M.rows]}


def sop_from_json(data: dict, delta: SimplicialComplex | None = None) -> SopMatrix:
    return SopMatrix(data["rows"], int(data["modulus"]), [var_from_json(v) for v in data["vertices"]], delta)


def load_json(path: str | Path):
    with open(path) as fh:
        return json.load(fh)


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def _default(o):
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "item"):
        return o.item()
    if hasattr(o, "tolist"):
        return o.tolist()
    raise TypeError(f"cannot serialise {type(o).__name__}")
