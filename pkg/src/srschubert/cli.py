"""srschubert command line.

Exit codes: 0 pass, 1 verification failure, 2 usage or resource error.
Every JSON report carries the run configuration under "config".
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .cm import NotAnSopError, check_cm, verify_theorem_a_hypotheses
from .complex import (
    FaceCapExceeded,
    InconsistencyError,
    complex_from_ideal,
    f_vector,
    h_vector,
    ideal_from_complex,
    one_skeleton_dot,
)
from .config import FORMATS, RunConfig, env_defaults
from .groebner import NotGroebnerError, PairBudgetExceeded, buchberger, groebner_report, leading_monomial
from .order import order_from_name
from .schubert import (
    FinitelySupported,
    PartialPermutation,
    RuleEven,
    antidiagonal_initial_ideal,
    antidiagonal_order,
    determinantal_ideal,
    initial_complex,
    rank_matrix,
    theorem_d_pipeline,
)
from .serialize import (
    ParseError,
    complex_from_json,
    complex_to_json,
    dumps,
    ideal_from_json,
    ideal_to_json,
    load_json,
    polynomial_from_json,
    polynomial_to_json,
    sop_from_json,
    sop_to_json,
    var_from_json,
)
from .sop import GoodnessCapExceeded, SopBudgetExhausted, extend_good_sop, find_good_sop, is_good, stanley_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _field_arg(text: str):
    if text.upper() == "Q":
        return None
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"field must be a prime or Q, got {text!r}") from None


def _common() -> argparse.ArgumentParser:
    env = env_defaults()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("run configuration")
    g.add_argument("--field", type=_field_arg, default=32003, help="prime modulus, or Q (default 32003)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--face-cap", type=int, default=env["face_cap"])
    g.add_argument("--pair-budget", type=int, default=env["pair_budget"])
    g.add_argument("--sop-budget", type=int, default=64, help="random matrices tried per SOP search")
    g.add_argument("--format", choices=FORMATS, default="json", dest="output")
    g.add_argument("-v", "--verbose", action="count", default=0)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="srschubert", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sr = sub.add_parser("sr", help="Stanley-Reisner correspondence").add_subparsers(dest="action", required=True)
    a = sr.add_parser("from-ideal", parents=[common], help="complex of a squarefree monomial ideal")
    a.add_argument("--ideal", help="JSON file with 'generators' and optionally 'vertices'")
    a.add_argument("--gens", nargs="*", default=None, help="generators such as 'x[1]*x[2]'")
    a.add_argument("--vertices", nargs="*", default=None, help="ambient vertices such as 'x[1]' or 'x[1,2]'")
    a.set_defaults(func=cmd_sr_from_ideal)
    a = sr.add_parser("to-ideal", parents=[common], help="Stanley-Reisner ideal of a complex")
    a.add_argument("--complex", required=True)
    a.set_defaults(func=cmd_sr_to_ideal)

    a = sub.add_parser("check-cm", parents=[common], help="Reisner and SOP-quotient certificates")
    a.add_argument("--complex", required=True)
    a.add_argument("--sop", help="SOP matrix JSON; a good one is sampled when omitted")
    a.set_defaults(func=cmd_check_cm)

    a = sub.add_parser("verify-chain", parents=[common], help="chain hypotheses for a flat direct limit")
    a.add_argument("--chain", required=True, help="JSON with 'complexes' and optionally 'top'")
    a.set_defaults(func=cmd_verify_chain)

    sop = sub.add_parser("sop", help="good systems of parameters").add_subparsers(dest="action", required=True)
    a = sop.add_parser("find", parents=[common])
    a.add_argument("--complex", required=True)
    a.set_defaults(func=cmd_sop_find)
    a = sop.add_parser("extend", parents=[common])
    a.add_argument("--sop", required=True, help="good SOP of the subcomplex")
    a.add_argument("--complex", required=True, help="the subcomplex")
    a.add_argument("--to", required=True, help="the complex to extend to")
    a.set_defaults(func=cmd_sop_extend)

    gb = sub.add_parser("groebner", help="Groebner basis checks").add_subparsers(dest="action", required=True)
    a = gb.add_parser("check", parents=[common])
    a.add_argument("--polys", help="JSON file: list of polynomial strings or term lists")
    a.add_argument("--poly", action="append", default=[], help="a polynomial, repeatable")
    a.add_argument("--order", default="antidiag", choices=["antidiag", "lex"])
    a.add_argument("--complete", action="store_true", help="also run Buchberger completion")
    a.set_defaults(func=cmd_groebner_check)

    sch = sub.add_parser("schubert", help="Schubert determinantal ideals").add_subparsers(dest="action", required=True)
    a = sch.add_parser("rank", parents=[common])
    a.add_argument("perm")
    a.set_defaults(func=cmd_schubert_rank)
    a = sch.add_parser("ideal", parents=[common])
    a.add_argument("perm")
    a.add_argument("--essential", action="store_true", help="drop minors implied by smaller ones")
    a.set_defaults(func=cmd_schubert_ideal)
    a = sch.add_parser("initial", parents=[common])
    a.add_argument("perm")
    a.add_argument("--verify", action="store_true", help="certify the minors as a Groebner basis")
    a.set_defaults(func=cmd_schubert_initial)
    a = sch.add_parser("complex", parents=[common])
    a.add_argument("perm")
    a.add_argument("--dot", action="store_true", help="emit the 1-skeleton as DOT")
    a.add_argument("--facet-mode", action="store_true", help="do not enumerate faces")
    a.set_defaults(func=cmd_schubert_complex)
    for target in (sch, sub):
        a = target.add_parser("pipeline", parents=[common], help="finite-truncation verification pipeline")
        src = a.add_mutually_exclusive_group(required=True)
        src.add_argument("--rule", choices=["even"])
        src.add_argument("--perm", help="cycles '(1 2)(3 5)' or one-line '2 1 3'")
        a.add_argument("--mmax", type=int, required=True)
        a.set_defaults(func=cmd_pipeline)
    return parser


# -- helpers ------------------------------------------------------------------


def _config(args) -> RunConfig:
    try:
        return RunConfig(args.field, args.seed, args.face_cap, args.pair_budget, args.sop_budget,
                         args.output, args.verbose)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(cfg: RunConfig, command: str, result: dict, passed: bool, text: str | None = None,
          dot: str | None = None) -> int:
    if cfg.output == "dot":
        if dot is None:
            raise UsageError(f"{command} has no DOT output")
        sys.stdout.write(dot)
    elif cfg.output == "text" and text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(dumps({"command": command, "config": cfg.to_dict(), "result": result, "passed": passed}))
    return EXIT_OK if passed else EXIT_FAIL


def _load_complex(path: str):
    return complex_from_json(load_json(path))


def _permutation(text: str) -> PartialPermutation:
    return PartialPermutation.parse(text)


def _need_prime(cfg: RunConfig, what: str) -> int:
    if cfg.rational:
        raise UsageError(f"{what} runs over a prime field; pass --field p")
    return cfg.modulus


# -- commands ------------------------------------------------------------------


def cmd_sr_from_ideal(args, cfg):
    if args.ideal:
        data = load_json(args.ideal)
        ideal = ideal_from_json(data)
        verts = [var_from_json(v) for v in data.get("vertices", [])] if isinstance(data, dict) else []
    elif args.gens is not None:
        ideal = ideal_from_json([g for g in args.gens])
        verts = []
    else:
        raise UsageError("give --ideal FILE or --gens")
    if args.vertices:
        verts = [var_from_json(v) for v in args.vertices]
    if not verts:
        verts = sorted(ideal.support())
    delta = complex_from_ideal(ideal, verts, cfg.face_cap)
    result = complex_to_json(delta)
    result["minimal_nonfaces"] = ideal_to_json(ideal_from_complex(delta))["generators"]
    if delta.has_explicit_faces():
        result["f_vector"] = list(f_vector(delta, cfg.face_cap))
        result["h_vector"] = list(h_vector(delta, cfg.face_cap))
    text = "\n".join(" ".join(map(str, f)) for f in delta.facets())
    return _emit(cfg, "sr from-ideal", result, True, text=text, dot=one_skeleton_dot(delta))


def cmd_sr_to_ideal(args, cfg):
    delta = _load_complex(args.complex)
    ideal = ideal_from_complex(delta)
    result = ideal_to_json(ideal)
    result["vertices"] = complex_to_json(delta)["vertices"]
    return _emit(cfg, "sr to-ideal", result, True, text="\n".join(result["generators"]))


def cmd_check_cm(args, cfg):
    p = _need_prime(cfg, "check-cm")
    delta = _load_complex(args.complex)
    if args.sop:
        M = sop_from_json(load_json(args.sop), delta)
        rep = check_cm(delta, p, cfg.seed, cfg.sop_budget, args.complex, cfg.face_cap, M=M)
    else:
        rep = check_cm(delta, p, cfg.seed, cfg.sop_budget, args.complex, cfg.face_cap)
    result = rep.to_dict()
    text = f"reisner={rep.reisner_pass} quotient={rep.sop_quotient_pass} h={rep.h_vector}"
    return _emit(cfg, "check-cm", result, rep.cohen_macaulay, text=text)


def cmd_verify_chain(args, cfg):
    p = _need_prime(cfg, "verify-chain")
    data = load_json(args.chain)
    items = data["complexes"] if isinstance(data, dict) else data
    chain = [complex_from_json(c) for c in items]
    if not chain:
        raise UsageError("the chain is empty")
    top = complex_from_json(data["top"]) if isinstance(data, dict) and "top" in data else chain[-1]
    rep = verify_theorem_a_hypotheses(chain, top, p, cfg.seed, cfg.sop_budget, cfg.face_cap)
    return _emit(cfg, "verify-chain", rep.to_dict(), rep.passed, text=f"passed={rep.passed}")


def cmd_sop_find(args, cfg):
    p = _need_prime(cfg, "sop find")
    delta = _load_complex(args.complex)
    M = find_good_sop(delta, p, cfg.seed, cfg.sop_budget)
    result = sop_to_json(M)
    result.update(good=is_good(M), stanley=stanley_check(M))
    return _emit(cfg, "sop find", result, True, text="\n".join(" ".join(map(str, r)) for r in M.rows))


def cmd_sop_extend(args, cfg):
    delta = _load_complex(args.complex)
    sigma = _load_complex(args.to)
    M = sop_from_json(load_json(args.sop), delta)
    if not cfg.rational and M.modulus != cfg.modulus:
        raise UsageError(f"SOP is over F_{M.modulus} but --field is {cfg.modulus}")
    N = extend_good_sop(M, sigma, cfg.seed, cfg.sop_budget)
    result = sop_to_json(N)
    result.update(good=is_good(N), block_equal=N.block(M.d, M.n) == M.rows)
    return _emit(cfg, "sop extend", result, True, text="\n".join(" ".join(map(str, r)) for r in N.rows))


def cmd_groebner_check(args, cfg):
    field = cfg.field()
    raw = list(load_json(args.polys)) if args.polys else []
    raw += args.poly
    if not raw:
        raise UsageError("give --polys FILE or --poly")
    polys = [polynomial_from_json(r, field) for r in raw]
    order = order_from_name(args.order)
    rep = groebner_report(polys, order)
    result = {
        "order": args.order,
        "field": field.name,
        "is_groebner": rep.is_groebner,
        "pairs_checked": rep.pairs_checked,
        "leading_monomials": [str(leading_monomial(f, order)) for f in polys if not f.is_zero()],
        "failures": [{"pair": [i, j], "remainder": polynomial_to_json(r, order)} for i, j, r in rep.failures],
    }
    if args.complete:
        basis = buchberger(polys, order, cfg.pair_budget)
        result["completion"] = [polynomial_to_json(g, order) for g in basis]
    return _emit(cfg, "groebner check", result, rep.is_groebner, text=f"is_groebner={rep.is_groebner}")


def cmd_schubert_rank(args, cfg):
    sigma = _permutation(args.perm)
    r = rank_matrix(sigma)
    result = {"permutation": list(sigma.images), "m": sigma.m, "n": sigma.n, "rank_matrix": r.tolist()}
    text = "\n".join(" ".join(str(int(x)) for x in row) for row in r)
    return _emit(cfg, "schubert rank", result, True, text=text)


def cmd_schubert_ideal(args, cfg):
    sigma = _permutation(args.perm)
    gens = determinantal_ideal(sigma, cfg.field(), essential=args.essential)
    order = antidiagonal_order(sigma)
    result = {
        "permutation": list(sigma.images),
        "essential": args.essential,
        "generators": [polynomial_to_json(g, order) for g in gens],
    }
    text = "\n".join(g.to_text(order) for g in gens)
    return _emit(cfg, "schubert ideal", result, True, text=text)


def cmd_schubert_initial(args, cfg):
    sigma = _permutation(args.perm)
    gens = determinantal_ideal(sigma, cfg.field(), essential=not args.verify)
    ideal = antidiagonal_initial_ideal(sigma, verify=args.verify, gens=gens)
    result = {"permutation": list(sigma.images), "verified": args.verify, **ideal_to_json(ideal)}
    return _emit(cfg, "schubert initial", result, True, text="\n".join(result["generators"]))


def cmd_schubert_complex(args, cfg):
    sigma = _permutation(args.perm)
    delta = initial_complex(sigma, cfg.face_cap, facet_mode=args.facet_mode)
    name = f"Delta_{''.join(map(str, sigma.images))}"
    dot = one_skeleton_dot(delta, name=name)
    if args.dot:
        cfg = RunConfig(cfg.modulus, cfg.seed, cfg.face_cap, cfg.pair_budget, cfg.sop_budget, "dot", cfg.verbosity)
    result = complex_to_json(delta)
    result.update(
        permutation=list(sigma.images),
        vertex_set=[list(v) for v in delta.vertex_set()],
        dimension=delta.dimension(),
        pure=delta.is_pure(),
        edges=[[list(u), list(v)] for u, v in delta.edges()],
    )
    if delta.has_explicit_faces():
        result["f_vector"] = list(f_vector(delta, cfg.face_cap))
        result["h_vector"] = list(h_vector(delta, cfg.face_cap))
    return _emit(cfg, "schubert complex", result, True, dot=dot)


def cmd_pipeline(args, cfg):
    p = _need_prime(cfg, "pipeline")
    if args.mmax < 1:
        raise UsageError("--mmax must be at least 1")
    sigma = RuleEven() if args.rule == "even" else FinitelySupported.parse(args.perm)
    rep = theorem_d_pipeline(sigma, args.mmax, p, cfg.seed, cfg.face_cap, cfg.sop_budget, cfg.pair_budget)
    result = rep.to_dict()
    result.pop("timings")  # keeps output byte-identical across runs
    return _emit(cfg, "schubert pipeline", result, rep.passed, text=f"passed={rep.passed}")


_RESOURCE_ERRORS = (FaceCapExceeded, PairBudgetExceeded, SopBudgetExhausted, GoodnessCapExceeded, MemoryError)
_INPUT_ERRORS = (UsageError, ParseError, ValueError, KeyError, TypeError, OSError, NotAnSopError)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:  # malformed environment override
        print(f"srschubert: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = _config(args)
        return args.func(args, cfg)
    except InconsistencyError as exc:
        print(f"srschubert: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NotGroebnerError as exc:
        print(f"srschubert: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except _RESOURCE_ERRORS as exc:
        print(f"srschubert: resource limit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _INPUT_ERRORS as exc:
        print(f"srschubert: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
