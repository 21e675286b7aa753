"""Command-line front end.  Every command prints one JSON document.

Exit codes: 0 success, 1 parse or usage error, 2 invalid triple, 3 conditions
fail (or "no" for equiv), 4 incomparable quadruple, 5 input too large,
6 "unknown" for equiv, 8 search or precision limits.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import classify, conditions, interpolate, serialize
from .errors import (
    BadCoords,
    ConditionsFail,
    DimensionMismatch,
    InternalProofGap,
    InvalidField,
    ModeMismatch,
    NotAMember,
    NotComparable,
    ParseError,
    PrecisionCap,
    ReducibleField,
    SearchBudget,
    TooLarge,
)
from .triple import FINITELY_GENERATED, fmt_set, mask_of, validate

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_INVALID = 2
EXIT_FAIL = 3
EXIT_NOT_COMPARABLE = 4
EXIT_TOO_LARGE = 5
EXIT_UNKNOWN = 6
EXIT_LIMIT = 8


class _Exit(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


def _fail(code: int, kind: str, message: str, **extra):
    raise _Exit(code, {"error": kind, "message": message, **extra})


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _fail(EXIT_PARSE, "usage", message)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        _fail(EXIT_PARSE, "io", str(exc))
    except json.JSONDecodeError as exc:
        _fail(EXIT_PARSE, "parse", f"{path}: {exc}")


def _load_triple(path: str, args, require_valid: bool = True):
    obj = _load_json(path)
    try:
        t = serialize.triple_from_json(obj, args.precision_cap)
    except ParseError as exc:
        _fail(EXIT_PARSE, "parse", str(exc))
    except (InvalidField, ReducibleField) as exc:
        _fail(EXIT_INVALID, "invalid_field", str(exc))
    if require_valid:
        rep = validate(t)
        if not rep.ok:
            _fail(EXIT_INVALID, "invalid_triple", "triple is not well formed",
                  report=serialize.validation_to_json(rep))
    return t


def _index_list(text: str, n: int) -> int:
    text = text.strip()
    if not text:
        return 0
    try:
        idx = [int(s) for s in text.split(",")]
    except ValueError:
        _fail(EXIT_PARSE, "usage", f"bad index list {text!r}")
    if any(not 1 <= i <= n for i in idx):
        _fail(EXIT_PARSE, "usage", f"indices must lie in 1..{n}")
    return mask_of(i - 1 for i in idx)


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    t = _load_triple(args.file, args, require_valid=False)
    rep = validate(t)
    return (EXIT_OK if rep.ok else EXIT_INVALID), serialize.validation_to_json(rep)


def cmd_check(args):
    t = _load_triple(args.file, args)
    rep = conditions.check_all(t)
    return (EXIT_OK if rep.overall else EXIT_FAIL), serialize.report_to_json(rep)


def _run_interpolation(t, quad, budget):
    res = interpolate.interpolant(t, *quad, node_budget=budget)
    return {"z": serialize.element_to_json(res.z), "trace": res.trace}


def cmd_interpolate(args):
    t = _load_triple(args.file, args)
    if args.random is None and args.quadruple is None:
        _fail(EXIT_PARSE, "usage", "give a quadruple file or --random K")
    try:
        if args.random is not None:
            rng = random.Random(args.seed)
            out = []
            for _ in range(args.random):
                quad = interpolate.random_quadruple(t, rng, args.radius)
                entry = {k: serialize.element_to_json(x) for k, x in zip(("a1", "a2", "b1", "b2"), quad)}
                entry.update(_run_interpolation(t, quad, args.search_budget))
                out.append(entry)
            return EXIT_OK, {"seed": args.seed, "results": out}
        quad = _parse_quadruple(t, args.quadruple)
        return EXIT_OK, _run_interpolation(t, quad, args.search_budget)
    except ConditionsFail as exc:
        _fail(EXIT_FAIL, "conditions_fail", str(exc),
              report=serialize.report_to_json(conditions.check_all(t)))
    except NotComparable as exc:
        _fail(EXIT_NOT_COMPARABLE, "not_comparable", str(exc))
    except InternalProofGap as exc:
        _fail(EXIT_LIMIT, "internal_proof_gap", str(exc), trace=exc.trace)


def _parse_quadruple(t, path):
    try:
        return serialize.quadruple_from_json(_load_json(path), t)
    except ParseError as exc:
        _fail(EXIT_PARSE, "parse", str(exc))


def cmd_oracle(args):
    t = _load_triple(args.file, args)
    if t.mode != FINITELY_GENERATED:
        _fail(EXIT_PARSE, "usage", "the oracle needs a finitely generated group")
    quad = _parse_quadruple(t, args.quadruple)
    z = interpolate.oracle_search(t, *quad, bound=args.bound)
    out = {"bound": args.bound, "found": z is not None}
    if z is not None:
        out["z"] = serialize.element_to_json(z)
    return EXIT_OK, out


def cmd_density(args):
    t = _load_triple(args.file, args)
    S = t.full if args.S is None else _index_list(args.S, t.n)
    coords = S if args.coords is None else _index_list(args.coords, t.n)
    try:
        dense = conditions.is_dense_projection(t, S, coords)
    except (NotAMember, BadCoords) as exc:
        _fail(EXIT_PARSE, "usage", str(exc))
    return EXIT_OK, {"S": fmt_set(S), "coords": fmt_set(coords), "dense": dense}


def cmd_classify(args):
    if args.n < 1:
        _fail(EXIT_PARSE, "usage", "n must be positive")
    entries = classify.enumerate_Dn(args.n)
    return EXIT_OK, [e.to_json() for e in entries]


def cmd_canon(args):
    t = _load_triple(args.file, args)
    enc = classify.canon_form(t.faces)
    return EXIT_OK, {"n": t.n, "members": [fmt_set(S) for S, _ in enc],
                     "pgeq": [fmt_set(P) for _, P in enc]}


def cmd_equiv(args):
    t1 = _load_triple(args.file1, args)
    t2 = _load_triple(args.file2, args)
    try:
        eq = classify.equivalent_triple(t1, t2, args.budget)
    except (ModeMismatch, DimensionMismatch) as exc:
        _fail(EXIT_PARSE, "usage", str(exc))
    out = {"verdict": eq.verdict}
    if eq.reason:
        out["reason"] = eq.reason
    if eq.verdict == "yes":
        out["sigma"] = [i + 1 for i in eq.sigma]
        out["phi"] = [[serialize.elem_to_json(x) for x in row] for row in eq.phi]
        if eq.U is not None:
            out["U"] = [[str(x) for x in row] for row in eq.U]
    code = {"yes": EXIT_OK, "no": EXIT_FAIL}.get(eq.verdict, EXIT_UNKNOWN)
    return code, out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="riesz", description=__doc__.splitlines()[0])
    p.add_argument("--precision-cap", type=int, default=None,
                   help="maximum bisection depth for sign decisions")
    p.add_argument("--search-budget", type=int, default=interpolate.DEFAULT_SEARCH_BUDGET,
                   help="node budget for interpolation searches")
    p.add_argument("--seed", type=int, default=0, help="seed for --random")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check well-formedness")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", help="decide the interpolation conditions")
    s.add_argument("file")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("interpolate", help="construct an interpolant")
    s.add_argument("file")
    s.add_argument("quadruple", nargs="?")
    s.add_argument("--random", type=int, metavar="K", help="interpolate K random quadruples")
    s.add_argument("--radius", type=int, default=3, help="coefficient range for --random")
    s.set_defaults(func=cmd_interpolate)

    s = sub.add_parser("oracle", help="brute-force interpolant search")
    s.add_argument("file")
    s.add_argument("quadruple")
    s.add_argument("--bound", type=int, default=12)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("density", help="is a projection of an ideal dense")
    s.add_argument("file")
    s.add_argument("--S", help="member, comma separated 1-based indices (default: all)")
    s.add_argument("--coords", help="coordinates to project on (default: S)")
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("classify", help="catalog of face data in dimension n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("canon", help="canonical form of a triple's face data")
    s.add_argument("file")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("equiv", help="equivalence of two triples")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--budget", type=int, default=2, help="bound on change-of-basis entries")
    s.set_defaults(func=cmd_equiv)
    return p


def run(argv=None) -> tuple:
    """Run a command; returns ``(exit code, JSON payload)``."""
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except _Exit as exc:
        return exc.code, exc.payload
    except TooLarge as exc:
        return EXIT_TOO_LARGE, {"error": "too_large", "message": str(exc)}
    except (PrecisionCap, SearchBudget) as exc:
        return EXIT_LIMIT, {"error": type(exc).__name__, "message": str(exc)}


def main(argv=None) -> int:
    try:
        code, payload = run(argv)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    print(serialize.dumps(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
