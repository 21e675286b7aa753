"""Bit-exact JSON interchange.

Rationals travel as ``"p/q"`` strings (``"p"`` when q = 1), field elements as
arrays of ``d`` such strings, and subsets as sorted 1-based index lists.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .conditions import ConditionReport
from .errors import ParseError
from .scalars import FieldElement, FieldSpec, fmt_rational, to_fraction
from .triple import (
    FINITELY_GENERATED,
    MODES,
    VECTOR_SPACE,
    CharTriple,
    DegeneracyData,
    FaceLattice,
    GroupElement,
    WellFormedReport,
    fmt_set,
    mask_of,
    member_key,
)


def _rational(x) -> Fraction:
    try:
        return to_fraction(x)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {x!r}: {exc}") from None


def field_to_json(spec: FieldSpec) -> dict:
    return {"min_poly": [fmt_rational(c) for c in spec.min_poly],
            "root_interval": [fmt_rational(c) for c in spec.root_interval]}


def field_from_json(obj, precision_cap: int | None = None) -> FieldSpec:
    if obj is None:
        spec = FieldSpec.rationals()
    else:
        if not isinstance(obj, dict) or "min_poly" not in obj:
            raise ParseError("field must be an object with min_poly and root_interval")
        poly = [_rational(c) for c in obj["min_poly"]]
        interval = obj.get("root_interval", ["0", "0"])
        if len(interval) != 2:
            raise ParseError("root_interval must have two entries")
        spec = FieldSpec(tuple(poly), tuple(_rational(c) for c in interval))
    if precision_cap is not None:
        spec = FieldSpec(spec.min_poly, spec.root_interval, precision_cap)
    return spec


def elem_to_json(x: FieldElement) -> list:
    return [fmt_rational(c) for c in x.coeffs]


def elem_from_json(obj, spec: FieldSpec) -> FieldElement:
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return spec.rational(_rational(obj))
    if not isinstance(obj, list) or len(obj) > spec.degree:
        raise ParseError(f"field element must be a list of at most {spec.degree} rationals")
    return spec.element([_rational(c) for c in obj])


def triple_to_json(t: CharTriple) -> dict:
    lattice = []
    for S, P in sorted(t.faces.pairs, key=lambda sp: member_key(sp[0])):
        lattice.append({"S": fmt_set(S), "P": fmt_set(P)})
    return {
        "n": t.n,
        "mode": t.mode,
        "field": field_to_json(t.field),
        "generators": [[elem_to_json(x) for x in g] for g in t.generators],
        "lattice": lattice,
    }


def _index_set(obj, n: int, what: str) -> int:
    if not isinstance(obj, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in obj):
        raise ParseError(f"{what} must be a list of 1-based integers")
    for i in obj:
        if not 1 <= i <= n:
            raise ParseError(f"{what} index {i} outside 1..{n}")
    return mask_of(i - 1 for i in obj)


def triple_from_json(obj, precision_cap: int | None = None) -> CharTriple:
    if not isinstance(obj, dict):
        raise ParseError("triple must be a JSON object")
    try:
        n = obj["n"]
        mode = obj["mode"]
        lattice = obj["lattice"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc}") from None
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("n must be a positive integer")
    if mode not in MODES:
        raise ParseError(f"mode must be one of {', '.join(MODES)}")
    spec = field_from_json(obj.get("field"), precision_cap)
    gens = obj.get("generators", [])
    if not isinstance(gens, list):
        raise ParseError("generators must be a list")
    generators = []
    for g in gens:
        if not isinstance(g, list):
            raise ParseError("each generator must be a list of field elements")
        generators.append(tuple(elem_from_json(x, spec) for x in g))
    if mode == VECTOR_SPACE:
        generators = []
    if not isinstance(lattice, list):
        raise ParseError("lattice must be a list of {S, P} objects")
    pstrict = {}
    for entry in lattice:
        if not isinstance(entry, dict) or "S" not in entry:
            raise ParseError("each lattice entry needs an S")
        S = _index_set(entry["S"], n, "S")
        if "P" not in entry and S:
            raise ParseError(f"member {entry['S']} needs a P")
        P = _index_set(entry.get("P", []), n, "P")
        if S in pstrict:
            raise ParseError(f"member {entry['S']} listed twice")
        pstrict[S] = P
    return CharTriple(spec, n, mode, tuple(generators), FaceLattice.make(n, pstrict))


def element_to_json(x: GroupElement) -> dict:
    out = {"coords": [elem_to_json(c) for c in x.coords]}
    if x.coeffs is not None:
        out["coeffs"] = [fmt_rational(c) for c in x.coeffs]
    return out


def element_from_json(obj, t: CharTriple) -> GroupElement:
    """Accepts ``{"coeffs": [...]}``, ``{"coords": [...]}`` or a bare list.

    A bare list means coefficients, except in vector-space mode where it
    means coordinates.
    """
    if isinstance(obj, list):
        obj = {"coords": obj} if t.mode == VECTOR_SPACE else {"coeffs": obj}
    if not isinstance(obj, dict):
        raise ParseError("element must be an object or a list")
    if t.mode == VECTOR_SPACE:
        if "coords" not in obj:
            raise ParseError("vector-space elements need coords")
        coords = obj["coords"]
        if not isinstance(coords, list) or len(coords) != t.n:
            raise ParseError(f"coords must have length {t.n}")
        return t.vector([elem_from_json(c, t.field) for c in coords])
    if "coeffs" not in obj:
        raise ParseError("group elements need coeffs")
    cs = [_rational(c) for c in obj["coeffs"]]
    if len(cs) != t.m:
        raise ParseError(f"coeffs must have length {t.m}")
    if t.mode == FINITELY_GENERATED and any(c.denominator != 1 for c in cs):
        raise ParseError("finitely generated groups take integer coefficients")
    return t.element(cs)


def quadruple_from_json(obj, t: CharTriple):
    try:
        return tuple(element_from_json(obj[k], t) for k in ("a1", "a2", "b1", "b2"))
    except (KeyError, TypeError):
        raise ParseError("quadruple needs a1, a2, b1, b2") from None


def validation_to_json(rep: WellFormedReport) -> dict:
    return {"valid": rep.ok,
            "violations": [{"code": v.code, "message": v.message,
                            "witness": [fmt_set(w) if isinstance(w, int) else w for w in v.witness]}
                           for v in rep.violations]}


def report_to_json(rep: ConditionReport) -> dict:
    out = {"mode": rep.mode, "interpolation": rep.overall, "conditions": {}}
    for name, v in rep.verdicts.items():
        entry = {"passed": v.passed, "applicable": v.applicable}
        if v.witness is not None:
            entry["witness"] = [fmt_set(s) for s in v.witness]
        if v.detail:
            entry["detail"] = v.detail
        out["conditions"][name] = entry
    return out


def degeneracy_to_json(d: DegeneracyData) -> dict:
    return {"S": fmt_set(d.S), "D": fmt_set(d.D), "rank": d.rank,
            "proper_intersection": d.proper_intersection}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
