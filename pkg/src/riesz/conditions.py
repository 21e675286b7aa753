"""Decide the four interpolation conditions for a characterizing triple."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import zlinalg
from .errors import BadCoords
from .triple import (
    DIVISIBLE,
    FINITELY_GENERATED,
    VECTOR_SPACE,
    CharTriple,
    _require,
    covering_pairs,
    fmt_set,
    ideal,
    indices_of,
    popcount,
    sorted_members,
)


@dataclass
class Verdict:
    name: str
    passed: bool
    applicable: bool = True
    witness: tuple | None = None
    detail: dict = field(default_factory=dict)


@dataclass
class ConditionReport:
    mode: str
    verdicts: dict  # name -> Verdict

    @property
    def overall(self) -> bool:
        return all(v.passed for v in self.verdicts.values() if v.applicable)


def _pairs(members):
    for i, S1 in enumerate(members):
        for S2 in members[i + 1:]:
            yield S1, S2


def check_i(t: CharTriple) -> Verdict:
    faces = t.faces
    members = sorted_members(faces)
    for S1, S2 in _pairs(members):
        U = S1 | S2
        if U not in faces:
            continue
        lhs = faces.pgeq(U)
        rhs = faces.pgeq(S1) & faces.pgeq(S2)
        if lhs != rhs:
            return Verdict("i", False, witness=(S1, S2),
                           detail={"pgeq_union": fmt_set(lhs), "pgeq_meet": fmt_set(rhs)})
    return Verdict("i", True)


def check_ii(t: CharTriple) -> Verdict:
    faces = t.faces
    members = sorted_members(faces)
    for S1 in members:
        for S2 in members:
            if S1 != S2 and S1 & ~S2 == 0 and faces.p(S2) & ~S1 == 0:
                return Verdict("ii", False, witness=(S1, S2),
                               detail={"p_strict": fmt_set(faces.p(S2))})
    return Verdict("ii", True)


def check_iii(t: CharTriple) -> Verdict:
    if t.mode == VECTOR_SPACE:
        return Verdict("iii", True, applicable=False, detail={"note": "automatic for vector spaces"})
    members = sorted_members(t)
    for S1, S2 in _pairs(members):
        U = S1 | S2
        if U not in t.faces or U in (S1, S2):
            continue
        L1 = ideal(t, S1).coeff_lattice
        L2 = ideal(t, S2).coeff_lattice
        L3 = ideal(t, U).coeff_lattice
        if t.mode == FINITELY_GENERATED:
            ok = zlinalg.lattice_sum_eq(L1, L2, L3, t.m)
        else:
            ok = zlinalg.rank_rat(L1 + L2) == zlinalg.rank_rat(L3)
        if not ok:
            return Verdict("iii", False, witness=(S1, S2))
    return Verdict("iii", True)


def _projection(t: CharTriple, S: int, coords: int):
    """Projections of the generators of I_S onto ``coords`` (nonzero only)."""
    data = ideal(t, S)
    cols = indices_of(coords)
    out = []
    for row, vec in zip(data.coeff_lattice, data.ambient_basis):
        w = [vec[i] for i in cols]
        out.append((row, w))
    return out


def density_data(t: CharTriple, S: int, coords: int):
    """Shared set-up for density decisions and dense approximation.

    Returns ``(proj, pivots, Minv)``: the projected ideal generators, the
    indices of ``len(coords)`` of them forming an invertible matrix ``M`` over
    the field (greedy choice), and ``M^-1``.  ``pivots`` is shorter than
    ``len(coords)`` when the projections do not span.
    """
    key = ("density", S, coords)
    if key in t._cache:
        return t._cache[key]
    proj = _projection(t, S, coords)
    ell = popcount(coords)
    _, _, used = zlinalg.echelon([w for _, w in proj], ell)
    Minv = None
    if len(used) == ell and ell:
        M = [proj[j][1] for j in used]
        Minv = zlinalg.field_inverse(M, t.field.one(), t.field.zero())
    out = (proj, used, Minv)
    t._cache[key] = out
    return out


def is_dense_projection(t: CharTriple, S: int, coords: int) -> bool:
    """Whether the projection of I_S onto ``coords`` is dense in R^l.

    A finitely generated subgroup with generators ``w_j`` is dense iff no
    nonzero ``y`` pairs integrally with every ``w_j``.  Writing ``y = M^-1 n``
    for a pivot basis ``M``, the pairing with ``w_j`` is ``(w_j M^-1) . n``;
    integrality forces the irrational power-basis parts to cancel, which is
    a homogeneous rational system in ``n``.  Dense iff it is nonsingular.
    """
    _require(t, S)
    if coords & ~S:
        raise BadCoords(f"{fmt_set(coords)} is not contained in {fmt_set(S)}")
    ell = popcount(coords)
    if ell == 0 or t.mode == VECTOR_SPACE:
        return True
    proj, pivots, Minv = density_data(t, S, coords)
    if len(pivots) < ell:
        return False
    if t.mode == DIVISIBLE:
        return True
    d = t.field.degree
    if d == 1:
        return False
    system = []
    for j, (_, w) in enumerate(proj):
        if j in pivots:
            continue
        lam = [sum((w[a] * Minv[a][k] for a in range(ell)), t.field.zero()) for k in range(ell)]
        for e in range(1, d):
            row = [lam[k].coeffs[e] for k in range(ell)]
            if any(row):
                system.append(row)
    return zlinalg.rank_rat(system) == ell


def is_cyclic_quotient(t: CharTriple, S1: int, S2: int) -> bool:
    """Whether I_S2 / I_S1 is cyclic, for a covering pair ``S1 < S2``."""
    _require(t, S1)
    _require(t, S2)
    if S1 & ~S2:
        raise ValueError(f"{fmt_set(S1)} is not contained in {fmt_set(S2)}")
    if S1 == S2:
        return True
    if t.mode != FINITELY_GENERATED:
        return False
    diff = S2 & ~S1
    if popcount(diff) != 1:
        return False
    k = indices_of(diff)[0]
    values = [v[k] for v in ideal(t, S2).ambient_basis if not v[k].is_zero()]
    if not values:
        return True
    base = values[0]
    return all((x / base).is_rational() for x in values[1:])


def _branch_b(t: CharTriple, S1: int, S2: int):
    diff = S2 & ~S1
    if popcount(diff) != 1:
        return False, {"reason": f"|S2 \\ S1| = {popcount(diff)} is not 1"}
    k = indices_of(diff)[0]
    faces = t.faces
    for T in sorted_members(faces):
        if S2 & ~T:
            continue
        if faces.p(T) >> k & 1 and (T & ~diff) not in faces:
            return False, {"reason": f"coordinate {k + 1} is in P^> of {fmt_set(T)} "
                                     f"but {fmt_set(T & ~diff)} is not a member",
                           "T": fmt_set(T)}
    return True, {}


def check_iv(t: CharTriple) -> Verdict:
    if t.mode == VECTOR_SPACE:
        return Verdict("iv", True, applicable=False, detail={"note": "automatic for vector spaces"})
    if t.mode == DIVISIBLE:
        return Verdict("iv", True, applicable=False, detail={"note": "automatic for divisible groups"})
    for S1, S2 in covering_pairs(t):
        diff = S2 & ~S1
        if is_dense_projection(t, S2, diff):
            continue
        ok, why = _branch_b(t, S1, S2)
        if not ok:
            detail = {"a": f"projection of I_S2 onto {fmt_set(diff)} is not dense", "b": why["reason"]}
            return Verdict("iv", False, witness=(S1, S2), detail=detail)
    return Verdict("iv", True)


def check_all(t: CharTriple) -> ConditionReport:
    key = ("report",)
    if key in t._cache:
        return t._cache[key]
    verdicts = {v.name: v for v in (check_i(t), check_ii(t), check_iii(t), check_iv(t))}
    rep = ConditionReport(t.mode, verdicts)
    t._cache[key] = rep
    return rep
