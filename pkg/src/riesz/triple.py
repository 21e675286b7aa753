"""Characterizing triples: faces, group generators, ideals and the cone.

Subsets of ``{1..n}`` are bitmasks over 0-based indices (bit ``i`` stands for
coordinate ``i + 1``).  A triple's group ``G`` is given by generators in
``F^n``; its positive cone is the union over members ``S`` of the elements
vanishing off ``S`` and strictly positive on ``P^>_S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import zlinalg
from .errors import NoSuperideal, NotAMember, ProperIntersection
from .scalars import FieldElement, FieldSpec, sign

FINITELY_GENERATED = "finitely_generated"
DIVISIBLE = "divisible"
VECTOR_SPACE = "vector_space"
MODES = (FINITELY_GENERATED, DIVISIBLE, VECTOR_SPACE)


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 0-based indices."""
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> list:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def member_key(mask: int):
    """Deterministic member order: by size, then by sorted indices."""
    return popcount(mask), indices_of(mask)


def fmt_set(mask: int) -> list:
    """1-based index list, the external form of a subset."""
    return [i + 1 for i in indices_of(mask)]


@dataclass(frozen=True)
class FaceLattice:
    """The family of members with their strict-positivity sets ``P^>_S``."""

    n: int
    pairs: tuple  # sorted ((S, P^>_S), ...)

    @classmethod
    def make(cls, n: int, pstrict: Mapping[int, int]) -> "FaceLattice":
        pairs = tuple(sorted(((int(s), int(p)) for s, p in pstrict.items()),
                             key=lambda sp: member_key(sp[0])))
        return cls(n, pairs)

    @cached_property
    def pstrict(self) -> dict:
        return dict(self.pairs)

    @cached_property
    def members(self) -> list:
        return [s for s, _ in self.pairs]

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __contains__(self, S: int) -> bool:
        return S in self.pstrict

    def p(self, S: int) -> int:
        try:
            return self.pstrict[S]
        except KeyError:
            raise NotAMember(f"{fmt_set(S)} is not a member") from None

    def pgeq(self, S: int) -> int:
        """``P^>_S`` together with the complement of ``S``."""
        return self.p(S) | (self.full & ~S)

    def minimal_member(self, support: int):
        """Smallest member containing ``support`` (None if there is none)."""
        best = None
        for S in self.members:
            if S & support == support:
                best = S if best is None else best & S
        if best is not None and best not in self.pstrict:
            # Only possible for families that are not closed under intersection.
            cands = [S for S in self.members if S & support == support]
            best = min(cands, key=member_key)
        return best


@dataclass(frozen=True)
class GroupElement:
    """An element of ``G``: ambient coordinates plus generator coefficients.

    ``coeffs`` is absent in vector-space mode.
    """

    coords: tuple
    coeffs: tuple | None = None

    def __add__(self, other: "GroupElement") -> "GroupElement":
        coeffs = None
        if self.coeffs is not None and other.coeffs is not None:
            coeffs = tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        return GroupElement(tuple(a + b for a, b in zip(self.coords, other.coords)), coeffs)

    def __neg__(self) -> "GroupElement":
        coeffs = None if self.coeffs is None else tuple(-a for a in self.coeffs)
        return GroupElement(tuple(-a for a in self.coords), coeffs)

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, k) -> "GroupElement":
        coeffs = None if self.coeffs is None else tuple(a * k for a in self.coeffs)
        return GroupElement(tuple(a * k for a in self.coords), coeffs)

    __rmul__ = __mul__

    def support(self) -> int:
        return mask_of(i for i, x in enumerate(self.coords) if not x.is_zero())

    def signs(self) -> list:
        return [sign(x) for x in self.coords]


@dataclass(frozen=True)
class IdealData:
    S: int
    coeff_lattice: list  # rows: coefficient vectors generating I_S
    ambient_basis: list  # rows: the matching vectors in F^n


@dataclass(frozen=True)
class DegeneracyData:
    S: int
    D: int
    rank: int
    proper_intersection: bool


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    witness: tuple = ()


@dataclass
class WellFormedReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code, message, *witness):
        self.violations.append(Violation(code, message, tuple(witness)))


@dataclass(frozen=True)
class CharTriple:
    """A characterizing triple (faces, P^> sets, G) over a number field."""

    field: FieldSpec
    n: int
    mode: str
    generators: tuple
    faces: FaceLattice
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(cls, field: FieldSpec, mode: str, generators, lattice, n: int | None = None):
        """Convenience constructor.

        ``generators`` are vectors whose entries may be rationals, coefficient
        lists or FieldElements; ``lattice`` maps 1-based index tuples ``S`` to
        1-based index tuples ``P``.
        """
        gens = tuple(tuple(_as_elem(x, field) for x in v) for v in generators)
        if n is None:
            n = len(gens[0]) if gens else max((max(S, default=0) for S in lattice), default=0)
        pstrict = {mask_of(i - 1 for i in S): mask_of(i - 1 for i in P) for S, P in lattice.items()}
        return cls(field, n, mode, gens, FaceLattice.make(n, pstrict))

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    # -- elements --

    def element(self, coeffs: Sequence) -> GroupElement:
        if self.mode == VECTOR_SPACE:
            raise ValueError("vector-space triples have no generators; use vector()")
        if self.mode == FINITELY_GENERATED:
            cs = tuple(int(c) for c in coeffs)
        else:
            cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != self.m:
            raise ValueError(f"expected {self.m} coefficients, got {len(cs)}")
        zero = self.field.zero()
        coords = [zero] * self.n
        for c, g in zip(cs, self.generators):
            if c:
                coords = [a + x * c for a, x in zip(coords, g)]
        return GroupElement(tuple(coords), cs)

    def vector(self, coords: Sequence) -> GroupElement:
        if self.mode != VECTOR_SPACE:
            raise ValueError("only vector-space triples accept raw coordinates")
        if len(coords) != self.n:
            raise ValueError(f"expected {self.n} coordinates")
        return GroupElement(tuple(_as_elem(x, self.field) for x in coords))

    def zero(self) -> GroupElement:
        if self.mode == VECTOR_SPACE:
            return self.vector([0] * self.n)
        return self.element([0] * self.m)


def _as_elem(x, spec: FieldSpec) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (list, tuple)):
        return spec.element(x)
    return spec.rational(x)


# ---------------------------------------------------------------- validation

def validate(t: CharTriple) -> WellFormedReport:
    """Check every well-formedness invariant; violations are report entries."""
    rep = WellFormedReport()
    if t.mode not in MODES:
        rep.add("mode", f"unknown mode {t.mode!r}")
        return rep
    if t.n < 1:
        rep.add("dimension", "n must be positive")
        return rep
    if t.faces.n != t.n:
        rep.add("dimension", "face lattice dimension differs from n")
    full = t.full
    if t.mode != VECTOR_SPACE:
        for j, g in enumerate(t.generators):
            if len(g) != t.n:
                rep.add("generator_length", f"generator {j} has length {len(g)}, expected {t.n}", j)
            elif any(x.field != t.field for x in g):
                rep.add("generator_field", f"generator {j} lies in a different field", j)
        if not rep.ok:
            return rep
    faces = t.faces
    members = faces.members
    for S in members:
        if S & ~full or S < 0:
            rep.add("member_range", f"member {S:#b} exceeds {{1..{t.n}}}", S)
    if 0 not in faces:
        rep.add("missing_empty", "the empty set is not a member")
    if full not in faces:
        rep.add("missing_full", f"{{1..{t.n}}} is not a member")
    for i, S1 in enumerate(members):
        for S2 in members[i + 1:]:
            if (S1 | S2) not in faces:
                rep.add("union_closure", f"union of {fmt_set(S1)} and {fmt_set(S2)} is missing", S1, S2)
            if (S1 & S2) not in faces:
                rep.add("intersection_closure",
                        f"intersection of {fmt_set(S1)} and {fmt_set(S2)} is missing", S1, S2)
    for S in members:
        P = faces.p(S)
        if P & ~S:
            rep.add("p_subset", f"P^> of {fmt_set(S)} is not contained in it", S)
        if S and not P:
            rep.add("p_empty", f"P^> of nonempty member {fmt_set(S)} is empty", S)
    if not rep.ok:
        return rep
    if t.mode != VECTOR_SPACE:
        for S in members:
            data = ideal(t, S)
            cols = indices_of(S)
            rows = [[v[i] for i in cols] for v in data.ambient_basis]
            rk = zlinalg.field_rank(rows, len(cols)) if cols else 0
            if rk < len(cols):
                rep.add("spanning", f"I_S for S = {fmt_set(S)} spans only dimension {rk} of {len(cols)}", S)
    return rep


def _require(t: CharTriple, S: int):
    if S not in t.faces:
        raise NotAMember(f"{fmt_set(S)} is not a member")


# -------------------------------------------------------------------- ideals

def ideal(t: CharTriple, S: int) -> IdealData:
    """Generators of ``I_S``, the elements vanishing off ``S``."""
    _require(t, S)
    key = ("ideal", S)
    if key in t._cache:
        return t._cache[key]
    if t.mode == VECTOR_SPACE:
        one, zero = t.field.one(), t.field.zero()
        idx = indices_of(S)
        lattice = [[int(j == i) for j in range(t.n)] for i in idx]
        basis = [[one if j == i else zero for j in range(t.n)] for i in idx]
        data = IdealData(S, lattice, basis)
    else:
        d = t.field.degree
        constraints = []
        for i in range(t.n):
            if S >> i & 1:
                continue
            for k in range(d):
                constraints.append([g[i].coeffs[k] for g in t.generators])
        lattice = zlinalg.kernel_int(constraints, t.m)
        basis = [list(t.element(row).coords) for row in lattice]
        data = IdealData(S, lattice, basis)
    t._cache[key] = data
    return data


def ideal_element(t: CharTriple, data: IdealData, coeffs: Sequence) -> GroupElement:
    """Combination of an ideal's generators with the given coefficients."""
    if t.mode == VECTOR_SPACE:
        zero = t.field.zero()
        coords = [zero] * t.n
        for c, v in zip(coeffs, data.ambient_basis):
            coords = [a + x * c for a, x in zip(coords, v)]
        return GroupElement(tuple(coords))
    total = [0] * t.m
    for c, row in zip(coeffs, data.coeff_lattice):
        total = [a + c * r for a, r in zip(total, row)]
    return t.element(total)


# ------------------------------------------------------------------ ordering

def _positive_by_signs(faces: FaceLattice, signs) -> bool:
    zero = mask_of(i for i, s in enumerate(signs) if s == 0)
    pos = mask_of(i for i, s in enumerate(signs) if s > 0)
    full = faces.full
    for S, P in faces.pairs:
        if (full & ~S) & ~zero:
            continue
        if P & ~pos == 0:
            return True
    return False


def is_positive(t: CharTriple, g: GroupElement) -> bool:
    return _positive_by_signs(t.faces, g.signs())


def leq(t: CharTriple, g: GroupElement, h: GroupElement) -> bool:
    return is_positive(t, h - g)


def is_order_unit(t: CharTriple, g: GroupElement, S: int) -> bool:
    _require(t, S)
    if g.support() & ~S:
        return False
    signs = g.signs()
    return all(signs[i] > 0 for i in indices_of(t.faces.p(S)))


# ----------------------------------------------------------- lattice of faces

def sorted_members(t_or_faces) -> list:
    faces = t_or_faces.faces if isinstance(t_or_faces, CharTriple) else t_or_faces
    return sorted(faces.members, key=member_key)


def covering_pairs(t_or_faces) -> list:
    """Pairs ``S1 < S2`` of members with nothing strictly between."""
    members = sorted_members(t_or_faces)
    out = []
    for S1 in members:
        for S2 in members:
            if S1 == S2 or S1 & ~S2:
                continue
            if any(T not in (S1, S2) and S1 & ~T == 0 and T & ~S2 == 0 for T in members):
                continue
            out.append((S1, S2))
    out.sort(key=lambda p: (member_key(p[0]), member_key(p[1])))
    return out


def is_proper_intersection(faces: FaceLattice, S: int) -> bool:
    members = faces.members
    for i, T1 in enumerate(members):
        if T1 == S:
            continue
        for T2 in members[i + 1:]:
            if T2 != S and T1 & T2 == S:
                return True
    return False


def degeneracy(t: CharTriple, S: int) -> DegeneracyData:
    """``D_S`` (P^> of all strict supersets, plus S) and ``n - |D_S|``."""
    _require(t, S)
    faces = t.faces
    D = S
    for T in faces.members:
        if T != S and S & ~T == 0:
            D |= faces.p(T)
    return DegeneracyData(S, D, t.n - popcount(D), is_proper_intersection(faces, S))


def min_superideal(t: CharTriple, S: int) -> int:
    _require(t, S)
    faces = t.faces
    if S == t.full:
        raise NoSuperideal("the full set has no proper superset")
    if is_proper_intersection(faces, S):
        raise ProperIntersection(f"{fmt_set(S)} is a proper intersection of two members")
    out = t.full
    for T in faces.members:
        if T != S and S & ~T == 0:
            out &= T
    return out
