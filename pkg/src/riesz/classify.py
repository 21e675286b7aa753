"""Classification data of ordered real vector spaces with interpolation, and
equivalence of characterizing triples up to coordinate permutation and a
linear change of variables.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import zlinalg
from .errors import DimensionMismatch, ModeMismatch, TooLarge
from .triple import (
    DIVISIBLE,
    FINITELY_GENERATED,
    VECTOR_SPACE,
    CharTriple,
    FaceLattice,
    fmt_set,
    indices_of,
    popcount,
)

MAX_ENUMERATE = 4
MAX_CANON = 8
EQUIV_NODE_LIMIT = 10**6


def _permute(mask: int, perm) -> int:
    out = 0
    for i in indices_of(mask):
        out |= 1 << perm[i]
    return out


def _encode(faces: FaceLattice, perm) -> tuple:
    return tuple(sorted((_permute(S, perm), _permute(faces.pgeq(S), perm)) for S in faces.members))


def _orbit_encodings(faces: FaceLattice) -> set:
    if faces.n > MAX_CANON:
        raise TooLarge(f"canonical forms are computed for n <= {MAX_CANON}")
    return {_encode(faces, perm) for perm in itertools.permutations(range(faces.n))}


def canon_form(faces: FaceLattice) -> tuple:
    """Lexicographically least ``((S, P^>=_S), ...)`` over all relabellings."""
    return min(_orbit_encodings(faces))


def faces_from_encoding(n: int, encoding) -> FaceLattice:
    return FaceLattice.make(n, {S: pgeq & S for S, pgeq in encoding})


def equivalent_vs(d1: FaceLattice, d2: FaceLattice) -> bool:
    if d1.n != d2.n:
        return False
    return canon_form(d1) == canon_form(d2)


@dataclass(frozen=True)
class CatalogEntry:
    n: int
    encoding: tuple  # canonical ((S, P^>=_S), ...) bitmask pairs
    orbit: int

    @property
    def members(self) -> list:
        return [S for S, _ in self.encoding]

    @property
    def pgeq(self) -> list:
        return [P for _, P in self.encoding]

    def faces(self) -> FaceLattice:
        return faces_from_encoding(self.n, self.encoding)

    def to_json(self) -> dict:
        return {"n": self.n,
                "members": [fmt_set(S) for S in self.members],
                "pgeq": [fmt_set(P) for P in self.pgeq],
                "orbit": self.orbit}


def _sublattices(n: int):
    """All families of subsets containing the empty and full sets, closed
    under union and intersection (brute force over the middle subsets)."""
    full = (1 << n) - 1
    middle = list(range(1, full))
    for bits in range(1 << len(middle)):
        fam = [0] + [middle[k] for k in range(len(middle)) if bits >> k & 1] + [full]
        present = set(fam)
        if all((a | b) in present and (a & b) in present for a in fam for b in fam):
            yield fam


def _assignments(n: int, fam):
    """Valid ``P^>`` assignments on a family, by backtracking.

    Members are fixed in order of decreasing size, so when a member is
    assigned every strict superset already is.  The subset-avoidance
    condition prunes each choice on the spot; the union condition is checked
    as soon as both members of a pair have their data.
    """
    full = (1 << n) - 1
    order = sorted((S for S in fam if S), key=lambda S: (-popcount(S), S))
    chosen = {0: 0}

    def pgeq(S):
        return chosen[S] | (full & ~S)

    def consistent(S):
        for T in chosen:
            U = S | T
            if T == S or U not in chosen:
                continue
            if pgeq(U) != pgeq(S) & pgeq(T):
                return False
        return True

    def rec(idx):
        if idx == len(order):
            yield dict(chosen)
            return
        S = order[idx]
        subs = [T for T in fam if T != S and T & ~S == 0]
        P = S
        while P:
            if all(P & ~T for T in subs):
                chosen[S] = P
                if consistent(S):
                    yield from rec(idx + 1)
                del chosen[S]
            P = (P - 1) & S

    if consistent(0):
        yield from rec(0)


def enumerate_raw(n: int):
    """Every valid (family, P^>) pair on {1..n}, without deduplication."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUMERATE:
        raise TooLarge(f"exhaustive enumeration is limited to n <= {MAX_ENUMERATE}")
    for fam in _sublattices(n):
        for pstrict in _assignments(n, fam):
            yield FaceLattice.make(n, pstrict)


def enumerate_Dn(n: int) -> list:
    seen = {}
    for faces in enumerate_raw(n):
        key = canon_form(faces)
        if key not in seen:
            seen[key] = len(_orbit_encodings(faces))
    return [CatalogEntry(n, key, seen[key]) for key in sorted(seen)]


# -------------------------------------------------------------- triples

@dataclass
class Equivalence:
    verdict: str  # "yes", "no" or "unknown"
    sigma: tuple | None = None  # 0-based image of each coordinate
    phi: list | None = None  # (phi x)_j = sum_i phi[j][i] x_i
    U: list | None = None
    reason: str = ""


def _expand(t: CharTriple, vec) -> list:
    out = []
    for x in vec:
        out.extend(x.coeffs)
    return out


def _collapse(t: CharTriple, flat) -> list:
    d = t.field.degree
    return [t.field.element(flat[i * d:(i + 1) * d]) for i in range(t.n)]


def _group_basis(t: CharTriple) -> list:
    """A basis of G (over Z, or over Q in divisible mode) as F-vectors."""
    flat = [_expand(t, g) for g in t.generators]
    return [_collapse(t, row) for row in zlinalg.lattice_basis(flat, t.n * t.field.degree)]


def _face_permutations(t1: CharTriple, t2: CharTriple):
    f1, f2 = t1.faces, t2.faces
    target = tuple(sorted((S, f2.pgeq(S)) for S in f2.members))
    for perm in itertools.permutations(range(t1.n)):
        if _encode(f1, perm) == target:
            yield perm


def _apply(phi, vec, zero):
    n = len(vec)
    return [sum((phi[j][i] * vec[i] for i in range(n)), zero) for j in range(len(phi))]


def face_compatible(t1: CharTriple, t2: CharTriple, sigma, phi) -> bool:
    """Whether ``phi`` maps each relatively open face of t1's cone onto the
    matching face of t2's cone.

    On ``V_S`` the face is cut out by ``x_i > 0`` for ``i`` in ``P^>_S``
    with the rest of ``S`` free.  A linear bijection ``V_S -> V_sigma(S)``
    maps it onto the target face iff each target coordinate in
    ``sigma(P^>_S)`` restricts to a positive multiple of a distinct source
    coordinate in ``P^>_S``.
    """
    for S in t1.faces.members:
        image = _permute(S, sigma)
        cols = indices_of(S)
        for j in range(t1.n):
            if image >> j & 1:
                continue
            if any(not phi[j][i].is_zero() for i in cols):
                return False
        P = t1.faces.p(S)
        hit = set()
        for j in indices_of(_permute(P, sigma)):
            nz = [i for i in cols if not phi[j][i].is_zero()]
            if len(nz) != 1 or not (P >> nz[0] & 1) or nz[0] in hit or not phi[j][nz[0]] > 0:
                return False
            hit.add(nz[0])
    return True


def maps_group_onto(t1: CharTriple, t2: CharTriple, phi) -> bool:
    zero = t1.field.zero()
    width = t2.n * t2.field.degree
    image = [_expand(t2, _apply(phi, list(g), zero)) for g in t1.generators]
    target = [_expand(t2, g) for g in t2.generators]
    if t1.mode == DIVISIBLE:
        r = zlinalg.rank_rat(target)
        return zlinalg.rank_rat(image) == r and zlinalg.rank_rat(image + target) == r
    return zlinalg.lattice_basis(image, width) == zlinalg.lattice_basis(target, width)


def verify_equivalence(t1: CharTriple, t2: CharTriple, eq: Equivalence) -> bool:
    """Exact check of a "yes" witness."""
    if eq.verdict != "yes":
        return False
    if _encode(t1.faces, eq.sigma) != tuple(sorted((S, t2.faces.pgeq(S)) for S in t2.faces.members)):
        return False
    if zlinalg.field_rank(eq.phi, t1.n) != t1.n:
        return False
    if not face_compatible(t1, t2, eq.sigma, eq.phi):
        return False
    if t1.mode == VECTOR_SPACE:
        return True
    return maps_group_onto(t1, t2, eq.phi)


def _vectors_by_norm(r: int, bound: int):
    out = [v for v in itertools.product(range(-bound, bound + 1), repeat=r) if any(v)]
    out.sort(key=lambda v: (max(abs(x) for x in v), [abs(x) for x in v], v))
    return out


def equivalent_triple(t1: CharTriple, t2: CharTriple, budget: int = 2) -> Equivalence:
    """Three-valued equivalence test.

    "no" is only returned for combinatorial or rank obstructions.  Otherwise
    the images of a spanning set of basis vectors are searched among integer
    combinations of t2's basis with entries bounded by ``budget``; the map
    is then forced, and the rest of the basis must land in t2's group with a
    unimodular change of basis.
    """
    if t1.mode != t2.mode:
        raise ModeMismatch(f"{t1.mode} vs {t2.mode}")
    if t1.n != t2.n:
        raise DimensionMismatch(f"n = {t1.n} vs n = {t2.n}")
    n = t1.n
    if n > MAX_CANON:
        raise TooLarge(f"permutation search is limited to n <= {MAX_CANON}")
    if t1.mode == VECTOR_SPACE:
        for perm in _face_permutations(t1, t2):
            one, zero = t1.field.one(), t1.field.zero()
            phi = [[one if perm[i] == j else zero for i in range(n)] for j in range(n)]
            return Equivalence("yes", perm, phi, None)
        return Equivalence("no", reason="face lattices are not permutation equivalent")

    B1, B2 = _group_basis(t1), _group_basis(t2)
    if len(B1) != len(B2):
        return Equivalence("no", reason=f"group ranks differ ({len(B1)} vs {len(B2)})")
    perms = list(_face_permutations(t1, t2))
    if not perms:
        return Equivalence("no", reason="face lattices are not permutation equivalent")
    if t1.field != t2.field:
        return Equivalence("unknown", reason="the groups live over different fields")
    r = len(B1)
    zero, one = t1.field.zero(), t1.field.one()
    _, _, pivots = zlinalg.echelon(B1, n)
    P = [B1[p] for p in pivots]
    Pinv = zlinalg.field_inverse(P, one, zero)
    rest = [q for q in range(r) if q not in pivots]
    flat2 = [_expand(t2, c) for c in B2]
    cands = _vectors_by_norm(r, budget)
    images = [[sum((u[k] * B2[k][i] for k in range(r)), zero) for i in range(n)] for u in cands]
    supports = [sum(1 << i for i in range(n) if not y[i].is_zero()) for y in images]
    # Each pivot vector lies in V_S for its smallest member S, so its image
    # must lie in V_sigma(S).
    homes = [t1.faces.minimal_member(sum(1 << i for i in range(n) if not row[i].is_zero()))
             for row in P]
    nodes = 0

    for sigma in perms:
        allowed = [[k for k in range(len(cands))
                    if supports[k] & ~_permute(home, sigma) == 0] for home in homes]
        for combo in itertools.product(*allowed):
            nodes += 1
            if nodes > EQUIV_NODE_LIMIT:
                return Equivalence("unknown", reason="node limit reached")
            Y = [images[k] for k in combo]
            if zlinalg.field_rank(Y, n) < n:
                continue
            # Row convention: x Phi = image of x, with Phi = P^-1 Y.
            Phi = zlinalg.matmul(Pinv, Y, zero)
            phi = [[Phi[i][j] for i in range(n)] for j in range(n)]
            if not face_compatible(t1, t2, sigma, phi):
                continue
            U = [None] * r
            for p, k in zip(pivots, combo):
                U[p] = [Fraction(x) for x in cands[k]]
            ok = True
            for q in rest:
                y = _expand(t2, zlinalg.matmul([B1[q]], Phi, zero)[0])
                u = zlinalg.solve_left(flat2, y, Fraction(0))
                if u is None or (t1.mode == FINITELY_GENERATED and any(x.denominator != 1 for x in u)):
                    ok = False
                    break
                U[q] = u
            if not ok:
                continue
            den = _lcm_den(U)
            det = zlinalg.det_int([[int(x * den) for x in row] for row in U])
            scale = den ** r
            if t1.mode == FINITELY_GENERATED and abs(det) != scale:
                continue
            if det == 0:
                continue
            eq = Equivalence("yes", sigma, phi, [[_as_int(x) for x in row] for row in U])
            if verify_equivalence(t1, t2, eq):
                return eq
    return Equivalence("unknown", reason=f"no witness with coefficients bounded by {budget}")


def _lcm_den(U) -> int:
    return math.lcm(*(Fraction(x).denominator for row in U for x in row))


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x


def sorted_catalog_json(entries) -> list:
    return [e.to_json() for e in entries]


def is_catalog_member(faces: FaceLattice, entries) -> int:
    """Number of catalog entries whose canonical form matches ``faces``."""
    key = canon_form(faces)
    return sum(1 for e in entries if e.encoding == key)


__all__ = [
    "CatalogEntry",
    "Equivalence",
    "canon_form",
    "enumerate_Dn",
    "enumerate_raw",
    "equivalent_triple",
    "equivalent_vs",
    "face_compatible",
    "faces_from_encoding",
    "verify_equivalence",
]
