"""Constructive Riesz interpolation, a brute-force oracle and dense approximation.

The constructive path works in four stages:

1. ``T_{s,t}`` is the smallest member containing the support of
   ``b_t - a_s``.  Every interpolant agrees with ``a_s`` off ``T_{s,t}``, so
   the freedom left is a translate of the ideal ``I_R`` with
   ``R = T_11 & T_12 & T_21 & T_22``.
2. ``a_1 - a_2`` is split across ``I_{T_11 & T_12}`` and ``I_{T_21 & T_22}``
   to produce a base point ``c`` agreeing with every forced coordinate.
3. ``R`` shrinks to ``R_hat`` by peeling off coordinates ``k`` whose
   quotient ``I_{S+k} / I_S`` is cyclic and which lie in ``P^>`` of the
   current set.  Those peeled coordinates move in discrete steps, and a
   bounded exact search picks their values.
4. On ``P^>_{R_hat}`` the ideal is dense, so a dense-approximation search
   places the remaining coordinates inside the open box cut out by the
   constraints still active at the chosen base point.

Every candidate is verified exactly before it is returned.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import zlinalg
from .conditions import check_all, density_data, is_cyclic_quotient, is_dense_projection
from .errors import (
    ConditionsFail,
    InternalProofGap,
    NotComparable,
    NotDense,
    SearchBudget,
)
from .scalars import FieldElement, approx, enclose, floor_value, sign
from .triple import (
    DIVISIBLE,
    FINITELY_GENERATED,
    VECTOR_SPACE,
    CharTriple,
    GroupElement,
    fmt_set,
    ideal,
    indices_of,
    is_positive,
    leq,
    member_key,
)

DEFAULT_SEARCH_BUDGET = 10 ** 7
MAX_RETRIES = 8
_DISCRETE_CANDIDATES = 64
_BITS = 96


@dataclass
class InterpolationResult:
    z: GroupElement
    trace: dict = field(default_factory=dict)


def t_set(t: CharTriple, x: GroupElement, y: GroupElement) -> int:
    """Smallest member of the lattice containing the support of ``y - x``."""
    return t.faces.minimal_member((y - x).support())


# ------------------------------------------------------- dense approximation

def _as_field(t: CharTriple, v) -> FieldElement:
    return v if isinstance(v, FieldElement) else t.field.rational(v)


def _inner_box(lo: FieldElement, hi: FieldElement):
    """Rational ``(lo', hi')`` with ``lo <= lo' < hi' <= hi``."""
    width = hi - lo
    eps = Fraction(1, 2)
    while True:
        wlo, _ = enclose(width, eps)
        if wlo > 0:
            break
        eps /= 1 << 8
    eps = wlo / 8
    return enclose(lo, eps)[1], enclose(hi, eps)[0]


def _shells(q: int):
    """Integer vectors of length ``q`` by doubling sup-norm shells."""
    yield (0,) * q
    prev, B = 0, 1
    while True:
        for c in itertools.product(range(-B, B + 1), repeat=q):
            if max(abs(x) for x in c) > prev:
                yield c
        prev, B = B, 2 * B


def _scaled(x: FieldElement, bits: int = _BITS) -> int:
    return round(approx(x, bits + 8) * (1 << bits))


def dense_approx(t: CharTriple, S: int, coords: int, box: dict,
                 node_budget: int = DEFAULT_SEARCH_BUDGET) -> GroupElement:
    """An element ``m`` of ``I_S`` with ``m_i`` strictly inside ``box[i]``.

    ``box`` maps each 0-based index of ``coords`` to an open interval whose
    ends are rationals or field elements.
    """
    cols = indices_of(coords)
    if sorted(box) != cols:
        raise ValueError("box must cover exactly the requested coordinates")
    bounds = {}
    for i in cols:
        lo, hi = (_as_field(t, v) for v in box[i])
        if sign(hi - lo) <= 0:
            raise ValueError(f"empty interval for coordinate {i + 1}")
        bounds[i] = (lo, hi)
    if t.mode == FINITELY_GENERATED and not is_dense_projection(t, S, coords):
        raise NotDense(f"projection of I_{fmt_set(S)} onto {fmt_set(coords)} is not dense")
    if not cols:
        return t.zero()
    inner = {i: _inner_box(*bounds[i]) for i in cols}
    center = [(inner[i][0] + inner[i][1]) / 2 for i in cols]

    def inside(x: GroupElement) -> bool:
        return all(sign(x.coords[i] - bounds[i][0]) > 0 and sign(bounds[i][1] - x.coords[i]) > 0
                   for i in cols)

    if t.mode == VECTOR_SPACE:
        pos = dict(zip(cols, center))
        x = t.vector([pos.get(i, 0) for i in range(t.n)])
        if not inside(x):
            raise InternalProofGap("rational centre fell outside its own box")
        return x

    proj, pivots, Minv = density_data(t, S, coords)
    ell = len(cols)
    if len(pivots) < ell:
        raise NotDense(f"projection of I_{fmt_set(S)} onto {fmt_set(coords)} does not span")
    data = ideal(t, S)
    zero = t.field.zero()
    mu = [sum((Minv[a][k] * center[a] for a in range(ell)), zero) for k in range(ell)]

    if t.mode == DIVISIBLE:
        nodes = 0
        for bits in itertools.count():
            nodes += 1
            if nodes > node_budget:
                raise SearchBudget("dyadic approximation exhausted the node budget")
            qs = [Fraction(round(approx(x, bits + 16) * (1 << bits)), 1 << bits) for x in mu]
            total = [Fraction(0)] * t.m
            for q, j in zip(qs, pivots):
                total = [a + q * r for a, r in zip(total, data.coeff_lattice[j])]
            x = t.element(total)
            if inside(x):
                return x

    free = [j for j in range(len(proj)) if j not in pivots and any(not v.is_zero() for v in proj[j][1])]
    lam = {j: [sum((proj[j][1][a] * Minv[a][k] for a in range(ell)), zero) for k in range(ell)]
           for j in free}
    one = 1 << _BITS
    mu_s = [_scaled(x) for x in mu]
    lam_s = {j: [_scaled(x) for x in lam[j]] for j in free}
    w_s = {j: [_scaled(x) for x in proj[j][1]] for j in list(pivots) + free}
    lo_s = [math.floor(inner[i][0] * one) for i in cols]
    hi_s = [math.ceil(inner[i][1] * one) for i in cols]

    nodes = 0
    for c in _shells(len(free)):
        nodes += 1
        if nodes > node_budget:
            raise SearchBudget(f"dense approximation exceeded {node_budget} nodes")
        target = list(mu_s)
        for cj, j in zip(c, free):
            if cj:
                for k in range(ell):
                    target[k] -= cj * lam_s[j][k]
        ns = [(v + one // 2) >> _BITS for v in target]
        slack = sum(abs(v) for v in ns) + sum(abs(v) for v in c) + 2
        ok = True
        for a in range(ell):
            xa = sum(n * w_s[p][a] for n, p in zip(ns, pivots))
            xa += sum(cj * w_s[j][a] for cj, j in zip(c, free))
            if xa + slack <= lo_s[a] or xa - slack >= hi_s[a]:
                ok = False
                break
        if not ok:
            continue
        total = [0] * t.m
        for coef, j in itertools.chain(zip(ns, pivots), zip(c, free)):
            if coef:
                total = [a + coef * r for a, r in zip(total, data.coeff_lattice[j])]
        x = t.element(total)
        if inside(x):
            return x
    raise AssertionError("unreachable")


# ------------------------------------------------------------- construction

def _decompose(t: CharTriple, A: int, B: int, diff: GroupElement):
    """Split ``diff = g2 - g1`` with ``g1`` in I_A and ``g2`` in I_B."""
    if t.mode == VECTOR_SPACE:
        zero = t.field.zero()
        g2 = t.vector([x if B >> i & 1 else zero for i, x in enumerate(diff.coords)])
        return g2 - diff, g2
    LA = ideal(t, A).coeff_lattice
    LB = ideal(t, B).coeff_lattice
    stacked = LA + LB
    if t.mode == FINITELY_GENERATED:
        w = zlinalg.member_with_witness(stacked, diff.coeffs) if stacked else (
            [] if not any(diff.coeffs) else None)
        zero_c = 0
    else:
        w = zlinalg.solve_left([[Fraction(x) for x in r] for r in stacked], list(diff.coeffs), Fraction(0))
        zero_c = Fraction(0)
    if w is None:
        return None
    c1 = [zero_c] * t.m
    c2 = [zero_c] * t.m
    for coef, row in zip(w[:len(LA)], LA):
        c1 = [a - coef * r for a, r in zip(c1, row)]
    for coef, row in zip(w[len(LA):], LB):
        c2 = [a + coef * r for a, r in zip(c2, row)]
    return t.element(c1), t.element(c2)


def _reduce_support(t: CharTriple, R: int):
    """Peel cyclic coordinates off ``R``; returns ``(R_hat, [(S, k), ...])``."""
    faces = t.faces
    removed = []
    cur = R
    while True:
        hit = None
        cands = sorted((S2 for S2 in faces.members if S2 and S2 & ~cur == 0), key=member_key)
        for S2 in cands:
            for k in indices_of(S2):
                S = S2 & ~(1 << k)
                if S not in faces or not faces.p(cur) >> k & 1:
                    continue
                if is_cyclic_quotient(t, S, S2):
                    hit = (S, k)
                    break
            if hit:
                break
        if hit is None:
            return cur, removed
        removed.append(hit)
        cur &= ~(1 << hit[1])
        if cur not in faces:
            raise InternalProofGap(f"peeling coordinate {hit[1] + 1} left the non-member {fmt_set(cur)}",
                                   {"R": fmt_set(cur | 1 << hit[1]), "removed": hit})


def _cyclic_step(t: CharTriple, S: int, k: int):
    """Element of I_{S+k} whose k-th coordinate generates the cyclic quotient."""
    data = ideal(t, S | 1 << k)
    entries = [(row, vec[k]) for row, vec in zip(data.coeff_lattice, data.ambient_basis)
               if not vec[k].is_zero()]
    base = entries[0][1]
    ratios = [(x / base).coeffs[0] for _, x in entries]
    lcm = 1
    for q in ratios:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    _, U = zlinalg.hnf([[int(q * lcm)] for q in ratios], 1)
    bez = U[0]
    total = [0] * t.m
    for coef, (row, _) in zip(bez, entries):
        total = [a + coef * r for a, r in zip(total, row)]
    h = t.element(total)
    if sign(h.coords[k]) < 0:
        h = -h
    return h


def _discrete_candidates(base: GroupElement, h: GroupElement, k: int, a, b):
    """Multiples ``n`` with ``base_k + n h_k`` near the hull of the bounds."""
    step = h.coords[k]
    vals = [x.coords[k] for x in (*a, *b)]
    lo, hi = min(vals), max(vals)
    amax = max(x.coords[k] for x in a)
    n_lo = -floor_value((base.coords[k] - lo) / step) - 1
    n_hi = floor_value((hi - base.coords[k]) / step) + 1
    start = -floor_value((base.coords[k] - amax) / step)
    start = min(max(start, n_lo), n_hi)
    out = [start]
    for d in range(1, n_hi - n_lo + 1):
        for n in (start - d, start + d):
            if n_lo <= n <= n_hi:
                out.append(n)
        if len(out) >= _DISCRETE_CANDIDATES:
            break
    return out[:_DISCRETE_CANDIDATES]


def _active_box(t: CharTriple, base: GroupElement, Rhat: int, a, b):
    """Open box for ``m`` on ``P^>_{R_hat}``; None when infeasible.

    For each of the four relations, with ``m`` generic on ``R_hat``, the only
    usable member is the smallest one containing ``R_hat`` and the support
    of the known part.  Its ``P^>`` coordinates either lie in ``R_hat`` (a
    bound on ``m``) or must already be positive.
    """
    faces = t.faces
    P = faces.p(Rhat)
    lower = {i: [] for i in indices_of(P)}
    upper = {i: [] for i in indices_of(P)}
    rels = [(base - x, x, lower) for x in a] + [(x - base, x, upper) for x in b]
    for y, ref, bucket in rels:
        Sstar = faces.minimal_member(y.support() | Rhat)
        for i in indices_of(faces.p(Sstar)):
            if Rhat >> i & 1:
                if not P >> i & 1:
                    return None
                bucket[i].append(ref.coords[i] - base.coords[i])
            elif sign(y.coords[i]) <= 0:
                return None
    box = {}
    for i in indices_of(P):
        lo = max(lower[i]) if lower[i] else None
        hi = min(upper[i]) if upper[i] else None
        if lo is None and hi is None:
            lo, hi = t.field.rational(-1), t.field.rational(1)
        elif lo is None:
            lo = hi - 2
        elif hi is None:
            hi = lo + 2
        elif sign(hi - lo) <= 0:
            return None
        box[i] = (lo, hi)
    return box


def _shrink(box: dict) -> dict:
    out = {}
    for i, (lo, hi) in box.items():
        mid = (lo + hi).scale(Fraction(1, 2))
        out[i] = ((lo + mid).scale(Fraction(1, 2)), (hi + mid).scale(Fraction(1, 2)))
    return out


def _fmt_elem(x: GroupElement):
    from .serialize import element_to_json

    return element_to_json(x)


def interpolant(t: CharTriple, a1: GroupElement, a2: GroupElement,
                b1: GroupElement, b2: GroupElement,
                node_budget: int = DEFAULT_SEARCH_BUDGET) -> InterpolationResult:
    """An element ``z`` with ``a1, a2 <= z <= b1, b2``."""
    if not check_all(t).overall:
        raise ConditionsFail("the triple does not satisfy the interpolation conditions")
    a, b = (a1, a2), (b1, b2)
    for s, x in enumerate(a, 1):
        for u, y in enumerate(b, 1):
            if not leq(t, x, y):
                raise NotComparable(f"a{s} is not below b{u}")
    faces = t.faces
    T = {(s, u): t_set(t, a[s - 1], b[u - 1]) for s in (1, 2) for u in (1, 2)}
    trace = {"T": {f"{s}{u}": fmt_set(v) for (s, u), v in T.items()}}
    if T[1, 1] | T[2, 2] != T[1, 2] | T[2, 1]:
        raise InternalProofGap("T_11 | T_22 differs from T_12 | T_21", trace)

    split = _decompose(t, T[1, 1] & T[1, 2], T[2, 1] & T[2, 2], a1 - a2)
    if split is None:
        raise InternalProofGap("a1 - a2 does not decompose across the two ideals", trace)
    g1, g2 = split
    c = a1 + g1
    R = T[1, 1] & T[1, 2] & T[2, 1] & T[2, 2]
    Rhat, removed = _reduce_support(t, R)
    trace.update({"g1": _fmt_elem(g1), "g2": _fmt_elem(g2), "c": _fmt_elem(c),
                  "R": fmt_set(R), "R_hat": fmt_set(Rhat),
                  "removed": [[fmt_set(S), k + 1] for S, k in removed]})
    steps = [(k, _cyclic_step(t, S, k)) for S, k in removed]
    P = faces.p(Rhat)
    stats = {"leaves": 0, "retries": 0}

    def finish(base: GroupElement):
        stats["leaves"] += 1
        if stats["leaves"] > node_budget:
            raise SearchBudget("discrete search exceeded the node budget")
        box = _active_box(t, base, Rhat, a, b)
        if box is None:
            return None
        for attempt in range(MAX_RETRIES + 1):
            m = dense_approx(t, Rhat, P, box, node_budget) if P else t.zero()
            z = base + m
            if all(leq(t, x, z) for x in a) and all(leq(t, z, y) for y in b):
                trace.update({"m": _fmt_elem(m), "retries": attempt,
                              "box": {str(i + 1): [str(_approx_str(lo)), str(_approx_str(hi))]
                                      for i, (lo, hi) in box.items()}})
                return z
            stats["retries"] += 1
            if not P:
                return None
            box = _shrink(box)
        return None

    def search(idx: int, base: GroupElement):
        if idx == len(steps):
            return finish(base)
        k, h = steps[idx]
        for n in _discrete_candidates(base, h, k, a, b):
            z = search(idx + 1, base + h * n)
            if z is not None:
                return z
        return None

    try:
        z = search(0, c)
    except NotDense as exc:
        raise InternalProofGap(str(exc), trace) from exc
    if z is None:
        trace["attempts"] = stats
        raise InternalProofGap("no verified interpolant along the constructive path", trace)
    trace["attempts"] = stats
    return InterpolationResult(z, trace)


def _approx_str(x: FieldElement):
    from .scalars import fmt_rational

    if x.is_rational():
        return fmt_rational(x.coeffs[0])
    return f"~{float(approx(x, 40)):.6g}"


# ------------------------------------------------------------------- oracle

def oracle_search(t: CharTriple, a1, a2, b1, b2, bound: int):
    """First ``z`` (lexicographic coefficient order) in ``[-bound, bound]^m``
    with ``a1, a2 <= z <= b1, b2``; None when the box holds no interpolant.
    """
    if t.mode != FINITELY_GENERATED:
        raise ValueError("the oracle enumerates integer coefficients only")
    for cs in itertools.product(range(-bound, bound + 1), repeat=t.m):
        z = t.element(cs)
        if (is_positive(t, z - a1) and is_positive(t, z - a2)
                and is_positive(t, b1 - z) and is_positive(t, b2 - z)):
            return z
    return None


def random_element(t: CharTriple, rng: random.Random, radius: int = 3) -> GroupElement:
    if t.mode == VECTOR_SPACE:
        return t.vector([rng.randint(-radius, radius) for _ in range(t.n)])
    return t.element([rng.randint(-radius, radius) for _ in range(t.m)])


def random_quadruple(t: CharTriple, rng: random.Random, radius: int = 3, tries: int = 100000):
    """Random ``(a1, a2, b1, b2)`` with every ``a_s <= b_t``, by rejection."""
    for _ in range(tries):
        a1, a2 = random_element(t, rng, radius), random_element(t, rng, radius)
        b1 = random_element(t, rng, radius)
        if not (leq(t, a1, b1) and leq(t, a2, b1)):
            continue
        b2 = random_element(t, rng, radius)
        if leq(t, a1, b2) and leq(t, a2, b2):
            return a1, a2, b1, b2
    raise RuntimeError("no comparable quadruple found")
