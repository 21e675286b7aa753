"""Exact linear algebra over Z, Q and number fields.

Matrices are plain lists of rows.  Every lattice here is a row lattice, and
the row-style Hermite normal form (positive pivots, entries above a pivot
reduced into ``[0, pivot)``, zero rows last) is the one canonical form used
throughout the package.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

IntMatrix = list  # list[list[int]]
RatMatrix = list  # list[list[Fraction]]


def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _ncols(A, ncols):
    if ncols is not None:
        return ncols
    return len(A[0]) if A else 0


def hnf(A: Sequence[Sequence[int]], ncols: int | None = None):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H == U @ A``.
    """
    H = [[int(x) for x in row] for row in A]
    m = len(H)
    n = _ncols(H, ncols)
    U = identity(m)
    r = 0
    for col in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][col]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][col]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            clean = True
            p = H[r][col]
            for i in range(r + 1, m):
                if H[i][col]:
                    q = H[i][col] // p
                    _axpy(H[i], H[r], -q)
                    _axpy(U[i], U[r], -q)
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        p = H[r][col]
        for i in range(r):
            q = H[i][col] // p
            if q:
                _axpy(H[i], H[r], -q)
                _axpy(U[i], U[r], -q)
        r += 1
    return H, U


def _axpy(y, x, a):
    for k in range(len(y)):
        y[k] += a * x[k]


def canonical_basis(A, ncols: int | None = None) -> list:
    """Nonzero rows of the HNF: equal lattices give identical bases."""
    H, _ = hnf(A, ncols)
    return [row for row in H if any(row)]


def det_int(A) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    n = len(A)
    if n == 0:
        return 1
    M = [[int(x) for x in row] for row in A]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _clear_denominators(row) -> list:
    row = [Fraction(x) for x in row]
    lcm = 1
    for x in row:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    return [int(x * lcm) for x in row]


def kernel_int(A: Sequence[Sequence], ncols: int | None = None) -> list:
    """Basis of the saturated integer kernel ``{x in Z^cols : A x = 0}``."""
    n = _ncols(A, ncols)
    if n == 0:
        return []
    rows = [_clear_denominators(r) for r in A if any(r)]
    if not rows:
        return identity(n)
    transposed = [[rows[i][j] for i in range(len(rows))] for j in range(n)]
    H, U = hnf(transposed, len(rows))
    basis = [U[i] for i in range(n) if not any(H[i])]
    return canonical_basis(basis, n)


def member_with_witness(L: Sequence[Sequence[int]], target: Sequence[int]):
    """Integer ``c`` with ``c @ L == target``, or ``None`` if off the lattice."""
    target = [int(x) for x in target]
    if not L:
        return [] if not any(target) else None
    H, U = hnf(L, len(target))
    resid = list(target)
    x = [0] * len(H)
    for i, row in enumerate(H):
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            break
        if any(resid[j] for j in range(piv)):
            return None
        q, rem = divmod(resid[piv], row[piv])
        if rem:
            return None
        x[i] = q
        _axpy(resid, row, -q)
    if any(resid):
        return None
    witness = [sum(x[i] * U[i][k] for i in range(len(U))) for k in range(len(L))]
    check = [sum(witness[i] * L[i][j] for i in range(len(L))) for j in range(len(target))]
    assert check == target, "membership witness failed exact verification"
    return witness


def lattice_sum_eq(L1, L2, L3, ncols: int | None = None) -> bool:
    """Whether rows(L1) + rows(L2) generate the same lattice as rows(L3)."""
    n = ncols
    if n is None:
        for L in (L1, L2, L3):
            if L:
                n = len(L[0])
                break
    return canonical_basis(list(L1) + list(L2), n) == canonical_basis(L3, n)


def rank_rat(A: Sequence[Sequence]) -> int:
    """Rank over Q, by fraction-free elimination on denominator-cleared rows."""
    rows = [_clear_denominators(r) for r in A if any(r)]
    if not rows:
        return 0
    n = len(rows[0])
    rank = 0
    for col in range(n):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for i in range(rank + 1, len(rows)):
            a = rows[i][col]
            if a:
                rows[i] = [p[col] * rows[i][k] - a * p[k] for k in range(n)]
                g = math.gcd(*rows[i])
                if g > 1:
                    rows[i] = [v // g for v in rows[i]]
        rank += 1
        if rank == len(rows):
            break
    return rank


def lattice_basis(vectors: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list:
    """Z-basis (as Fraction rows) of the group generated by rational vectors."""
    n = _ncols(vectors, ncols)
    if not vectors:
        return []
    lcm = 1
    for v in vectors:
        for x in v:
            d = Fraction(x).denominator
            lcm = lcm * d // math.gcd(lcm, d)
    scaled = [[int(Fraction(x) * lcm) for x in v] for v in vectors]
    return [[Fraction(x, lcm) for x in row] for row in canonical_basis(scaled, n)]


# -- elimination over an arbitrary exact field (Fraction or FieldElement) --

def echelon(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over a field.

    Returns ``(R, pivots, used)`` where ``used[k]`` is the index of the input
    row that contributed the k-th pivot (greedy, first independent row wins).
    """
    n = _ncols(rows, ncols)
    basis = []  # (reduced row, pivot column)
    used = []
    for idx, row in enumerate(rows):
        r = list(row)
        for b, p in basis:
            if r[p] != 0:
                f = r[p]
                r = [x - f * y for x, y in zip(r, b)]
        piv = next((j for j in range(n) if r[j] != 0), None)
        if piv is None:
            continue
        inv = 1 / r[piv]
        r = [x * inv for x in r]
        new = []
        for b, p in basis:
            if b[piv] != 0:
                f = b[piv]
                b = [x - f * y for x, y in zip(b, r)]
            new.append((b, p))
        basis = new + [(r, piv)]
        used.append(idx)
    basis.sort(key=lambda bp: bp[1])
    return [b for b, _ in basis], [p for _, p in basis], used


def field_rank(rows, ncols: int | None = None) -> int:
    return len(echelon(rows, ncols)[1])


def field_inverse(M: Sequence[Sequence], one, zero):
    """Inverse of a square matrix over a field; raises ValueError if singular."""
    n = len(M)
    aug = [list(M[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    R, pivots, _ = echelon(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R[:n]]


def solve_left(rows: Sequence[Sequence], target: Sequence, zero):
    """One solution ``x`` of ``x @ rows == target`` over a field, or None."""
    m = len(rows)
    if m == 0:
        return [] if all(t == 0 for t in target) else None
    n = len(target)
    # Columns of the transposed system, augmented by the target.
    aug = [[rows[i][j] for i in range(m)] + [target[j]] for j in range(n)]
    R, pivots, _ = echelon(aug, m + 1)
    if m in pivots:
        return None
    x = [zero] * m
    for row, p in zip(R, pivots):
        x[p] = row[m]
    return x


def matmul(A, B, zero=0):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out.append([sum((row[k] * B[k][j] for k in range(inner)), zero) for j in range(cols)])
    return out
