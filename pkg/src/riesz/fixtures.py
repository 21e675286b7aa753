"""Named example triples used by the tests, the acceptance suite and the CLI."""

from __future__ import annotations

from .scalars import FieldSpec
from .triple import DIVISIBLE, FINITELY_GENERATED, VECTOR_SPACE, CharTriple

Q = FieldSpec.rationals()
SQRT2 = FieldSpec.sqrt(2)


def tensor_ex() -> CharTriple:
    """Z^2 ordered by a + sqrt(2) b > 0, embedded in R by (a, b) -> a + sqrt2 b."""
    return CharTriple.build(SQRT2, FINITELY_GENERATED, [[[1]], [[0, 1]]],
                            {(): (), (1,): (1,)})


def tensor_ex_scaled(k: int = 3) -> CharTriple:
    return CharTriple.build(SQRT2, FINITELY_GENERATED, [[[k]], [[0, k]]],
                            {(): (), (1,): (1,)})


def integers() -> CharTriple:
    """(Z, N)."""
    return CharTriple.build(Q, FINITELY_GENERATED, [[1]], {(): (), (1,): (1,)})


def lexicographic() -> CharTriple:
    """Z^2 with coordinate 1 dominant: (x1, x2) > 0 iff x1 > 0, or x1 = 0 < x2."""
    return CharTriple.build(Q, FINITELY_GENERATED, [[1, 0], [0, 1]],
                            {(): (), (2,): (2,), (1, 2): (1,)})


def strict_quadrant() -> CharTriple:
    """Z^2 with cone {0} and the open quadrant; fails interpolation."""
    return CharTriple.build(Q, FINITELY_GENERATED, [[1, 0], [0, 1]],
                            {(): (), (1, 2): (1, 2)})


def closed_quadrant() -> CharTriple:
    """Z^2 with the coordinatewise order."""
    return CharTriple.build(Q, FINITELY_GENERATED, [[1, 0], [0, 1]],
                            {(): (), (1,): (1,), (2,): (2,), (1, 2): (1, 2)})


def half_open_half_plane() -> CharTriple:
    """R^2 with cone {0} and {x1 > 0}."""
    return CharTriple.build(Q, VECTOR_SPACE, [], {(): (), (1, 2): (1,)}, n=2)


def dense_over_discrete() -> CharTriple:
    """(Z + sqrt2 Z) x Z ordered lexicographically with the Z factor dominant."""
    return CharTriple.build(SQRT2, FINITELY_GENERATED, [[[1], 0], [[0, 1], 0], [0, 1]],
                            {(): (), (1,): (1,), (1, 2): (2,)})


def dense_plane() -> CharTriple:
    """Z^2 + sqrt2 Z^2 in R^2 with the strict quadrant cone."""
    return CharTriple.build(SQRT2, FINITELY_GENERATED,
                            [[1, 0], [0, 1], [[0, 1], 0], [0, [0, 1]]],
                            {(): (), (1, 2): (1, 2)})


def divisible_lexicographic() -> CharTriple:
    """Q^2 with coordinate 1 dominant."""
    return CharTriple.build(Q, DIVISIBLE, [[1, 0], [0, 1]],
                            {(): (), (2,): (2,), (1, 2): (1,)})


ALL = {
    "tensor_ex": tensor_ex,
    "tensor_ex_scaled": tensor_ex_scaled,
    "integers": integers,
    "lexicographic": lexicographic,
    "strict_quadrant": strict_quadrant,
    "closed_quadrant": closed_quadrant,
    "half_open_half_plane": half_open_half_plane,
    "dense_over_discrete": dense_over_discrete,
    "dense_plane": dense_plane,
    "divisible_lexicographic": divisible_lexicographic,
}
