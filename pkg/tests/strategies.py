"""Hypothesis strategies for random characterizing triples and elements."""

from hypothesis import strategies as st

from riesz.classify import enumerate_raw
from riesz.scalars import FieldSpec
from riesz.triple import FINITELY_GENERATED, VECTOR_SPACE, CharTriple, FaceLattice

SQ2 = FieldSpec.sqrt(2)
Q = FieldSpec.rationals()
FACES = {n: list(enumerate_raw(n)) for n in (1, 2, 3)}


@st.composite
def face_lattices(draw, max_n=3):
    n = draw(st.integers(1, max_n))
    return draw(st.sampled_from(FACES[n]))


@st.composite
def fg_triples(draw, max_n=3, max_extra=2):
    """Finitely generated triples: the unit vectors plus a few random
    generators over Q(sqrt 2), which keeps every ideal spanning."""
    faces = draw(face_lattices(max_n))
    n = faces.n
    spec = draw(st.sampled_from([Q, SQ2]))
    d = spec.degree
    gens = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    extra = draw(st.integers(0, max_extra))
    for _ in range(extra):
        vec = [draw(st.lists(st.integers(-3, 3), min_size=d, max_size=d)) for _ in range(n)]
        gens.append(vec)
    generators = [tuple(spec.element(x if isinstance(x, list) else [x]) for x in g) for g in gens]
    return CharTriple(spec, n, FINITELY_GENERATED, tuple(generators), faces)


@st.composite
def vs_triples(draw, max_n=3):
    faces = draw(face_lattices(max_n))
    return CharTriple(Q, faces.n, VECTOR_SPACE, (), faces)


@st.composite
def elements(draw, t, radius=4):
    if t.mode == VECTOR_SPACE:
        return t.vector([draw(st.integers(-radius, radius)) for _ in range(t.n)])
    return t.element([draw(st.integers(-radius, radius)) for _ in range(t.m)])


@st.composite
def triple_and_element(draw, triples=None):
    t = draw(triples if triples is not None else fg_triples())
    return t, draw(elements(t))


def relabel(faces: FaceLattice, perm) -> FaceLattice:
    def move(mask):
        return sum(1 << perm[i] for i in range(faces.n) if mask >> i & 1)

    return FaceLattice.make(faces.n, {move(S): move(P) for S, P in faces.pairs})
