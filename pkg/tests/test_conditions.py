from fractions import Fraction

import pytest
from hypothesis import given, settings

from riesz import fixtures as F
from riesz.conditions import (
    check_all,
    check_i,
    check_ii,
    check_iii,
    check_iv,
    is_cyclic_quotient,
    is_dense_projection,
)
from riesz.errors import BadCoords, NotAMember
from riesz.triple import CharTriple, mask_of
from strategies import vs_triples


def m(*idx):
    return mask_of(i - 1 for i in idx)


def half_integers():
    return CharTriple.build(F.Q, "finitely_generated", [[1], [Fraction(3, 2)]], {(): (), (1,): (1,)})


def test_fixture_verdicts():
    assert check_all(F.tensor_ex()).overall
    assert check_all(F.lexicographic()).overall
    assert check_all(F.integers()).overall
    assert check_all(F.half_open_half_plane()).overall
    rep = check_all(F.strict_quadrant())
    assert not rep.overall
    assert rep.verdicts["iv"].witness == (0, m(1, 2))
    assert [k for k, v in rep.verdicts.items() if not v.passed] == ["iv"]


def test_mode_aware_applicability():
    rep = check_all(F.half_open_half_plane())
    assert not rep.verdicts["iii"].applicable and not rep.verdicts["iv"].applicable
    rep = check_all(F.divisible_lexicographic())
    assert rep.verdicts["iii"].applicable and not rep.verdicts["iv"].applicable


def test_condition_i_failure():
    t = CharTriple.build(F.Q, "vector_space", [], {(): (), (1,): (1,), (2,): (2,), (1, 2): (1,)}, n=2)
    v = check_i(t)
    assert not v.passed and v.witness == (m(1), m(2))


def test_condition_ii_failure_alone():
    t = CharTriple.build(F.Q, "vector_space", [], {(): (), (1,): (1,), (1, 2): (1,)}, n=2)
    assert check_i(t).passed
    v = check_ii(t)
    assert not v.passed and v.witness == (m(1), m(1, 2))
    assert not check_all(t).overall


def test_condition_iii_failure():
    # G = {(a, b): a = b mod 2}; the coordinate ideals only add up to 2Z^2
    t = CharTriple.build(F.Q, "finitely_generated", [[1, 1], [0, 2]],
                         {(): (), (1,): (1,), (2,): (2,), (1, 2): (1, 2)})
    v = check_iii(t)
    assert not v.passed and v.witness == (m(1), m(2))
    assert check_iii(F.closed_quadrant()).passed


def test_condition_iv_branches():
    assert check_iv(F.lexicographic()).passed
    assert check_iv(F.tensor_ex()).passed
    v = check_iv(F.strict_quadrant())
    assert not v.passed
    assert "not 1" in v.detail["b"]
    # Z with its usual order passes by the cyclic branch
    assert check_iv(F.integers()).passed


def test_branch_b_needs_the_removed_member():
    # Z^2, members {}, {2}, {1,2} with P^>_{12} = {1, 2}.  For the pair
    # ({}, {2}), T = {1,2} has 2 in P^> but {1} is not a member.
    t = CharTriple.build(F.Q, "finitely_generated", [[1, 0], [0, 1]],
                         {(): (), (2,): (2,), (1, 2): (1, 2)})
    v = check_iv(t)
    assert not v.passed and v.witness == (0, m(2))
    assert "[1] is not a member" in v.detail["b"]


def test_density_examples():
    assert is_dense_projection(F.tensor_ex(), m(1), m(1))
    assert not is_dense_projection(F.integers(), m(1), m(1))
    assert not is_dense_projection(half_integers(), m(1), m(1))
    assert is_dense_projection(F.dense_plane(), m(1, 2), m(1, 2))
    assert is_dense_projection(F.dense_over_discrete(), m(1, 2), m(1))
    assert not is_dense_projection(F.dense_over_discrete(), m(1, 2), m(1, 2))
    assert is_dense_projection(F.integers(), m(1), 0)
    assert is_dense_projection(F.divisible_lexicographic(), m(1, 2), m(1))


def test_density_of_a_line_with_irrational_slope():
    # <(1, sqrt2), (0, 1), (1, 0)> is all of Z^2 + Z(1, sqrt2): dense in R^2? no
    t = CharTriple.build(F.SQRT2, "finitely_generated", [[1, 0], [0, 1], [1, [0, 1]]],
                         {(): (), (1, 2): (1, 2)})
    assert not is_dense_projection(t, m(1, 2), m(1, 2))
    # but projected to either axis it is
    assert is_dense_projection(t, m(1, 2), m(2))


def test_density_errors():
    with pytest.raises(NotAMember):
        is_dense_projection(F.lexicographic(), m(1), m(1))
    with pytest.raises(BadCoords):
        is_dense_projection(F.lexicographic(), m(2), m(1))


def test_cyclic_quotients():
    assert is_cyclic_quotient(F.lexicographic(), m(2), m(1, 2))
    assert not is_cyclic_quotient(F.tensor_ex(), 0, m(1))
    assert not is_cyclic_quotient(F.divisible_lexicographic(), m(2), m(1, 2))
    assert is_cyclic_quotient(F.divisible_lexicographic(), m(2), m(2))
    assert not is_cyclic_quotient(F.strict_quadrant(), 0, m(1, 2))


@settings(max_examples=300)
@given(vs_triples())
def test_catalogued_face_data_has_interpolation(t):
    assert check_all(t).overall
