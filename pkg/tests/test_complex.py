import itertools

import pytest
from hypothesis import given, settings

from permhom import corpus
from permhom.complex import (
    EMPTY,
    SimplicialComplex,
    barycentric_subdivision,
    build_complex,
    complement_of_open_star,
    flag_count,
    full_subcomplex,
    is_principal,
    link,
    skeleton,
)
from permhom.errors import MalformedSimplexError, MissingSimplexError, UndefinedInputError

from conftest import complexes


def test_face_closure_of_triangle():
    K = build_complex([[0, 1, 2]])
    assert len(K) == 7
    assert K.f_vector() == [3, 3, 1]


def test_boundary_tetrahedron():
    K = build_complex([[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])
    assert len(K) == 14 and K.dimension == 2


def test_duplicate_vertex_rejected():
    with pytest.raises(MalformedSimplexError):
        build_complex([[0, 0, 1]])


def test_non_face_closed_rejected():
    with pytest.raises(MalformedSimplexError):
        SimplicialComplex.from_simplices([(0, 1), (0,)])


def test_canonical_order():
    K = build_complex([[2, 1, 0], [3, 1]])
    assert K.simplices(1) == [(0, 1), (0, 2), (1, 2), (1, 3)]
    assert build_complex([[3, 1], [2, 1, 0]]) == K


def test_skeleta():
    S = corpus.sphere(2)
    one = skeleton(S, 1)
    assert one.f_vector() == [4, 6] and one.dimension == 1
    assert skeleton(S, 2) == S
    assert skeleton(corpus.simplex(2), 0).f_vector() == [3]
    assert skeleton(S, -1).is_empty()


def test_principal():
    assert is_principal(corpus.sphere(2))
    assert not is_principal(build_complex([[0, 1, 2], [3, 4]]))
    assert is_principal(build_complex([[5]]))
    with pytest.raises(UndefinedInputError):
        is_principal(EMPTY)


def test_subdivision_sizes():
    S = barycentric_subdivision(corpus.simplex(1))
    assert S.complex.f_vector() == [3, 2]
    assert sorted(S.vertex_dim) == [0, 0, 1]
    assert barycentric_subdivision(corpus.simplex(2)).complex.f_vector()[2] == 6
    assert barycentric_subdivision(corpus.sphere(2)).complex.f_vector()[2] == 24


def test_subdivision_simplexes_are_flags():
    S = barycentric_subdivision(corpus.book3())
    for s in S.complex:
        origins = [S.origin[v] for v in s]
        for a, b in zip(origins, origins[1:]):
            assert set(a) < set(b)


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_flag_count_identity(K):
    sub = barycentric_subdivision(K).complex
    for k in range(sub.dimension + 1):
        assert sub.count(k) == flag_count(K, k + 1)


@settings(max_examples=60, deadline=None)
@given(complexes())
def test_face_closure_property(K):
    for s in K:
        for k in range(1, len(s)):
            for f in itertools.combinations(s, k):
                assert f in K


def test_links():
    S = corpus.sphere(2)
    assert link(S, (0,)) == build_complex([[1, 2], [1, 3], [2, 3]])
    assert link(S, (0, 1)).f_vector() == [2]
    assert link(corpus.book3(), (0, 1)) == build_complex([[2], [3], [4]])
    with pytest.raises(MissingSimplexError):
        link(S, (0, 9))


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_link_star_duality(K):
    for s in K.simplices():
        L = K.link(s)
        for t in K:
            expect = not set(t) & set(s) and tuple(sorted(set(t) | set(s))) in K
            assert (t in L) == expect


def test_complement_of_open_star():
    D = corpus.simplex(2)
    assert complement_of_open_star(D, (0,)) == build_complex([[1, 2]])
    assert complement_of_open_star(D, (0, 1, 2)) == corpus.sphere(1)
    with pytest.raises(MissingSimplexError):
        complement_of_open_star(D, (3,))


@settings(max_examples=40, deadline=None)
@given(complexes())
def test_complement_monotone(K):
    for t in K:
        Ct = K.complement_of_open_star(t)
        for k in range(1, len(t)):
            for s in itertools.combinations(t, k):
                assert K.complement_of_open_star(s) <= Ct


def test_full_subcomplex_figure_panels():
    S = barycentric_subdivision(corpus.simplex(2))
    edges = full_subcomplex(S, {1})
    assert edges.f_vector() == [3]
    tripod = full_subcomplex(S, {0, 2})
    assert tripod.f_vector() == [4, 3]
    centre = S.index[(0, 1, 2)]
    assert all(centre in e for e in tripod.simplices(1))
    assert full_subcomplex(S, {0, 1, 2}) == S.complex
    assert full_subcomplex(S, set()).is_empty()


def test_carrier_and_subdivided_subcomplex():
    K = corpus.book3()
    S = barycentric_subdivision(K)
    spine = build_complex([[0, 1]])
    sub = S.subdivide_subcomplex(spine)
    assert sub.f_vector() == [3, 2]
    for s in S.complex:
        assert set(S.carrier(s)) >= set().union(*(S.origin[v] for v in s))
