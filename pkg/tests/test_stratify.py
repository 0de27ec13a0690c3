import pytest

from permhom import corpus
from permhom.complex import EMPTY, barycentric_subdivision, build_complex
from permhom.errors import FiltrationError, MissingSimplexError, NotAFaceError, NotPrincipalError
from permhom.lattice import FGAbelianGroup
from permhom.perm import Permutation
from permhom.stratify import (
    Filtration,
    check_h_stratification,
    check_strong,
    check_very_strong,
    intrinsic_stratification,
    is_homology_manifold,
    is_locally_constant,
    local_homology,
    local_map_is_iso,
    local_perm_homology,
    local_profile,
    stratification_report,
    stratum_is_homology_manifold,
)

G = FGAbelianGroup.parse
PRINCIPAL = [n for n in corpus.names() if corpus.builtin(n).is_principal()]
SMALL = [n for n in PRINCIPAL if n not in ("susp_torus", "cone_torus")]


def profile(K, s):
    return [local_homology(K, s, k, cross_check=True) for k in range(K.dimension + 1)]


def test_local_homology_examples(book, xpp):
    assert profile(corpus.sphere(2), (0, 1, 2)) == [G("0"), G("0"), G("Z")]
    assert profile(book, (0, 1)) == [G("0"), G("0"), G("Z^2")]
    assert profile(xpp, (6,)) == [G("0"), G("Z"), G("Z^2")]
    with pytest.raises(MissingSimplexError):
        local_homology(book, (2, 3), 0)


@pytest.mark.parametrize("name", SMALL)
def test_link_formula_everywhere(name):
    K = corpus.builtin(name)
    for s in K:
        profile(K, s)


def test_local_map_examples(book):
    S = corpus.sphere(2)
    assert local_map_is_iso(book, (0, 1), (0, 1))
    for t in S:
        for s in S:
            if set(s) <= set(t):
                assert local_map_is_iso(S, s, t, cross_check=True)
    assert not local_map_is_iso(book, (0,), (0, 1), cross_check=True)
    assert not local_map_is_iso(book, (0, 1), (0, 1, 2))
    with pytest.raises(NotAFaceError):
        local_map_is_iso(book, (0, 2), (0, 1, 3))


def test_locally_constant_examples(book):
    S = corpus.sphere(2)
    assert is_locally_constant(book, (0, 1, 2), book)
    assert not is_locally_constant(book, (0, 1), book)
    assert all(is_locally_constant(S, s, S) for s in S)
    with pytest.raises(MissingSimplexError):
        is_locally_constant(book, (0, 1, 2), book.skeleton(1))


@pytest.mark.parametrize("name", SMALL)
def test_open_star_propagation(name):
    K = corpus.builtin(name)
    for s in K:
        if is_locally_constant(K, s, K):
            assert all(is_locally_constant(K, t, K) for t in K.cofaces(s))


def test_intrinsic_sphere():
    S = corpus.sphere(2)
    F = intrinsic_stratification(S)
    assert F[1] == EMPTY and F[0] == EMPTY and F.occupancy() == {2}


def test_intrinsic_xpp(xpp):
    F = intrinsic_stratification(xpp)
    poles = build_complex([[6], [7]])
    assert F[1] == poles and F[0] == poles
    assert F.notes
    assert check_very_strong(xpp, F)
    assert F.occupancy() == {0, 2}


def test_intrinsic_book(book):
    F = intrinsic_stratification(book)
    assert F[0] == build_complex([[0], [1]])
    spine = build_complex([[0, 1]])
    free = build_complex([[a, v] for a in (0, 1) for v in (2, 3, 4)])
    # free page edges are boundary points, so they stay in X_1 with the spine
    assert F[1] == spine.union(free)
    for s in free:
        if len(s) == 2:
            assert local_profile(book, s) == (G("0"),) * 3
    assert check_h_stratification(book, F) and check_strong(book, F)


@pytest.mark.parametrize("name", PRINCIPAL)
def test_intrinsic_invariants(name):
    K = corpus.builtin(name)
    F = intrinsic_stratification(K)
    assert F[K.dimension - 1].dimension <= K.dimension - 1
    assert check_h_stratification(K, F)
    one_stratum = F.occupancy() == {K.dimension}
    assert is_homology_manifold(K, cross_check=True) == one_stratum


def test_manifold_detection(book):
    assert is_homology_manifold(corpus.sphere(2))
    assert is_homology_manifold(corpus.torus7())
    assert is_homology_manifold(corpus.rp2_6())
    assert not is_homology_manifold(book)
    assert not is_homology_manifold(corpus.moebius())
    with pytest.raises(NotPrincipalError):
        is_homology_manifold(build_complex([[0, 1, 2], [2, 3]]))


def test_check_examples(book):
    S = corpus.sphere(2)
    assert not check_h_stratification(book, Filtration.trivial(book))
    assert check_h_stratification(S, Filtration.skeletal(S))
    one = Filtration.trivial(S)
    assert check_strong(S, one) and check_very_strong(S, one)
    with pytest.raises(FiltrationError):
        check_h_stratification(book, Filtration.trivial(S))


def test_filtration_validation(book):
    with pytest.raises(FiltrationError):
        Filtration(book, [EMPTY, book])
    with pytest.raises(FiltrationError):
        Filtration(book, [book.skeleton(1), book.skeleton(1), book])
    with pytest.raises(FiltrationError):
        Filtration(book, [build_complex([[0]]), build_complex([[1, 2]]), book])
    F = Filtration.from_lists(book, [[[0]], [[0, 1]], book.maximal_simplices()])
    assert set(F.stratum(1)) == {(1,), (0, 1)}


@pytest.mark.parametrize("name", ["sphere2", "book3", "x_pp", "moebius", "simplex2", "torus7"])
def test_topological_invariance_smoke(name):
    K = corpus.builtin(name)
    S = barycentric_subdivision(K)
    F = intrinsic_stratification(K)
    Fs = intrinsic_stratification(S.complex)
    for j in range(K.dimension + 1):
        assert Fs[j] == S.subdivide_subcomplex(F[j])


def test_stratum_manifold_verdicts(xpp, book):
    F = intrinsic_stratification(xpp)
    assert stratum_is_homology_manifold(F, 2) and stratum_is_homology_manifold(F, 0)
    r = stratification_report(book, strong=True, very_strong=True)
    assert r.is_h_stratification and r.is_strong
    assert r.stratum_manifold[2]


def test_local_perm_homology(xpp):
    rev = Permutation.reversal(2)
    S = corpus.sphere(2)
    for s in [(0,), (0, 1), (0, 1, 2)]:
        got = [local_perm_homology(S, rev, s, i) for i in range(3)]
        assert got == [G("0"), G("0"), G("Z")]
    frozen = [G("0"), G("0"), G("Z^2")]
    assert [local_perm_homology(xpp, rev, (6,), i) for i in range(3)] == frozen
    assert [local_perm_homology(xpp, rev, (6,), i, "chain") for i in range(3)] == frozen
    D = corpus.simplex(2)
    assert [local_perm_homology(D, rev, (0, 1, 2), i) for i in range(3)] == [G("0"), G("0"), G("Z")]
