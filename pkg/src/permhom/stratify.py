"""Local homology, the comparison maps q, and intrinsic homology stratifications.

Local homology at a point x interior to a simplex s is ``H_*(K, C(s))``
where ``C(s)`` holds the simplexes not containing s. For ``s <= t`` the
inclusion ``C(s) <= C(t)`` induces ``q: H_*(K, C(s)) -> H_*(K, C(t))``;
by exactness q is an isomorphism in all degrees iff ``H_*(C(t), C(s)) = 0``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .complex import EMPTY, Simplex, SimplicialComplex, build_complex
from .errors import FiltrationError, MissingSimplexError, NotAFaceError
from .chains import chain_complex, pair_map_is_iso, reduced_homology, relative_homology
from .lattice import FGAbelianGroup
from .perm import as_permutation
from .perm_homology import chain_homology, image_homology, require_principal, tower

Z = FGAbelianGroup(1)
ZERO = FGAbelianGroup()


@lru_cache(maxsize=8192)
def _cstar(K: SimplicialComplex, s: Simplex) -> SimplicialComplex:
    return K.complement_of_open_star(s)


# ---------------------------------------------------------------------------
# local homology


def local_homology(
    K: SimplicialComplex, sigma: Sequence[int], k: int, cross_check: bool = False
) -> FGAbelianGroup:
    s = K.require(sigma)
    out = relative_homology(K, _cstar(K, s), k)
    if cross_check:
        via_link = reduced_homology(K.link(s), k - len(s))
        if via_link != out:
            raise AssertionError(f"link formula disagrees at {s}, degree {k}: {via_link} vs {out}")
    return out


@lru_cache(maxsize=8192)
def local_profile(K: SimplicialComplex, sigma: Simplex) -> tuple[FGAbelianGroup, ...]:
    """``(H_0, ..., H_n)`` of ``(K, C(sigma))``."""
    s = K.require(sigma)
    cc = chain_complex(K, _cstar(K, s))
    return tuple(cc.group(k) for k in range(max(K.dimension, 0) + 1))


@lru_cache(maxsize=65536)
def _q_iso(K: SimplicialComplex, s: Simplex, t: Simplex) -> bool:
    if s == t:
        return True
    return pair_map_is_iso(K, _cstar(K, s), _cstar(K, t))


def local_map_is_iso(
    K: SimplicialComplex, sigma: Sequence[int], tau: Sequence[int], cross_check: bool = False
) -> bool:
    s, t = K.require(sigma), K.require(tau)
    if not set(s) <= set(t):
        raise NotAFaceError(f"{s} is not a face of {t}")
    if cross_check and s != t:
        return pair_map_is_iso(K, _cstar(K, s), _cstar(K, t), cross_check=True)
    return _q_iso(K, s, t)


def is_locally_constant(
    K: SimplicialComplex,
    sigma: Sequence[int],
    X: SimplicialComplex,
    ambient: SimplicialComplex | None = None,
) -> bool:
    """q is an isomorphism from ``sigma`` to each of its cofaces lying in ``X``.

    Local homology is taken in ``ambient`` (``K`` by default).
    """
    s = tuple(sorted(sigma))
    if s not in X:
        raise MissingSimplexError(s)
    A = K if ambient is None else ambient
    return all(_q_iso(A, s, t) for t in X.cofaces(s) if t != s)


# ---------------------------------------------------------------------------
# filtrations


class Filtration:
    """``X_0 <= X_1 <= ... <= X_n = K`` with ``dim X_j <= j``."""

    def __init__(self, K: SimplicialComplex, levels: Sequence[SimplicialComplex]):
        n = K.dimension
        levels = list(levels)
        if len(levels) != n + 1:
            raise FiltrationError(f"expected {n + 1} levels, got {len(levels)}")
        if levels[-1] != K:
            raise FiltrationError("top level must be the whole complex")
        for j, X in enumerate(levels):
            if not X <= K:
                raise FiltrationError(f"level {j} is not a subcomplex")
            if X.dimension > j:
                raise FiltrationError(f"level {j} has dimension {X.dimension}")
            if j and not levels[j - 1] <= X:
                raise FiltrationError(f"level {j - 1} is not contained in level {j}")
        self.K = K
        self.levels = levels
        self.notes: list[str] = []
        self._stratum_of = {}
        for j in range(n, -1, -1):
            for s in levels[j]:
                self._stratum_of[s] = j

    @property
    def n(self) -> int:
        return self.K.dimension

    def __getitem__(self, j: int) -> SimplicialComplex:
        if j < 0:
            return EMPTY
        return self.levels[min(j, self.n)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Filtration) and self.K == other.K and self.levels == other.levels

    def stratum(self, j: int) -> list[Simplex]:
        """Simplexes whose interiors lie in ``X_j - X_{j-1}``."""
        return [s for s in self[j] if s not in self[j - 1]]

    def stratum_of(self, s: Simplex) -> int:
        return self._stratum_of[s]

    def occupancy(self) -> set[int]:
        return {j for j in range(self.n + 1) if self.stratum(j)}

    def as_lists(self) -> list[list[list[int]]]:
        return [[list(s) for s in X.maximal_simplices()] for X in self.levels]

    @classmethod
    def from_lists(cls, K: SimplicialComplex, levels: Iterable[Iterable[Iterable[int]]]) -> "Filtration":
        return cls(K, [build_complex(lv) for lv in levels])

    @classmethod
    def trivial(cls, K: SimplicialComplex) -> "Filtration":
        return cls(K, [EMPTY] * K.dimension + [K])

    @classmethod
    def skeletal(cls, K: SimplicialComplex) -> "Filtration":
        return cls(K, [K.skeleton(j) for j in range(K.dimension + 1)])


def intrinsic_stratification(K: SimplicialComplex) -> Filtration:
    """Coarsest homology stratification, built downward from ``X_n = K``.

    A simplex of ``X_j`` is dropped from ``X_{j-1}`` when it lies in a
    j-simplex of ``X_j`` and q is an isomorphism onto each of its cofaces in
    ``X_j``. Simplexes lying in no j-simplex of ``X_j`` pass down unchanged.
    The non-constant locus must come out face-closed; this is asserted.
    """
    require_principal(K)
    n = K.dimension
    levels: list[SimplicialComplex] = [EMPTY] * (n + 1)
    levels[n] = K
    notes = []
    X = K
    for j in range(n, 0, -1):
        in_top = set()
        for t in X.simplices(j):
            for k in range(1, len(t) + 1):
                in_top.update(combinations(t, k))
        keep = []
        nonconst = set()
        demoted = []
        for s in X:
            if s not in in_top:
                keep.append(s)
                demoted.append(s)
            elif not is_locally_constant(K, s, X):
                keep.append(s)
                nonconst.add(s)
        for s in nonconst:
            for f in _proper_faces(s):
                if f not in nonconst:
                    raise AssertionError(
                        f"non-constant locus not face-closed at level {j}: {s} fails but its face {f} passes"
                    )
        if demoted:
            notes.append(f"level {j - 1}: {len(demoted)} simplexes in no {j}-simplex carried down")
        try:
            X = SimplicialComplex(keep)
        except Exception as exc:
            raise AssertionError(f"level {j - 1} is not face-closed: {exc}") from None
        levels[j - 1] = X
    F = Filtration(K, levels)
    F.notes = notes
    return F


def _proper_faces(s: Simplex):
    for k in range(1, len(s)):
        yield from combinations(s, k)


# ---------------------------------------------------------------------------
# manifold and stratification checks


def _is_sphere_like(L: SimplicialComplex, d: int) -> bool:
    top = max(L.dimension, d)
    return all(reduced_homology(L, k) == (Z if k == d else ZERO) for k in range(-1, top + 1))


def is_homology_manifold(K: SimplicialComplex, cross_check: bool = False) -> bool:
    """Every link is a homology sphere of the complementary dimension."""
    require_principal(K)
    n = K.dimension
    verdict = all(_is_sphere_like(K.link(s), n - len(s)) for s in K)
    if cross_check:
        expect = tuple(Z if k == n else ZERO for k in range(n + 1))
        other = all(local_profile(K, s) == expect for s in K)
        if other != verdict:
            raise AssertionError("link criterion and local homology criterion disagree")
    return verdict


def _constant_on_strata(F: Filtration, ambient_for) -> bool:
    for j in range(F.n + 1):
        here = set(F.stratum(j))
        for s in here:
            for t in F[j].cofaces(s):
                if t == s or t not in here:
                    continue
                for A in ambient_for(j):
                    if not _q_iso(A, s, t):
                        return False
    return True


def _validate(K: SimplicialComplex, F: Filtration) -> None:
    if not isinstance(F, Filtration) or F.K != K:
        raise FiltrationError("filtration does not belong to this complex")


def check_h_stratification(K: SimplicialComplex, F: Filtration) -> bool:
    _validate(K, F)
    return _constant_on_strata(F, lambda j: (K,))


def check_strong(K: SimplicialComplex, F: Filtration) -> bool:
    _validate(K, F)
    return _constant_on_strata(F, lambda j: (K, F[j]))


def check_very_strong(K: SimplicialComplex, F: Filtration) -> bool:
    _validate(K, F)
    return _constant_on_strata(F, lambda j: tuple(F[k] for k in range(j, F.n + 1)))


def stratum_is_homology_manifold(F: Filtration, j: int) -> bool:
    """Whether ``X_j - X_{j-1}`` has the local homology of R^j at every point."""
    X = F[j]
    expect = tuple(Z if k == j else ZERO for k in range(X.dimension + 1))
    return all(local_profile(X, s)[: len(expect)] == expect for s in F.stratum(j))


# ---------------------------------------------------------------------------
# reports


@dataclass
class StratificationReport:
    filtration: Filtration
    profiles: dict[int, list[tuple[tuple[FGAbelianGroup, ...], int]]]
    stratum_manifold: dict[int, bool]
    homology_manifold: bool
    is_h_stratification: bool
    is_strong: bool | None = None
    is_very_strong: bool | None = None
    notes: list[str] = field(default_factory=list)


def stratification_report(
    K: SimplicialComplex, strong: bool = False, very_strong: bool = False
) -> StratificationReport:
    F = intrinsic_stratification(K)
    profiles = {}
    manifold = {}
    for j in sorted(F.occupancy(), reverse=True):
        counts = Counter(local_profile(K, s) for s in F.stratum(j))
        profiles[j] = sorted(counts.items(), key=lambda kv: [str(g) for g in kv[0]])
        manifold[j] = stratum_is_homology_manifold(F, j)
    return StratificationReport(
        filtration=F,
        profiles=profiles,
        stratum_manifold=manifold,
        homology_manifold=is_homology_manifold(K),
        is_h_stratification=check_h_stratification(K, F),
        is_strong=check_strong(K, F) if strong else None,
        is_very_strong=check_very_strong(K, F) if very_strong else None,
        notes=list(F.notes),
    )


# ---------------------------------------------------------------------------
# experimental


EXPERIMENTAL = "experimental: relative permutation homology has no established definition"


def local_perm_homology(
    K: SimplicialComplex, pi, sigma: Sequence[int], i: int, method: str = "image"
) -> FGAbelianGroup:
    """EXPERIMENTAL. Permutation homology of the pair ``(K, C(sigma))``.

    The tower is ``K^pi_i | L'`` with ``L'`` the subdivided ``C(sigma)``;
    ``image`` takes images of ``H_i(T_i, L') -> H_i(T_{i+1}, L')`` and
    ``chain`` the homology of the relative-group complex with ``T_{-1} = L'``.
    """
    s = K.require(sigma)
    T = tower(K, as_permutation(pi))
    L = T.S.subdivide_subcomplex(_cstar(K, s))
    levels = [X.union(L) for X in T.levels]
    if not 0 <= i <= T.n:
        return ZERO
    if method == "image":
        return image_homology(levels, i, base=L).image()
    if method == "chain":
        return chain_homology(levels, i, base=L)
    raise ValueError(f"unknown method {method!r}")
