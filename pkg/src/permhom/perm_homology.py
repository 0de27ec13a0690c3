"""Permutation skeleta of the first derived complex and their homology.

For a principal n-complex K and a permutation pi of {0..n}, ``K^pi_i`` is
the full subcomplex of ``K^(1)`` on barycentres of simplexes whose
dimension is one of ``pi(0), ..., pi(i)``. ``H^pi_i`` is computed two
ways that must agree:

* image: ``Im(H_i(K^pi_i) -> H_i(K^pi_{i+1}))``, with ``K^pi_{n+1} = K^pi_n``;
* chain: homology of ``... -> H_{i+1}(T_{i+1}, T_i) -> H_i(T_i, T_{i-1}) -> ...``
  whose differentials are the connecting maps of the triples.

Both are written for an arbitrary tower ``T_0 <= ... <= T_n`` over an
optional base subcomplex, which the experimental local variant reuses.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .complex import (
    EMPTY,
    LabeledSubdivision,
    SimplicialComplex,
    barycentric_subdivision,
    full_subcomplex,
)
from .errors import NotPrincipalError, PermutationError, SizeLimitError, UndefinedInputError
from .chains import Chain, HomologyMap, boundary, chain_complex, inclusion_map
from .lattice import FGAbelianGroup, SparseVec, kernel_modulo, quotient_group, subgroup_generated
from .perm import Permutation, Perversity, as_permutation

SIZE_LIMIT_ENV = "PERMHOM_MAX_SIMPLICES"
DEFAULT_SIZE_LIMIT = 250_000


def size_limit() -> int:
    raw = os.environ.get(SIZE_LIMIT_ENV)
    if not raw:
        return DEFAULT_SIZE_LIMIT
    try:
        return int(raw)
    except ValueError:
        raise UndefinedInputError(f"{SIZE_LIMIT_ENV} must be an integer, got {raw!r}") from None


@lru_cache(maxsize=64)
def derived(K: SimplicialComplex) -> LabeledSubdivision:
    return barycentric_subdivision(K)


def require_principal(K: SimplicialComplex) -> None:
    if K.is_empty():
        raise UndefinedInputError("the complex is empty")
    if not K.is_principal():
        raise NotPrincipalError(
            f"complex of dimension {K.dimension} has maximal simplexes of lower dimension"
        )


class PermSkeletonTower:
    """``K^pi_0 <= ... <= K^pi_n`` inside ``K^(1)``."""

    def __init__(self, K: SimplicialComplex, pi: Permutation):
        require_principal(K)
        if pi.n != K.dimension:
            raise PermutationError(
                f"permutation {pi} acts on 0..{pi.n} but the complex has dimension {K.dimension}"
            )
        self.K = K
        self.pi = pi
        self.S = derived(K)
        self.levels = [full_subcomplex(self.S, pi.values[: i + 1]) for i in range(pi.n + 1)]

    @property
    def n(self) -> int:
        return self.pi.n

    def skeleton(self, i: int) -> SimplicialComplex:
        if i < 0:
            return EMPTY
        return self.levels[min(i, self.n)]

    def co_skeleton(self, i: int) -> SimplicialComplex:
        if i >= self.n:
            return EMPTY
        rest = set(range(self.n + 1)) - set(self.pi.values[: max(i + 1, 0)])
        return full_subcomplex(self.S, rest)

    def inductive_skeleton(self, i: int) -> SimplicialComplex:
        """The same level rebuilt by coning: attach ``a * (K^pi_{i-1} & lk(a))`` per barycentre."""
        cur = SimplicialComplex(
            [(v,) for v in self.S.vertices_of_dims([self.pi(0)])], _trusted=True
        )
        sub = self.S.complex
        for k in range(1, i + 1):
            simplices = set(cur)
            for a in self.S.vertices_of_dims([self.pi(k)]):
                simplices.add((a,))
                for s in sub.link((a,)):
                    if s in cur:
                        simplices.add(tuple(sorted(s + (a,))))
            cur = SimplicialComplex(simplices, _trusted=True)
        return cur


@lru_cache(maxsize=256)
def tower(K: SimplicialComplex, pi: Permutation) -> PermSkeletonTower:
    return PermSkeletonTower(K, pi)


def perm_skeleton(K: SimplicialComplex, pi, i: int, cross_check: bool = False) -> SimplicialComplex:
    T = tower(K, as_permutation(pi))
    if not 0 <= i <= T.n:
        raise UndefinedInputError(f"degree {i} outside 0..{T.n}")
    out = T.skeleton(i)
    if cross_check and T.inductive_skeleton(i) != out:
        raise AssertionError("full-subcomplex and cone descriptions disagree")
    return out


def co_perm_skeleton(K: SimplicialComplex, pi, i: int, cross_check: bool = False) -> SimplicialComplex:
    pi = as_permutation(pi)
    T = tower(K, pi)
    if not 0 <= i <= T.n:
        raise UndefinedInputError(f"degree {i} outside 0..{T.n}")
    out = T.co_skeleton(i)
    if cross_check and i < T.n and tower(K, pi.complement()).skeleton(T.n - i - 1) != out:
        raise AssertionError("complementary skeleton disagrees with the complement permutation")
    return out


# ---------------------------------------------------------------------------
# tower homology


def _pair(X: SimplicialComplex, base: SimplicialComplex | None):
    return X if base is None or base.is_empty() else (X, base)


def image_homology(
    levels: Sequence[SimplicialComplex], i: int, base: SimplicialComplex | None = None
) -> HomologyMap:
    """``H_i(T_i, B) -> H_i(T_{i+1}, B)`` with ``T_{n+1} = T_n``."""
    n = len(levels) - 1
    src = levels[i]
    dst = levels[min(i + 1, n)]
    return inclusion_map(_pair(src, base), _pair(dst, base), i)


def _relative_group(levels, base, i):
    below = levels[i - 1] if i >= 1 else base
    return chain_complex(levels[i], below if below is not None and not below.is_empty() else None).homology(i)


def chain_homology(
    levels: Sequence[SimplicialComplex], i: int, base: SimplicialComplex | None = None
) -> FGAbelianGroup:
    """Homology at ``E_i = H_i(T_i, T_{i-1})`` of the complex of connecting maps.

    ``T_{-1}`` is ``base`` (empty by default).
    """
    n = len(levels) - 1
    if not 0 <= i <= n:
        return FGAbelianGroup()
    E = {k: _relative_group(levels, base, k) for k in (i - 1, i, i + 1) if 0 <= k <= n}

    def connecting(k: int) -> list[SparseVec]:
        # E_k -> E_{k-1}: boundary of a relative cycle, read in the lower pair
        src, dst = E[k], E[k - 1]
        cols = []
        for g in src.generators:
            b = boundary(g)
            c = dst.coordinates(b)
            cols.append({r: v for r, v in enumerate(c) if v})
        return cols

    m = len(E[i].orders)
    rel_i = [{r: d} for r, d in enumerate(E[i].orders) if d]
    if i >= 1 and E[i - 1].orders:
        rel_below = [{r: d} for r, d in enumerate(E[i - 1].orders) if d]
        ker = kernel_modulo(connecting(i), rel_below)
    else:
        ker = [{r: 1} for r in range(m)]
    img = connecting(i + 1) if i + 1 in E else []
    return quotient_group(ker, [v for v in img if v] + rel_i)


# ---------------------------------------------------------------------------
# public operations


@dataclass
class PermHomologyResult:
    permutation: Permutation
    method: str
    groups: list[FGAbelianGroup]
    name: str = ""
    warnings: list[str] = field(default_factory=list)

    def __getitem__(self, i: int) -> FGAbelianGroup:
        if 0 <= i < len(self.groups):
            return self.groups[i]
        return FGAbelianGroup()


def _check_degree(T: PermSkeletonTower, i: int) -> bool:
    return 0 <= i <= T.n


def perm_homology_via_image(K: SimplicialComplex, pi, i: int) -> FGAbelianGroup:
    T = tower(K, as_permutation(pi))
    if not _check_degree(T, i):
        return FGAbelianGroup()
    return image_homology(T.levels, i).image()


def perm_homology_via_chain(K: SimplicialComplex, pi, i: int) -> FGAbelianGroup:
    T = tower(K, as_permutation(pi))
    if not _check_degree(T, i):
        return FGAbelianGroup()
    return chain_homology(T.levels, i)


def perm_homology(K: SimplicialComplex, pi, method: str = "image", name: str = "") -> PermHomologyResult:
    pi = as_permutation(pi)
    fn = {"image": perm_homology_via_image, "chain": perm_homology_via_chain}.get(method)
    if fn is None:
        raise ValueError(f"unknown method {method!r}")
    groups = [fn(K, pi, i) for i in range(K.dimension + 1)]
    return PermHomologyResult(pi, method, groups, name)


def intersection_homology(K: SimplicialComplex, p: Perversity, i: int) -> FGAbelianGroup:
    return perm_homology_via_image(K, as_permutation(p), i)


def natural_map_to_ordinary(K: SimplicialComplex, pi, i: int) -> HomologyMap:
    """``H^pi_i(K) -> H_i(K^(1))``: classes of ``K^pi_i``-cycles included into the derived complex."""
    T = tower(K, as_permutation(pi))
    whole = T.S.complex
    if not _check_degree(T, i):
        return HomologyMap(i, [], [], [], [], [])
    a = image_homology(T.levels, i)
    total = inclusion_map(T.levels[i], whole, i)
    _, im_orders, combos = subgroup_generated(a.columns(), a.target_orders)
    tgt = total.target_orders
    matrix = [[0] * len(combos) for _ in tgt]
    gens: list[Chain] = []
    for c, combo in enumerate(combos):
        chain: Chain = {}
        for j, coef in combo.items():
            for s, v in a.source_generators[j].items():
                chain[s] = chain.get(s, 0) + coef * v
        gens.append({s: v for s, v in chain.items() if v})
        for r, d in enumerate(tgt):
            v = sum(total.matrix[r][j] * coef for j, coef in combo.items())
            matrix[r][c] = v % d if d else v
    return HomologyMap(i, list(im_orders), list(tgt), matrix, gens, total.target_generators)


@dataclass
class InvarianceReport:
    permutation: Permutation
    depth: int
    base_groups: list[FGAbelianGroup]
    subdivided_groups: list[FGAbelianGroup]
    subdivided_size: int

    @property
    def mismatches(self) -> list[int]:
        return [i for i, (a, b) in enumerate(zip(self.base_groups, self.subdivided_groups)) if a != b]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def derived_size(K: SimplicialComplex) -> int:
    """Number of simplexes of ``K^(1)``, from flag counts without building it."""
    counts = {s: 1 for s in K}
    total = 0
    for s in K:  # canonical order lists faces before cofaces
        if len(s) > 1:
            counts[s] = 1 + sum(counts[f] for f in _proper_faces(s))
        total += counts[s]
    return total


def _proper_faces(s):
    for k in range(1, len(s)):
        yield from combinations(s, k)


def subdivision_invariance_check(K: SimplicialComplex, pi, depth: int = 1) -> InvarianceReport:
    """Compare ``H^pi(K)`` with ``H^pi(K^(r))``.

    The tower of ``K^(r)`` lives in ``K^(r+1)``; its size is checked against
    the configured limit before anything is built.
    """
    pi = as_permutation(pi)
    if depth < 1:
        raise UndefinedInputError("subdivision depth must be at least 1")
    limit = size_limit()
    X = K
    for _ in range(depth):
        need = derived_size(X)
        if need > limit:
            raise SizeLimitError(f"subdivision would have {need} simplexes (limit {limit})")
        X = derived(X).complex
    need = derived_size(X)
    if need > limit:
        raise SizeLimitError(f"subdivision would have {need} simplexes (limit {limit})")
    base = [perm_homology_via_image(K, pi, i) for i in range(K.dimension + 1)]
    sub = [perm_homology_via_image(X, pi, i) for i in range(X.dimension + 1)]
    return InvarianceReport(pi, depth, base, sub, need)
