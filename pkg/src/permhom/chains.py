"""Integral simplicial homology of complexes and pairs, with explicit cycles.

A :class:`ChainComplex` is built for a pair ``(K, L)`` (``L`` may be empty)
and reduced once by the unit-pivot kernel. Every homology group then comes
with generating cycles in the original simplexes and a coordinate map for
arbitrary cycles, which is what induced maps are computed from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from . import kernels
from .complex import Simplex, SimplicialComplex
from .errors import NotASubcomplexError
from .lattice import (
    FGAbelianGroup,
    Presentation,
    SparseVec,
    dot,
    smith_normal_form,  # noqa: F401  (re-exported)
    sparse_snf,
    subgroup_generated,
    to_dense,
)

Chain = dict[Simplex, int]
EMPTY_SIMPLEX: Simplex = ()


def _face_signs(s: Simplex):
    for i in range(len(s)):
        yield s[:i] + s[i + 1 :], -1 if i % 2 else 1


def boundary(chain: Chain) -> Chain:
    """Simplicial boundary of a chain, unaugmented."""
    out: Chain = {}
    for s, v in chain.items():
        if len(s) <= 1:
            continue
        for f, sign in _face_signs(s):
            nv = out.get(f, 0) + sign * v
            if nv:
                out[f] = nv
            else:
                out.pop(f, None)
    return out


class ChainComplex:
    """Simplicial chains of ``K`` modulo ``L``.

    Orientation is by ascending vertex order:
    ``d[v0..vk] = sum (-1)^i [v0..^vi..vk]``. With ``augmented=True`` the
    empty simplex is a cell of dimension -1, giving reduced homology.
    """

    def __init__(
        self,
        K: SimplicialComplex,
        L: SimplicialComplex | None = None,
        augmented: bool = False,
    ):
        if L is not None and not L.is_empty():
            if not L <= K:
                raise NotASubcomplexError("relative subcomplex is not contained in the complex")
        else:
            L = None
        self.K = K
        self.L = L
        self.augmented = augmented and L is None
        cells: list[Simplex] = [EMPTY_SIMPLEX] if self.augmented else []
        lset = L.simplex_set if L is not None else frozenset()
        cells.extend(s for s in K if s not in lset)
        self.cells = cells
        self.index = {s: i for i, s in enumerate(cells)}
        self.dims = [len(s) - 1 for s in cells]
        self.top = K.dimension
        bnds: list[dict[int, int]] = []
        for s in cells:
            col: dict[int, int] = {}
            if len(s) == 1:
                if self.augmented:
                    col[0] = 1
            elif s:
                for f, sign in _face_signs(s):
                    j = self.index.get(f)
                    if j is not None:
                        col[j] = sign
            bnds.append(col)
        self._boundaries = bnds
        self._reduced = None
        self._bases: dict[int, HomologyBasis] = {}

    # -- raw chain level -----------------------------------------------

    def cells_of_dim(self, k: int) -> list[Simplex]:
        return [s for s, d in zip(self.cells, self.dims) if d == k]

    def boundary_matrix(self, k: int) -> list[list[int]]:
        """Dense matrix of d_k: rows are (k-1)-cells, columns k-cells, canonical order."""
        rows = [self.index[s] for s in self.cells_of_dim(k - 1)]
        cols = [self.index[s] for s in self.cells_of_dim(k)]
        rpos = {c: i for i, c in enumerate(rows)}
        return to_dense(len(rows), [{rpos[a]: v for a, v in self._boundaries[c].items()} for c in cols])

    def to_ids(self, chain: Chain) -> dict[int, int]:
        """Chain on simplexes -> chain on cells; simplexes of L are dropped."""
        out: dict[int, int] = {}
        lset = self.L.simplex_set if self.L is not None else frozenset()
        for s, v in chain.items():
            if not v:
                continue
            j = self.index.get(s)
            if j is None:
                if s in lset:
                    continue
                raise NotASubcomplexError(f"simplex {s} is not in the complex")
            out[j] = out.get(j, 0) + v
        return {j: v for j, v in out.items() if v}

    def from_ids(self, chain: dict[int, int]) -> Chain:
        return {self.cells[j]: v for j, v in sorted(chain.items()) if v}

    def boundary(self, chain: Chain) -> Chain:
        """Boundary in K (not reduced modulo L)."""
        return boundary(chain)

    # -- reduction -----------------------------------------------------

    @property
    def reduced(self):
        if self._reduced is None:
            alive, bnd, log = kernels.reduce_complex(self._boundaries)
            elim_at = [-1] * len(self.cells)
            lift_index: dict[int, list[int]] = {}
            for t, (a, b, _, _, cob_a) in enumerate(log):
                elim_at[a] = t
                elim_at[b] = t
                for c in cob_a:
                    lift_index.setdefault(c, []).append(t)
            self._reduced = (alive, bnd, log, elim_at, lift_index)
        return self._reduced

    def surviving(self, k: int) -> list[int]:
        alive = self.reduced[0]
        return [c for c, d in enumerate(self.dims) if d == k and alive[c]]

    def project(self, chain: dict[int, int]) -> dict[int, int]:
        _, _, log, elim_at, _ = self.reduced
        return kernels.project_chain(chain, log, elim_at)

    def lift(self, chain: dict[int, int]) -> dict[int, int]:
        _, _, log, _, lift_index = self.reduced
        return kernels.lift_chain(chain, log, lift_index)

    # -- homology ------------------------------------------------------

    def homology(self, k: int) -> "HomologyBasis":
        if k not in self._bases:
            self._bases[k] = HomologyBasis(self, k)
        return self._bases[k]

    def group(self, k: int) -> FGAbelianGroup:
        lo = -1 if self.augmented else 0
        if k < lo or k > self.top:
            return FGAbelianGroup()
        return self.homology(k).group

    def groups(self) -> list[FGAbelianGroup]:
        return [self.group(k) for k in range(self.top + 1)]


class HomologyBasis:
    """H_k of a chain complex as ``sum Z/orders[i]`` with explicit generators."""

    def __init__(self, cc: ChainComplex, k: int):
        self.cc = cc
        self.k = k
        _, bnd, _, _, _ = cc.reduced
        here = cc.surviving(k)
        below = cc.surviving(k - 1)
        above = cc.surviving(k + 1)
        self._here = here
        self._pos = {c: i for i, c in enumerate(here)}
        bpos = {c: i for i, c in enumerate(below)}
        cols_out = [{bpos[a]: v for a, v in bnd[c].items()} for c in here]
        snf = sparse_snf(len(below), len(here), cols_out, track=True)
        self._r = r = snf.rank
        self._V = snf.V
        self._Vinv = snf.Vinv
        z = len(here) - r
        rel = []
        for c in above:
            col = {self._pos[a]: v for a, v in bnd[c].items()}
            w = {}
            for t in range(r, len(here)):
                x = dot(self._Vinv[t], col)
                if x:
                    w[t - r] = x
            rel.append(w)
        self._pres = Presentation(z, rel)
        self.orders = list(self._pres.orders)
        self._generators: list[Chain] | None = None

    @property
    def group(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_orders(self.orders)

    def __len__(self) -> int:
        return len(self.orders)

    def coordinates(self, chain: Chain) -> list[int]:
        """Coordinates of a k-cycle of the pair in the generators."""
        ids = self.cc.to_ids(chain)
        for j in ids:
            if self.cc.dims[j] != self.k:
                raise ValueError(f"chain is not of degree {self.k}")
        x = self.cc.project(ids)
        local = {self._pos[c]: v for c, v in x.items()}
        r = self._r
        for t in range(r):
            if dot(self._Vinv[t], local):
                raise ValueError("chain is not a cycle")
        y = {}
        for t in range(r, len(self._here)):
            v = dot(self._Vinv[t], local)
            if v:
                y[t - r] = v
        return self._pres.coordinates(y)

    @property
    def generators(self) -> list[Chain]:
        if self._generators is None:
            gens = []
            r = self._r
            for i in range(len(self.orders)):
                g = self._pres.generator(i)
                local: SparseVec = {}
                for t, coef in g.items():
                    for c, v in self._V[r + t].items():
                        nv = local.get(c, 0) + coef * v
                        if nv:
                            local[c] = nv
                        else:
                            local.pop(c, None)
                ids = {self._here[c]: v for c, v in local.items()}
                gens.append(self.cc.from_ids(self.cc.lift(ids)))
            self._generators = gens
        return self._generators


@dataclass
class HomologyMap:
    """A homomorphism between presented homology groups.

    ``matrix[r][c]`` is the coordinate on target generator r of the image of
    source generator c, reduced modulo the target orders.
    """

    degree: int
    source_orders: list[int]
    target_orders: list[int]
    matrix: list[list[int]]
    source_generators: list[Chain]
    target_generators: list[Chain]

    @property
    def source(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_orders(self.source_orders)

    @property
    def target(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_orders(self.target_orders)

    def columns(self) -> list[SparseVec]:
        cols: list[SparseVec] = [{} for _ in self.source_orders]
        for r, row in enumerate(self.matrix):
            for c, v in enumerate(row):
                if v:
                    cols[c][r] = v
        return cols

    def image(self) -> FGAbelianGroup:
        return subgroup_generated(self.columns(), self.target_orders)[0]

    def cokernel(self) -> FGAbelianGroup:
        rel = self.columns() + [{i: d} for i, d in enumerate(self.target_orders) if d]
        return Presentation(len(self.target_orders), rel).group

    def is_surjective(self) -> bool:
        return self.cokernel().is_trivial

    def is_injective(self) -> bool:
        # f.g. abelian groups are Hopfian: G -> im(G) is injective iff im(G) is isomorphic to G
        return self.image() == self.source

    def is_isomorphism(self) -> bool:
        return self.is_surjective() and self.is_injective()

    def compose(self, first: "HomologyMap") -> "HomologyMap":
        """``self o first``."""
        rows = len(self.target_orders)
        inner = len(self.source_orders)
        mat = []
        for r in range(rows):
            row = []
            for c in range(len(first.source_orders)):
                v = sum(self.matrix[r][k] * first.matrix[k][c] for k in range(inner))
                d = self.target_orders[r]
                row.append(v % d if d else v)
            mat.append(row)
        return HomologyMap(
            self.degree, first.source_orders, self.target_orders, mat,
            first.source_generators, self.target_generators,
        )


# ---------------------------------------------------------------------------
# functional surface

PairLike = Union[SimplicialComplex, tuple, ChainComplex]


@lru_cache(maxsize=512)
def chain_complex(
    K: SimplicialComplex, L: SimplicialComplex | None = None, augmented: bool = False
) -> ChainComplex:
    return ChainComplex(K, L, augmented)


def _as_cc(x: PairLike) -> ChainComplex:
    if isinstance(x, ChainComplex):
        return x
    if isinstance(x, SimplicialComplex):
        return chain_complex(x)
    K, L = x
    return chain_complex(K, L)


def boundary_matrices(K: SimplicialComplex) -> ChainComplex:
    return ChainComplex(K)


def homology(K: SimplicialComplex, i: int, reduced: bool = False) -> FGAbelianGroup:
    return chain_complex(K, None, reduced).group(i)


def homology_groups(K: SimplicialComplex, reduced: bool = False) -> list[FGAbelianGroup]:
    cc = chain_complex(K, None, reduced)
    return [cc.group(i) for i in range(max(K.dimension, 0) + 1)]


def reduced_homology(K: SimplicialComplex, i: int) -> FGAbelianGroup:
    """Reduced homology; the empty complex has ``H~_{-1} = Z``."""
    if K.is_empty():
        return FGAbelianGroup(1) if i == -1 else FGAbelianGroup()
    return chain_complex(K, None, True).group(i)


def relative_homology(K: SimplicialComplex, L: SimplicialComplex, i: int) -> FGAbelianGroup:
    return chain_complex(K, L).group(i)


def betti_numbers(K: SimplicialComplex) -> list[int]:
    return [g.rank for g in homology_groups(K)]


def _check_inclusion(src: ChainComplex, dst: ChainComplex) -> None:
    if not src.K <= dst.K:
        raise NotASubcomplexError("source complex is not contained in the target complex")
    if src.L is not None:
        if dst.L is None or not src.L <= dst.L:
            raise NotASubcomplexError("source subcomplex is not contained in the target subcomplex")


def inclusion_map(source: PairLike, target: PairLike, i: int) -> HomologyMap:
    """Map on H_i induced by the inclusion of pairs ``(A, A0) -> (B, B0)``.

    Each argument is a complex, a ``(complex, subcomplex)`` tuple, or a
    :class:`ChainComplex`.
    """
    src, dst = _as_cc(source), _as_cc(target)
    _check_inclusion(src, dst)
    if i < 0 or i > src.top:
        sb_orders, sgens = [], []
    else:
        sb = src.homology(i)
        sb_orders, sgens = sb.orders, sb.generators
    if i < 0 or i > dst.top:
        tb = None
        t_orders: list[int] = []
        tgens: list[Chain] = []
    else:
        tb = dst.homology(i)
        t_orders, tgens = tb.orders, tb.generators
    cols = [tb.coordinates(g) if tb is not None else [] for g in sgens]
    matrix = [[cols[c][r] for c in range(len(sgens))] for r in range(len(t_orders))]
    return HomologyMap(i, list(sb_orders), list(t_orders), matrix, sgens, tgens)


def induced_map(
    K: SimplicialComplex, A: SimplicialComplex, B: SimplicialComplex, i: int, relative: bool = False
) -> HomologyMap:
    """``H_i(A) -> H_i(B)``, or ``H_i(K, A) -> H_i(K, B)`` when ``relative``."""
    if not A <= B:
        raise NotASubcomplexError("A is not contained in B")
    if not B <= K:
        raise NotASubcomplexError("B is not contained in K")
    if relative:
        return inclusion_map((K, A), (K, B), i)
    return inclusion_map(A, B, i)


def image_subgroup(m: HomologyMap) -> FGAbelianGroup:
    return m.image()


def pair_map_is_iso(
    K: SimplicialComplex, A: SimplicialComplex, B: SimplicialComplex, cross_check: bool = False
) -> bool:
    """Whether ``H_*(K, A) -> H_*(K, B)`` is an isomorphism in every degree.

    Decided by exactness: iso in all degrees iff ``H_*(B, A) = 0``.
    """
    if not A <= B:
        raise NotASubcomplexError("A is not contained in B")
    if not B <= K:
        raise NotASubcomplexError("B is not contained in K")
    cc = chain_complex(B, A)
    verdict = all(cc.group(i).is_trivial for i in range(max(B.dimension, 0) + 1))
    if cross_check:
        direct = all(
            inclusion_map((K, A), (K, B), i).is_isomorphism() for i in range(K.dimension + 1)
        )
        if direct != verdict:
            raise AssertionError("exactness criterion disagrees with the induced maps")
    return verdict


def euler_characteristic_from_homology(K: SimplicialComplex) -> int:
    return sum((-1) ** i * g.rank for i, g in enumerate(homology_groups(K)))


def groups_text(groups: Sequence[FGAbelianGroup]) -> str:
    return ", ".join(str(g) for g in groups)
