"""Finite abstract simplicial complexes and their barycentric subdivisions.

Simplexes are strictly increasing tuples of integer vertex labels. Every
complex is immutable and keeps its simplexes in canonical order (by
dimension, then lexicographically), so anything derived from it is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import MalformedSimplexError, MissingSimplexError, UndefinedInputError

Simplex = tuple[int, ...]


def _faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``s`` (including ``s`` itself)."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def _normalize(simplex: Iterable[int]) -> Simplex:
    raw = list(simplex)
    if not raw:
        raise MalformedSimplexError("empty simplex")
    for v in raw:
        if isinstance(v, bool) or not isinstance(v, int):
            raise MalformedSimplexError(f"vertex label {v!r} is not an integer")
    s = tuple(sorted(raw))
    if len(set(s)) != len(s):
        raise MalformedSimplexError(f"duplicate vertex in simplex {tuple(raw)}")
    return s


class SimplicialComplex:
    """A finite, face-closed set of simplexes.

    Construct with :func:`build_complex` (face closure of maximal simplexes)
    or :meth:`from_simplices` when the input is already face-closed.
    """

    __slots__ = ("_set", "_by_dim", "_cofaces", "_hash")

    def __init__(self, simplices: Iterable[Simplex] = (), *, _trusted: bool = False):
        if _trusted:
            sset = frozenset(simplices)
        else:
            sset = frozenset(_normalize(s) for s in simplices)
            for s in sset:
                if len(s) > 1:
                    for f in combinations(s, len(s) - 1):
                        if f not in sset:
                            raise MalformedSimplexError(
                                f"not face-closed: {f} is a face of {s} but is missing"
                            )
        self._set = sset
        by_dim: dict[int, list[Simplex]] = {}
        for s in sset:
            by_dim.setdefault(len(s) - 1, []).append(s)
        top = max(by_dim, default=-1)
        self._by_dim = tuple(sorted(by_dim.get(k, ())) for k in range(top + 1))
        self._cofaces: dict[int, frozenset[Simplex]] | None = None
        self._hash: int | None = None

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Build from a complete simplex list; rejects input that is not face-closed."""
        return cls(simplices)

    # -- basic queries -------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self._by_dim) - 1

    @property
    def vertices(self) -> list[int]:
        return [s[0] for s in self.simplices(0)]

    def simplices(self, k: int | None = None) -> list[Simplex]:
        if k is None:
            return [s for level in self._by_dim for s in level]
        if 0 <= k < len(self._by_dim):
            return list(self._by_dim[k])
        return []

    def count(self, k: int) -> int:
        return len(self._by_dim[k]) if 0 <= k < len(self._by_dim) else 0

    def f_vector(self) -> list[int]:
        return [len(level) for level in self._by_dim]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    def __contains__(self, s: object) -> bool:
        return s in self._set

    def __iter__(self) -> Iterator[Simplex]:
        for level in self._by_dim:
            yield from level

    def __len__(self) -> int:
        return len(self._set)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self._set == other._set

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._set)
        return self._hash

    def __le__(self, other: "SimplicialComplex") -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dimension}, f={self.f_vector()})"

    @property
    def simplex_set(self) -> frozenset[Simplex]:
        return self._set

    def is_empty(self) -> bool:
        return not self._set

    def maximal_simplices(self) -> list[Simplex]:
        out = []
        for s in self:
            if len(self.cofaces(s)) == 1:
                out.append(s)
        return out

    def require(self, s: Sequence[int]) -> Simplex:
        t = tuple(sorted(s))
        if t not in self._set:
            raise MissingSimplexError(f"simplex {t} is not in the complex")
        return t

    # -- incidence -----------------------------------------------------

    def _vertex_cofaces(self) -> dict[int, frozenset[Simplex]]:
        if self._cofaces is None:
            acc: dict[int, set[Simplex]] = {}
            for s in self._set:
                for v in s:
                    acc.setdefault(v, set()).add(s)
            self._cofaces = {v: frozenset(c) for v, c in acc.items()}
        return self._cofaces

    def cofaces(self, s: Simplex) -> list[Simplex]:
        """Simplexes containing ``s`` (including ``s``), canonically ordered."""
        table = self._vertex_cofaces()
        sets = sorted((table.get(v, frozenset()) for v in s), key=len)
        if not sets:
            return []
        found = set(sets[0])
        for other in sets[1:]:
            found &= other
        return sorted(found, key=lambda t: (len(t), t))

    # -- constructions -------------------------------------------------

    def skeleton(self, j: int) -> "SimplicialComplex":
        return SimplicialComplex((s for s in self._set if len(s) - 1 <= j), _trusted=True)

    def is_principal(self) -> bool:
        if not self._set:
            raise UndefinedInputError("principality is undefined for the empty complex")
        n = self.dimension
        covered = set()
        for top in self._by_dim[n]:
            covered.update(_faces(top))
        return len(covered) == len(self._set)

    def link(self, s: Sequence[int]) -> "SimplicialComplex":
        sigma = self.require(s)
        ss = set(sigma)
        out = []
        for rho in self.cofaces(sigma):
            if len(rho) > len(sigma):
                out.append(tuple(v for v in rho if v not in ss))
        return SimplicialComplex(out, _trusted=True)

    def closed_star(self, s: Sequence[int]) -> "SimplicialComplex":
        sigma = self.require(s)
        acc: set[Simplex] = set()
        for rho in self.cofaces(sigma):
            acc.update(_faces(rho))
        return SimplicialComplex(acc, _trusted=True)

    def complement_of_open_star(self, s: Sequence[int]) -> "SimplicialComplex":
        """All simplexes not containing ``s``: the simplicial model of X - st(x)."""
        sigma = self.require(s)
        star = set(self.cofaces(sigma))
        return SimplicialComplex((t for t in self._set if t not in star), _trusted=True)

    def subcomplex(self, simplices: Iterable[Simplex]) -> "SimplicialComplex":
        """Face closure of ``simplices``; each must belong to this complex."""
        acc: set[Simplex] = set()
        for s in simplices:
            t = self.require(s)
            acc.update(_faces(t))
        return SimplicialComplex(acc, _trusted=True)

    def full_subcomplex(self, vertices: Iterable[int]) -> "SimplicialComplex":
        vs = set(vertices)
        return SimplicialComplex((s for s in self._set if vs.issuperset(s)), _trusted=True)

    def union(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self._set | other._set, _trusted=True)

    def intersection(self, other: "SimplicialComplex") -> "SimplicialComplex":
        return SimplicialComplex(self._set & other._set, _trusted=True)


EMPTY = SimplicialComplex()


def build_complex(maximal_simplexes: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Face closure of the given simplexes."""
    acc: set[Simplex] = set()
    for raw in maximal_simplexes:
        acc.update(_faces(_normalize(raw)))
    return SimplicialComplex(acc, _trusted=True)


def skeleton(K: SimplicialComplex, j: int) -> SimplicialComplex:
    return K.skeleton(j)


def is_principal(K: SimplicialComplex) -> bool:
    return K.is_principal()


def link(K: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    return K.link(sigma)


def complement_of_open_star(K: SimplicialComplex, sigma: Sequence[int]) -> SimplicialComplex:
    return K.complement_of_open_star(sigma)


@dataclass(frozen=True)
class LabeledSubdivision:
    """First derived complex with provenance for every new vertex.

    ``origin[v]`` is the simplex of the base complex whose barycentre is
    the vertex ``v``; ``vertex_dim[v]`` is its dimension. Vertices are
    numbered in the canonical order of the base simplexes, so a flag
    ``A_0 < A_1 < ...`` always yields an increasing vertex tuple.
    """

    base: SimplicialComplex
    complex: SimplicialComplex
    origin: tuple[Simplex, ...]
    vertex_dim: tuple[int, ...]

    @property
    def index(self) -> dict[Simplex, int]:
        return {s: v for v, s in enumerate(self.origin)}

    def vertices_of_dims(self, dims: Iterable[int]) -> list[int]:
        ds = set(dims)
        return [v for v, d in enumerate(self.vertex_dim) if d in ds]

    def subdivide_subcomplex(self, L: SimplicialComplex) -> SimplicialComplex:
        """The subdivision of a subcomplex ``L`` of the base, inside ``complex``."""
        idx = self.index
        keep = {idx[s] for s in L}
        return self.complex.full_subcomplex(keep)

    def carrier(self, s: Simplex) -> Simplex:
        """Smallest base simplex containing the subdivision simplex ``s``."""
        return self.origin[max(s, key=lambda v: self.vertex_dim[v])]


def barycentric_subdivision(K: SimplicialComplex) -> LabeledSubdivision:
    if K.is_empty():
        raise UndefinedInputError("cannot subdivide the empty complex")
    origin = tuple(K)
    idx = {s: v for v, s in enumerate(origin)}
    # flags ending at s, built from flags ending at the facets' faces
    chains: dict[Simplex, list[tuple[int, ...]]] = {}
    for s in origin:
        own = [(idx[s],)]
        if len(s) > 1:
            for f in _faces(s):
                if f != s:
                    own.extend(c + (idx[s],) for c in chains[f])
        chains[s] = own
    simplices = [c for s in origin for c in chains[s]]
    sub = SimplicialComplex(simplices, _trusted=True)
    return LabeledSubdivision(
        base=K, complex=sub, origin=origin, vertex_dim=tuple(len(s) - 1 for s in origin)
    )


def iterated_subdivision(K: SimplicialComplex, r: int) -> SimplicialComplex:
    out = K
    for _ in range(r):
        out = barycentric_subdivision(out).complex
    return out


def full_subcomplex(S: LabeledSubdivision, dims: Iterable[int]) -> SimplicialComplex:
    """Full subcomplex of the derived complex on barycentres of the given dimensions."""
    return S.complex.full_subcomplex(S.vertices_of_dims(dims))


def flag_count(K: SimplicialComplex, length: int) -> int:
    """Number of strict face chains of the given length; oracle for subdivision sizes."""
    if length <= 0:
        return 0
    counts = {s: 1 for s in K}
    for _ in range(length - 1):
        nxt = {}
        for s in K:
            total = 0
            for f in _faces(s):
                if f != s:
                    total += counts[f]
            nxt[s] = total
        counts = nxt
    return sum(counts.values())
