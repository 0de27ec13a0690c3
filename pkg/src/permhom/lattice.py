"""Exact integer linear algebra over sparse matrices.

Matrices are given as a row count plus a list of sparse columns
(``dict[row, value]``). All arithmetic uses Python integers, so
intermediate growth never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

SparseVec = dict[int, int]


# ---------------------------------------------------------------------------
# finitely generated abelian groups


def _divisor_chain(values: Iterable[int]) -> tuple[int, ...]:
    vals = [abs(v) for v in values if abs(v) > 1]
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            a, b = vals[i], vals[j]
            g = gcd(a, b)
            vals[i], vals[j] = g, a // g * b
    return tuple(v for v in vals if v > 1)


def _prime_powers(d: int) -> list[int]:
    out = []
    p = 2
    while p * p <= d:
        if d % p == 0:
            q = 1
            while d % p == 0:
                d //= p
                q *= p
            out.append(q)
        p += 1
    if d > 1:
        out.append(d)
    return out


@dataclass(frozen=True, order=True)
class FGAbelianGroup:
    """``Z^rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ... | d_k``, all ``d_i >= 2``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        t = tuple(self.torsion)
        for i, d in enumerate(t):
            if d < 2:
                raise ValueError(f"torsion coefficient {d} must be at least 2")
            if i and d % t[i - 1]:
                raise ValueError(f"torsion {t} is not a divisor chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_orders(cls, orders: Iterable[int]) -> "FGAbelianGroup":
        """From cyclic summand orders in any arrangement; 0 means infinite cyclic."""
        orders = list(orders)
        rank = sum(1 for o in orders if o == 0)
        return cls(rank, _divisor_chain(o for o in orders if o != 0))

    @classmethod
    def parse(cls, text: str) -> "FGAbelianGroup":
        text = text.strip()
        if text == "0":
            return cls()
        orders: list[int] = []
        for part in text.split("+"):
            part = part.strip()
            if part == "Z":
                orders.append(0)
            elif part.startswith("Z^"):
                orders.extend([0] * int(part[2:]))
            elif part.startswith("Z/"):
                orders.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse group summand {part!r}")
        return cls.from_orders(orders)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self) -> str:
        return self.render()

    def render(self, primes: bool = False) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        tors = self.torsion
        if primes:
            tors = tuple(sorted(q for d in tors for q in _prime_powers(d)))
        parts.extend(f"Z/{d}" for d in tors)
        return " + ".join(parts) if parts else "0"

    def as_dict(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "text": self.render()}


TRIVIAL = FGAbelianGroup()


# ---------------------------------------------------------------------------
# small helpers


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``g = s*a + t*b = gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    x, y = a, b
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if x < 0:
        x, s0, t0 = -x, -s0, -t0
    return x, s0, t0


def axpy(dst: SparseVec, src: SparseVec, k: int) -> None:
    """``dst += k * src`` in place."""
    if not k:
        return
    for i, v in src.items():
        new = dst.get(i, 0) + k * v
        if new:
            dst[i] = new
        else:
            dst.pop(i, None)


def combine(a: SparseVec, b: SparseVec, s: int, t: int) -> SparseVec:
    out: SparseVec = {}
    if s:
        for i, v in a.items():
            out[i] = s * v
    if t:
        axpy(out, b, t)
    return {i: v for i, v in out.items() if v}


def dot(row: SparseVec, vec: SparseVec) -> int:
    if len(row) > len(vec):
        row, vec = vec, row
    return sum(v * vec.get(i, 0) for i, v in row.items())


def to_dense(nrows: int, columns: Sequence[SparseVec]) -> list[list[int]]:
    out = [[0] * len(columns) for _ in range(nrows)]
    for j, col in enumerate(columns):
        for i, v in col.items():
            out[i][j] = v
    return out


def from_dense(matrix: Sequence[Sequence[int]]) -> tuple[int, int, list[SparseVec]]:
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    cols = [{i: int(matrix[i][j]) for i in range(nrows) if matrix[i][j]} for j in range(ncols)]
    return nrows, ncols, cols


def matmul_dense(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if inner else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(ncols)] for row in a]


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form


class _Elimination:
    """Sparse matrix with row and column views plus optional transform tracking.

    Invariant: ``current = U @ original @ V`` with ``Uinv``, ``Vinv`` kept
    as exact inverses. U and Vinv are stored by rows, Uinv and V by columns.
    """

    def __init__(self, nrows: int, ncols: int, columns: Sequence[SparseVec], track: bool):
        self.m, self.n = nrows, ncols
        self.cols = [{i: v for i, v in c.items() if v} for c in columns]
        self.rows: list[SparseVec] = [{} for _ in range(nrows)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                self.rows[i][j] = v
        self.track = track
        if track:
            self.U = [{i: 1} for i in range(nrows)]
            self.Uinv = [{i: 1} for i in range(nrows)]
            self.V = [{j: 1} for j in range(ncols)]
            self.Vinv = [{j: 1} for j in range(ncols)]

    # row operations -------------------------------------------------------

    def _set_row(self, i: int, new: SparseVec) -> None:
        old = self.rows[i]
        for j in old:
            if j not in new:
                del self.cols[j][i]
        for j, v in new.items():
            self.cols[j][i] = v
        self.rows[i] = new

    def _set_col(self, j: int, new: SparseVec) -> None:
        old = self.cols[j]
        for i in old:
            if i not in new:
                del self.rows[i][j]
        for i, v in new.items():
            self.rows[i][j] = v
        self.cols[j] = new

    def row_add(self, dst: int, src: int, k: int) -> None:
        new = dict(self.rows[dst])
        axpy(new, self.rows[src], k)
        self._set_row(dst, new)
        if self.track:
            axpy(self.U[dst], self.U[src], k)
            axpy(self.Uinv[src], self.Uinv[dst], -k)

    def col_add(self, dst: int, src: int, k: int) -> None:
        new = dict(self.cols[dst])
        axpy(new, self.cols[src], k)
        self._set_col(dst, new)
        if self.track:
            axpy(self.V[dst], self.V[src], k)
            axpy(self.Vinv[src], self.Vinv[dst], -k)

    def row_combine(self, r1: int, r2: int, s: int, t: int, x: int, y: int) -> None:
        """Rows (r1, r2) <- (s r1 + t r2, x r1 + y r2); requires s*y - t*x = 1."""
        a, b = self.rows[r1], self.rows[r2]
        self._set_row(r1, combine(a, b, s, t))
        self._set_row(r2, combine(a, b, x, y))
        if self.track:
            ua, ub = self.U[r1], self.U[r2]
            self.U[r1], self.U[r2] = combine(ua, ub, s, t), combine(ua, ub, x, y)
            ca, cb = self.Uinv[r1], self.Uinv[r2]
            self.Uinv[r1], self.Uinv[r2] = combine(ca, cb, y, -x), combine(ca, cb, -t, s)

    def col_combine(self, c1: int, c2: int, s: int, t: int, x: int, y: int) -> None:
        """Columns (c1, c2) <- (s c1 + t c2, x c1 + y c2); requires s*y - t*x = 1."""
        a, b = self.cols[c1], self.cols[c2]
        self._set_col(c1, combine(a, b, s, t))
        self._set_col(c2, combine(a, b, x, y))
        if self.track:
            va, vb = self.V[c1], self.V[c2]
            self.V[c1], self.V[c2] = combine(va, vb, s, t), combine(va, vb, x, y)
            ra, rb = self.Vinv[c1], self.Vinv[c2]
            self.Vinv[c1], self.Vinv[c2] = combine(ra, rb, y, -x), combine(ra, rb, -t, s)

    def negate_row(self, i: int) -> None:
        self._set_row(i, {j: -v for j, v in self.rows[i].items()})
        if self.track:
            self.U[i] = {j: -v for j, v in self.U[i].items()}
            self.Uinv[i] = {j: -v for j, v in self.Uinv[i].items()}

    # elimination ----------------------------------------------------------

    def clear(self, p: int, q: int) -> None:
        """Make (p, q) the only nonzero entry of its row and column."""
        while True:
            a = self.rows[p][q]
            for i, v in list(self.cols[q].items()):
                if i == p:
                    continue
                v = self.rows[i].get(q, 0)
                if not v:
                    continue
                if v % a == 0:
                    self.row_add(i, p, -(v // a))
                else:
                    g, s, t = xgcd(a, v)
                    self.row_combine(p, i, s, t, -(v // g), a // g)
                    a = g
            for j, v in list(self.rows[p].items()):
                if j == q:
                    continue
                v = self.rows[p].get(j, 0)
                if not v:
                    continue
                if v % a == 0:
                    self.col_add(j, q, -(v // a))
                else:
                    g, s, t = xgcd(a, v)
                    self.col_combine(q, j, s, t, -(v // g), a // g)
                    a = g
            if len(self.cols[q]) == 1 and len(self.rows[p]) == 1:
                return

    def pick_pivot(self, active_cols: set[int]) -> tuple[int, int] | None:
        best = None
        best_key = None
        for j in active_cols:
            col = self.cols[j]
            lc = len(col) - 1
            for i, v in col.items():
                key = (abs(v), lc * (len(self.rows[i]) - 1))
                if best_key is None or key < best_key:
                    best, best_key = (i, j), key
                    if key == (1, 0):
                        return best
        return best

    def fix_divisibility(self, pivots: list[list[int]]) -> None:
        for i in range(len(pivots)):
            for j in range(i + 1, len(pivots)):
                pi, qi, di = pivots[i]
                pj, qj, dj = pivots[j]
                if dj % di == 0:
                    continue
                g, s, t = xgcd(di, dj)
                self.col_add(qi, qj, 1)
                self.row_combine(pi, pj, s, t, -(dj // g), di // g)
                self.col_add(qj, qi, -(t * dj // g))
                pivots[i][2] = g
                pivots[j][2] = di // g * dj


@dataclass
class SNFResult:
    """``U @ M @ V == diag(diagonal)`` with U, V unimodular.

    ``diagonal`` has ``min(m, n)`` entries forming a divisor chain followed
    by zeros. The inverse transforms are kept as well.
    """

    diagonal: list[int]
    U: list[list[int]]
    V: list[list[int]]
    Uinv: list[list[int]]
    Vinv: list[list[int]]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


@dataclass
class SparseSNF:
    nrows: int
    ncols: int
    diagonal: list[int]  # nonzero invariant factors, divisor chain
    U: list[SparseVec] | None = None  # rows
    Uinv: list[SparseVec] | None = None  # columns
    V: list[SparseVec] | None = None  # columns
    Vinv: list[SparseVec] | None = None  # rows

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def sparse_snf(nrows: int, ncols: int, columns: Sequence[SparseVec], track: bool = True) -> SparseSNF:
    work = _Elimination(nrows, ncols, columns, track)
    active = {j for j in range(ncols) if work.cols[j]}
    pivots: list[list[int]] = []
    while True:
        pv = work.pick_pivot(active)
        if pv is None:
            break
        p, q = pv
        work.clear(p, q)
        if work.rows[p][q] < 0:
            work.negate_row(p)
        pivots.append([p, q, work.rows[p][q]])
        active.discard(q)
    work.fix_divisibility(pivots)
    pivots.sort(key=lambda x: x[2])
    out = SparseSNF(nrows, ncols, [d for _, _, d in pivots])
    if track:
        used_r = {p for p, _, _ in pivots}
        used_c = {q for _, q, _ in pivots}
        row_order = [p for p, _, _ in pivots] + [i for i in range(nrows) if i not in used_r]
        col_order = [q for _, q, _ in pivots] + [j for j in range(ncols) if j not in used_c]
        # final transforms are P @ U and V @ Q for the pivot permutations
        out.U = [work.U[i] for i in row_order]
        out.Uinv = [work.Uinv[i] for i in row_order]
        out.V = [work.V[j] for j in col_order]
        out.Vinv = [work.Vinv[j] for j in col_order]
    return out


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> SNFResult:
    """Smith normal form of a dense integer matrix with unimodular transforms."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    _, _, cols = from_dense(matrix) if nrows else (0, 0, [])
    res = sparse_snf(nrows, ncols, cols, track=True)
    diag = list(res.diagonal) + [0] * (min(nrows, ncols) - res.rank)
    return SNFResult(
        diagonal=diag,
        U=to_dense(nrows, _transpose(res.U, nrows)),
        V=to_dense(ncols, res.V),
        Uinv=to_dense(nrows, res.Uinv),
        Vinv=to_dense(ncols, _transpose(res.Vinv, ncols)),
    )


def _transpose(vectors: Sequence[SparseVec], length: int) -> list[SparseVec]:
    out: list[SparseVec] = [{} for _ in range(length)]
    for k, vec in enumerate(vectors):
        for i, v in vec.items():
            out[i][k] = v
    return out


def invariant_factors(nrows: int, ncols: int, columns: Sequence[SparseVec]) -> list[int]:
    """Nonzero invariant factors (including ones), without transforms."""
    return sparse_snf(nrows, ncols, columns, track=False).diagonal


# ---------------------------------------------------------------------------
# lattices


@dataclass
class Echelon:
    """Column echelon basis of an integer lattice.

    ``basis`` is sorted by pivot row; each vector is zero above its pivot.
    ``combos[k]`` expresses ``basis[k]`` in the input columns, and
    ``kernel`` holds input-column combinations that vanish (a basis of the
    relation lattice), when tracking was requested.
    """

    pivot_rows: list[int]
    basis: list[SparseVec]
    combos: list[SparseVec] = field(default_factory=list)
    kernel: list[SparseVec] = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def solve(self, vec: SparseVec) -> list[int]:
        """Coordinates of ``vec`` in the basis; raises if it is not in the lattice."""
        x = dict(vec)
        out = []
        for p, w in zip(self.pivot_rows, self.basis):
            v = x.get(p, 0)
            if v:
                c, r = divmod(v, w[p])
                if r:
                    raise ValueError("vector is not in the lattice")
                axpy(x, w, -c)
                out.append(c)
            else:
                out.append(0)
        if x:
            raise ValueError("vector is not in the lattice")
        return out


def echelon(columns: Iterable[SparseVec], track: bool = False) -> Echelon:
    piv: dict[int, tuple[SparseVec, SparseVec]] = {}
    kernel: list[SparseVec] = []
    for idx, col in enumerate(columns):
        v = {i: x for i, x in col.items() if x}
        combo: SparseVec = {idx: 1} if track else {}
        while v:
            p = min(v)
            if p not in piv:
                piv[p] = (v, combo)
                break
            w, wc = piv[p]
            e, f = w[p], v[p]
            if f % e == 0:
                k = f // e
                axpy(v, w, -k)
                if track:
                    axpy(combo, wc, -k)
            else:
                g, s, t = xgcd(e, f)
                nw = combine(w, v, s, t)
                nv = combine(w, v, -(f // g), e // g)
                if track:
                    nwc = combine(wc, combo, s, t)
                    combo = combine(wc, combo, -(f // g), e // g)
                    piv[p] = (nw, nwc)
                else:
                    piv[p] = (nw, {})
                v = nv
        else:
            if track:
                kernel.append(combo)
    rows = sorted(piv)
    return Echelon(
        pivot_rows=rows,
        basis=[piv[p][0] for p in rows],
        combos=[piv[p][1] for p in rows] if track else [],
        kernel=kernel,
    )


class Presentation:
    """The group ``Z^m / span(relations)`` with an explicit cyclic decomposition.

    ``orders[k]`` is the order of generator k (0 for infinite);
    ``coordinates`` maps a vector of ``Z^m`` to its coordinates in these
    generators, and ``generator(k)`` returns a representative in ``Z^m``.
    """

    def __init__(self, m: int, relations: Sequence[SparseVec]):
        self.m = m
        snf = sparse_snf(m, len(relations), relations, track=True)
        diag = list(snf.diagonal) + [0] * (m - snf.rank)
        self._U = snf.U
        self._Uinv = snf.Uinv
        self.keep = [k for k, d in enumerate(diag) if d != 1]
        self.orders = [diag[k] for k in self.keep]

    @property
    def group(self) -> FGAbelianGroup:
        return FGAbelianGroup.from_orders(self.orders)

    def coordinates(self, vec: SparseVec) -> list[int]:
        out = []
        for k, d in zip(self.keep, self.orders):
            c = dot(self._U[k], vec)
            out.append(c % d if d else c)
        return out

    def generator(self, k: int) -> SparseVec:
        return dict(self._Uinv[self.keep[k]])


def quotient_group(sup: Sequence[SparseVec], sub: Sequence[SparseVec]) -> FGAbelianGroup:
    """Isomorphism type of span(sup) / span(sub), assuming span(sub) lies in span(sup)."""
    ech = echelon(sup)
    rel = [dict(enumerate(ech.solve(v))) for v in sub]
    rel = [{i: x for i, x in r.items() if x} for r in rel]
    return Presentation(ech.rank, rel).group


def kernel_modulo(columns: Sequence[SparseVec], modulus: Sequence[SparseVec]) -> list[SparseVec]:
    """Generators of ``{x : sum x_j columns[j] in span(modulus)}``."""
    s = len(columns)
    ech = echelon(list(columns) + list(modulus), track=True)
    out = []
    for combo in ech.kernel:
        x = {j: v for j, v in combo.items() if j < s}
        if x:
            out.append(x)
    return out


def subgroup_generated(
    columns: Sequence[SparseVec], orders: Sequence[int]
) -> tuple[FGAbelianGroup, list[int], list[SparseVec]]:
    """Subgroup of ``sum Z/orders[i]`` generated by ``columns``.

    Returns the group, the orders of its cyclic generators, and each
    generator as a combination of the input columns.
    """
    s = len(columns)
    rel = [{i: d} for i, d in enumerate(orders) if d]
    ech = echelon(list(columns) + rel, track=True)
    coords = []
    for r in rel:
        c = ech.solve(r)
        coords.append({k: x for k, x in enumerate(c) if x})
    pres = Presentation(ech.rank, coords)
    gens = []
    for k in range(len(pres.orders)):
        g = pres.generator(k)
        combo: SparseVec = {}
        for j, coef in g.items():
            axpy(combo, {i: v for i, v in ech.combos[j].items() if i < s}, coef)
        gens.append(combo)
    return pres.group, list(pres.orders), gens
