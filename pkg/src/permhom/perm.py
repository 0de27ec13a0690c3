"""Permutations of {0..n}, their d-tables, allowability, and perversities.

``d[i][j] = |pi[0,i] & [0,j]| - 1`` bounds how an i-cycle of the i-th
permutation skeleton may meet the j-skeleton. Allowable permutations are
the V-shaped ones, and those correspond one-to-one with perversities.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _permutations
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import CannotReduceError, NotAllowableError, ParseError, PermutationError

DTable = tuple[tuple[int, ...], ...]


def _parse_ints(text: str, what: str) -> tuple[int, ...]:
    body = text.strip().strip("[]()")
    if not body:
        raise ParseError(f"empty {what}")
    try:
        return tuple(int(tok) for tok in body.replace(" ", ",").split(",") if tok)
    except ValueError as exc:
        raise ParseError(f"malformed {what} {text!r}: {exc}") from None


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0..n} in one-line notation ``(pi(0), ..., pi(n))``."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if sorted(vals) != list(range(len(vals))):
            raise PermutationError(f"{list(vals)} is not a permutation of 0..{len(vals) - 1}")

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        return cls(_parse_ints(text, "permutation"))

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n + 1)))

    @classmethod
    def reversal(cls, n: int) -> "Permutation":
        return cls(tuple(range(n, -1, -1)))

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __call__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return ",".join(map(str, self.values))

    def __repr__(self) -> str:
        return f"Permutation({str(self)})"

    def prefix(self, i: int) -> frozenset[int]:
        """``pi[0, i]``; empty for i < 0."""
        return frozenset(self.values[: max(i + 1, 0)])

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.values)
        for k, v in enumerate(self.values):
            inv[v] = k
        return Permutation(tuple(inv))

    def complement(self) -> "Permutation":
        """``k -> pi(n - k)``: its prefixes are the complements of this one's."""
        return Permutation(tuple(reversed(self.values)))


def all_permutations(n: int) -> Iterator[Permutation]:
    for vals in _permutations(range(n + 1)):
        yield Permutation(vals)


def d_table(pi: Permutation) -> DTable:
    n = pi.n
    rows = []
    for i in range(n + 1):
        pre = pi.values[: i + 1]
        rows.append(tuple(sum(1 for v in pre if v <= j) - 1 for j in range(n + 1)))
    return tuple(rows)


@dataclass(frozen=True)
class Verdict:
    """A boolean answer with the first failing ``(i, j)`` when false."""

    ok: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "true"
        return f"false, witness i={self.witness[0]} j={self.witness[1]}"


def _star_check(pi: Permutation, columns: Iterable[int]) -> Verdict:
    d = d_table(pi)
    cols = sorted(set(columns))
    for i in range(pi.n):
        for j in cols:
            if 0 <= d[i][j] < j and d[i + 1][j] != d[i][j] + 1:
                return Verdict(False, (i, j))
    return Verdict(True)


def is_allowable(pi: Permutation) -> Verdict:
    """Condition: whenever ``0 <= d[i][j] < j``, ``d[i+1][j] = d[i][j] + 1``."""
    return _star_check(pi, range(pi.n + 1))


def is_filtration_allowable(pi: Permutation, occupancy: Iterable[int]) -> Verdict:
    """The allowability condition restricted to columns j whose stratum is nonempty."""
    occ = set(occupancy)
    bad = [j for j in occ if not 0 <= j <= pi.n]
    if bad:
        raise PermutationError(f"occupancy {sorted(bad)} outside 0..{pi.n}")
    return _star_check(pi, occ)


@dataclass(frozen=True)
class VShapeData:
    pivot: int
    S: frozenset[int]
    q: tuple[int, ...]


@dataclass(frozen=True)
class VShape:
    ok: bool
    data: VShapeData | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_v_shaped(pi: Permutation) -> VShape:
    vals = pi.values
    u = vals.index(0)
    down = all(vals[k] > vals[k + 1] for k in range(u))
    up = all(vals[k] < vals[k + 1] for k in range(u, pi.n))
    if not (down and up):
        return VShape(False)
    S = frozenset(vals[:u])
    q = tuple(sum(1 for s in S if s > j) for j in range(pi.n + 1))
    return VShape(True, VShapeData(u, S, q))


@dataclass(frozen=True, order=True)
class Perversity:
    """``0 = p_0 <= p_1 <= ... <= p_n`` with steps of 0 or 1."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if not vals or vals[0] != 0:
            raise PermutationError(f"perversity {list(vals)} must start with 0")
        for a, b in zip(vals, vals[1:]):
            if b - a not in (0, 1):
                raise PermutationError(f"perversity {list(vals)} must increase by steps of 0 or 1")

    @classmethod
    def parse(cls, text: str) -> "Perversity":
        return cls(_parse_ints(text, "perversity"))

    @classmethod
    def zero(cls, n: int) -> "Perversity":
        return cls((0,) * (n + 1))

    @classmethod
    def top(cls, n: int) -> "Perversity":
        return cls(tuple(range(n + 1)))

    @property
    def n(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __str__(self) -> str:
        return ",".join(map(str, self.values))


def all_perversities(n: int) -> Iterator[Perversity]:
    for steps in product((0, 1), repeat=n):
        vals = [0]
        for s in steps:
            vals.append(vals[-1] + s)
        yield Perversity(tuple(vals))


def perversity_set(p: Perversity) -> frozenset[int]:
    n = p.n
    return frozenset(j for j in range(1, n + 1) if p[n - j] == p[n - j + 1])


def perversity_to_permutation(p: Perversity) -> Permutation:
    """The V-shaped permutation whose pre-pivot values are ``{j : p_{n-j} = p_{n-j+1}}``."""
    S = perversity_set(p)
    rest = [j for j in range(1, p.n + 1) if j not in S]
    return Permutation(tuple(sorted(S, reverse=True)) + (0,) + tuple(rest))


def permutation_to_perversity(pi: Permutation) -> Perversity:
    shape = is_v_shaped(pi)
    if not shape:
        raise NotAllowableError(f"{pi} is not V-shaped, so no perversity corresponds to it")
    n, q = pi.n, shape.data.q
    p = [0] * (n + 1)
    for j in range(n + 1):
        p[n - j] = n - j - q[j]
    return Perversity(tuple(p))


def perversity_d(p: Perversity, i: int, j: int) -> int:
    """Closed form of the d-table for the permutation of ``p``, clamped at -1."""
    return max(-1, min(j, i + j - p.n + p[p.n - j]))


def reduce(pi: Permutation) -> Permutation:
    """Delete the value 0 and its position, shifting everything down by one."""
    if pi.n == 0:
        raise CannotReduceError("a permutation of {0} cannot be reduced")
    return Permutation(tuple(v - 1 for v in pi.values if v != 0))


def as_permutation(x: Permutation | Perversity | Sequence[int] | str) -> Permutation:
    if isinstance(x, Permutation):
        return x
    if isinstance(x, Perversity):
        return perversity_to_permutation(x)
    if isinstance(x, str):
        return Permutation.parse(x)
    return Permutation(tuple(x))
