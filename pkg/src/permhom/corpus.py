"""Built-in example complexes."""

from __future__ import annotations

from itertools import combinations
from typing import Callable

from .complex import SimplicialComplex, build_complex
from .errors import ParseError


def simplex(n: int) -> SimplicialComplex:
    return build_complex([tuple(range(n + 1))])


def sphere(n: int) -> SimplicialComplex:
    """Boundary of the (n+1)-simplex."""
    return build_complex(combinations(range(n + 2), n + 1))


def _cyclic(triples, m):
    return [tuple(sorted({(i + a) % m for a in t})) for i in range(m) for t in triples]


def torus7() -> SimplicialComplex:
    """Moebius-Csaszar 7-vertex torus."""
    return build_complex(_cyclic([(0, 1, 3), (0, 2, 3)], 7))


def rp2_6() -> SimplicialComplex:
    """6-vertex projective plane: the hemi-icosahedron."""
    return build_complex(
        [
            (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
            (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5),
        ]
    )


def moebius() -> SimplicialComplex:
    """5-vertex Moebius band; its boundary is the 5-cycle of edges ``{i, i+2}``."""
    return build_complex(_cyclic([(0, 1, 2)], 5))


def moebius_boundary() -> SimplicialComplex:
    return build_complex(_cyclic([(0, 2)], 5))


def book3() -> SimplicialComplex:
    """Three triangles glued along the spine edge [0, 1]."""
    return build_complex([(0, 1, 2), (0, 1, 3), (0, 1, 4)])


def suspension(K: SimplicialComplex, a: int, b: int) -> SimplicialComplex:
    tops = K.maximal_simplices()
    return build_complex([s + (a,) for s in tops] + [s + (b,) for s in tops])


def cone(K: SimplicialComplex, a: int) -> SimplicialComplex:
    return build_complex([s + (a,) for s in K.maximal_simplices()])


def x_pp() -> SimplicialComplex:
    """Suspension of two disjoint triangles: two 2-spheres sharing the poles 6 and 7."""
    circles = build_complex([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    return suspension(circles, 6, 7)


def susp_torus() -> SimplicialComplex:
    return suspension(torus7(), 7, 8)


def cone_torus() -> SimplicialComplex:
    return cone(torus7(), 7)


BUILTINS: dict[str, Callable[[], SimplicialComplex]] = {
    "simplex1": lambda: simplex(1),
    "simplex2": lambda: simplex(2),
    "simplex3": lambda: simplex(3),
    "sphere1": lambda: sphere(1),
    "sphere2": lambda: sphere(2),
    "sphere3": lambda: sphere(3),
    "torus7": torus7,
    "rp2_6": rp2_6,
    "moebius": moebius,
    "book3": book3,
    "x_pp": x_pp,
    "susp_torus": susp_torus,
    "cone_torus": cone_torus,
}

ALIASES = {"rp2": "rp2_6", "torus": "torus7"}


def builtin(name: str) -> SimplicialComplex:
    key = ALIASES.get(name, name)
    try:
        return BUILTINS[key]()
    except KeyError:
        raise ParseError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}") from None


def names() -> list[str]:
    return list(BUILTINS)
