"""Permutation homology, intersection homology and homology stratifications
of finite simplicial complexes, computed exactly over the integers."""

from .complex import (
    LabeledSubdivision,
    SimplicialComplex,
    barycentric_subdivision,
    build_complex,
    complement_of_open_star,
    full_subcomplex,
    is_principal,
    iterated_subdivision,
    link,
    skeleton,
)
from .corpus import builtin
from .errors import PermhomError
from .chains import (
    ChainComplex,
    HomologyMap,
    boundary_matrices,
    homology,
    image_subgroup,
    induced_map,
    pair_map_is_iso,
    reduced_homology,
    relative_homology,
)
from .kernels import BACKEND
from .lattice import FGAbelianGroup, smith_normal_form
from .perm import (
    Permutation,
    Perversity,
    d_table,
    is_allowable,
    is_filtration_allowable,
    is_v_shaped,
    permutation_to_perversity,
    perversity_to_permutation,
    reduce,
)
from .perm_homology import (
    co_perm_skeleton,
    intersection_homology,
    natural_map_to_ordinary,
    perm_homology_via_chain,
    perm_homology_via_image,
    perm_skeleton,
    subdivision_invariance_check,
)
from .stratify import (
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
)

__version__ = "0.1.0"

__all__ = [
    name
    for name, obj in list(globals().items())
    if not name.startswith("_") and not isinstance(obj, type(__import__("sys")))
]
