"""Exact simplicial distance between simplicial maps of finite ordered complexes."""

from .certificate import (
    check_certificate,
    format_certificate,
    parse_certificate,
    read_certificate,
    verify_certificate,
    write_certificate,
)
from .complexes import (
    OrderedComplex,
    boundary_of_simplex,
    cycle,
    full_subcomplex,
    has_simplex,
    path,
    simplex,
    validate,
)
from .distance import (
    CoverCertificate,
    ProbeTable,
    SimpDistQuery,
    piece_predicate,
    sc_bc,
    scat_bc,
    simpdist_bc,
    stabilization_probe,
)
from .maps import (
    ContiguityChain,
    SimplicialMap,
    check_simplicial,
    compose,
    constant,
    contiguity_distance,
    contiguous_pair,
    identity,
    inclusion,
    restrict,
    simplicial_maps,
)
from .product import ProductComplex, ordered_product, projection
from .subdivision import (
    SubdividedComplex,
    approximations_of_identity,
    first_vertex_approximation,
    is_approximation_of_identity,
    iterate_approximation,
    last_vertex_approximation,
    subdivide,
    subdivide_iter,
)
from .values import INFINITE, DistanceValue

__version__ = "0.1.0"
