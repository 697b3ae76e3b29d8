"""voronorm: exact certificates for the density of distance-1-avoiding sets
under parallelohedron norms (cube, A_n, D_n, planar hexagonal cells)."""

from .geometry import (
    AnLattice,
    DegenerateCell,
    DimensionMismatch,
    DnLattice,
    PlanarLattice,
    ReducedPlanarBasis,
    UnsupportedFamily,
    Vec,
    ZnLattice,
    closest_lattice_points,
    enumerate_in_box,
    make_lattice,
    reduce_planar_basis,
)
from .constructions import (
    GaugeNorm,
    HexagonPattern,
    InputOffHyperplane,
    PolytopeData,
    dual_generators,
    gauge_an,
    gauge_dn,
    gauge_planar,
    gauge_sup,
    hexagon_pattern,
    polytope_an,
    polytope_cube,
    polytope_dn,
    vertices_an,
    vertices_dn,
)
from .graphs import (
    GeometricGraph,
    PropertyDReport,
    an_cayley_graph,
    an_unit_distance_graph,
    build_cayley_graph,
    build_unit_distance_graph,
    check_property_d,
    cube_graph,
    dn_cayley_graph,
    graph_distance_2_pairs,
    hex_pattern_graph,
    hex_unit_distance_graph,
    write_edge_list,
)
from .density import (
    BoundViolated,
    ChainClique,
    CrossCheckMismatch,
    DensityCertificate,
    MarginViolation,
    NotAvoiding,
    UnknownComponentType,
    an_neighborhood_size_formula,
    closed_neighborhood,
    decompose_avoiding_set,
    enumerate_chain_cliques,
    verify_an_bound,
    verify_dn_bound,
    verify_hexagon_bound,
)
from .independence import (
    MisResult,
    RatioSequence,
    counterexample_density_gap,
    counterexample_graph,
    cube_certificate,
    is_independent_set,
    max_independent_set,
    ratio_sequence_an,
    ratio_sequence_cube,
)
from .coloring import (
    ChromaticReport,
    CosetColoring,
    chromatic_number,
    chromatic_report,
    chromatic_witness_search,
    color,
    coset_coloring,
    verify_coloring,
)

__version__ = "0.1.0"
