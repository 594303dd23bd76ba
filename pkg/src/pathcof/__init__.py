"""Path homology of digraphs and machine checks of its cofibration structure."""

from .cofib import (
    CofibVerdict,
    ProjectingDecomposition,
    ProjectionError,
    check_cofibration,
    codiagonal_factorization,
    is_cofibration,
    projecting_decomposition,
)
from .digraph import (
    DiGraph,
    GraphError,
    GraphMap,
    PushoutSquare,
    box_product,
    gen_alt_cycle,
    gen_complete,
    gen_cycle,
    gen_J,
    gen_line,
    gen_mn_cycle,
    gen_punctured_cube,
    gen_suspension_alt4,
    induced_subgraph,
    pushout,
)
from .excision import E_map, mapping_cone, verify_E, verify_excision, verify_L_boundary, verify_les
from .graphio import ParseError, load_graph
from .harness import InstanceSpec, axiom_suite, random_cofibration, random_pushout_square
from .linalg import GF, QQ, Field, parse_field
from .pathhom import (
    homology,
    is_homology_iso,
    omega_basis,
    omega_boundary_matrix,
    omega_hat1_basis,
    omega_hat_basis,
    relative_homology,
)

__version__ = "0.1.0"

__all__ = [
    "axiom_suite",
    "box_product",
    "check_cofibration",
    "codiagonal_factorization",
    "CofibVerdict",
    "DiGraph",
    "E_map",
    "Field",
    "gen_alt_cycle",
    "gen_complete",
    "gen_cycle",
    "gen_J",
    "gen_line",
    "gen_mn_cycle",
    "gen_punctured_cube",
    "gen_suspension_alt4",
    "GF",
    "GraphError",
    "GraphMap",
    "homology",
    "induced_subgraph",
    "InstanceSpec",
    "is_cofibration",
    "is_homology_iso",
    "load_graph",
    "mapping_cone",
    "omega_basis",
    "omega_boundary_matrix",
    "omega_hat1_basis",
    "omega_hat_basis",
    "parse_field",
    "ParseError",
    "projecting_decomposition",
    "ProjectingDecomposition",
    "ProjectionError",
    "pushout",
    "PushoutSquare",
    "QQ",
    "random_cofibration",
    "random_pushout_square",
    "relative_homology",
    "verify_E",
    "verify_excision",
    "verify_L_boundary",
    "verify_les",
]
