"""rcx: exact rational toolkit for integer point families, hiding-set
lower bounds on relaxation sizes, and explicit small relaxations."""

from .errors import (
    DimMismatch,
    EmptySet,
    Infeasible,
    InvalidSystem,
    OddNodeSet,
    TooLarge,
    UnboundedCoordinate,
)
from .families import DEFAULT_CAP, EdgeIndexer, PointSet, generate
from .hiding import (
    HidingCertificate,
    build_arb_hiding,
    build_diff_hiding,
    build_parity_hiding,
    build_perm_hiding,
    build_tjoin_hiding,
    build_tsp_hiding,
    max_hiding_in_box,
    verify_hiding,
)
from .linprog import (
    Halfspace,
    HPolyhedron,
    LPOutcome,
    conv_membership,
    recession_nontrivial,
    segment_hits_hull,
    solve_lp,
    strict_separation,
)
from .rational import (
    AffineHull,
    affine_hull,
    format_rational,
    gaussian_rank,
    in_affine_hull,
    parse_rational,
)
from .relaxations import (
    LatticeBox,
    RelaxationReport,
    bounding_box,
    build_conn_cut_relaxation,
    build_cube_relaxation,
    build_rado_permutahedron,
    build_subtour_relaxation,
    enumerate_lattice,
    irredundant_count,
    verify_relaxation,
)
from .separation import (
    RcBoundReport,
    SeparationSystem,
    bound_report,
    build_binary_relaxation,
    conflict_clique_bound,
    jeroslow_index,
    rationalize_halfspace,
)

__all__ = [
    "DimMismatch",
    "EmptySet",
    "Infeasible",
    "InvalidSystem",
    "OddNodeSet",
    "TooLarge",
    "UnboundedCoordinate",
    "DEFAULT_CAP",
    "EdgeIndexer",
    "PointSet",
    "generate",
    "HidingCertificate",
    "build_arb_hiding",
    "build_diff_hiding",
    "build_parity_hiding",
    "build_perm_hiding",
    "build_tjoin_hiding",
    "build_tsp_hiding",
    "max_hiding_in_box",
    "verify_hiding",
    "Halfspace",
    "HPolyhedron",
    "LPOutcome",
    "conv_membership",
    "recession_nontrivial",
    "segment_hits_hull",
    "solve_lp",
    "strict_separation",
    "AffineHull",
    "affine_hull",
    "format_rational",
    "gaussian_rank",
    "in_affine_hull",
    "parse_rational",
    "LatticeBox",
    "RelaxationReport",
    "bounding_box",
    "build_conn_cut_relaxation",
    "build_cube_relaxation",
    "build_rado_permutahedron",
    "build_subtour_relaxation",
    "enumerate_lattice",
    "irredundant_count",
    "verify_relaxation",
    "RcBoundReport",
    "SeparationSystem",
    "bound_report",
    "build_binary_relaxation",
    "conflict_clique_bound",
    "jeroslow_index",
    "rationalize_halfspace",
]
