"""Large independent sets in intersection graphs of axis-parallel segments."""

from .estimators import ExactOracle, FavorableNormalizer, IndependentSetSolver
from .exceptions import (
    BudgetExceeded,
    DegenerateSegmentError,
    DuplicateIdError,
    ExtensionBlockedError,
    GeneralPositionError,
    InvalidK,
    NotBipartiteError,
    NotFavorableError,
    NotTriangleFreeError,
    OverlapError,
    ParseError,
    SegoptError,
    UnknownIdError,
)
from .extremal import (
    alpha_mk,
    canonical_independent_set,
    classify_box,
    count_interesting,
    make_mk,
    random_representation,
    verify_box_bounds,
)
from .geometry import (
    GridLine,
    GridStats,
    MeetingPoint,
    Representation,
    Segment,
    grid_lines,
    grid_stats,
    intersects,
    meeting_points,
    parse_segments,
    read_segments,
    validate_general_position,
    write_segments,
)
from .graph import IndependentSet, IntersectionGraph, Matching, build_graph, is_independent, is_triangle_free
from .lower_bound import (
    Cut,
    Guarantee,
    TechniqueResult,
    best_lower_bound,
    build_cut,
    candidate_points,
    even_technique,
    line_technique,
    odd_technique,
    run_technique,
)
from .monotone import longest_monotone
from .normalize import FavorableRepresentation, is_favorable, make_favorable
from .oracles import (
    clique_cover_number_trianglefree,
    exact_mis,
    fractional_independence,
    max_matching,
)

__version__ = "0.1.0"
