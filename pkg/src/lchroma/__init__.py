"""Coloring grounded L-shape intersection graphs within polynomial bounds."""

from .colorer import Coloring, audit_bound, color_collection, verify_coloring
from .extend import (
    ExtensionState,
    ceil_4_log2,
    choose_bases,
    complete_pillar_assignment,
    degree_cap,
    divide_and_conquer_order,
    extend_assignment,
    palette_size,
)
from .flatten import FlattenResult, flatten_partition
from .geometry import (
    LCollection,
    LShape,
    canonicalize,
    collection_from_json,
    collection_to_json,
    intersects,
    validate_collection,
)
from .graph import (
    IntersectionGraph,
    PermutationInstance,
    build_intersection_graph,
    chromatic_number_exact,
    clique_number,
    color_permutation_graph,
    graph_from_edges,
)
from .instances import (
    SplitMix64,
    gadget_gl_representation,
    gadget_graph,
    interval_graph_to_lshapes,
    overlap_intervals_to_lshapes,
    random_collection,
)
from .pillars import (
    DegreeReport,
    Pillar,
    PillarAssignment,
    Segment,
    assign_shapes,
    check_assignment_order,
    check_extremal_bounds,
    compute_degrees,
    draw_all,
    draw_pillar,
    extract_clique_from_cascading,
    find_cascading,
    is_cascading,
    segment_of,
    segments,
    shape_pillar_intersects,
    split_pillar_class,
)
from .render import render_svg

__version__ = "0.1.0"

__all__ = [
    "Coloring",
    "DegreeReport",
    "ExtensionState",
    "FlattenResult",
    "IntersectionGraph",
    "LCollection",
    "LShape",
    "PermutationInstance",
    "Pillar",
    "PillarAssignment",
    "Segment",
    "SplitMix64",
    "assign_shapes",
    "audit_bound",
    "build_intersection_graph",
    "canonicalize",
    "ceil_4_log2",
    "check_assignment_order",
    "check_extremal_bounds",
    "chromatic_number_exact",
    "choose_bases",
    "clique_number",
    "collection_from_json",
    "collection_to_json",
    "color_collection",
    "color_permutation_graph",
    "complete_pillar_assignment",
    "compute_degrees",
    "degree_cap",
    "divide_and_conquer_order",
    "draw_all",
    "draw_pillar",
    "extend_assignment",
    "extract_clique_from_cascading",
    "find_cascading",
    "flatten_partition",
    "gadget_gl_representation",
    "gadget_graph",
    "graph_from_edges",
    "interval_graph_to_lshapes",
    "intersects",
    "is_cascading",
    "overlap_intervals_to_lshapes",
    "palette_size",
    "random_collection",
    "render_svg",
    "segment_of",
    "segments",
    "shape_pillar_intersects",
    "split_pillar_class",
    "validate_collection",
    "verify_coloring",
]
