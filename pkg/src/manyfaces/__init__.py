"""Non-empty faces of a line arrangement: exact primitives, hierarchical
cuttings, persistent hull chains, and the primal/dual/combined solvers."""

from .chain import (
    HullChain,
    ListChain,
    LOWER,
    UPPER,
    TangentPair,
    common_tangent_separated,
    envelope_eval,
    inner_common_tangents,
    join_separated,
    merge_bounded_crossings,
)
from .cutting import build_hierarchical, dump_cells, verify_cutting
from .dual import (
    DualStructure,
    assemble_hull,
    disjoint_segment_lower_envelope,
    dual_chains,
    dual_preprocess,
    gather_hull_set,
    rotational_extremes_schedule,
)
from .faces import Face, canonical_face_key, face_from_envelopes
from .generators import generate_instance
from .geom import (
    Instance,
    Line,
    Point,
    dualize_line,
    dualize_point,
    line_intersection,
    normalize_instance,
    orient,
    side_of_line,
)
from .instancefile import parse_instance, write_instance
from .oracle import build_arrangement, locate_face, non_empty_faces_naive
from .primal import (
    assign_points,
    cell_envelopes_topdown,
    compute_side_sets,
    primal_chains,
)
from .render import render_svg
from .solver import FaceSet, SolverConfig, dedup_faces, solve

__all__ = [name for name in dir() if not name.startswith("_")]
