"""Oriented link diagrams and the moves on them."""

from knotforge.diagram.core import (
    Diagram,
    DiagramError,
    PlanarityError,
    assemble,
    canonical,
    face_map,
    normalize,
    planarity_check,
    validate,
)
from knotforge.diagram.moves import (
    braid_closure,
    change_crossings,
    connected_sum,
    crossing_change,
    linking_number,
    mirror,
    oriented_smoothing,
    reverse,
    writhe,
)
from knotforge.diagram.twist import (
    TwistRegion,
    clasp_region,
    full_twist_word,
    insert_braids,
    insert_full_twists,
    insert_twists_at,
)
from knotforge.diagram.reidemeister import MOVES, MoveError, apply_reidemeister, random_moves, reidemeister_sites
