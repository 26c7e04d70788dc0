"""Khovanov-type homology of closed diagrams and the maps between them."""

from .cube import (CROSSING_CAP, CapExceeded, CubeComplex, Picture, Transition, cube_complex,
                   homology_dims, kh, label_index, labelings)
from .jones import bracket, jones, laurent_text
from .cobordism import CobordismResult, EventStep, cobordism_map, diagram_event, normalize_event
from .reidemeister import (Equivalence, MoveNotApplicable, Removal, equivalence, kinks,
                           r1_addition, r1_removal, r2_addition, r2_bigons, r2_removal,
                           reidemeister_map, remove_crossings)

__all__ = [
    "CROSSING_CAP", "CapExceeded", "CubeComplex", "Picture", "Transition", "cube_complex",
    "homology_dims", "kh", "label_index", "labelings", "bracket", "jones", "laurent_text",
    "CobordismResult", "EventStep", "cobordism_map", "diagram_event", "normalize_event",
    "Equivalence", "MoveNotApplicable", "Removal", "equivalence", "kinks", "r1_addition",
    "r1_removal", "r2_addition", "r2_bigons", "r2_removal", "reidemeister_map", "remove_crossings",
]
