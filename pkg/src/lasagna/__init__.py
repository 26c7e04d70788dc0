"""Khovanov homology, Khovanov's arc algebras, and handle-by-handle
computations of skein lasagna modules of small 4-manifolds."""

from .arc_algebra import ArcAlgebra, ArcBimodule, tangle_bimodule, tangle_module
from .diagram import CrossinglessMatching, DiagramError, TangleDiagram, from_pd
from .gluing import glue_verify, hochschild0
from .handles import (attach_1_handle, attach_2_handle, attach_3_handle, attach_4_handle,
                      closed_braid)
from .khovanov import CapExceeded, jones, kh
from .linalg import GF2, QQ, Field, GradedVectorSpace
from .textio import parse_diagram, serialize_diagram
from .tqft import FrobeniusSpec

__version__ = "0.1.0"

__all__ = [
    "ArcAlgebra", "ArcBimodule", "tangle_bimodule", "tangle_module", "CrossinglessMatching",
    "DiagramError", "TangleDiagram", "from_pd", "glue_verify", "hochschild0", "attach_1_handle",
    "attach_2_handle", "attach_3_handle", "attach_4_handle", "closed_braid", "CapExceeded",
    "jones", "kh", "GF2", "QQ", "Field", "GradedVectorSpace", "parse_diagram",
    "serialize_diagram", "FrobeniusSpec",
]
