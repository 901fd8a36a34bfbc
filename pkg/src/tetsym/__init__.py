"""Symmetry tests for cusps of tetrahedral link complements."""

from .orbtri import (
    DestinationSequence,
    CuspPartition,
    CoverMap,
    validate,
    cusp_seqs,
    covers,
    cusp_covers,
    automorphisms,
)
from .tetglue import (
    TetTriangulation,
    parse_gluing_table,
    des_seq,
    cusp_info,
    manifold_cusp_classes,
    mfd_cusp_index,
)
from .cuspgeom import CuspDiagram, CenterSet
from .homology import IntMatrix, HomologySummary, smith_normal_form, is_homology_link
from .constants import DSEQ_236_2222, DSEQ_O4, RIGID_CUSP_236

__all__ = [
    "DestinationSequence", "CuspPartition", "CoverMap",
    "validate", "cusp_seqs", "covers", "cusp_covers", "automorphisms",
    "TetTriangulation", "parse_gluing_table", "des_seq", "cusp_info",
    "manifold_cusp_classes", "mfd_cusp_index",
    "CuspDiagram", "CenterSet",
    "IntMatrix", "HomologySummary", "smith_normal_form", "is_homology_link",
    "DSEQ_236_2222", "DSEQ_O4", "RIGID_CUSP_236",
]
