"""Quadtree alignment, centroid splitting, curtain reporting, and the
fat-triangle reporting structure."""

from ..slab import curtain_audit as curtain_dnc_audit
from .quadtree import (MAX_LEVEL, SHIFTS, QuadtreeSquare, alignment_level,
                       bbox_of, centroid_square, centroid_square_with_members,
                       diameter_sq_of, is_aligned, shift_align,
                       stabbing_points)
from .slanted import (CurtainStructure, QueryStats, SlantedRangeTree,
                      build_curtain_structure, curtain_query)
from .structure import (DEFAULT_DELTA, FatQueryStats, FatReportStructure,
                        FatTriangle, FrameMap, build_fat_structure, fat_query,
                        make_frame, min_angle)

__all__ = [
    "MAX_LEVEL", "SHIFTS", "QuadtreeSquare", "alignment_level", "bbox_of",
    "centroid_square", "centroid_square_with_members", "diameter_sq_of",
    "is_aligned", "shift_align", "stabbing_points", "CurtainStructure",
    "QueryStats", "SlantedRangeTree", "build_curtain_structure",
    "curtain_query", "DEFAULT_DELTA", "FatQueryStats", "FatReportStructure",
    "FatTriangle", "FrameMap", "build_fat_structure", "fat_query",
    "make_frame", "min_angle", "curtain_dnc_audit",
]
