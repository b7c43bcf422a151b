"""Domain services."""

from vessel_bifurcation.domain.services.geometry import (
    acute_angle_deg,
    closest_points,
    fit_line3,
    min_enclosing_circle,
)
from vessel_bifurcation.domain.services.mask_processor import (
    ErosionResult,
    FrameDetections,
    MaskProcessor,
    connected_components,
    detect,
    erode_step,
    erode_until_stable,
    peel_step,
)
from vessel_bifurcation.domain.services.projection import PoseInterpolator, pose_at, project, project_frame
from vessel_bifurcation.domain.services.skeleton import (
    BoundingBox,
    MergeDecision,
    can_merge,
    find_bifurcations,
    interpolate_track,
    merge_all,
    needle_site,
)
from vessel_bifurcation.domain.services.tracker import Assignment, VesselTracker, dbscan, finalize, hungarian, step

__all__ = [
    "min_enclosing_circle",
    "fit_line3",
    "closest_points",
    "acute_angle_deg",
    "connected_components",
    "erode_step",
    "peel_step",
    "erode_until_stable",
    "detect",
    "ErosionResult",
    "FrameDetections",
    "MaskProcessor",
    "PoseInterpolator",
    "pose_at",
    "project",
    "project_frame",
    "Assignment",
    "hungarian",
    "step",
    "finalize",
    "dbscan",
    "VesselTracker",
    "BoundingBox",
    "MergeDecision",
    "interpolate_track",
    "can_merge",
    "merge_all",
    "find_bifurcations",
    "needle_site",
]
