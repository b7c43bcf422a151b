"""Domain entities."""

from vessel_bifurcation.domain.entities.bifurcation import (
    Bifurcation,
    GroundTruth,
    NeedleSite,
    TruthJunction,
)
from vessel_bifurcation.domain.entities.dataset import Frame, ScanDataset
from vessel_bifurcation.domain.entities.geometry import (
    Circle2,
    ClosestPoints,
    Line3,
    Point2,
    Point3,
)
from vessel_bifurcation.domain.entities.hyperparams import PROFILES, HyperParams, Profile
from vessel_bifurcation.domain.entities.mask import Detection, Mask, Segment
from vessel_bifurcation.domain.entities.pose import Calibration, Pose
from vessel_bifurcation.domain.entities.result import (
    STAGES,
    EvalReport,
    JunctionMatch,
    PipelineResult,
)
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.domain.entities.track import MergedTrack, Track, TrackPoint

__all__ = [
    "Point2",
    "Point3",
    "Circle2",
    "Line3",
    "ClosestPoints",
    "Mask",
    "Segment",
    "Detection",
    "Pose",
    "Calibration",
    "Frame",
    "ScanDataset",
    "Track",
    "TrackPoint",
    "MergedTrack",
    "HyperParams",
    "Profile",
    "PROFILES",
    "Bifurcation",
    "NeedleSite",
    "TruthJunction",
    "GroundTruth",
    "PipelineResult",
    "EvalReport",
    "JunctionMatch",
    "STAGES",
    "ScanParams",
]
