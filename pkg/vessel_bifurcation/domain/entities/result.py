"""Pipeline result and evaluation report entities."""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from vessel_bifurcation.domain.entities.bifurcation import Bifurcation, NeedleSite
from vessel_bifurcation.domain.entities.track import MergedTrack

STAGES = ("detect", "project", "track", "finalize", "interpolate", "merge", "bifurcate", "needle")


class PipelineResult(BaseModel):
    """
    Pipeline result.

    Merged tracks, bifurcations, needle sites and per-stage wall-clock timings.
    """

    merged_tracks: List[MergedTrack] = Field(default_factory=list, description="Merged tracks")
    bifurcations: List[Bifurcation] = Field(default_factory=list, description="Bifurcations ordered by t")
    needle_sites: List[NeedleSite] = Field(default_factory=list, description="One site per bifurcation with a cranial side")
    primary_bifurcation: Optional[int] = Field(None, description="Index of the earliest bifurcation")
    stage_timings: Dict[str, float] = Field(default_factory=dict, description="Wall-clock seconds per stage")
    identification_time_s: float = Field(default=0.0, ge=0, description="Sum of stage timings (s)")
    frame_count: int = Field(default=0, ge=0, description="Frames processed")
    erosion_exhausted_frames: int = Field(default=0, ge=0, description="Frames whose erosion hit the iteration cap")

    @property
    def primary_needle_site(self) -> Optional[NeedleSite]:
        """Needle site anchored on the primary bifurcation, if any."""
        if self.primary_bifurcation is None:
            return None
        for site in self.needle_sites:
            if site.bifurcation_index == self.primary_bifurcation:
                return site
        return None

    def point_count(self) -> int:
        """Total number of track points."""
        return sum(len(mt.points) for mt in self.merged_tracks)


class JunctionMatch(BaseModel):
    """A ground-truth junction matched to a predicted bifurcation."""

    truth_index: int = Field(..., ge=0, description="Index into the truth junctions")
    prediction_index: int = Field(..., ge=0, description="Index into the predicted bifurcations")
    error_mm: float = Field(..., ge=0, description="Euclidean distance (mm)")
    needle_distance_mm: Optional[float] = Field(None, description="Needle site distance from the truth junction (mm)")
    needle_in_range: Optional[bool] = Field(None, description="Needle distance within the acceptable band")


class EvalReport(BaseModel):
    """
    Evaluation report.

    Contains bifurcation errors, false positives/negatives and timing.
    """

    matches: List[JunctionMatch] = Field(default_factory=list, description="Matched junctions")
    bifurcation_errors_mm: List[float] = Field(default_factory=list, description="Error per matched truth junction")
    false_positives: int = Field(default=0, ge=0, description="Predictions without a truth junction")
    false_negatives: int = Field(default=0, ge=0, description="Truth junctions without a prediction")
    needle_in_range: List[bool] = Field(default_factory=list, description="Per matched site, inside the band")
    identification_time_s: float = Field(default=0.0, ge=0, description="Identification time (s)")
    mask_iou: Optional[float] = Field(None, ge=0, le=1, description="Mean per-frame mask IoU")

    @property
    def mean_error_mm(self) -> Optional[float]:
        """Mean bifurcation error, None when nothing matched."""
        if not self.bifurcation_errors_mm:
            return None
        return sum(self.bifurcation_errors_mm) / len(self.bifurcation_errors_mm)

    @property
    def success(self) -> bool:
        """Every truth junction found and no false positive."""
        return self.false_negatives == 0 and self.false_positives == 0
