"""Pipeline hyperparameters."""

from enum import Enum
from typing import Any, Dict

from pydantic import BaseModel, Field

# Length-typed thresholds, in world millimeters.
LENGTH_FIELDS = ("delta_td", "delta_h", "delta_sd", "delta_bd", "dbscan_eps", "bbox_margin", "needle_target_mm")


class Profile(str, Enum):
    """Empirically tuned hyperparameter columns."""

    PIG = "pig"
    PHANTOM = "phantom"
    PIG_ABNORMAL = "pig_abnormal"


class HyperParams(BaseModel):
    """
    Hyperparameters for erosion, detection, tracking, merging and bifurcation search.

    Pixel thresholds apply to masks, all other lengths are world millimeters.
    Defaults are the pig column.
    """

    delta_n: float = Field(default=3.0, gt=0, description="Noise radius threshold (px)")
    delta_s: float = Field(default=6.0, gt=0, description="Erosion stopping radius (px)")
    delta_td: float = Field(default=100.0, gt=0, description="Track assignment distance (mm)")
    delta_h: float = Field(default=200.0, gt=0, description="Max mean-depth difference to merge (mm)")
    delta_theta: float = Field(default=10.0, gt=0, description="Min angle between lines to merge (deg)")
    delta_sd: float = Field(default=10.0, gt=0, description="Max line distance to merge (mm)")
    delta_t: float = Field(default=0.01, gt=0, description="Max time between bifurcation points (s)")
    delta_bd: float = Field(default=10.0, gt=0, description="Max distance between bifurcation points (mm)")
    eps_i: float = Field(default=1e-9, gt=0, description="Parallel-line tolerance")
    dbscan_eps: float = Field(default=10.0, gt=0, description="DBSCAN neighborhood radius (mm)")
    dbscan_min_pts: int = Field(default=3, ge=1, description="DBSCAN core point neighbor count")
    max_misses: int = Field(default=5, ge=1, description="Consecutive misses before a track terminates")
    min_track_points: int = Field(default=5, ge=1, description="Tracks shorter than this are discarded")
    max_erosion_iters: int = Field(default=64, ge=1, description="Erosion iteration cap")
    erosion_fallback: bool = Field(default=True, description="Peel a boundary layer when the majority filter stalls")
    needle_target_mm: float = Field(default=20.0, gt=0, description="Target needle distance from bifurcation (mm)")
    height_axis: int = Field(default=1, ge=0, le=2, description="World axis holding depth below the skin")
    bbox_margin: float = Field(default=1.0, gt=0, description="Padding of the frame bounding box (mm)")

    class Config:
        """Pydantic config."""

        frozen = True

    @classmethod
    def for_profile(cls, profile: "Profile | str", **overrides: Any) -> "HyperParams":
        """
        Build hyperparameters from a profile column plus explicit overrides.

        Args:
            profile: Profile name
            **overrides: Field values replacing the profile's

        Returns:
            HyperParams instance
        """
        values: Dict[str, Any] = dict(PROFILES[Profile(profile)])
        values.update(overrides)
        return cls(**values)

    def scaled(self, factor: float) -> "HyperParams":
        """Copy with every length-typed threshold multiplied by ``factor``."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return self.model_copy(update={name: getattr(self, name) * factor for name in LENGTH_FIELDS})


PROFILES: Dict[Profile, Dict[str, float]] = {
    Profile.PIG: {"delta_n": 3, "delta_s": 6, "delta_td": 100, "delta_h": 200, "delta_theta": 10, "delta_sd": 10, "delta_t": 0.01, "delta_bd": 10},
    Profile.PHANTOM: {"delta_n": 8, "delta_s": 23, "delta_td": 100, "delta_h": 200, "delta_theta": 10, "delta_sd": 10, "delta_t": 0.01, "delta_bd": 40},
    Profile.PIG_ABNORMAL: {"delta_n": 3, "delta_s": 6, "delta_td": 100, "delta_h": 200, "delta_theta": 10, "delta_sd": 10, "delta_t": 0.1, "delta_bd": 20},
}
