"""Scan dataset entity."""

from typing import List, Optional

from pydantic import BaseModel, Field

from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.domain.entities.pose import Calibration, Pose


class Frame(BaseModel):
    """A mask with its acquisition time."""

    index: int = Field(..., ge=0, description="Frame index")
    t: float = Field(..., ge=0, description="Timestamp (s)")
    mask: Mask = Field(..., description="Binary segmentation mask")

    class Config:
        """Pydantic config."""

        frozen = True


class ScanDataset(BaseModel):
    """
    Ordered frames plus the pose log and calibration needed to place them in 3D.

    ``truth_masks`` optionally holds noiseless masks aligned with ``frames``.
    """

    frames: List[Frame] = Field(default_factory=list, description="Frames ordered by index")
    poses: List[Pose] = Field(default_factory=list, description="Pose log sorted by t")
    calibration: Calibration = Field(default_factory=Calibration, description="Image-to-transducer calibration")
    truth_masks: Optional[List[Mask]] = Field(None, description="Ground-truth masks, one per frame")

    @property
    def frame_times(self) -> List[float]:
        """Timestamps of all frames."""
        return [frame.t for frame in self.frames]

    def is_empty(self) -> bool:
        """Check if the dataset has no frames."""
        return len(self.frames) == 0
