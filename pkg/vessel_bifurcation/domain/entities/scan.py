"""Scan acquisition parameters."""

from pydantic import BaseModel, Field


class ScanParams(BaseModel):
    """Transducer sweep and imaging parameters."""

    velocity_mm_s: float = Field(default=50.0, gt=0, description="Sweep velocity (mm/s)")
    frame_rate_hz: float = Field(default=30.0, gt=0, description="Frame rate (Hz)")
    image_width: int = Field(default=256, gt=0, description="Image width (px)")
    image_height: int = Field(default=256, gt=0, description="Image height (px)")
    depth_mm: float = Field(default=50.0, gt=0, description="Imaging depth covered by the image height (mm)")
    frame_count: int = Field(default=120, gt=0, description="Frames per sweep")

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def step_mm(self) -> float:
        """Transducer advance between consecutive frames (mm)."""
        return self.velocity_mm_s / self.frame_rate_hz

    @property
    def pixel_spacing(self) -> float:
        """Isotropic pixel spacing (mm/px)."""
        return self.depth_mm / self.image_height

    def frame_time(self, index: int) -> float:
        """Timestamp of frame ``index`` (s)."""
        return index / self.frame_rate_hz
