"""Mask, segment and detection entities."""

import numpy as np
from pydantic import BaseModel, Field, model_validator

from vessel_bifurcation.domain.entities.geometry import Circle2, Point2


class Mask(BaseModel):
    """
    Binary segmentation mask.

    ``bits`` is a (height, width) uint8 array, row-major, values in {0, 1}.
    """

    width: int = Field(..., gt=0, description="Width (px)")
    height: int = Field(..., gt=0, description="Height (px)")
    bits: np.ndarray = Field(..., description="Occupancy array of shape (height, width)")

    class Config:
        """Pydantic config."""

        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode="after")
    def _check_bits(self) -> "Mask":
        if self.bits.shape != (self.height, self.width):
            raise ValueError(f"bits shape {self.bits.shape} != ({self.height}, {self.width})")
        if self.bits.size and not np.isin(self.bits, (0, 1)).all():
            raise ValueError("mask values must be 0 or 1")
        return self

    @classmethod
    def from_array(cls, array: np.ndarray) -> "Mask":
        """Build a mask from any array; non-zero entries become 1."""
        bits = (np.asarray(array) != 0).astype(np.uint8)
        height, width = bits.shape
        return cls(width=width, height=height, bits=bits)

    @classmethod
    def zeros(cls, width: int, height: int) -> "Mask":
        """Empty mask."""
        return cls(width=width, height=height, bits=np.zeros((height, width), dtype=np.uint8))

    def popcount(self) -> int:
        """Number of on-pixels."""
        return int(self.bits.sum())

    def is_empty(self) -> bool:
        """Check if no pixel is set."""
        return not self.bits.any()

    def same_as(self, other: "Mask") -> bool:
        """Pixel-wise equality."""
        return self.bits.shape == other.bits.shape and bool(np.array_equal(self.bits, other.bits))


class Segment(BaseModel):
    """
    8-connected component of a mask.

    ``pixels`` is an (N, 2) integer array of (x, y) pixel centers.
    """

    pixels: np.ndarray = Field(..., description="(N, 2) array of (x, y) pixel centers")
    mec: Circle2 = Field(..., description="Minimum enclosing circle of the pixel centers")

    class Config:
        """Pydantic config."""

        arbitrary_types_allowed = True
        frozen = True

    @model_validator(mode="after")
    def _check_pixels(self) -> "Segment":
        if self.pixels.ndim != 2 or self.pixels.shape[1] != 2 or len(self.pixels) == 0:
            raise ValueError("segment pixels must be a non-empty (N, 2) array")
        return self

    @property
    def size(self) -> int:
        """Number of pixels."""
        return int(len(self.pixels))

    @property
    def radius(self) -> float:
        """MEC radius (px)."""
        return self.mec.radius

    @property
    def min_row(self) -> int:
        """Smallest row index."""
        return int(self.pixels[:, 1].min())

    @property
    def min_col(self) -> int:
        """Smallest column index."""
        return int(self.pixels[:, 0].min())


class Detection(BaseModel):
    """Vessel candidate in a single frame."""

    center: Point2 = Field(..., description="MEC center (px)")
    radius: float = Field(..., ge=0, description="MEC radius (px)")
    frame_index: int = Field(..., ge=0, description="Frame index")
    t: float = Field(..., ge=0, description="Frame timestamp (s)")

    class Config:
        """Pydantic config."""

        frozen = True
