"""Transducer pose and image calibration entities."""

import math
from typing import Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator

from vessel_bifurcation.domain.entities.geometry import Vector3

Quaternion = Tuple[float, float, float, float]

QUATERNION_TOLERANCE = 1e-6
DEFAULT_DEPTH_MM = 50.0


class Pose(BaseModel):
    """
    Transducer pose at a timestamp.

    Rotation is a unit quaternion in (w, x, y, z) order; translation is in millimeters.
    """

    t: float = Field(..., ge=0, description="Timestamp (s)")
    translation: Vector3 = Field(default=(0.0, 0.0, 0.0), alias="p", description="Translation (mm)")
    rotation: Quaternion = Field(default=(1.0, 0.0, 0.0, 0.0), alias="q", description="Unit quaternion (w, x, y, z)")

    class Config:
        """Pydantic config."""

        frozen = True
        populate_by_name = True

    @field_validator("rotation")
    @classmethod
    def _unit_quaternion(cls, value: Quaternion) -> Quaternion:
        norm = math.sqrt(sum(c * c for c in value))
        if abs(norm - 1.0) > QUATERNION_TOLERANCE:
            raise ValueError(f"rotation quaternion must be unit length, got norm {norm}")
        return value

    @property
    def p(self) -> np.ndarray:
        """Translation as an array."""
        return np.array(self.translation, dtype=float)

    @property
    def xyzw(self) -> np.ndarray:
        """Rotation in scalar-last order, as scipy expects it."""
        w, x, y, z = self.rotation
        return np.array([x, y, z, w], dtype=float)


class Calibration(BaseModel):
    """
    Image-to-transducer transform.

    Pixel (u, v) maps to the transducer frame as
    ``lateral_axis * (u * spacing + offset_u) + axial_axis * (v * spacing + offset_v)``.
    """

    pixel_spacing: float = Field(
        default=DEFAULT_DEPTH_MM / 256, gt=0, description="Isotropic pixel spacing (mm/px)"
    )
    image_origin_offset: Tuple[float, float] = Field(
        default=(0.0, 0.0), description="Transducer-frame position of pixel (0, 0) along lateral/axial (mm)"
    )
    lateral_axis: Vector3 = Field(default=(1.0, 0.0, 0.0), description="Transducer-frame direction of image u")
    axial_axis: Vector3 = Field(default=(0.0, 1.0, 0.0), description="Transducer-frame direction of image v (depth)")

    class Config:
        """Pydantic config."""

        frozen = True

    @classmethod
    def for_image(cls, image_height: int, depth_mm: float = DEFAULT_DEPTH_MM) -> "Calibration":
        """Calibration whose spacing maps the image height onto the imaging depth."""
        return cls(pixel_spacing=depth_mm / image_height)

    def to_transducer(self, u: float, v: float) -> np.ndarray:
        """Map a pixel position to transducer-frame millimeters."""
        lateral = u * self.pixel_spacing + self.image_origin_offset[0]
        axial = v * self.pixel_spacing + self.image_origin_offset[1]
        return lateral * np.array(self.lateral_axis) + axial * np.array(self.axial_axis)
