"""Geometric value types."""

import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

Vector3 = Tuple[float, float, float]

UNIT_TOLERANCE = 1e-9


class Point2(BaseModel):
    """
    Point in the mask frame.

    Coordinates are in pixels: x is the column (lateral, u) and y the row (axial, v).
    """

    x: float = Field(..., allow_inf_nan=False, description="Column coordinate (px)")
    y: float = Field(..., allow_inf_nan=False, description="Row coordinate (px)")

    class Config:
        """Pydantic config."""

        frozen = True

    def as_array(self) -> np.ndarray:
        """Return the point as a length-2 array."""
        return np.array([self.x, self.y], dtype=float)


class Point3(BaseModel):
    """
    Timestamped point in the world frame.

    Coordinates are in millimeters, t in seconds since the start of the scan.
    """

    x: float = Field(..., allow_inf_nan=False, description="World x (mm)")
    y: float = Field(..., allow_inf_nan=False, description="World y (mm)")
    z: float = Field(..., allow_inf_nan=False, description="World z (mm)")
    t: float = Field(default=0.0, ge=0, allow_inf_nan=False, description="Timestamp (s)")

    class Config:
        """Pydantic config."""

        frozen = True

    @classmethod
    def from_array(cls, position: np.ndarray, t: float = 0.0) -> "Point3":
        """Build a point from a length-3 array."""
        return cls(x=float(position[0]), y=float(position[1]), z=float(position[2]), t=t)

    @property
    def position(self) -> np.ndarray:
        """Position as a length-3 array."""
        return np.array([self.x, self.y, self.z], dtype=float)


class Circle2(BaseModel):
    """Circle in the mask frame."""

    center: Point2 = Field(..., description="Circle center (px)")
    radius: float = Field(..., ge=0, allow_inf_nan=False, description="Radius (px)")

    class Config:
        """Pydantic config."""

        frozen = True

    def contains(self, x: float, y: float, tolerance: float = 1e-9) -> bool:
        """Check whether (x, y) lies within radius + tolerance of the center."""
        return math.hypot(x - self.center.x, y - self.center.y) <= self.radius + tolerance


class Line3(BaseModel):
    """
    Infinite 3D line P(t) = S + t V.

    S is the mean of the fitted points and V a unit direction.
    """

    anchor: Vector3 = Field(..., description="Anchor point S (mm)")
    direction: Vector3 = Field(..., description="Unit direction V")

    class Config:
        """Pydantic config."""

        frozen = True

    @field_validator("anchor", "direction")
    @classmethod
    def _finite(cls, value: Vector3) -> Vector3:
        if not all(math.isfinite(c) for c in value):
            raise ValueError("line components must be finite")
        return value

    @model_validator(mode="after")
    def _unit_direction(self) -> "Line3":
        norm = math.sqrt(sum(c * c for c in self.direction))
        if abs(norm - 1.0) > UNIT_TOLERANCE:
            raise ValueError(f"direction must be unit length, got norm {norm}")
        return self

    @classmethod
    def through(cls, anchor: np.ndarray, direction: np.ndarray) -> "Line3":
        """Build a line from arrays, normalizing the direction."""
        v = np.asarray(direction, dtype=float)
        v = v / np.linalg.norm(v)
        s = np.asarray(anchor, dtype=float)
        return cls(anchor=(float(s[0]), float(s[1]), float(s[2])), direction=(float(v[0]), float(v[1]), float(v[2])))

    @property
    def s(self) -> np.ndarray:
        """Anchor as an array."""
        return np.array(self.anchor, dtype=float)

    @property
    def v(self) -> np.ndarray:
        """Direction as an array."""
        return np.array(self.direction, dtype=float)

    def at(self, t: float) -> np.ndarray:
        """Evaluate the line at parameter t."""
        return self.s + t * self.v


class ClosestPoints(BaseModel):
    """
    Closest points between two lines.

    When ``parallel`` is set the parameters and points are undefined (None).
    """

    t1_star: Optional[float] = Field(None, description="Parameter on the first line")
    t2_star: Optional[float] = Field(None, description="Parameter on the second line")
    p1: Optional[Vector3] = Field(None, description="Closest point on the first line (mm)")
    p2: Optional[Vector3] = Field(None, description="Closest point on the second line (mm)")
    distance: float = Field(..., ge=0, description="Distance between the lines (mm)")
    parallel: bool = Field(..., description="Lines considered parallel")

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def midpoint(self) -> Optional[np.ndarray]:
        """Midpoint of p1 and p2, or None for parallel lines."""
        if self.parallel or self.p1 is None or self.p2 is None:
            return None
        return (np.array(self.p1) + np.array(self.p2)) / 2.0
