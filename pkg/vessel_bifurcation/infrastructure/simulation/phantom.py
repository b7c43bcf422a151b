"""Phantom specifications: vessel trees, truth junctions and the noise model."""

import math
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, model_validator

from vessel_bifurcation.domain.entities.bifurcation import GroundTruth, TruthJunction
from vessel_bifurcation.domain.entities.geometry import Vector3

ON_CENTERLINE_TOLERANCE_MM = 1e-6


class NoiseModel(BaseModel):
    """Mask and pose corruption applied per frame."""

    flip_probability: float = Field(default=0.0, ge=0, le=1, description="Independent per-pixel flip probability")
    speckle_rate: int = Field(default=0, ge=0, description="Filled speckle disks added per frame")
    speckle_radius_px: Tuple[int, int] = Field(default=(1, 4), description="Inclusive speckle radius range (px)")
    pose_jitter_mm: float = Field(default=0.0, ge=0, description="Gaussian sigma on logged translations (mm)")

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_radius_range(self) -> "NoiseModel":
        low, high = self.speckle_radius_px
        if low < 0 or high < low:
            raise ValueError(f"invalid speckle radius range {self.speckle_radius_px}")
        return self

    @property
    def is_noiseless(self) -> bool:
        """No corruption configured."""
        return self.flip_probability == 0 and self.speckle_rate == 0 and self.pose_jitter_mm == 0


class Branch(BaseModel):
    """A vessel segment: 3D polyline centerline with a radius per vertex."""

    centerline: List[Vector3] = Field(..., min_length=2, description="Centerline vertices (mm)")
    radii: List[float] = Field(..., min_length=2, description="Radius at each vertex (mm)")
    parent: Optional[int] = Field(None, ge=0, description="Index of the parent branch")

    class Config:
        """Pydantic config."""

        frozen = True

    @model_validator(mode="after")
    def _check_radii(self) -> "Branch":
        if len(self.radii) != len(self.centerline):
            raise ValueError("radii and centerline lengths differ")
        if any(r <= 0 for r in self.radii):
            raise ValueError("branch radii must be positive")
        return self

    @property
    def vertices(self) -> np.ndarray:
        """(N, 3) array of centerline vertices."""
        return np.array(self.centerline, dtype=float)


def _distance_to_polyline(point: np.ndarray, vertices: np.ndarray) -> float:
    best = math.inf
    for a, b in zip(vertices[:-1], vertices[1:]):
        ab = b - a
        s = float(np.clip((point - a) @ ab / (ab @ ab), 0.0, 1.0))
        best = min(best, float(np.linalg.norm(point - (a + s * ab))))
    return best


class PhantomSpec(BaseModel):
    """
    Synthetic vessel tree.

    Child branches must start on their parent's centerline. ``transducer_start`` is the transducer
    translation of the first frame; the transducer sweeps along world +z.
    """

    branches: List[Branch] = Field(..., min_length=1, description="Vessel branches")
    junctions: List[TruthJunction] = Field(default_factory=list, description="Ground-truth junctions")
    noise: NoiseModel = Field(default_factory=NoiseModel, description="Noise model")
    transducer_start: Vector3 = Field(default=(0.0, 0.0, 0.0), description="Transducer translation at frame 0 (mm)")

    @model_validator(mode="after")
    def _check_children(self) -> "PhantomSpec":
        for i, branch in enumerate(self.branches):
            if branch.parent is None:
                continue
            if branch.parent >= len(self.branches) or branch.parent == i:
                raise ValueError(f"branch {i} has invalid parent {branch.parent}")
            start = branch.vertices[0]
            gap = _distance_to_polyline(start, self.branches[branch.parent].vertices)
            if gap > ON_CENTERLINE_TOLERANCE_MM:
                raise ValueError(f"branch {i} starts {gap:.3f} mm off its parent's centerline")
        return self

    def ground_truth(self) -> GroundTruth:
        """Truth junctions as a GroundTruth record."""
        return GroundTruth(junctions=list(self.junctions))

    def with_noise(self, noise: NoiseModel) -> "PhantomSpec":
        """Copy with another noise model."""
        return self.model_copy(update={"noise": noise})


def carina(branch_point: np.ndarray, first: np.ndarray, second: np.ndarray, radius: float) -> np.ndarray:
    """
    Point where two child lumens of equal radius separate.

    Lies on the bisector of the child directions at ``radius / sin(half-angle)`` from the
    branch point.
    """
    u = first / np.linalg.norm(first)
    w = second / np.linalg.norm(second)
    bisector = u + w
    half_angle = math.acos(float(np.clip(u @ w, -1.0, 1.0))) / 2.0
    if half_angle <= 0 or np.linalg.norm(bisector) == 0:
        raise ValueError("child directions must diverge without opposing")
    return branch_point + bisector / np.linalg.norm(bisector) * (radius / math.sin(half_angle))


def y_phantom(
    half_angle_deg: float = 12.5,
    radius_mm: float = 2.35,
    junction_z_mm: float = 110.0,
    lateral_mm: float = 25.0,
    depth_mm: float = 25.0,
    start_z_mm: float = -10.0,
    end_z_mm: float = 220.0,
    noise: Optional[NoiseModel] = None,
) -> PhantomSpec:
    """
    Trunk along the sweep axis splitting into two straight branches diverging in the lateral plane.

    Args:
        half_angle_deg: Angle of each branch from the trunk axis (deg)
        radius_mm: Vessel radius (mm)
        junction_z_mm: Sweep position of the branch point (mm)
        lateral_mm: Lateral position of the trunk (mm)
        depth_mm: Depth of every centerline (mm)
        start_z_mm: Trunk start along the sweep axis (mm)
        end_z_mm: Sweep position where the branches end (mm)
        noise: Noise model (noiseless when omitted)

    Returns:
        PhantomSpec with one truth junction at the carina
    """
    spread = math.tan(math.radians(half_angle_deg)) * (end_z_mm - junction_z_mm)
    branch_point = np.array([lateral_mm, depth_mm, junction_z_mm])
    left_end = np.array([lateral_mm - spread, depth_mm, end_z_mm])
    right_end = np.array([lateral_mm + spread, depth_mm, end_z_mm])

    def vec(a: np.ndarray) -> Vector3:
        return (float(a[0]), float(a[1]), float(a[2]))

    trunk = Branch(centerline=[(lateral_mm, depth_mm, start_z_mm), vec(branch_point)], radii=[radius_mm, radius_mm])
    left = Branch(centerline=[vec(branch_point), vec(left_end)], radii=[radius_mm, radius_mm], parent=0)
    right = Branch(centerline=[vec(branch_point), vec(right_end)], radii=[radius_mm, radius_mm], parent=0)
    truth = TruthJunction(
        position=vec(carina(branch_point, left_end - branch_point, right_end - branch_point, radius_mm)),
        branch_point=vec(branch_point),
    )
    return PhantomSpec(branches=[trunk, left, right], junctions=[truth], noise=noise or NoiseModel())


def parallel_phantom(
    spacing_mm: float = 8.0,
    radius_mm: float = 2.35,
    lateral_mm: float = 25.0,
    depth_mm: float = 25.0,
    start_z_mm: float = -10.0,
    end_z_mm: float = 220.0,
    noise: Optional[NoiseModel] = None,
) -> PhantomSpec:
    """Two straight vessels along the sweep axis, ``spacing_mm`` apart laterally, with no junction."""
    half = spacing_mm / 2.0
    branches = [
        Branch(
            centerline=[(lateral_mm + side * half, depth_mm, start_z_mm), (lateral_mm + side * half, depth_mm, end_z_mm)],
            radii=[radius_mm, radius_mm],
        )
        for side in (-1.0, 1.0)
    ]
    return PhantomSpec(branches=branches, noise=noise or NoiseModel())


def straight_phantom(
    radius_mm: float = 2.35,
    lateral_mm: float = 25.0,
    depth_mm: float = 25.0,
    start_z_mm: float = -10.0,
    end_z_mm: float = 220.0,
) -> PhantomSpec:
    """One straight vessel along the sweep axis."""
    branch = Branch(centerline=[(lateral_mm, depth_mm, start_z_mm), (lateral_mm, depth_mm, end_z_mm)], radii=[radius_mm, radius_mm])
    return PhantomSpec(branches=[branch])
