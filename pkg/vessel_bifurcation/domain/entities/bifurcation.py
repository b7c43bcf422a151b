"""Bifurcation, needle site and ground-truth entities."""

from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator

from vessel_bifurcation.domain.entities.geometry import Vector3


class Bifurcation(BaseModel):
    """
    Bifurcation entity.

    Midpoint of the earliest qualifying point pair in a cluster of pairs drawn from two
    different origin tracks.
    """

    position: Vector3 = Field(..., description="Position (mm)")
    t: float = Field(..., ge=0, description="Timestamp of the reporting pair (s)")
    merged_id: int = Field(..., ge=0, description="Merged track holding the bifurcation")
    origin_pair: Tuple[int, int] = Field(..., description="Origin track ids of the reporting pair")
    supporting_pairs: int = Field(default=1, ge=1, description="Qualifying pairs in the cluster")

    class Config:
        """Pydantic config."""

        frozen = True

    @field_validator("origin_pair")
    @classmethod
    def _distinct_origins(cls, value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] == value[1]:
            raise ValueError("origin_pair ids must differ")
        return value

    @property
    def p(self) -> np.ndarray:
        """Position as an array."""
        return np.array(self.position, dtype=float)


class NeedleSite(BaseModel):
    """Needle insertion site on the cranial side of a bifurcation."""

    position: Vector3 = Field(..., description="Position (mm)")
    t: float = Field(..., ge=0, description="Timestamp (s)")
    distance_to_bifurcation: float = Field(..., ge=0, description="Euclidean distance to the bifurcation (mm)")
    bifurcation_index: int = Field(default=0, ge=0, description="Index of the anchoring bifurcation")

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def p(self) -> np.ndarray:
        """Position as an array."""
        return np.array(self.position, dtype=float)


class TruthJunction(BaseModel):
    """Ground-truth junction emitted by the simulator."""

    position: Vector3 = Field(..., description="Carina: where the child lumens separate (mm)")
    branch_point: Optional[Vector3] = Field(None, description="Where the child centerlines leave the parent (mm)")

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def p(self) -> np.ndarray:
        """Position as an array."""
        return np.array(self.position, dtype=float)


class GroundTruth(BaseModel):
    """Ground truth for a dataset."""

    junctions: List[TruthJunction] = Field(default_factory=list, description="Anatomical junctions")
