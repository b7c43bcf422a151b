"""Track entities."""

from typing import List, Set

import numpy as np
from pydantic import BaseModel, Field

from vessel_bifurcation.domain.entities.geometry import Line3, Point3


class TrackPoint(BaseModel):
    """A 3D point held by a track, with the id of the track that first produced it."""

    point: Point3 = Field(..., description="World point with timestamp")
    origin_id: int = Field(..., ge=0, description="Id of the track that produced the point")
    interpolated: bool = Field(default=False, description="Inserted by gap filling")

    class Config:
        """Pydantic config."""

        frozen = True

    @property
    def t(self) -> float:
        """Timestamp (s)."""
        return self.point.t


class Track(BaseModel):
    """
    Track entity.

    A time-ordered chain of per-frame vessel centers hypothesized to be one vessel.
    """

    id: int = Field(..., ge=0, description="Track id")
    points: List[TrackPoint] = Field(default_factory=list, description="Points, strictly increasing in t")
    misses: int = Field(default=0, ge=0, description="Consecutive frames without an assignment")
    active: bool = Field(default=True, description="Still accepting points")

    class Config:
        """Pydantic config."""

        frozen = False

    def __len__(self) -> int:
        return len(self.points)

    @property
    def last(self) -> TrackPoint:
        """Most recent point."""
        return self.points[-1]

    @property
    def last_t(self) -> float:
        """Timestamp of the most recent point."""
        return self.points[-1].t

    def append(self, point: Point3) -> None:
        """
        Append a detected point.

        Args:
            point: World point, later than the current last point

        Raises:
            ValueError: If the point does not advance in time
        """
        if self.points and point.t <= self.last_t:
            raise ValueError(f"track {self.id}: point t={point.t} not after t={self.last_t}")
        self.points.append(TrackPoint(point=point, origin_id=self.id))
        self.misses = 0

    def positions(self, include_interpolated: bool = True) -> np.ndarray:
        """(N, 3) array of positions."""
        rows = [tp.point.position for tp in self.points if include_interpolated or not tp.interpolated]
        return np.array(rows, dtype=float).reshape(-1, 3)

    def times(self) -> np.ndarray:
        """Timestamps as an array."""
        return np.array([tp.t for tp in self.points], dtype=float)


class MergedTrack(BaseModel):
    """Union of tracks joined by the merge heuristics; represents a (possibly branching) vessel."""

    id: int = Field(..., ge=0, description="Merged track id")
    member_ids: Set[int] = Field(..., min_length=1, description="Original track ids")
    points: List[TrackPoint] = Field(default_factory=list, description="Union of member points ordered by (t, origin_id)")
    line: Line3 = Field(..., description="Line fitted to all points")

    def positions(self) -> np.ndarray:
        """(N, 3) array of positions."""
        return np.array([tp.point.position for tp in self.points], dtype=float).reshape(-1, 3)

    def times(self) -> np.ndarray:
        """Timestamps as an array."""
        return np.array([tp.t for tp in self.points], dtype=float)

    def origins(self) -> np.ndarray:
        """Origin ids as an array."""
        return np.array([tp.origin_id for tp in self.points], dtype=int)
