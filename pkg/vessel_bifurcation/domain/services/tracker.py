"""Vessel tracking: optimal frame-to-frame assignment, track lifecycle and DBSCAN denoising."""

from typing import Dict, List, Optional, Sequence

import numpy as np
import structlog
from pydantic import BaseModel, Field
from scipy.optimize import linear_sum_assignment
from sklearn.cluster import DBSCAN

from vessel_bifurcation.domain.entities.geometry import Point3
from vessel_bifurcation.domain.entities.hyperparams import HyperParams
from vessel_bifurcation.domain.entities.track import Track
from vessel_bifurcation.domain.exceptions import NonMonotonicFrameError

logger = structlog.get_logger()

NOISE = -1


class Assignment(BaseModel):
    """One-to-one assignment of cost-matrix rows to columns."""

    pairs: Dict[int, int] = Field(default_factory=dict, description="Row index -> column index")
    total_cost: float = Field(default=0.0, description="Sum of assigned costs")


def hungarian(cost: "np.ndarray | Sequence[Sequence[float]]", sentinel: Optional[float] = None) -> Assignment:
    """
    Minimum-cost one-to-one assignment.

    Rectangular matrices are padded to square with a constant sentinel cost; pairs landing on
    padding are dropped.

    Args:
        cost: (n, m) matrix of non-negative costs
        sentinel: Padding cost (default ten times the largest cost, at least 10)

    Returns:
        Assignment with real row/column pairs and their total cost
    """
    matrix = np.asarray(cost, dtype=float)
    if matrix.size == 0:
        return Assignment()
    matrix = np.atleast_2d(matrix)
    if np.any(matrix < 0) or not np.all(np.isfinite(matrix)):
        raise ValueError("costs must be finite and non-negative")

    n_rows, n_cols = matrix.shape
    size = max(n_rows, n_cols)
    pad = sentinel if sentinel is not None else 10.0 * max(float(matrix.max()), 1.0)
    square = np.full((size, size), pad, dtype=float)
    square[:n_rows, :n_cols] = matrix

    row_ind, col_ind = linear_sum_assignment(square)
    pairs = {int(r): int(c) for r, c in zip(row_ind, col_ind) if r < n_rows and c < n_cols}
    total = float(sum(matrix[r, c] for r, c in pairs.items()))
    return Assignment(pairs=pairs, total_cost=total)


def dbscan(points: "np.ndarray | Sequence[Point3]", eps: float, min_pts: int) -> List[int]:
    """
    DBSCAN labels for 3D positions.

    Args:
        points: (N, 3) array or Point3 sequence
        eps: Neighborhood radius (mm)
        min_pts: Neighbors (self included) needed for a core point

    Returns:
        Cluster id per point in discovery order, -1 for noise
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if min_pts < 1:
        raise ValueError("min_pts must be at least 1")
    if isinstance(points, np.ndarray):
        xyz = np.asarray(points, dtype=float).reshape(-1, 3)
    else:
        xyz = np.array([p.position for p in points], dtype=float).reshape(-1, 3)
    if len(xyz) == 0:
        return []
    labels = DBSCAN(eps=eps, min_samples=min_pts).fit_predict(xyz)
    return [int(label) for label in labels]


def _frame_time(detections: Sequence[Point3], t: Optional[float]) -> Optional[float]:
    if not detections:
        return t
    times = {p.t for p in detections}
    if len(times) > 1:
        raise ValueError(f"detections span several timestamps: {sorted(times)}")
    frame_t = detections[0].t
    if t is not None and t != frame_t:
        raise ValueError(f"frame time {t} does not match detection time {frame_t}")
    return frame_t


class VesselTracker:
    """
    Vessel tracker service.

    Owns the tracks of one scan and advances them frame by frame.
    """

    def __init__(self, hp: HyperParams) -> None:
        """
        Initialize VesselTracker.

        Args:
            hp: Hyperparameters (delta_td, max_misses)
        """
        self.hp = hp
        self._tracks: List[Track] = []
        self._next_id = 0

    @classmethod
    def from_tracks(cls, tracks: Sequence[Track], hp: HyperParams) -> "VesselTracker":
        """Resume tracking from existing tracks (copied)."""
        tracker = cls(hp)
        tracker._tracks = [tr.model_copy(deep=True) for tr in tracks]
        tracker._next_id = max((tr.id for tr in tracker._tracks), default=-1) + 1
        return tracker

    @property
    def tracks(self) -> List[Track]:
        """All tracks, active or terminated."""
        return self._tracks

    def get_active_tracks(self) -> List[Track]:
        """Tracks still accepting points."""
        return [tr for tr in self._tracks if tr.active]

    def _new_track(self, point: Point3) -> Track:
        track = Track(id=self._next_id)
        track.append(point)
        self._next_id += 1
        self._tracks.append(track)
        return track

    def step(self, detections: Sequence[Point3], t: Optional[float] = None) -> List[Track]:
        """
        Advance the tracks by one frame.

        Args:
            detections: World points of one frame, all sharing one timestamp
            t: Frame timestamp; required to age tracks on frames without detections

        Returns:
            All tracks after the update

        Raises:
            NonMonotonicFrameError: If the frame is not later than an active track's last point
        """
        frame_t = _frame_time(detections, t)
        active = self.get_active_tracks()
        if frame_t is not None:
            latest = max((tr.last_t for tr in active), default=None)
            if latest is not None and frame_t <= latest:
                raise NonMonotonicFrameError(t=frame_t, last_t=latest)

        matched_rows: set[int] = set()
        matched_cols: set[int] = set()
        if active and detections:
            last = np.array([tr.last.point.position for tr in active])
            current = np.array([p.position for p in detections])
            cost = np.linalg.norm(last[:, None, :] - current[None, :, :], axis=2)
            assignment = hungarian(cost, sentinel=10.0 * self.hp.delta_td)
            for row, col in assignment.pairs.items():
                if cost[row, col] > self.hp.delta_td:
                    logger.debug("Assignment voided", track_id=active[row].id, cost=float(cost[row, col]))
                    continue
                active[row].append(detections[col])
                matched_rows.add(row)
                matched_cols.add(col)

        for row, track in enumerate(active):
            if row in matched_rows:
                continue
            track.misses += 1
            if track.misses >= self.hp.max_misses:
                track.active = False
                logger.debug("Track terminated", track_id=track.id, points=len(track.points))

        for col, point in enumerate(detections):
            if col not in matched_cols:
                self._new_track(point)

        return self._tracks


def step(
    tracks: Sequence[Track],
    detections_t: Sequence[Point3],
    hp: HyperParams,
    t: Optional[float] = None,
) -> List[Track]:
    """
    Functional form of one tracking step; the input tracks are left untouched.

    Args:
        tracks: Current tracks
        detections_t: World points of one frame
        hp: Hyperparameters
        t: Frame timestamp for frames without detections

    Returns:
        Updated copies of the tracks plus any new ones
    """
    tracker = VesselTracker.from_tracks(tracks, hp)
    return tracker.step(detections_t, t=t)


def finalize(tracks: Sequence[Track], hp: HyperParams) -> List[Track]:
    """
    Drop short tracks and remove DBSCAN outliers from the rest.

    Args:
        tracks: Tracks after the last frame
        hp: Hyperparameters (min_track_points, dbscan_eps, dbscan_min_pts)

    Returns:
        Denoised copies of the surviving tracks
    """
    kept: List[Track] = []
    for track in tracks:
        if len(track.points) < hp.min_track_points:
            continue
        labels = dbscan(track.positions(), hp.dbscan_eps, hp.dbscan_min_pts)
        points = [tp for tp, label in zip(track.points, labels) if label != NOISE]
        if len(points) < hp.min_track_points:
            logger.debug("Track dropped after denoising", track_id=track.id, remaining=len(points))
            continue
        kept.append(track.model_copy(update={"points": points}, deep=True))

    logger.info("Tracks finalized", kept=len(kept), dropped=len(tracks) - len(kept))
    return kept
