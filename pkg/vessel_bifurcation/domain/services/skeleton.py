"""Vessel skeleton: gap filling, track merging, bifurcation search and needle site selection."""

from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx
import numpy as np
import structlog
from pydantic import BaseModel, Field

from vessel_bifurcation.domain.entities.bifurcation import Bifurcation, NeedleSite
from vessel_bifurcation.domain.entities.geometry import Line3, Point3, Vector3
from vessel_bifurcation.domain.entities.hyperparams import HyperParams
from vessel_bifurcation.domain.entities.track import MergedTrack, Track, TrackPoint
from vessel_bifurcation.domain.exceptions import DegeneratePointSetError, NeedleSiteError
from vessel_bifurcation.domain.services.geometry import acute_angle_deg, closest_points, fit_line3

logger = structlog.get_logger()

TIME_TOLERANCE = 1e-9

REASON_HEIGHT = "height"
REASON_ANGLE = "angle"
REASON_PARALLEL = "parallel"
REASON_BBOX = "bbox"
REASON_DISTANCE = "distance"


class BoundingBox(BaseModel):
    """Axis-aligned box in world millimeters."""

    lower: Vector3 = Field(..., description="Minimum corner (mm)")
    upper: Vector3 = Field(..., description="Maximum corner (mm)")

    class Config:
        """Pydantic config."""

        frozen = True

    @classmethod
    def from_points(cls, points: np.ndarray) -> "BoundingBox":
        """Tightest box around an (N, 3) array."""
        xyz = np.asarray(points, dtype=float).reshape(-1, 3)
        if len(xyz) == 0:
            raise ValueError("bounding box of no points")
        lo, hi = xyz.min(axis=0), xyz.max(axis=0)
        return cls(lower=(float(lo[0]), float(lo[1]), float(lo[2])), upper=(float(hi[0]), float(hi[1]), float(hi[2])))

    @classmethod
    def of_tracks(cls, tracks: Sequence[Track]) -> "BoundingBox":
        """Box around every point of every track."""
        return cls.from_points(np.vstack([tr.positions() for tr in tracks]))

    def padded(self, margin: float) -> "BoundingBox":
        """Box grown by ``margin`` on every side."""
        lo = np.array(self.lower) - margin
        hi = np.array(self.upper) + margin
        return BoundingBox(lower=(float(lo[0]), float(lo[1]), float(lo[2])), upper=(float(hi[0]), float(hi[1]), float(hi[2])))

    def contains(self, point: np.ndarray) -> bool:
        """Closed-box membership."""
        p = np.asarray(point, dtype=float)
        return bool(np.all(p >= np.array(self.lower)) and np.all(p <= np.array(self.upper)))


class MergeDecision(BaseModel):
    """Outcome of the pairwise merge test."""

    mergeable: bool = Field(..., description="All conditions hold")
    reasons: List[str] = Field(default_factory=list, description="Failed conditions")
    angle_deg: float = Field(..., ge=0, description="Acute angle between the lines (deg)")
    distance: float = Field(..., ge=0, description="Closest-point distance between the lines (mm)")
    height_difference: float = Field(..., ge=0, description="Difference of mean depths (mm)")


def interpolate_track(tr: Track, frame_times: Sequence[float]) -> Track:
    """
    Fill missing frames inside a track's time span with linearly interpolated points.

    Args:
        tr: Track to fill
        frame_times: Timestamps of every frame of the scan

    Returns:
        Copy of the track with interpolated points inserted; no extrapolation
    """
    if len(tr.points) < 2:
        return tr.model_copy(deep=True)

    times = tr.times()
    positions = tr.positions()
    first, last = times[0], times[-1]

    inserted: List[TrackPoint] = []
    for f in sorted(set(float(x) for x in frame_times)):
        if f <= first + TIME_TOLERANCE or f >= last - TIME_TOLERANCE:
            continue
        i = int(np.searchsorted(times, f))
        if abs(times[i] - f) <= TIME_TOLERANCE or abs(times[i - 1] - f) <= TIME_TOLERANCE:
            continue
        ratio = (f - times[i - 1]) / (times[i] - times[i - 1])
        position = positions[i - 1] + ratio * (positions[i] - positions[i - 1])
        inserted.append(TrackPoint(point=Point3.from_array(position, t=f), origin_id=tr.id, interpolated=True))

    if not inserted:
        return tr.model_copy(deep=True)
    points = sorted([*tr.points, *inserted], key=lambda tp: tp.t)
    return tr.model_copy(update={"points": points}, deep=True)


def track_line(tr: Track) -> Line3:
    """
    Line fitted to a track's detected points.

    Interpolated points are only used when the detected ones are degenerate.

    Raises:
        DegeneratePointSetError: If every point of the track coincides
    """
    try:
        return fit_line3(tr.positions(include_interpolated=False))
    except DegeneratePointSetError:
        return fit_line3(tr.positions())


def _mean_height(tr: Track, axis: int) -> float:
    return float(tr.positions(include_interpolated=False)[:, axis].mean())


def can_merge(
    a: Track,
    b: Track,
    hp: HyperParams,
    frame_bbox: BoundingBox,
    line_a: Optional[Line3] = None,
    line_b: Optional[Line3] = None,
) -> MergeDecision:
    """
    Test whether two tracks belong to the same branching vessel.

    The tracks merge iff their mean depths differ by less than ``delta_h``, their lines meet at
    an angle of at least ``delta_theta``, the lines are not parallel, the midpoint of their
    closest points lies inside the (padded) frame bounding box and the closest-point distance is
    below ``delta_sd``.

    Args:
        a: First track
        b: Second track
        hp: Hyperparameters
        frame_bbox: Bounding box of the union of all tracks' points
        line_a: Pre-fitted line of ``a``
        line_b: Pre-fitted line of ``b``

    Returns:
        MergeDecision listing every failed condition
    """
    la = line_a if line_a is not None else track_line(a)
    lb = line_b if line_b is not None else track_line(b)
    reasons: List[str] = []

    height_difference = abs(_mean_height(a, hp.height_axis) - _mean_height(b, hp.height_axis))
    if not height_difference < hp.delta_h:
        reasons.append(REASON_HEIGHT)

    angle = acute_angle_deg(la, lb)
    if angle < hp.delta_theta:
        reasons.append(REASON_ANGLE)

    cp = closest_points(la, lb, eps_i=hp.eps_i)
    if cp.parallel:
        reasons.append(REASON_PARALLEL)
    else:
        midpoint = cp.midpoint
        if midpoint is None or not frame_bbox.padded(hp.bbox_margin).contains(midpoint):
            reasons.append(REASON_BBOX)
    if not cp.distance < hp.delta_sd:
        reasons.append(REASON_DISTANCE)

    return MergeDecision(
        mergeable=not reasons,
        reasons=reasons,
        angle_deg=angle,
        distance=cp.distance,
        height_difference=height_difference,
    )


def _union(component: Sequence[Track]) -> List[TrackPoint]:
    points = [tp for tr in component for tp in tr.points]
    return sorted(points, key=lambda tp: (tp.t, tp.origin_id))


def _fit_union(points: List[TrackPoint]) -> Line3:
    xyz = np.array([tp.point.position for tp in points], dtype=float)
    try:
        return fit_line3(xyz)
    except DegeneratePointSetError:
        logger.warning("Degenerate merged track, using a vertical line", points=len(points))
        return Line3.through(xyz.mean(axis=0), np.array([0.0, 0.0, 1.0]))


def merge_all(tracks: Sequence[Track], hp: HyperParams, frame_bbox: Optional[BoundingBox] = None) -> List[MergedTrack]:
    """
    Merge tracks into vessels.

    Tracks are graph nodes; an edge joins two tracks passing ``can_merge``. Every connected
    component becomes one MergedTrack holding the union of its members' points.

    Args:
        tracks: Finalized, interpolated tracks
        hp: Hyperparameters
        frame_bbox: Bounding box of all points (computed when omitted)

    Returns:
        MergedTracks ordered by their smallest member id
    """
    if not tracks:
        return []
    bbox = frame_bbox if frame_bbox is not None else BoundingBox.of_tracks(tracks)

    lines: Dict[int, Optional[Line3]] = {}
    for tr in tracks:
        try:
            lines[tr.id] = track_line(tr)
        except DegeneratePointSetError:
            logger.warning("Track has no line, kept unmerged", track_id=tr.id)
            lines[tr.id] = None

    graph = nx.Graph()
    graph.add_nodes_from(tr.id for tr in tracks)
    for i, a in enumerate(tracks):
        for b in tracks[i + 1 :]:
            la, lb = lines[a.id], lines[b.id]
            if la is None or lb is None:
                continue
            decision = can_merge(a, b, hp, bbox, la, lb)
            if decision.mergeable:
                graph.add_edge(a.id, b.id)
            else:
                logger.debug("Tracks not merged", a=a.id, b=b.id, reasons=decision.reasons)

    by_id = {tr.id: tr for tr in tracks}
    components = sorted((sorted(c) for c in nx.connected_components(graph)), key=lambda c: c[0])
    merged: List[MergedTrack] = []
    for index, member_ids in enumerate(components):
        points = _union([by_id[i] for i in member_ids])
        merged.append(MergedTrack(id=index, member_ids=set(member_ids), points=points, line=_fit_union(points)))

    logger.info("Tracks merged", tracks=len(tracks), merged=len(merged))
    return merged


def _qualifying_pairs(mt: MergedTrack, hp: HyperParams) -> List[Tuple[int, int]]:
    times = mt.times()
    positions = mt.positions()
    origins = mt.origins()
    order = np.argsort(times, kind="stable")

    pairs: List[Tuple[int, int]] = []
    for k, i in enumerate(order):
        for j in order[k + 1 :]:
            if times[j] - times[i] >= hp.delta_t:
                break
            if origins[i] == origins[j]:
                continue
            if np.linalg.norm(positions[i] - positions[j]) < hp.delta_bd:
                pairs.append((int(i), int(j)))
    return pairs


def find_bifurcations(mt: MergedTrack, hp: HyperParams) -> List[Bifurcation]:
    """
    Find bifurcations in a merged track.

    A point pair qualifies when its points are less than ``delta_t`` apart in time, less than
    ``delta_bd`` apart in space and come from different original tracks. Qualifying pairs are
    clustered single-linkage on their midpoints with radius ``delta_bd``; each cluster reports
    the midpoint of its earliest pair.

    Args:
        mt: Merged track
        hp: Hyperparameters

    Returns:
        Bifurcations ordered by t
    """
    pairs = _qualifying_pairs(mt, hp)
    if not pairs:
        return []

    times = mt.times()
    positions = mt.positions()
    origins = mt.origins()
    midpoints = np.array([(positions[i] + positions[j]) / 2.0 for i, j in pairs])
    pair_times = np.array([min(times[i], times[j]) for i, j in pairs])

    graph = nx.Graph()
    graph.add_nodes_from(range(len(pairs)))
    distances = np.linalg.norm(midpoints[:, None, :] - midpoints[None, :, :], axis=2)
    rows, cols = np.nonzero(np.triu(distances < hp.delta_bd, k=1))
    graph.add_edges_from(zip(rows.tolist(), cols.tolist()))

    bifurcations: List[Bifurcation] = []
    for cluster in nx.connected_components(graph):
        members = sorted(cluster)
        earliest = min(members, key=lambda k: (pair_times[k], k))
        i, j = pairs[earliest]
        m = midpoints[earliest]
        bifurcations.append(
            Bifurcation(
                position=(float(m[0]), float(m[1]), float(m[2])),
                t=float(pair_times[earliest]),
                merged_id=mt.id,
                origin_pair=(int(min(origins[i], origins[j])), int(max(origins[i], origins[j]))),
                supporting_pairs=len(members),
            )
        )

    bifurcations.sort(key=lambda b: b.t)
    logger.debug("Bifurcations found", merged_id=mt.id, pairs=len(pairs), bifurcations=len(bifurcations))
    return bifurcations


def needle_site(mt: MergedTrack, b: Bifurcation, target_mm: float = 20.0, bifurcation_index: int = 0) -> NeedleSite:
    """
    Needle insertion site on the cranial side of a bifurcation.

    Scanning runs proximal to distal, so cranial points are the ones scanned before the
    bifurcation. The chosen point minimizes the gap between its distance to the bifurcation and
    ``target_mm``; ties go to the earliest point.

    Args:
        mt: Merged track holding the bifurcation
        b: Bifurcation
        target_mm: Target distance (mm)
        bifurcation_index: Index of ``b`` in the result

    Returns:
        NeedleSite

    Raises:
        NeedleSiteError: If no point precedes the bifurcation
    """
    times = mt.times()
    cranial = np.flatnonzero(times < b.t)
    if len(cranial) == 0:
        raise NeedleSiteError(bifurcation_t=b.t)

    cranial = cranial[np.argsort(times[cranial], kind="stable")]
    positions = mt.positions()[cranial]
    distances = np.linalg.norm(positions - b.p, axis=1)
    best = int(np.argmin(np.abs(distances - target_mm)))
    chosen = mt.points[int(cranial[best])]
    return NeedleSite(
        position=(chosen.point.x, chosen.point.y, chosen.point.z),
        t=chosen.t,
        distance_to_bifurcation=float(distances[best]),
        bifurcation_index=bifurcation_index,
    )
