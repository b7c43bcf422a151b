"""Pose interpolation and pixel-to-world projection."""

from typing import List, Sequence

import numpy as np
from scipy.spatial.transform import Rotation, Slerp

from vessel_bifurcation.domain.entities.geometry import Point3
from vessel_bifurcation.domain.entities.mask import Detection
from vessel_bifurcation.domain.entities.pose import Calibration, Pose
from vessel_bifurcation.domain.exceptions import EmptyPoseLogError, NonMonotonicPoseLogError


class PoseInterpolator:
    """
    Time lookup over a pose log.

    Translations are interpolated linearly, rotations spherically; queries outside the log
    are clamped to the nearest endpoint and exact log timestamps return the logged pose.
    """

    def __init__(self, log: Sequence[Pose]) -> None:
        """
        Initialize PoseInterpolator.

        Args:
            log: Poses sorted by strictly increasing t

        Raises:
            EmptyPoseLogError: If the log is empty
            NonMonotonicPoseLogError: If timestamps do not strictly increase
        """
        if len(log) == 0:
            raise EmptyPoseLogError("empty pose log")
        self._log = list(log)
        self._times = np.array([pose.t for pose in self._log], dtype=float)
        stalled = np.flatnonzero(np.diff(self._times) <= 0)
        if len(stalled):
            raise NonMonotonicPoseLogError(t=float(self._times[stalled[0] + 1]))
        self._translations = np.array([pose.translation for pose in self._log], dtype=float)
        self._slerp = (
            Slerp(self._times, Rotation.from_quat(np.array([pose.xyzw for pose in self._log])))
            if len(self._log) > 1
            else None
        )

    @property
    def start(self) -> float:
        """First logged timestamp."""
        return float(self._times[0])

    @property
    def end(self) -> float:
        """Last logged timestamp."""
        return float(self._times[-1])

    def at(self, t: float) -> Pose:
        """
        Pose at time t.

        Args:
            t: Query time (s)

        Returns:
            Interpolated, clamped or exact logged pose
        """
        if t <= self._times[0]:
            return self._log[0]
        if t >= self._times[-1]:
            return self._log[-1]

        i = int(np.searchsorted(self._times, t, side="left"))
        if self._times[i] == t:
            return self._log[i]

        t0, t1 = self._times[i - 1], self._times[i]
        ratio = (t - t0) / (t1 - t0)
        translation = (1.0 - ratio) * self._translations[i - 1] + ratio * self._translations[i]
        assert self._slerp is not None
        x, y, z, w = self._slerp([t]).as_quat()[0]
        q = np.array([w, x, y, z])
        q = q / np.linalg.norm(q)
        return Pose(
            t=t,
            translation=(float(translation[0]), float(translation[1]), float(translation[2])),
            rotation=(float(q[0]), float(q[1]), float(q[2]), float(q[3])),
        )


def pose_at(log: Sequence[Pose], t: float) -> Pose:
    """
    Pose at time t from a sorted pose log.

    Args:
        log: Non-empty pose log sorted by t
        t: Query time (s)

    Returns:
        Interpolated pose, clamped outside the log's time span

    Raises:
        EmptyPoseLogError: If the log is empty
    """
    return PoseInterpolator(log).at(t)


def transform(pose: Pose, p_transducer: np.ndarray) -> np.ndarray:
    """Rigidly move a transducer-frame point into the world frame."""
    return Rotation.from_quat(pose.xyzw).apply(p_transducer) + pose.p


def project(d: Detection, cal: Calibration, log: "Sequence[Pose] | PoseInterpolator") -> Point3:
    """
    World point of a detection.

    Args:
        d: Detection (pixel center and timestamp)
        cal: Image-to-transducer calibration
        log: Pose log, or a prepared interpolator over it

    Returns:
        Point3 in millimeters carrying the detection timestamp
    """
    interpolator = log if isinstance(log, PoseInterpolator) else PoseInterpolator(log)
    pose = interpolator.at(d.t)
    world = transform(pose, cal.to_transducer(d.center.x, d.center.y))
    return Point3.from_array(world, t=d.t)


def project_frame(detections: Sequence[Detection], cal: Calibration, interpolator: PoseInterpolator) -> List[Point3]:
    """Project all detections of one frame with a single pose lookup per frame."""
    if not detections:
        return []
    pose = interpolator.at(detections[0].t)
    rotation = Rotation.from_quat(pose.xyzw)
    transducer = np.array([cal.to_transducer(d.center.x, d.center.y) for d in detections])
    world = rotation.apply(transducer) + pose.p
    return [Point3.from_array(row, t=d.t) for row, d in zip(world.reshape(-1, 3), detections)]
