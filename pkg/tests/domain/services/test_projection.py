"""Tests for pose interpolation and projection."""

import math
from typing import List

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from vessel_bifurcation.domain.entities.geometry import Point2
from vessel_bifurcation.domain.entities.mask import Detection
from vessel_bifurcation.domain.entities.pose import Calibration, Pose
from vessel_bifurcation.domain.exceptions import EmptyPoseLogError, NonMonotonicPoseLogError
from vessel_bifurcation.domain.services.projection import (
    PoseInterpolator,
    pose_at,
    project,
    project_frame,
    transform,
)


def quaternion_about_z(degrees: float) -> tuple:
    """Unit quaternion (w, x, y, z) for a rotation about z."""
    half = math.radians(degrees) / 2.0
    return (math.cos(half), 0.0, 0.0, math.sin(half))


@pytest.fixture
def sweep() -> List[Pose]:
    """Create a pose log sweeping +z at 50 mm/s."""
    return [Pose(t=i / 10.0, translation=(0.0, 0.0, 5.0 * i)) for i in range(11)]


@pytest.fixture
def calibration() -> Calibration:
    """Create a 0.5 mm/px calibration."""
    return Calibration(pixel_spacing=0.5)


def detection(u: float, v: float, t: float) -> Detection:
    """Detection at pixel (u, v)."""
    return Detection(center=Point2(x=u, y=v), radius=5.0, frame_index=0, t=t)


class TestPoseInterpolator:
    """Test PoseInterpolator."""

    def test_empty_log(self) -> None:
        """Test an empty log raises."""
        with pytest.raises(EmptyPoseLogError):
            PoseInterpolator([])

    def test_unsorted_log(self) -> None:
        """Test non-increasing timestamps raise."""
        with pytest.raises(NonMonotonicPoseLogError):
            PoseInterpolator([Pose(t=1.0), Pose(t=0.5)])

    def test_duplicate_timestamps(self) -> None:
        """Test a repeated timestamp raises a domain error naming it."""
        with pytest.raises(NonMonotonicPoseLogError) as excinfo:
            PoseInterpolator([Pose(t=0.0), Pose(t=0.5), Pose(t=0.5), Pose(t=1.0)])
        assert excinfo.value.t == 0.5

    def test_exact_timestamp(self, sweep: List[Pose]) -> None:
        """Test logged timestamps return the logged pose."""
        assert PoseInterpolator(sweep).at(0.3) == sweep[3]

    def test_clamped(self, sweep: List[Pose]) -> None:
        """Test queries outside the log clamp to the endpoints."""
        interpolator = PoseInterpolator(sweep)
        assert interpolator.at(-1.0) == sweep[0]
        assert interpolator.at(5.0) == sweep[-1]
        assert (interpolator.start, interpolator.end) == pytest.approx((0.0, 1.0))

    def test_linear_translation(self, sweep: List[Pose]) -> None:
        """Test translation is interpolated linearly."""
        pose = PoseInterpolator(sweep).at(0.25)
        assert pose.translation == pytest.approx((0.0, 0.0, 12.5))
        assert pose.rotation == pytest.approx((1.0, 0.0, 0.0, 0.0))

    def test_slerp_rotation(self) -> None:
        """Test rotation halfway between 0 and 90 degrees is 45 degrees."""
        log = [Pose(t=0.0), Pose(t=1.0, rotation=quaternion_about_z(90.0))]
        pose = pose_at(log, 0.5)
        assert pose.rotation == pytest.approx(quaternion_about_z(45.0), abs=1e-9)

    def test_single_pose(self) -> None:
        """Test a one-pose log answers every query with that pose."""
        only = Pose(t=2.0, translation=(1.0, 2.0, 3.0))
        assert pose_at([only], 0.0) == only
        assert pose_at([only], 9.0) == only


class TestProjection:
    """Test transform, project and project_frame."""

    def test_transform_rotation(self) -> None:
        """Test a 90 degree turn about z maps x onto y before translating."""
        pose = Pose(t=0.0, translation=(1.0, 0.0, 0.0), rotation=quaternion_about_z(90.0))
        assert transform(pose, np.array([1.0, 0.0, 0.0])) == pytest.approx([1.0, 1.0, 0.0])

    def test_project_identity(self, sweep: List[Pose], calibration: Calibration) -> None:
        """Test pixel (u, v) lands at (u s, v s, z(t))."""
        p = project(detection(20.0, 40.0, 0.2), calibration, sweep)
        assert (p.x, p.y, p.z, p.t) == pytest.approx((10.0, 20.0, 10.0, 0.2))

    def test_project_with_offset(self, sweep: List[Pose]) -> None:
        """Test the image origin offset shifts the transducer-frame point."""
        cal = Calibration(pixel_spacing=1.0, image_origin_offset=(-5.0, 2.0))
        p = project(detection(5.0, 0.0, 0.0), cal, sweep)
        assert (p.x, p.y, p.z) == pytest.approx((0.0, 2.0, 0.0))

    def test_project_between_poses(self, sweep: List[Pose], calibration: Calibration) -> None:
        """Test detections between logged poses use the interpolated pose."""
        p = project(detection(0.0, 0.0, 0.05), calibration, PoseInterpolator(sweep))
        assert p.z == pytest.approx(2.5)

    def test_rigid_motion_preserves_distances(self, calibration: Calibration) -> None:
        """Test two points of one frame keep their in-plane distance."""
        rotation = Rotation.from_euler("xyz", [20.0, -35.0, 70.0], degrees=True).as_quat()
        pose = Pose(t=0.0, translation=(3.0, -4.0, 9.0), rotation=(rotation[3], rotation[0], rotation[1], rotation[2]))
        a, b = detection(10.0, 10.0, 0.0), detection(40.0, 50.0, 0.0)
        pa, pb = project_frame([a, b], calibration, PoseInterpolator([pose]))
        assert float(np.linalg.norm(pa.position - pb.position)) == pytest.approx(0.5 * 50.0)

    def test_project_frame_matches_project(self, sweep: List[Pose], calibration: Calibration) -> None:
        """Test the batched projection equals the per-detection one."""
        detections = [detection(10.0, 20.0, 0.3), detection(100.0, 5.0, 0.3)]
        batch = project_frame(detections, calibration, PoseInterpolator(sweep))
        single = [project(d, calibration, sweep) for d in detections]
        for got, expected in zip(batch, single):
            assert got.position == pytest.approx(expected.position)

    def test_project_frame_empty(self, sweep: List[Pose], calibration: Calibration) -> None:
        """Test no detections give no points."""
        assert project_frame([], calibration, PoseInterpolator(sweep)) == []

    def test_calibration_custom_axes(self) -> None:
        """Test to_transducer lays pixels along the configured transducer axes."""
        cal = Calibration(
            pixel_spacing=0.5,
            image_origin_offset=(1.0, 2.0),
            lateral_axis=(0.0, 0.0, 1.0),
            axial_axis=(-1.0, 0.0, 0.0),
        )
        assert cal.to_transducer(4.0, 10.0) == pytest.approx([-7.0, 0.0, 3.0])
