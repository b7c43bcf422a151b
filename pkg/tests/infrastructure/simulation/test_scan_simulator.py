"""Tests for phantoms and the scan simulator."""

import math

import numpy as np
import pytest
from scipy import ndimage

from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.exceptions import SimulationError
from vessel_bifurcation.infrastructure.simulation.phantom import (
    Branch,
    NoiseModel,
    PhantomSpec,
    carina,
    parallel_phantom,
    straight_phantom,
    y_phantom,
)
from vessel_bifurcation.infrastructure.simulation.scan_simulator import ScanSimulator

NOISE = NoiseModel(flip_probability=0.01, speckle_rate=2, pose_jitter_mm=0.2)


@pytest.fixture
def simulator() -> ScanSimulator:
    """Create a simulator with the default sweep."""
    return ScanSimulator(ScanParams())


@pytest.fixture
def small_simulator() -> ScanSimulator:
    """Create a simulator with small images and few frames."""
    return ScanSimulator(ScanParams(image_width=64, image_height=64, frame_count=6))


class TestPhantom:
    """Test phantom specifications."""

    def test_y_truth_at_carina(self) -> None:
        """Test the truth junction sits where the lumens separate."""
        spec = y_phantom()
        (junction,) = spec.ground_truth().junctions
        expected_z = 110.0 + 2.35 / math.sin(math.radians(12.5))
        assert junction.position == pytest.approx((25.0, 25.0, expected_z))
        assert junction.branch_point == pytest.approx((25.0, 25.0, 110.0))

    def test_carina_requires_divergence(self) -> None:
        """Test identical child directions raise."""
        with pytest.raises(ValueError):
            carina(np.zeros(3), np.array([0.0, 0.0, 1.0]), np.array([0.0, 0.0, 2.0]), 1.0)

    def test_child_must_start_on_parent(self) -> None:
        """Test a child branch off its parent's centerline is rejected."""
        trunk = Branch(centerline=[(0.0, 0.0, 0.0), (0.0, 0.0, 10.0)], radii=[1.0, 1.0])
        child = Branch(centerline=[(1.0, 0.0, 5.0), (5.0, 0.0, 15.0)], radii=[1.0, 1.0], parent=0)
        with pytest.raises(ValueError):
            PhantomSpec(branches=[trunk, child])

    def test_branch_radii(self) -> None:
        """Test radii must match the centerline and be positive."""
        with pytest.raises(ValueError):
            Branch(centerline=[(0.0, 0.0, 0.0), (0.0, 0.0, 1.0)], radii=[1.0])
        with pytest.raises(ValueError):
            Branch(centerline=[(0.0, 0.0, 0.0), (0.0, 0.0, 1.0)], radii=[1.0, 0.0])

    def test_noise_model(self) -> None:
        """Test the speckle range check and the noiseless flag."""
        assert NoiseModel().is_noiseless
        assert not NOISE.is_noiseless
        with pytest.raises(ValueError):
            NoiseModel(speckle_radius_px=(4, 1))

    def test_parallel_has_no_junction(self) -> None:
        """Test the control phantom has no truth junction."""
        assert parallel_phantom().ground_truth().junctions == []


class TestScanSimulator:
    """Test ScanSimulator."""

    def test_straight_cross_section(self, simulator: ScanSimulator) -> None:
        """Test a straight vessel images as a centered disk of its radius."""
        bits = simulator.render(straight_phantom(), simulator.transducer_translation(straight_phantom(), 0))
        radius_px = 2.35 / simulator.calibration.pixel_spacing
        assert bits.sum() == pytest.approx(math.pi * radius_px**2, rel=0.1)
        rows, cols = np.nonzero(bits)
        assert (cols.mean(), rows.mean()) == pytest.approx((128.0, 128.0), abs=0.01)

    def test_y_splits_after_carina(self, simulator: ScanSimulator) -> None:
        """Test one lumen before the junction and two well after it."""
        spec = y_phantom()
        before = simulator.render(spec, np.array([0.0, 0.0, 60.0]))
        after = simulator.render(spec, np.array([0.0, 0.0, 160.0]))
        assert ndimage.label(before, structure=np.ones((3, 3)))[1] == 1
        assert ndimage.label(after, structure=np.ones((3, 3)))[1] == 2

    def test_run(self, small_simulator: ScanSimulator) -> None:
        """Test frame count, timestamps and the transducer sweep."""
        simulated = small_simulator.run(straight_phantom(), seed=0)
        dataset = simulated.dataset
        assert len(dataset.frames) == 6
        assert dataset.frame_times == pytest.approx([i / 30.0 for i in range(6)])
        assert [p.translation[2] for p in dataset.poses] == pytest.approx([i * 50.0 / 30.0 for i in range(6)])
        assert dataset.truth_masks is not None
        assert all(f.mask.same_as(m) for f, m in zip(dataset.frames, dataset.truth_masks))

    def test_deterministic(self, small_simulator: ScanSimulator) -> None:
        """Test equal seeds give identical scans."""
        spec = y_phantom(noise=NOISE)
        a, b = small_simulator.run(spec, seed=5), small_simulator.run(spec, seed=5)
        assert all(fa.mask.same_as(fb.mask) for fa, fb in zip(a.dataset.frames, b.dataset.frames))
        assert a.dataset.poses == b.dataset.poses

    def test_seeds_differ(self, small_simulator: ScanSimulator) -> None:
        """Test different seeds give different noise."""
        spec = y_phantom(noise=NOISE)
        a, b = small_simulator.run(spec, seed=1), small_simulator.run(spec, seed=2)
        assert not all(fa.mask.same_as(fb.mask) for fa, fb in zip(a.dataset.frames, b.dataset.frames))

    def test_jitter_only_on_logged_poses(self, small_simulator: ScanSimulator) -> None:
        """Test pose jitter moves logged poses but not the clean masks."""
        spec = straight_phantom().with_noise(NoiseModel(pose_jitter_mm=0.5))
        simulated = small_simulator.run(spec, seed=0)
        logged = np.array([p.translation for p in simulated.dataset.poses])
        true = np.array([small_simulator.transducer_translation(spec, i) for i in range(6)])
        assert not np.allclose(logged, true)
        assert all(f.mask.same_as(m) for f, m in zip(simulated.dataset.frames, simulated.dataset.truth_masks or []))

    def test_empty_scan(self, small_simulator: ScanSimulator) -> None:
        """Test a sweep missing every vessel raises."""
        spec = straight_phantom().model_copy(update={"transducer_start": (0.0, 0.0, 1000.0)})
        with pytest.raises(SimulationError):
            small_simulator.run(spec)
