"""Scan simulator: renders phantom cross-sections into masks with poses and ground truth."""

from typing import List, Tuple

import numpy as np
import structlog
from pydantic import BaseModel, Field

from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.dataset import Frame, ScanDataset
from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.domain.entities.pose import Calibration, Pose
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.exceptions import SimulationError
from vessel_bifurcation.infrastructure.simulation.phantom import NoiseModel, PhantomSpec

logger = structlog.get_logger()

SWEEP_AXIS = np.array([0.0, 0.0, 1.0])


class SimulatedScan(BaseModel):
    """Simulator output: the dataset plus its ground truth."""

    dataset: ScanDataset = Field(..., description="Noisy frames, logged poses, calibration and clean masks")
    truth: GroundTruth = Field(..., description="Ground-truth junctions")
    scan: ScanParams = Field(..., description="Acquisition parameters used")


class ScanSimulator:
    """
    Scan simulator.

    Sweeps a transducer along world +z at constant velocity; each frame images the plane through the
    transducer, where every branch segment crossing the plane shows up as the filled ellipse of its
    local radius.
    """

    def __init__(self, scan: ScanParams) -> None:
        """
        Initialize scan simulator.

        Args:
            scan: Acquisition parameters
        """
        self.scan = scan
        self.calibration = Calibration.for_image(scan.image_height, scan.depth_mm)
        u, v = np.meshgrid(np.arange(scan.image_width, dtype=float), np.arange(scan.image_height, dtype=float))
        lateral = u * self.calibration.pixel_spacing + self.calibration.image_origin_offset[0]
        axial = v * self.calibration.pixel_spacing + self.calibration.image_origin_offset[1]
        # Transducer-frame position of every pixel center, shape (H, W, 3).
        self._transducer_grid = (
            lateral[..., None] * np.array(self.calibration.lateral_axis)
            + axial[..., None] * np.array(self.calibration.axial_axis)
        )

    def transducer_translation(self, spec: PhantomSpec, index: int) -> np.ndarray:
        """True transducer translation at a frame."""
        return np.array(spec.transducer_start, dtype=float) + SWEEP_AXIS * (index * self.scan.step_mm)

    def render(self, spec: PhantomSpec, translation: np.ndarray) -> np.ndarray:
        """
        Clean cross-section of the phantom for a transducer at ``translation``.

        Returns:
            (H, W) uint8 array
        """
        world = self._transducer_grid + translation
        plane_z = float(translation[2])
        bits = np.zeros(world.shape[:2], dtype=bool)
        for branch in spec.branches:
            vertices = branch.vertices
            for (a, b), (ra, rb) in zip(zip(vertices[:-1], vertices[1:]), zip(branch.radii[:-1], branch.radii[1:])):
                dz = b[2] - a[2]
                if dz == 0 or (a[2] - plane_z) * (b[2] - plane_z) > 0:
                    continue
                s = (plane_z - a[2]) / dz
                center = a + s * (b - a)
                radius = ra + s * (rb - ra)
                axis = (b - a) / np.linalg.norm(b - a)
                offset = world - center
                distance = np.linalg.norm(np.cross(offset, axis), axis=-1)
                bits |= distance <= radius
        return bits.astype(np.uint8)

    def _corrupt(self, clean: np.ndarray, noise: NoiseModel, rng: np.random.Generator) -> np.ndarray:
        noisy = clean.copy()
        height, width = noisy.shape
        if noise.speckle_rate:
            rows, cols = np.mgrid[0:height, 0:width]
            low, high = noise.speckle_radius_px
            for _ in range(noise.speckle_rate):
                cx = int(rng.integers(width))
                cy = int(rng.integers(height))
                radius = int(rng.integers(low, high + 1))
                noisy[(cols - cx) ** 2 + (rows - cy) ** 2 <= radius * radius] = 1
        if noise.flip_probability > 0:
            noisy ^= (rng.random((height, width)) < noise.flip_probability).astype(np.uint8)
        return noisy

    def run(self, spec: PhantomSpec, seed: int = 0) -> SimulatedScan:
        """
        Simulate a sweep.

        Args:
            spec: Phantom specification
            seed: Seed of every random draw; equal seeds give identical scans

        Returns:
            SimulatedScan

        Raises:
            SimulationError: If no frame images any vessel
        """
        rng = np.random.default_rng(seed)
        frames: List[Frame] = []
        poses: List[Pose] = []
        clean_masks: List[Mask] = []
        vessel_frames = 0

        for index in range(self.scan.frame_count):
            t = self.scan.frame_time(index)
            translation = self.transducer_translation(spec, index)
            clean = self.render(spec, translation)
            if clean.any():
                vessel_frames += 1
            noisy = self._corrupt(clean, spec.noise, rng)
            logged = translation
            if spec.noise.pose_jitter_mm > 0:
                logged = translation + rng.normal(0.0, spec.noise.pose_jitter_mm, size=3)

            clean_masks.append(Mask.from_array(clean))
            frames.append(Frame(index=index, t=t, mask=Mask.from_array(noisy)))
            poses.append(Pose(t=t, translation=_vector(logged)))

        if vessel_frames == 0:
            raise SimulationError("empty scan")

        logger.info("Scan simulated", frames=len(frames), vessel_frames=vessel_frames, seed=seed)
        dataset = ScanDataset(frames=frames, poses=poses, calibration=self.calibration, truth_masks=clean_masks)
        return SimulatedScan(dataset=dataset, truth=spec.ground_truth(), scan=self.scan)


def _vector(a: np.ndarray) -> Tuple[float, float, float]:
    return (float(a[0]), float(a[1]), float(a[2]))
