"""Tests for the file dataset adapter."""

import json
from pathlib import Path

import numpy as np
import pytest

from vessel_bifurcation.domain.entities.dataset import Frame, ScanDataset
from vessel_bifurcation.domain.entities.hyperparams import Profile
from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.domain.entities.pose import Calibration, Pose
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.adapters.file_dataset_adapter import (
    FRAME_TIMES_FILENAME,
    FRAMES_DIR,
    POSES_FILENAME,
    TRUTH_FRAMES_DIR,
    FileDatasetAdapter,
    frame_filename,
)
from vessel_bifurcation.infrastructure.config import RunConfig
from vessel_bifurcation.infrastructure.exceptions import DatasetError
from vessel_bifurcation.infrastructure.io.pgm import write_pgm
from vessel_bifurcation.infrastructure.simulation.phantom import y_phantom


@pytest.fixture
def adapter() -> FileDatasetAdapter:
    """Create file dataset adapter."""
    return FileDatasetAdapter()


@pytest.fixture
def dataset() -> ScanDataset:
    """Create a three-frame dataset with truth masks."""
    rng = np.random.default_rng(0)
    masks = [Mask.from_array(rng.random((6, 8)) < 0.4) for _ in range(3)]
    return ScanDataset(
        frames=[Frame(index=i, t=i * 0.05, mask=m) for i, m in enumerate(masks)],
        poses=[Pose(t=i * 0.05, translation=(0.0, 0.0, float(i))) for i in range(3)],
        calibration=Calibration(pixel_spacing=0.3),
        truth_masks=[Mask.zeros(8, 6) for _ in range(3)],
    )


def write_minimal(root: Path, frame_count: int = 2) -> None:
    """Dataset directory with frames and poses only."""
    (root / FRAMES_DIR).mkdir(parents=True)
    for i in range(frame_count):
        write_pgm(Mask.zeros(4, 4), root / FRAMES_DIR / frame_filename(i))
    (root / POSES_FILENAME).write_text('{"t": 0.0, "p": [0, 0, 0], "q": [1, 0, 0, 0]}\n')


class TestFileDatasetAdapter:
    """Test FileDatasetAdapter."""

    def test_round_trip(self, adapter: FileDatasetAdapter, dataset: ScanDataset, tmp_path: Path) -> None:
        """Test a saved dataset loads back equal."""
        truth = y_phantom().ground_truth()
        adapter.save(dataset, tmp_path / "scan", config=RunConfig(profile=Profile.PIG), truth=truth)
        loaded = adapter.load(tmp_path / "scan")

        assert [f.index for f in loaded.frames] == [0, 1, 2]
        assert loaded.frame_times == pytest.approx(dataset.frame_times)
        assert all(a.mask.same_as(b.mask) for a, b in zip(loaded.frames, dataset.frames))
        assert loaded.poses == dataset.poses
        assert loaded.calibration == dataset.calibration
        assert loaded.truth_masks is not None and len(loaded.truth_masks) == 3
        assert adapter.load_truth(tmp_path / "scan") == truth
        assert adapter.load_config(tmp_path / "scan").profile is Profile.PIG

    def test_layout(self, adapter: FileDatasetAdapter, dataset: ScanDataset, tmp_path: Path) -> None:
        """Test the files written."""
        root = adapter.save(dataset, tmp_path / "scan")
        assert (root / FRAMES_DIR / "000002.pgm").exists()
        assert (root / TRUTH_FRAMES_DIR / "000000.pgm").exists()
        assert len((root / POSES_FILENAME).read_text().splitlines()) == 3
        record = json.loads((root / FRAME_TIMES_FILENAME).read_text().splitlines()[1])
        assert record == {"index": 1, "t": 0.05}

    def test_frame_times_from_rate(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test frames without explicit times use index over frame rate."""
        write_minimal(tmp_path, frame_count=3)
        loaded = adapter.load(tmp_path)
        assert loaded.frame_times == pytest.approx([0.0, 1 / 30.0, 2 / 30.0])
        assert loaded.truth_masks is None
        assert adapter.load_truth(tmp_path) is None

    def test_frame_rate_from_config(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test the configured frame rate is used."""
        write_minimal(tmp_path)
        (tmp_path / "config.json").write_text(RunConfig(scan=ScanParams(frame_rate_hz=10.0)).model_dump_json())
        assert adapter.load(tmp_path).frame_times == pytest.approx([0.0, 0.1])

    def test_ignores_other_files(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test files not named like frames are skipped."""
        write_minimal(tmp_path)
        (tmp_path / FRAMES_DIR / "notes.txt").write_text("x")
        assert len(adapter.load(tmp_path).frames) == 2

    def test_missing_directory(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test a missing directory raises."""
        with pytest.raises(DatasetError):
            adapter.load(tmp_path / "absent")

    def test_missing_frames(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test a directory without frames/ raises."""
        (tmp_path / POSES_FILENAME).write_text("")
        with pytest.raises(DatasetError, match="frames"):
            adapter.load(tmp_path)

    def test_missing_poses(self, adapter: FileDatasetAdapter, tmp_path: Path) -> None:
        """Test a directory without poses.jsonl raises."""
        (tmp_path / FRAMES_DIR).mkdir()
        with pytest.raises(DatasetError, match="poses"):
            adapter.load(tmp_path)
