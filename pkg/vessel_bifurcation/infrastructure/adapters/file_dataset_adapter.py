"""File dataset adapter implementing DatasetPort."""

import re
from pathlib import Path
from typing import Dict, List, Optional

import structlog
from pydantic import BaseModel, Field

from vessel_bifurcation.application.ports.dataset_port import DatasetPort
from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.dataset import Frame, ScanDataset
from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.domain.entities.pose import Pose
from vessel_bifurcation.infrastructure.config import CONFIG_FILENAME, RunConfig, load_run_config, save_run_config
from vessel_bifurcation.infrastructure.exceptions import DatasetError
from vessel_bifurcation.infrastructure.io.pgm import read_pgm, write_pgm
from vessel_bifurcation.infrastructure.io.records import read_json, read_jsonl, write_json, write_jsonl

logger = structlog.get_logger()

POSES_FILENAME = "poses.jsonl"
FRAME_TIMES_FILENAME = "frames.jsonl"
TRUTH_FILENAME = "truth.json"
FRAMES_DIR = "frames"
TRUTH_FRAMES_DIR = "truth_frames"
FRAME_PATTERN = re.compile(r"^(\d{6})\.pgm$")


class FrameRecord(BaseModel):
    """Explicit timestamp of one frame."""

    index: int = Field(..., ge=0, description="Frame index")
    t: float = Field(..., ge=0, description="Timestamp (s)")


def frame_filename(index: int) -> str:
    """File name of frame ``index``."""
    return f"{index:06d}.pgm"


def _frame_files(directory: Path) -> Dict[int, Path]:
    files: Dict[int, Path] = {}
    for path in directory.iterdir():
        match = FRAME_PATTERN.match(path.name)
        if match:
            files[int(match.group(1))] = path
    return dict(sorted(files.items()))


class FileDatasetAdapter(DatasetPort):
    """
    File dataset adapter.

    Layout: ``config.json``, ``poses.jsonl``, ``frames/%06d.pgm``, plus optional
    ``frames.jsonl`` (explicit frame times), ``truth.json`` and ``truth_frames/%06d.pgm``.
    Without ``frames.jsonl`` a frame's time is its index divided by the configured frame rate.
    """

    def load_config(self, path: Path) -> RunConfig:
        """Load the run configuration, defaults when absent."""
        file = Path(path) / CONFIG_FILENAME
        if not file.exists():
            logger.warning("No config.json, using defaults", path=str(path))
            return RunConfig()
        return load_run_config(file)

    def load_truth(self, path: Path) -> Optional[GroundTruth]:
        """Load ``truth.json`` if present."""
        file = Path(path) / TRUTH_FILENAME
        return read_json(file, GroundTruth) if file.exists() else None

    def load(self, path: Path) -> ScanDataset:
        """
        Load a dataset directory.

        Args:
            path: Dataset directory

        Returns:
            ScanDataset

        Raises:
            DatasetError: If the directory, its frames or its pose log are missing
            InvalidDataError: If a file is malformed
        """
        root = Path(path)
        if not root.is_dir():
            raise DatasetError(f"dataset directory not found: {root}")
        frames_dir = root / FRAMES_DIR
        if not frames_dir.is_dir():
            raise DatasetError(f"missing {FRAMES_DIR}/ in {root}")
        poses_file = root / POSES_FILENAME
        if not poses_file.exists():
            raise DatasetError(f"missing {POSES_FILENAME} in {root}")

        config = self.load_config(root)
        poses = sorted(read_jsonl(poses_file, Pose), key=lambda p: p.t)

        times_file = root / FRAME_TIMES_FILENAME
        explicit = {r.index: r.t for r in read_jsonl(times_file, FrameRecord)} if times_file.exists() else {}

        frames: List[Frame] = []
        for index, file in _frame_files(frames_dir).items():
            t = explicit.get(index, config.scan.frame_time(index))
            frames.append(Frame(index=index, t=t, mask=read_pgm(file)))

        truth_masks: Optional[List[Mask]] = None
        truth_dir = root / TRUTH_FRAMES_DIR
        if truth_dir.is_dir():
            truth_files = _frame_files(truth_dir)
            if set(truth_files) == {f.index for f in frames}:
                truth_masks = [read_pgm(truth_files[f.index]) for f in frames]
            else:
                logger.warning("truth_frames/ does not match frames/, ignored", path=str(truth_dir))

        logger.info("Dataset loaded", path=str(root), frames=len(frames), poses=len(poses))
        return ScanDataset(frames=frames, poses=poses, calibration=config.calibration, truth_masks=truth_masks)

    def save(
        self,
        dataset: ScanDataset,
        path: Path,
        config: Optional[RunConfig] = None,
        truth: Optional[GroundTruth] = None,
    ) -> Path:
        """
        Write a dataset directory.

        Args:
            dataset: Dataset
            path: Target directory (created)
            config: Run configuration; its calibration is replaced by the dataset's
            truth: Ground truth

        Returns:
            The dataset directory
        """
        root = Path(path)
        (root / FRAMES_DIR).mkdir(parents=True, exist_ok=True)

        stored = (config or RunConfig()).model_copy(update={"calibration": dataset.calibration})
        save_run_config(stored, root / CONFIG_FILENAME)
        write_jsonl(dataset.poses, root / POSES_FILENAME)
        write_jsonl([FrameRecord(index=f.index, t=f.t) for f in dataset.frames], root / FRAME_TIMES_FILENAME)
        for frame in dataset.frames:
            write_pgm(frame.mask, root / FRAMES_DIR / frame_filename(frame.index))

        if dataset.truth_masks is not None:
            (root / TRUTH_FRAMES_DIR).mkdir(exist_ok=True)
            for frame, mask in zip(dataset.frames, dataset.truth_masks):
                write_pgm(mask, root / TRUTH_FRAMES_DIR / frame_filename(frame.index))
        if truth is not None:
            write_json(truth, root / TRUTH_FILENAME)

        logger.info("Dataset saved", path=str(root), frames=len(dataset.frames))
        return root
