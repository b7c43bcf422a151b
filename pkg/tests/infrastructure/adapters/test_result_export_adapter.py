"""Tests for the result export adapter."""

from pathlib import Path

import numpy as np
import pytest

from vessel_bifurcation.application.ports.result_export_port import ExportFormat
from vessel_bifurcation.domain.entities.bifurcation import Bifurcation
from vessel_bifurcation.domain.entities.geometry import Line3, Point3
from vessel_bifurcation.domain.entities.result import PipelineResult
from vessel_bifurcation.domain.entities.track import MergedTrack, TrackPoint
from vessel_bifurcation.infrastructure.adapters.result_export_adapter import ResultExportAdapter
from vessel_bifurcation.infrastructure.exceptions import ExportError


@pytest.fixture
def adapter() -> ResultExportAdapter:
    """Create result export adapter."""
    return ResultExportAdapter()


@pytest.fixture
def result() -> PipelineResult:
    """Create a result with one merged track and one bifurcation."""
    points = [TrackPoint(point=Point3(x=0.0, y=0.0, z=float(k), t=k / 30.0), origin_id=k % 2) for k in range(4)]
    merged = MergedTrack(
        id=0,
        member_ids={0, 1},
        points=points,
        line=Line3.through(np.zeros(3), np.array([0.0, 0.0, 1.0])),
    )
    return PipelineResult(
        merged_tracks=[merged],
        bifurcations=[Bifurcation(position=(0.0, 0.0, 1.5), t=1 / 30.0, merged_id=0, origin_pair=(0, 1))],
        primary_bifurcation=0,
        stage_timings={"detect": 0.1, "merge": 0.2},
        identification_time_s=0.3,
        frame_count=4,
    )


class TestResultExportAdapter:
    """Test ResultExportAdapter."""

    def test_json_round_trip(self, adapter: ResultExportAdapter, result: PipelineResult, tmp_path: Path) -> None:
        """Test a JSON result loads back equal."""
        path = adapter.export(result, ExportFormat.JSON, tmp_path / "result.json")
        assert adapter.load(path) == result

    @pytest.mark.parametrize("fmt, marker", [(ExportFormat.PLY, "end_header"), (ExportFormat.CSV, "merged_id")])
    def test_text_formats(
        self, adapter: ResultExportAdapter, result: PipelineResult, tmp_path: Path, fmt: ExportFormat, marker: str
    ) -> None:
        """Test PLY and CSV files are written."""
        path = adapter.export(result, fmt, tmp_path / f"result.{fmt.value}")
        assert marker in path.read_text()

    def test_unwritable(self, adapter: ResultExportAdapter, result: PipelineResult, tmp_path: Path) -> None:
        """Test a write failure raises ExportError naming the path."""
        target = tmp_path / "missing" / "result.json"
        with pytest.raises(ExportError, match="missing"):
            adapter.export(result, ExportFormat.JSON, target)
