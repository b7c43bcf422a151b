"""Tests for PLY and CSV exports."""

from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from vessel_bifurcation.domain.entities.bifurcation import Bifurcation, NeedleSite
from vessel_bifurcation.domain.entities.geometry import Line3, Point3
from vessel_bifurcation.domain.entities.result import PipelineResult
from vessel_bifurcation.domain.entities.track import MergedTrack, TrackPoint
from vessel_bifurcation.infrastructure.io.ply import PALETTE, color_for, read_ply_vertex_count, render_ply, write_ply
from vessel_bifurcation.infrastructure.io.tables import POINT_COLUMNS, points_frame, write_csv


@pytest.fixture
def result() -> PipelineResult:
    """Create a result with two merged tracks, one bifurcation and one needle site."""
    line = Line3.through(np.zeros(3), np.array([0.0, 0.0, 1.0]))
    tracks = [
        MergedTrack(
            id=mt_id,
            member_ids={mt_id},
            points=[
                TrackPoint(point=Point3(x=float(mt_id), y=0.0, z=float(k), t=k * 0.1), origin_id=mt_id, interpolated=k == 1)
                for k in range(3)
            ],
            line=line,
        )
        for mt_id in (0, 1)
    ]
    return PipelineResult(
        merged_tracks=tracks,
        bifurcations=[Bifurcation(position=(0.0, 0.0, 2.0), t=0.2, merged_id=0, origin_pair=(0, 1))],
        needle_sites=[NeedleSite(position=(1.0, 0.0, 0.0), t=0.0, distance_to_bifurcation=2.2, bifurcation_index=0)],
        primary_bifurcation=0,
    )


class TestPly:
    """Test PLY rendering."""

    def test_header_and_vertices(self, result: PipelineResult) -> None:
        """Test one vertex per point, colored by merged track."""
        lines = render_ply(result).splitlines()
        assert lines[:2] == ["ply", "format ascii 1.0"]
        assert "element vertex 6" in lines
        body = lines[lines.index("end_header") + 1 :]
        assert len(body) == 6
        assert body[0].endswith(" ".join(str(c) for c in PALETTE[0]))
        assert body[3].endswith(" ".join(str(c) for c in PALETTE[1]))

    def test_marker_comments(self, result: PipelineResult) -> None:
        """Test markers name their nearest vertex."""
        text = render_ply(result)
        assert "comment bifurcation 0 vertex 2 0.000000 0.000000 2.000000" in text
        assert "comment needle 0 vertex 3 1.000000 0.000000 0.000000" in text

    def test_empty(self) -> None:
        """Test an empty result has no vertices."""
        assert "element vertex 0" in render_ply(PipelineResult())

    def test_write_and_count(self, result: PipelineResult, tmp_path: Path) -> None:
        """Test the written file declares its vertex count."""
        write_ply(result, tmp_path / "result.ply")
        assert read_ply_vertex_count(tmp_path / "result.ply") == 6

    def test_palette_wraps(self) -> None:
        """Test colors repeat past the palette length."""
        assert color_for(len(PALETTE) + 2) == PALETTE[2]


class TestTables:
    """Test the point table."""

    def test_points_frame(self, result: PipelineResult) -> None:
        """Test one row per point with the expected columns."""
        table = points_frame(result)
        assert list(table.columns) == POINT_COLUMNS
        assert len(table) == 6
        assert table["interpolated"].sum() == 2
        assert sorted(table["merged_id"].unique()) == [0, 1]

    def test_empty(self) -> None:
        """Test an empty result gives an empty table with the columns."""
        table = points_frame(PipelineResult())
        assert table.empty
        assert list(table.columns) == POINT_COLUMNS

    def test_write_csv(self, result: PipelineResult, tmp_path: Path) -> None:
        """Test the CSV reads back with pandas."""
        write_csv(result, tmp_path / "points.csv")
        table = pd.read_csv(tmp_path / "points.csv")
        assert len(table) == 6
        assert table.loc[5, "z"] == pytest.approx(2.0)
