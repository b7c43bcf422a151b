"""Tabular (pandas) views of pipeline results."""

from pathlib import Path

import pandas as pd

from vessel_bifurcation.domain.entities.result import PipelineResult

POINT_COLUMNS = ["merged_id", "origin_id", "t", "x", "y", "z", "interpolated"]


def points_frame(result: PipelineResult) -> pd.DataFrame:
    """One row per track point."""
    records = [
        {
            "merged_id": mt.id,
            "origin_id": tp.origin_id,
            "t": tp.t,
            "x": tp.point.x,
            "y": tp.point.y,
            "z": tp.point.z,
            "interpolated": tp.interpolated,
        }
        for mt in result.merged_tracks
        for tp in mt.points
    ]
    return pd.DataFrame.from_records(records, columns=POINT_COLUMNS)


def write_csv(result: PipelineResult, path: "Path | str") -> None:
    """Write the point table as CSV."""
    points_frame(result).to_csv(path, index=False)
