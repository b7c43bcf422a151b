"""Result export adapter implementing ResultExportPort."""

from pathlib import Path

from vessel_bifurcation.application.ports.result_export_port import ExportFormat, ResultExportPort
from vessel_bifurcation.domain.entities.result import PipelineResult
from vessel_bifurcation.infrastructure.exceptions import ExportError
from vessel_bifurcation.infrastructure.io.ply import write_ply
from vessel_bifurcation.infrastructure.io.records import read_json, write_json
from vessel_bifurcation.infrastructure.io.tables import write_csv


class ResultExportAdapter(ResultExportPort):
    """
    Result export adapter.

    JSON holds the full result, PLY the point cloud with marker comments, CSV one row per point.
    """

    def export(self, result: PipelineResult, fmt: ExportFormat, path: Path) -> Path:
        """
        Write a result.

        Raises:
            ExportError: If the file cannot be written
        """
        output = Path(path)
        try:
            if fmt is ExportFormat.JSON:
                write_json(result, output)
            elif fmt is ExportFormat.PLY:
                write_ply(result, output)
            else:
                write_csv(result, output)
        except OSError as e:
            raise ExportError(f"cannot write {fmt.value} result", path=output) from e
        return output

    def load(self, path: Path) -> PipelineResult:
        """Read a JSON result."""
        return read_json(path, PipelineResult)
