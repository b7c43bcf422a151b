"""Export use cases."""

from pathlib import Path

import structlog

from vessel_bifurcation.application.ports.result_export_port import ExportFormat, ResultExportPort
from vessel_bifurcation.domain.entities.result import PipelineResult

logger = structlog.get_logger()


class ExportResult:
    """
    Export result use case.

    Writes a pipeline result as JSON, PLY or CSV.
    """

    def __init__(self, exporter: ResultExportPort) -> None:
        """
        Initialize ExportResult use case.

        Args:
            exporter: Result export port implementation
        """
        self.exporter = exporter

    def execute(self, result: PipelineResult, fmt: "ExportFormat | str", path: "Path | str") -> Path:
        """
        Export a result.

        Args:
            result: Pipeline result
            fmt: json, ply or csv
            path: Output file

        Returns:
            Path written

        Raises:
            ValueError: If the format is unknown
            ExportError: If the file cannot be written
        """
        output = self.exporter.export(result, ExportFormat(fmt), Path(path))
        logger.info("Result exported", format=ExportFormat(fmt).value, path=str(output), points=result.point_count())
        return output

    def load(self, path: "Path | str") -> PipelineResult:
        """Read a JSON result back."""
        return self.exporter.load(Path(path))
