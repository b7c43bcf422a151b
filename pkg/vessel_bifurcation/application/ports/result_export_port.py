"""Result export port (interface)."""

from abc import ABC, abstractmethod
from enum import Enum
from pathlib import Path

from vessel_bifurcation.domain.entities.result import PipelineResult


class ExportFormat(str, Enum):
    """Supported result formats."""

    JSON = "json"
    PLY = "ply"
    CSV = "csv"


class ResultExportPort(ABC):
    """
    Result export port interface.

    Defines the contract for writing and reading pipeline results.
    """

    @abstractmethod
    def export(self, result: PipelineResult, fmt: ExportFormat, path: Path) -> Path:
        """
        Write a result.

        Args:
            result: Pipeline result
            fmt: Output format
            path: Output file

        Returns:
            Path written

        Raises:
            ExportError: If the file cannot be written
        """
        pass

    @abstractmethod
    def load(self, path: Path) -> PipelineResult:
        """
        Read a JSON result.

        Raises:
            InvalidDataError: If the file is not a valid result
        """
        pass
