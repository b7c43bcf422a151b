"""Infrastructure exceptions."""

from pathlib import Path


class InfrastructureError(Exception):
    """Base exception for infrastructure layer."""

    pass


class InvalidDataError(InfrastructureError):
    """Invalid data format error."""

    def __init__(self, message: str, data: dict | None = None) -> None:
        """
        Initialize invalid data error.

        Args:
            message: Error message
            data: Invalid data
        """
        super().__init__(message)
        self.data = data


class DatasetError(InfrastructureError):
    """Dataset directory is missing a required part."""

    pass


class SimulationError(InfrastructureError):
    """Simulation error."""

    pass


class ExportError(InfrastructureError):
    """Export error."""

    def __init__(self, message: str, path: Path | str | None = None) -> None:
        """
        Initialize export error.

        Args:
            message: Error message
            path: Offending output path
        """
        super().__init__(f"{message}: {path}" if path is not None else message)
        self.path = path
