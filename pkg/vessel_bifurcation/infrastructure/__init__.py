"""Infrastructure layer: adapters, simulation, file codecs, configuration and logging."""

from vessel_bifurcation.infrastructure.exceptions import (
    DatasetError,
    ExportError,
    InfrastructureError,
    InvalidDataError,
    SimulationError,
)

__all__ = [
    "InfrastructureError",
    "InvalidDataError",
    "DatasetError",
    "SimulationError",
    "ExportError",
]
