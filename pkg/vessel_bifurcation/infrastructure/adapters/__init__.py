"""Infrastructure adapters."""

from vessel_bifurcation.infrastructure.adapters.file_dataset_adapter import FileDatasetAdapter
from vessel_bifurcation.infrastructure.adapters.result_export_adapter import ResultExportAdapter
from vessel_bifurcation.infrastructure.adapters.simulation_adapter import SimulationAdapter

__all__ = [
    "FileDatasetAdapter",
    "SimulationAdapter",
    "ResultExportAdapter",
]
