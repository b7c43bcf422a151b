"""Application ports (interfaces)."""

from vessel_bifurcation.application.ports.dataset_port import DatasetPort
from vessel_bifurcation.application.ports.result_export_port import ExportFormat, ResultExportPort
from vessel_bifurcation.application.ports.simulation_port import SimulationPort

__all__ = [
    "DatasetPort",
    "SimulationPort",
    "ResultExportPort",
    "ExportFormat",
]
