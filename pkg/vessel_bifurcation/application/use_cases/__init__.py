"""Application use cases."""

from vessel_bifurcation.application.use_cases.evaluation_use_cases import EvaluateResult, mask_iou, mean_mask_iou
from vessel_bifurcation.application.use_cases.export_use_cases import ExportResult
from vessel_bifurcation.application.use_cases.pipeline_use_cases import RunPipeline
from vessel_bifurcation.application.use_cases.simulation_use_cases import (
    BenchmarkReport,
    BenchmarkRow,
    RunBenchmark,
    SimulateScan,
)

__all__ = [
    # Pipeline
    "RunPipeline",
    # Evaluation
    "EvaluateResult",
    "mask_iou",
    "mean_mask_iou",
    # Simulation
    "SimulateScan",
    "RunBenchmark",
    "BenchmarkReport",
    "BenchmarkRow",
    # Export
    "ExportResult",
]
