"""Vessel Bifurcation - Vessel bifurcation and needle insertion site detection from ultrasound mask sweeps."""

__version__ = "0.1.0"

from vessel_bifurcation.domain.entities import (
    Bifurcation,
    Calibration,
    EvalReport,
    GroundTruth,
    HyperParams,
    Mask,
    MergedTrack,
    NeedleSite,
    PipelineResult,
    Pose,
    Profile,
    ScanDataset,
    ScanParams,
    Track,
)
from vessel_bifurcation.application.use_cases import (
    EvaluateResult,
    ExportResult,
    RunBenchmark,
    RunPipeline,
    SimulateScan,
)
from vessel_bifurcation.infrastructure.adapters import (
    FileDatasetAdapter,
    ResultExportAdapter,
    SimulationAdapter,
)
from vessel_bifurcation.infrastructure.simulation import (
    NoiseModel,
    PhantomSpec,
    ScanSimulator,
    parallel_phantom,
    y_phantom,
)

__all__ = [
    "__version__",
    # Entities
    "Mask",
    "Pose",
    "Calibration",
    "ScanDataset",
    "ScanParams",
    "Track",
    "MergedTrack",
    "Bifurcation",
    "NeedleSite",
    "GroundTruth",
    "HyperParams",
    "Profile",
    "PipelineResult",
    "EvalReport",
    # Use cases
    "RunPipeline",
    "EvaluateResult",
    "SimulateScan",
    "ExportResult",
    "RunBenchmark",
    # Infrastructure
    "FileDatasetAdapter",
    "SimulationAdapter",
    "ResultExportAdapter",
    "ScanSimulator",
    "PhantomSpec",
    "NoiseModel",
    "y_phantom",
    "parallel_phantom",
]
