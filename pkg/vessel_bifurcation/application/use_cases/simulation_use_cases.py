"""Simulation and benchmark use cases."""

from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import structlog
from pydantic import BaseModel, Field

from vessel_bifurcation.application.ports.dataset_port import DatasetPort
from vessel_bifurcation.application.ports.simulation_port import SimulationPort
from vessel_bifurcation.application.use_cases.evaluation_use_cases import (
    DEFAULT_GATING_RADIUS_MM,
    DEFAULT_NEEDLE_BAND_MM,
    EvaluateResult,
)
from vessel_bifurcation.application.use_cases.pipeline_use_cases import RunPipeline
from vessel_bifurcation.domain.entities.hyperparams import HyperParams
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.config import RunConfig
from vessel_bifurcation.infrastructure.simulation.phantom import PhantomSpec
from vessel_bifurcation.infrastructure.simulation.scan_simulator import SimulatedScan

logger = structlog.get_logger()


class SimulateScan:
    """
    Simulate scan use case.

    Produces a synthetic scan and optionally stores it as a dataset.
    """

    def __init__(self, simulator: SimulationPort, store: Optional[DatasetPort] = None) -> None:
        """
        Initialize SimulateScan use case.

        Args:
            simulator: Simulation port implementation
            store: Dataset port used when an output location is given
        """
        self.simulator = simulator
        self.store = store

    def execute(
        self,
        spec: PhantomSpec,
        scan: ScanParams,
        seed: int = 0,
        out: Optional[Path] = None,
        config: Optional[RunConfig] = None,
    ) -> SimulatedScan:
        """
        Simulate a scan.

        Args:
            spec: Phantom specification
            scan: Acquisition parameters
            seed: Random seed
            out: Dataset directory to write
            config: Run configuration stored with the dataset

        Returns:
            SimulatedScan

        Raises:
            ValueError: If ``out`` is given without a dataset store
            SimulationError: If the sweep never images a vessel
        """
        simulated = self.simulator.simulate(spec, scan, seed)
        if out is not None:
            if self.store is None:
                raise ValueError("no dataset store configured")
            stored = (config or RunConfig()).model_copy(update={"scan": scan, "calibration": simulated.dataset.calibration})
            self.store.save(simulated.dataset, out, config=stored, truth=simulated.truth)
            logger.info("Simulated dataset saved", path=str(out), seed=seed)
        return simulated


class BenchmarkRow(BaseModel):
    """Outcome of one seeded run."""

    seed: int = Field(..., description="Simulation seed")
    bifurcations: int = Field(..., ge=0, description="Reported bifurcations")
    false_positives: int = Field(..., ge=0, description="False positives")
    false_negatives: int = Field(..., ge=0, description="False negatives")
    mean_error_mm: Optional[float] = Field(None, description="Mean bifurcation error (mm)")
    identification_time_s: float = Field(..., ge=0, description="Identification time (s)")
    needle_in_range: Optional[float] = Field(None, description="Fraction of matched needle sites in the band")
    mask_iou: Optional[float] = Field(None, description="Mean mask IoU")
    success: bool = Field(..., description="Every junction found, no false positive")


def _mean_std(values: Sequence[float]) -> Tuple[Optional[float], Optional[float]]:
    if not values:
        return None, None
    return float(np.mean(values)), float(np.std(values))


class BenchmarkReport(BaseModel):
    """Aggregate over seeded runs."""

    rows: List[BenchmarkRow] = Field(default_factory=list, description="One row per seed")

    @property
    def runs(self) -> int:
        """Number of runs."""
        return len(self.rows)

    @property
    def successes(self) -> int:
        """Runs with every junction found and no false positive."""
        return sum(1 for row in self.rows if row.success)

    @property
    def total_false_positives(self) -> int:
        """False positives over all runs."""
        return sum(row.false_positives for row in self.rows)

    @property
    def total_false_negatives(self) -> int:
        """False negatives over all runs."""
        return sum(row.false_negatives for row in self.rows)

    @property
    def error_mm(self) -> Tuple[Optional[float], Optional[float]]:
        """Mean and standard deviation of per-run mean errors (mm)."""
        return _mean_std([row.mean_error_mm for row in self.rows if row.mean_error_mm is not None])

    @property
    def identification_time_s(self) -> Tuple[Optional[float], Optional[float]]:
        """Mean and standard deviation of identification times (s)."""
        return _mean_std([row.identification_time_s for row in self.rows])

    @property
    def needle_in_range_fraction(self) -> Optional[float]:
        """Mean fraction of needle sites inside the band."""
        fractions = [row.needle_in_range for row in self.rows if row.needle_in_range is not None]
        return float(np.mean(fractions)) if fractions else None

    def to_frame(self) -> pd.DataFrame:
        """Rows as a DataFrame indexed by seed."""
        return pd.DataFrame([row.model_dump() for row in self.rows], columns=list(BenchmarkRow.model_fields)).set_index("seed")


class RunBenchmark:
    """
    Run benchmark use case.

    Simulates seeded scans of one phantom, runs the pipeline on each and evaluates it
    against the simulator's ground truth.
    """

    def __init__(
        self,
        simulator: SimulationPort,
        hp: HyperParams,
        scan: ScanParams,
        gating_radius_mm: float = DEFAULT_GATING_RADIUS_MM,
        needle_band_mm: Tuple[float, float] = DEFAULT_NEEDLE_BAND_MM,
        max_workers: int = 1,
    ) -> None:
        """
        Initialize RunBenchmark use case.

        Args:
            simulator: Simulation port implementation
            hp: Hyperparameters
            scan: Acquisition parameters
            gating_radius_mm: Matching radius (mm)
            needle_band_mm: Acceptable needle distance band (mm)
            max_workers: Threads for per-frame mask processing
        """
        self.simulator = simulator
        self.scan = scan
        self.pipeline = RunPipeline(hp, max_workers=max_workers)
        self.evaluator = EvaluateResult(gating_radius_mm, needle_band_mm)

    def execute(self, spec: PhantomSpec, seeds: Sequence[int]) -> BenchmarkReport:
        """
        Benchmark a phantom over seeds.

        Args:
            spec: Phantom specification
            seeds: Simulation seeds

        Returns:
            BenchmarkReport with one row per seed
        """
        rows: List[BenchmarkRow] = []
        for seed in seeds:
            simulated = self.simulator.simulate(spec, self.scan, seed)
            dataset = simulated.dataset
            result = self.pipeline.execute(dataset)
            report = self.evaluator.execute(
                result,
                simulated.truth,
                masks=[frame.mask for frame in dataset.frames],
                truth_masks=dataset.truth_masks,
            )
            rows.append(
                BenchmarkRow(
                    seed=seed,
                    bifurcations=len(result.bifurcations),
                    false_positives=report.false_positives,
                    false_negatives=report.false_negatives,
                    mean_error_mm=report.mean_error_mm,
                    identification_time_s=report.identification_time_s,
                    needle_in_range=float(np.mean(report.needle_in_range)) if report.needle_in_range else None,
                    mask_iou=report.mask_iou,
                    success=report.success,
                )
            )

        benchmark = BenchmarkReport(rows=rows)
        logger.info(
            "Benchmark completed",
            runs=benchmark.runs,
            successes=benchmark.successes,
            false_positives=benchmark.total_false_positives,
            mean_error_mm=benchmark.error_mm[0],
        )
        return benchmark
