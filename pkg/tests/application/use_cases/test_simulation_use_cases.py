"""Tests for the simulation and benchmark use cases."""

from pathlib import Path
from unittest.mock import MagicMock

import pytest

from vessel_bifurcation.application.ports.dataset_port import DatasetPort
from vessel_bifurcation.application.ports.simulation_port import SimulationPort
from vessel_bifurcation.application.use_cases.simulation_use_cases import (
    BenchmarkReport,
    BenchmarkRow,
    RunBenchmark,
    SimulateScan,
)
from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.dataset import ScanDataset
from vessel_bifurcation.domain.entities.hyperparams import HyperParams, Profile
from vessel_bifurcation.domain.entities.pose import Calibration
from vessel_bifurcation.domain.entities.result import EvalReport, JunctionMatch, PipelineResult
from vessel_bifurcation.domain.entities.scan import ScanParams
from vessel_bifurcation.infrastructure.config import RunConfig
from vessel_bifurcation.infrastructure.simulation.phantom import y_phantom
from vessel_bifurcation.infrastructure.simulation.scan_simulator import SimulatedScan


@pytest.fixture
def scan() -> ScanParams:
    """Create acquisition parameters."""
    return ScanParams(frame_count=10)


@pytest.fixture
def simulated(scan: ScanParams) -> SimulatedScan:
    """Create an empty simulated scan with a custom calibration."""
    return SimulatedScan(
        dataset=ScanDataset(calibration=Calibration(pixel_spacing=0.25)),
        truth=GroundTruth(),
        scan=scan,
    )


@pytest.fixture
def mock_simulator(simulated: SimulatedScan) -> MagicMock:
    """Create mock simulation port."""
    mock = MagicMock(spec=SimulationPort)
    mock.simulate.return_value = simulated
    return mock


@pytest.fixture
def mock_store() -> MagicMock:
    """Create mock dataset port."""
    return MagicMock(spec=DatasetPort)


def row(seed: int, success: bool, error: float | None, fp: int = 0, fn: int = 0) -> BenchmarkRow:
    """Benchmark row."""
    return BenchmarkRow(
        seed=seed,
        bifurcations=1,
        false_positives=fp,
        false_negatives=fn,
        mean_error_mm=error,
        identification_time_s=0.5,
        needle_in_range=1.0 if error is not None else None,
        success=success,
    )


class TestSimulateScan:
    """Test SimulateScan use case."""

    def test_simulate_only(self, mock_simulator: MagicMock, scan: ScanParams, simulated: SimulatedScan) -> None:
        """Test simulation without an output location."""
        spec = y_phantom()
        assert SimulateScan(mock_simulator).execute(spec, scan, seed=7) is simulated
        mock_simulator.simulate.assert_called_once_with(spec, scan, 7)

    def test_save(self, mock_simulator: MagicMock, mock_store: MagicMock, scan: ScanParams, simulated: SimulatedScan) -> None:
        """Test the stored config carries the scan and the simulator's calibration."""
        out = Path("/tmp/dataset")
        SimulateScan(mock_simulator, mock_store).execute(
            y_phantom(), scan, seed=1, out=out, config=RunConfig(profile=Profile.PIG)
        )
        args, kwargs = mock_store.save.call_args
        assert args == (simulated.dataset, out)
        assert kwargs["truth"] == simulated.truth
        stored = kwargs["config"]
        assert stored.profile is Profile.PIG
        assert stored.scan == scan
        assert stored.calibration.pixel_spacing == 0.25

    def test_save_without_store(self, mock_simulator: MagicMock, scan: ScanParams) -> None:
        """Test an output location without a store raises."""
        with pytest.raises(ValueError):
            SimulateScan(mock_simulator).execute(y_phantom(), scan, out=Path("/tmp/x"))


class TestBenchmarkReport:
    """Test BenchmarkReport."""

    def test_aggregates(self) -> None:
        """Test counts, error statistics and the needle fraction."""
        report = BenchmarkReport(rows=[row(0, True, 1.0), row(1, True, 3.0), row(2, False, None, fp=2, fn=1)])
        assert report.runs == 3
        assert report.successes == 2
        assert report.total_false_positives == 2
        assert report.total_false_negatives == 1
        assert report.error_mm == pytest.approx((2.0, 1.0))
        assert report.identification_time_s == pytest.approx((0.5, 0.0))
        assert report.needle_in_range_fraction == 1.0

    def test_empty(self) -> None:
        """Test an empty report has no statistics."""
        report = BenchmarkReport()
        assert report.error_mm == (None, None)
        assert report.needle_in_range_fraction is None

    def test_to_frame(self) -> None:
        """Test the table is indexed by seed."""
        table = BenchmarkReport(rows=[row(4, True, 1.0), row(9, False, None)]).to_frame()
        assert list(table.index) == [4, 9]
        assert "mean_error_mm" in table.columns
        assert bool(table.loc[4, "success"])


class TestRunBenchmark:
    """Test RunBenchmark use case."""

    def test_one_row_per_seed(self, mock_simulator: MagicMock, scan: ScanParams) -> None:
        """Test every seed is simulated, run and evaluated."""
        benchmark = RunBenchmark(mock_simulator, HyperParams(), scan)
        benchmark.pipeline = MagicMock()
        benchmark.pipeline.execute.return_value = PipelineResult(identification_time_s=0.3)
        benchmark.evaluator = MagicMock()
        benchmark.evaluator.execute.return_value = EvalReport(
            matches=[JunctionMatch(truth_index=0, prediction_index=0, error_mm=2.0, needle_in_range=True)],
            bifurcation_errors_mm=[2.0],
            needle_in_range=[True],
            identification_time_s=0.3,
        )

        report = benchmark.execute(y_phantom(), [3, 4, 5])

        assert [r.seed for r in report.rows] == [3, 4, 5]
        assert [c.args[2] for c in mock_simulator.simulate.call_args_list] == [3, 4, 5]
        assert benchmark.pipeline.execute.call_count == 3
        assert report.successes == 3
        assert report.error_mm == pytest.approx((2.0, 0.0))
        assert report.rows[0].needle_in_range == 1.0
