"""Command-line interface: simulate, run, eval, export, benchmark."""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

import structlog
from pydantic import ValidationError

from vessel_bifurcation.application.exceptions import PipelineError
from vessel_bifurcation.application.ports.result_export_port import ExportFormat
from vessel_bifurcation.application.use_cases.evaluation_use_cases import EvaluateResult
from vessel_bifurcation.application.use_cases.export_use_cases import ExportResult
from vessel_bifurcation.application.use_cases.pipeline_use_cases import RunPipeline
from vessel_bifurcation.application.use_cases.simulation_use_cases import RunBenchmark, SimulateScan
from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.hyperparams import Profile
from vessel_bifurcation.domain.exceptions import DomainError
from vessel_bifurcation.infrastructure.adapters.file_dataset_adapter import FileDatasetAdapter
from vessel_bifurcation.infrastructure.adapters.result_export_adapter import ResultExportAdapter
from vessel_bifurcation.infrastructure.adapters.simulation_adapter import SimulationAdapter
from vessel_bifurcation.infrastructure.config import RunConfig, Settings, load_run_config
from vessel_bifurcation.infrastructure.exceptions import InfrastructureError
from vessel_bifurcation.infrastructure.io.records import read_json, write_json
from vessel_bifurcation.infrastructure.logging_config import configure_logging
from vessel_bifurcation.infrastructure.simulation.phantom import (
    NoiseModel,
    PhantomSpec,
    parallel_phantom,
    straight_phantom,
    y_phantom,
)

logger = structlog.get_logger()

EXIT_OK = 0
EXIT_PIPELINE = 1
EXIT_IO = 2

BENCHMARK_NOISE = NoiseModel(flip_probability=0.01, speckle_rate=2, pose_jitter_mm=0.2)

PHANTOMS: Dict[str, Callable[[], PhantomSpec]] = {
    "y": y_phantom,
    "parallel": parallel_phantom,
    "straight": straight_phantom,
}


def _phantom(name: str, noise: bool) -> PhantomSpec:
    spec = PHANTOMS[name]()
    return spec.with_noise(BENCHMARK_NOISE) if noise else spec


def _resolve_config(args: argparse.Namespace, settings: Settings, config: RunConfig) -> RunConfig:
    if args.profile:
        return config.with_profile(args.profile)
    if config.profile is None:
        return config.model_copy(update={"profile": settings.profile})
    return config


def cmd_simulate(args: argparse.Namespace, settings: Settings) -> int:
    """Simulate a phantom scan into a dataset directory."""
    spec = read_json(args.spec, PhantomSpec) if args.spec else _phantom(args.phantom, args.noise)
    config = load_run_config(args.config) if args.config else RunConfig()
    config = _resolve_config(args, settings, config)
    use_case = SimulateScan(SimulationAdapter(), FileDatasetAdapter())
    use_case.execute(spec, config.scan, seed=args.seed, out=Path(args.out), config=config)
    return EXIT_OK


def cmd_run(args: argparse.Namespace, settings: Settings) -> int:
    """Run the pipeline on a dataset directory and write the JSON result."""
    store = FileDatasetAdapter()
    dataset = store.load(Path(args.data))
    config = load_run_config(args.config) if args.config else store.load_config(Path(args.data))
    config = _resolve_config(args, settings, config)
    hp = config.resolve_hyperparams(settings.profile)
    result = RunPipeline(hp, max_workers=args.workers or settings.max_workers).execute(dataset)
    ExportResult(ResultExportAdapter()).execute(result, ExportFormat.JSON, Path(args.out))
    return EXIT_OK


def cmd_eval(args: argparse.Namespace, settings: Settings) -> int:
    """Evaluate a JSON result against ground truth and print the report."""
    result = ExportResult(ResultExportAdapter()).load(Path(args.result))
    truth = read_json(args.truth, GroundTruth)
    masks = truth_masks = None
    if args.data:
        dataset = FileDatasetAdapter().load(Path(args.data))
        if dataset.truth_masks is not None:
            masks = [frame.mask for frame in dataset.frames]
            truth_masks = dataset.truth_masks
    report = EvaluateResult(settings.gating_radius_mm, settings.needle_band_mm).execute(
        result, truth, masks=masks, truth_masks=truth_masks
    )
    if args.out:
        write_json(report, args.out)
    print(report.model_dump_json(indent=2))
    return EXIT_OK


def cmd_export(args: argparse.Namespace, settings: Settings) -> int:
    """Convert a JSON result to another format."""
    use_case = ExportResult(ResultExportAdapter())
    use_case.execute(use_case.load(Path(args.result)), args.format, Path(args.out))
    return EXIT_OK


def cmd_benchmark(args: argparse.Namespace, settings: Settings) -> int:
    """Benchmark the pipeline over seeded simulated scans and print a summary table."""
    config = _resolve_config(args, settings, load_run_config(args.config) if args.config else RunConfig())
    benchmark = RunBenchmark(
        SimulationAdapter(),
        config.resolve_hyperparams(settings.profile),
        config.scan,
        gating_radius_mm=settings.gating_radius_mm,
        needle_band_mm=settings.needle_band_mm,
        max_workers=settings.max_workers,
    ).execute(_phantom(args.phantom, args.noise), range(args.first_seed, args.first_seed + args.seeds))

    table = benchmark.to_frame()
    if args.csv:
        table.to_csv(args.csv)
    print(table.to_string())
    mean_error, std_error = benchmark.error_mm
    print(
        f"successes {benchmark.successes}/{benchmark.runs}  "
        f"false positives {benchmark.total_false_positives}  "
        f"false negatives {benchmark.total_false_negatives}  "
        f"error {mean_error if mean_error is not None else float('nan'):.2f} "
        f"+/- {std_error if std_error is not None else float('nan'):.2f} mm"
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for every command."""
    parser = argparse.ArgumentParser(
        prog="vessel-bifurcation",
        description="Locate vessel bifurcations and needle insertion sites in ultrasound mask sweeps.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    profiles = [p.value for p in Profile]

    simulate = commands.add_parser("simulate", help="Simulate a phantom scan")
    source = simulate.add_mutually_exclusive_group()
    source.add_argument("--spec", type=Path, help="PhantomSpec JSON file")
    source.add_argument("--phantom", choices=sorted(PHANTOMS), default="y", help="Built-in phantom")
    simulate.add_argument("--noise", action="store_true", help="Apply the benchmark noise model")
    simulate.add_argument("--out", type=Path, required=True, help="Dataset directory")
    simulate.add_argument("--seed", type=int, default=0, help="Random seed")
    simulate.add_argument("--config", type=Path, help="Run configuration to store with the dataset")
    simulate.add_argument("--profile", choices=profiles, help="Hyperparameter profile")
    simulate.set_defaults(handler=cmd_simulate)

    run = commands.add_parser("run", help="Run the pipeline on a dataset")
    run.add_argument("--data", type=Path, required=True, help="Dataset directory")
    run.add_argument("--config", type=Path, help="Run configuration (defaults to the dataset's)")
    run.add_argument("--out", type=Path, required=True, help="Result JSON file")
    run.add_argument("--profile", choices=profiles, help="Hyperparameter profile")
    run.add_argument("--workers", type=int, help="Mask processing threads")
    run.set_defaults(handler=cmd_run)

    evaluate = commands.add_parser("eval", help="Evaluate a result against ground truth")
    evaluate.add_argument("--result", type=Path, required=True, help="Result JSON file")
    evaluate.add_argument("--truth", type=Path, required=True, help="Ground truth JSON file")
    evaluate.add_argument("--data", type=Path, help="Dataset directory, for the mask IoU")
    evaluate.add_argument("--out", type=Path, help="Report JSON file")
    evaluate.set_defaults(handler=cmd_eval)

    export = commands.add_parser("export", help="Export a result")
    export.add_argument("--result", type=Path, required=True, help="Result JSON file")
    export.add_argument("--format", choices=[f.value for f in ExportFormat], required=True, help="Output format")
    export.add_argument("--out", type=Path, required=True, help="Output file")
    export.set_defaults(handler=cmd_export)

    benchmark = commands.add_parser("benchmark", help="Benchmark on seeded simulated scans")
    benchmark.add_argument("--phantom", choices=["y", "parallel"], default="y", help="Built-in phantom")
    benchmark.add_argument("--seeds", type=int, default=20, help="Number of seeds")
    benchmark.add_argument("--first-seed", type=int, default=0, help="First seed")
    benchmark.add_argument("--noise", action="store_true", help="Apply the benchmark noise model")
    benchmark.add_argument("--config", type=Path, help="Run configuration")
    benchmark.add_argument("--profile", choices=profiles, help="Hyperparameter profile")
    benchmark.add_argument("--csv", type=Path, help="Write the per-seed table as CSV")
    benchmark.set_defaults(handler=cmd_benchmark)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    CLI entry point.

    Returns:
        0 on success, 1 on a pipeline or domain error, 2 on an I/O or configuration error
    """
    args = build_parser().parse_args(argv)
    try:
        settings = Settings()
        configure_logging(settings.log_level, settings.log_json)
        return args.handler(args, settings)
    except (PipelineError, DomainError) as e:
        logger.error("Pipeline failed", command=args.command, stage=getattr(e, "stage", None), error=str(e))
        return EXIT_PIPELINE
    except (InfrastructureError, OSError, ValidationError, ValueError) as e:
        logger.error("Input or output failed", command=args.command, error=str(e))
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
