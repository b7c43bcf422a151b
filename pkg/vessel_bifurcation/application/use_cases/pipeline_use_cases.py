"""Pipeline use cases."""

import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from typing import Dict, Iterator, List, Optional

import structlog

from vessel_bifurcation.application.exceptions import PipelineError
from vessel_bifurcation.domain.entities.bifurcation import Bifurcation, NeedleSite
from vessel_bifurcation.domain.entities.dataset import ScanDataset
from vessel_bifurcation.domain.entities.geometry import Point3
from vessel_bifurcation.domain.entities.hyperparams import HyperParams
from vessel_bifurcation.domain.entities.pose import Calibration
from vessel_bifurcation.domain.entities.result import PipelineResult
from vessel_bifurcation.domain.entities.track import Track
from vessel_bifurcation.domain.exceptions import DomainError, EmptyInputError, NeedleSiteError
from vessel_bifurcation.domain.services.mask_processor import FrameDetections, MaskProcessor
from vessel_bifurcation.domain.services.projection import PoseInterpolator, project_frame
from vessel_bifurcation.domain.services.skeleton import find_bifurcations, interpolate_track, merge_all, needle_site
from vessel_bifurcation.domain.services.tracker import VesselTracker, finalize

logger = structlog.get_logger()


class RunPipeline:
    """
    Run pipeline use case.

    Turns a scan dataset into merged vessel tracks, bifurcations and needle sites:
    detect, project, track, finalize, interpolate, merge, bifurcate, needle.
    """

    def __init__(self, hp: HyperParams, max_workers: int = 1) -> None:
        """
        Initialize RunPipeline use case.

        Args:
            hp: Hyperparameters
            max_workers: Threads for per-frame mask processing
        """
        if max_workers < 1:
            raise ValueError("max_workers must be at least 1")
        self.hp = hp
        self.max_workers = max_workers
        self.mask_processor = MaskProcessor(hp)
        self._timings: Dict[str, float] = {}

    @contextmanager
    def _stage(self, name: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        except DomainError as e:
            logger.error("Pipeline stage failed", stage=name, error=str(e))
            raise PipelineError(str(e), stage=name) from e
        finally:
            self._timings[name] = time.perf_counter() - start

    def _detect(self, dataset: ScanDataset) -> List[FrameDetections]:
        frames = sorted(dataset.frames, key=lambda f: f.index)
        if self.max_workers == 1:
            return [self.mask_processor.process(frame) for frame in frames]
        with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
            results = list(pool.map(self.mask_processor.process, frames))
        return sorted(results, key=lambda r: r.frame_index)

    def execute(self, dataset: ScanDataset, calibration: Optional[Calibration] = None) -> PipelineResult:
        """
        Run every stage on a dataset.

        Args:
            dataset: Scan dataset
            calibration: Calibration overriding the dataset's own

        Returns:
            PipelineResult with per-stage timings; identification time is their sum

        Raises:
            PipelineError: If a stage fails, tagged with the stage name
        """
        self._timings = {}
        cal = calibration if calibration is not None else dataset.calibration
        logger.info("Running pipeline", frames=len(dataset.frames), poses=len(dataset.poses))

        with self._stage("detect"):
            if dataset.is_empty():
                raise EmptyInputError("no frames")
            per_frame = self._detect(dataset)
            exhausted = sum(1 for f in per_frame if f.exhausted)

        with self._stage("project"):
            interpolator = PoseInterpolator(dataset.poses)
            if per_frame[0].t < interpolator.start or per_frame[-1].t > interpolator.end:
                logger.warning(
                    "Frames outside the pose log span, poses clamped",
                    first_frame_t=per_frame[0].t,
                    last_frame_t=per_frame[-1].t,
                    log_start=interpolator.start,
                    log_end=interpolator.end,
                )
            world: List[List[Point3]] = [project_frame(f.detections, cal, interpolator) for f in per_frame]

        with self._stage("track"):
            tracker = VesselTracker(self.hp)
            for frame, points in zip(per_frame, world):
                tracker.step(points, t=frame.t)
            raw_tracks = tracker.tracks

        with self._stage("finalize"):
            tracks: List[Track] = finalize(raw_tracks, self.hp)

        with self._stage("interpolate"):
            frame_times = [f.t for f in per_frame]
            tracks = [interpolate_track(tr, frame_times) for tr in tracks]

        with self._stage("merge"):
            merged = merge_all(tracks, self.hp)

        with self._stage("bifurcate"):
            bifurcations: List[Bifurcation] = [b for mt in merged for b in find_bifurcations(mt, self.hp)]
            bifurcations.sort(key=lambda b: (b.t, b.merged_id))

        with self._stage("needle"):
            by_id = {mt.id: mt for mt in merged}
            sites: List[NeedleSite] = []
            for index, bifurcation in enumerate(bifurcations):
                try:
                    sites.append(
                        needle_site(by_id[bifurcation.merged_id], bifurcation, self.hp.needle_target_mm, index)
                    )
                except NeedleSiteError as e:
                    logger.warning("No needle site for bifurcation", bifurcation_index=index, t=bifurcation.t, error=str(e))

        timings = dict(self._timings)
        result = PipelineResult(
            merged_tracks=merged,
            bifurcations=bifurcations,
            needle_sites=sites,
            primary_bifurcation=0 if bifurcations else None,
            stage_timings=timings,
            identification_time_s=sum(timings.values()),
            frame_count=len(per_frame),
            erosion_exhausted_frames=exhausted,
        )
        logger.info(
            "Pipeline completed",
            tracks=len(raw_tracks),
            kept=len(tracks),
            merged=len(merged),
            bifurcations=len(bifurcations),
            identification_time_s=round(result.identification_time_s, 4),
        )
        return result
