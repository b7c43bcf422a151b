"""Evaluation use cases."""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import structlog

from vessel_bifurcation.domain.entities.bifurcation import GroundTruth
from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.domain.entities.result import EvalReport, JunctionMatch, PipelineResult

logger = structlog.get_logger()

DEFAULT_GATING_RADIUS_MM = 30.0
DEFAULT_NEEDLE_BAND_MM = (20.0, 50.0)


def mask_iou(a: Mask, b: Mask) -> float:
    """Intersection over union of two masks; two empty masks score 1."""
    if a.bits.shape != b.bits.shape:
        raise ValueError(f"mask shapes differ: {a.bits.shape} vs {b.bits.shape}")
    union = int(np.logical_or(a.bits, b.bits).sum())
    if union == 0:
        return 1.0
    return float(np.logical_and(a.bits, b.bits).sum()) / union


def mean_mask_iou(masks: Sequence[Mask], truth_masks: Sequence[Mask]) -> float:
    """Mean per-frame IoU."""
    if len(masks) != len(truth_masks):
        raise ValueError(f"{len(masks)} masks vs {len(truth_masks)} truth masks")
    if not masks:
        raise ValueError("no masks to compare")
    return float(np.mean([mask_iou(m, t) for m, t in zip(masks, truth_masks)]))


class EvaluateResult:
    """
    Evaluate result use case.

    Matches predicted bifurcations to ground-truth junctions and scores the needle sites.
    """

    def __init__(
        self,
        gating_radius_mm: float = DEFAULT_GATING_RADIUS_MM,
        needle_band_mm: Tuple[float, float] = DEFAULT_NEEDLE_BAND_MM,
    ) -> None:
        """
        Initialize EvaluateResult use case.

        Args:
            gating_radius_mm: Largest truth-to-prediction distance counted as a match (mm)
            needle_band_mm: Acceptable needle-to-junction distance band (mm)
        """
        if gating_radius_mm <= 0:
            raise ValueError("gating radius must be positive")
        if needle_band_mm[0] > needle_band_mm[1]:
            raise ValueError(f"invalid needle band {needle_band_mm}")
        self.gating_radius_mm = gating_radius_mm
        self.needle_band_mm = needle_band_mm

    def _match(self, result: PipelineResult, truth: GroundTruth) -> List[Tuple[int, int, float]]:
        candidates = [
            (float(np.linalg.norm(junction.p - bifurcation.p)), ti, pi)
            for ti, junction in enumerate(truth.junctions)
            for pi, bifurcation in enumerate(result.bifurcations)
        ]
        candidates = [c for c in candidates if c[0] <= self.gating_radius_mm]
        candidates.sort()

        used_truth: set[int] = set()
        used_pred: set[int] = set()
        pairs: List[Tuple[int, int, float]] = []
        for distance, ti, pi in candidates:
            if ti in used_truth or pi in used_pred:
                continue
            used_truth.add(ti)
            used_pred.add(pi)
            pairs.append((ti, pi, distance))
        return sorted(pairs)

    def execute(
        self,
        result: PipelineResult,
        truth: GroundTruth,
        masks: Optional[Sequence[Mask]] = None,
        truth_masks: Optional[Sequence[Mask]] = None,
    ) -> EvalReport:
        """
        Evaluate a pipeline result.

        Args:
            result: Pipeline result
            truth: Ground truth
            masks: Input masks, for the IoU pass-through
            truth_masks: Ground-truth masks aligned with ``masks``

        Returns:
            EvalReport
        """
        low, high = self.needle_band_mm
        matches: List[JunctionMatch] = []
        for ti, pi, error in self._match(result, truth):
            site = next((s for s in result.needle_sites if s.bifurcation_index == pi), None)
            needle_distance = None if site is None else float(np.linalg.norm(site.p - truth.junctions[ti].p))
            in_range = None if needle_distance is None else low <= needle_distance <= high
            matches.append(
                JunctionMatch(
                    truth_index=ti,
                    prediction_index=pi,
                    error_mm=error,
                    needle_distance_mm=needle_distance,
                    needle_in_range=in_range,
                )
            )

        iou = None
        if masks is not None and truth_masks is not None:
            iou = mean_mask_iou(masks, truth_masks)

        report = EvalReport(
            matches=matches,
            bifurcation_errors_mm=[m.error_mm for m in matches],
            false_positives=len(result.bifurcations) - len(matches),
            false_negatives=len(truth.junctions) - len(matches),
            needle_in_range=[m.needle_in_range for m in matches if m.needle_in_range is not None],
            identification_time_s=result.identification_time_s,
            mask_iou=iou,
        )
        if report.false_negatives:
            logger.warning("Truth junctions without a prediction", false_negatives=report.false_negatives)
        logger.info(
            "Result evaluated",
            matches=len(matches),
            false_positives=report.false_positives,
            false_negatives=report.false_negatives,
            mean_error_mm=report.mean_error_mm,
        )
        return report
