"""Per-frame mask processing: majority erosion, connected components, vessel detection."""

from typing import List

import numpy as np
import structlog
from pydantic import BaseModel, Field
from scipy import ndimage

from vessel_bifurcation.domain.entities.dataset import Frame
from vessel_bifurcation.domain.entities.geometry import Circle2, Point2
from vessel_bifurcation.domain.entities.hyperparams import HyperParams
from vessel_bifurcation.domain.entities.mask import Detection, Mask, Segment
from vessel_bifurcation.domain.services.geometry import min_enclosing_circle

logger = structlog.get_logger()

KERNEL = np.ones((3, 3), dtype=np.int32)
EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)
MAJORITY = 0.5


class ErosionResult(BaseModel):
    """Outcome of iterated erosion on one mask."""

    segments: List[Segment] = Field(default_factory=list, description="Final components")
    iterations: int = Field(default=0, ge=0, description="Erosion steps applied")
    peels: int = Field(default=0, ge=0, description="Steps that fell back to boundary peeling")
    exhausted: bool = Field(default=False, description="Stopped with radii still at or above delta_s")
    mask: Mask = Field(..., description="Mask after the last step")


def _segment(pixels: np.ndarray) -> Segment:
    if len(pixels) == 1:
        x, y = float(pixels[0, 0]), float(pixels[0, 1])
        mec = Circle2(center=Point2(x=x, y=y), radius=0.0)
    else:
        mec = min_enclosing_circle(pixels.astype(float))
    return Segment(pixels=pixels, mec=mec)


def connected_components(m: Mask) -> List[Segment]:
    """
    Split the on-pixels into 8-connected components.

    Args:
        m: Mask

    Returns:
        Segments ordered by minimum row, then minimum column
    """
    labels, count = ndimage.label(m.bits, structure=EIGHT_CONNECTED)
    if count == 0:
        return []

    rows, cols = np.nonzero(labels)
    owner = labels[rows, cols]
    order = np.argsort(owner, kind="stable")
    boundaries = np.flatnonzero(np.diff(owner[order])) + 1
    groups = np.split(order, boundaries)

    segments = [_segment(np.column_stack((cols[g], rows[g])).astype(np.int64)) for g in groups]
    segments.sort(key=lambda s: (s.min_row, s.min_col))
    return segments


def erode_step(m: Mask) -> Mask:
    """
    One majority step: 3x3 all-ones convolution (zero padded), scaled to [0, 1], thresholded at 0.5.

    A pixel is on afterwards iff at least 5 of the 9 pixels in its neighborhood were on. Isolated
    background pixels with 5 or more on-neighbors are switched on.
    """
    total = ndimage.convolve(m.bits.astype(np.int32), KERNEL, mode="constant", cval=0)
    bits = ((total / 9.0) >= MAJORITY).astype(np.uint8)
    return Mask(width=m.width, height=m.height, bits=bits)


def peel_step(m: Mask) -> Mask:
    """Classical 3x3 binary erosion: removes every pixel touching the background or the border."""
    bits = ndimage.binary_erosion(m.bits.astype(bool), structure=EIGHT_CONNECTED, border_value=0)
    return Mask(width=m.width, height=m.height, bits=bits.astype(np.uint8))


def erode_until_stable(
    m: Mask,
    delta_s: float,
    max_iters: int = 64,
    fallback: bool = True,
) -> ErosionResult:
    """
    Erode until every component's MEC radius is below ``delta_s``.

    Components are recomputed after each step. When the majority step leaves the mask
    unchanged and ``fallback`` is set, a boundary layer is peeled instead; without the
    fallback a fixed point ends the loop.

    Args:
        m: Input mask
        delta_s: Stopping radius (px)
        max_iters: Step cap
        fallback: Peel a layer when the majority filter stalls

    Returns:
        ErosionResult; ``exhausted`` is set when radii are still at or above ``delta_s``
    """
    if delta_s <= 0:
        raise ValueError("delta_s must be positive")
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")

    current = m
    segments = connected_components(current)
    iterations = 0
    peels = 0
    exhausted = False

    while segments and any(s.radius >= delta_s for s in segments):
        if iterations >= max_iters:
            exhausted = True
            logger.warning("Erosion iteration cap reached", max_iters=max_iters, largest_radius=max(s.radius for s in segments))
            break
        eroded = erode_step(current)
        if eroded.same_as(current):
            if not fallback:
                exhausted = True
                logger.warning("Majority filter reached a fixed point", iterations=iterations)
                break
            eroded = peel_step(current)
            peels += 1
        current = eroded
        iterations += 1
        segments = connected_components(current)

    if iterations:
        logger.debug("Mask eroded", iterations=iterations, peels=peels, segments=len(segments))
    return ErosionResult(segments=segments, iterations=iterations, peels=peels, exhausted=exhausted, mask=current)


def detect(segments: List[Segment], delta_n: float, frame_index: int, t: float) -> List[Detection]:
    """
    Turn segments into detections, removing those whose radius is below ``delta_n``.

    Args:
        segments: Components of one frame
        delta_n: Noise radius threshold (px)
        frame_index: Frame index
        t: Frame timestamp (s)

    Returns:
        Detections in segment order
    """
    if delta_n <= 0:
        raise ValueError("delta_n must be positive")
    return [
        Detection(center=s.mec.center, radius=s.radius, frame_index=frame_index, t=t)
        for s in segments
        if s.radius >= delta_n
    ]


class FrameDetections(BaseModel):
    """Detections for one frame plus erosion bookkeeping."""

    frame_index: int = Field(..., ge=0, description="Frame index")
    t: float = Field(..., ge=0, description="Frame timestamp (s)")
    detections: List[Detection] = Field(default_factory=list, description="Surviving detections")
    erosion_iterations: int = Field(default=0, ge=0, description="Erosion steps applied")
    exhausted: bool = Field(default=False, description="Erosion hit its cap")


class MaskProcessor:
    """
    Mask processor service.

    Runs erosion and detection on individual frames.
    """

    def __init__(self, hp: HyperParams) -> None:
        """
        Initialize MaskProcessor.

        Args:
            hp: Hyperparameters (delta_s, delta_n, max_erosion_iters, erosion_fallback)
        """
        self.hp = hp

    def process(self, frame: Frame) -> FrameDetections:
        """
        Erode and detect vessels in one frame.

        Args:
            frame: Frame to process

        Returns:
            FrameDetections for the frame
        """
        erosion = erode_until_stable(
            frame.mask,
            delta_s=self.hp.delta_s,
            max_iters=self.hp.max_erosion_iters,
            fallback=self.hp.erosion_fallback,
        )
        detections = detect(erosion.segments, self.hp.delta_n, frame.index, frame.t)
        logger.debug(
            "Frame processed",
            frame_index=frame.index,
            segments=len(erosion.segments),
            detections=len(detections),
        )
        return FrameDetections(
            frame_index=frame.index,
            t=frame.t,
            detections=detections,
            erosion_iterations=erosion.iterations,
            exhausted=erosion.exhausted,
        )
