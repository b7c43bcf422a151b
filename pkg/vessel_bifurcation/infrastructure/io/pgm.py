"""Binary PGM (P5) codec for masks, on top of OpenCV."""

from pathlib import Path

import cv2
import numpy as np

from vessel_bifurcation.domain.entities.mask import Mask
from vessel_bifurcation.infrastructure.exceptions import ExportError, InvalidDataError

ON_VALUE = 255


def _to_mask(samples: "np.ndarray | None", source: str) -> Mask:
    if samples is None or samples.size == 0:
        raise InvalidDataError(f"unreadable PGM image: {source}")
    if samples.ndim != 2:
        raise InvalidDataError(f"PGM image is not single-channel: {source}", data={"shape": samples.shape})
    # Samples at or above half the dtype range are on (>= 128 for 8-bit).
    threshold = (int(np.iinfo(samples.dtype).max) + 1) // 2
    return Mask.from_array(samples >= threshold)


def _to_samples(mask: Mask) -> np.ndarray:
    return mask.bits.astype(np.uint8) * ON_VALUE


def decode_pgm(raw: bytes) -> Mask:
    """
    Decode PGM bytes into a mask.

    Raises:
        InvalidDataError: If OpenCV cannot decode the bytes
    """
    try:
        samples = cv2.imdecode(np.frombuffer(raw, dtype=np.uint8), cv2.IMREAD_UNCHANGED)
    except cv2.error as e:
        raise InvalidDataError(f"unreadable PGM image: {e}") from e
    return _to_mask(samples, "<bytes>")


def encode_pgm(mask: Mask) -> bytes:
    """Encode a mask as binary PGM with values 0 and 255."""
    ok, buffer = cv2.imencode(".pgm", _to_samples(mask), [cv2.IMWRITE_PXM_BINARY, 1])
    if not ok:
        raise ExportError("OpenCV failed to encode the mask")
    return buffer.tobytes()


def read_pgm(path: "Path | str") -> Mask:
    """Read a mask from a PGM file."""
    samples = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    return _to_mask(samples, str(path))


def write_pgm(mask: Mask, path: "Path | str") -> None:
    """Write a mask to a binary PGM file."""
    if not cv2.imwrite(str(path), _to_samples(mask), [cv2.IMWRITE_PXM_BINARY, 1]):
        raise ExportError("OpenCV failed to write the mask", path=path)
