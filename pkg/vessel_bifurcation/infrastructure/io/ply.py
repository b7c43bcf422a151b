"""ASCII PLY point clouds of pipeline results."""

from pathlib import Path
from typing import List, Tuple

import numpy as np

from vessel_bifurcation.domain.entities.result import PipelineResult

RGB = Tuple[int, int, int]

PALETTE: List[RGB] = [
    (31, 119, 180),
    (255, 127, 14),
    (44, 160, 44),
    (214, 39, 40),
    (148, 103, 189),
    (140, 86, 75),
    (227, 119, 194),
    (127, 127, 127),
    (188, 189, 34),
    (23, 190, 207),
]


def color_for(merged_id: int) -> RGB:
    """Palette color of a merged track."""
    return PALETTE[merged_id % len(PALETTE)]


def _nearest_vertex(vertices: np.ndarray, position: np.ndarray) -> int:
    return int(np.argmin(np.linalg.norm(vertices - position, axis=1)))


def render_ply(result: PipelineResult) -> str:
    """
    ASCII PLY of every track point colored by merged track.

    Bifurcations and needle sites are flagged by comment lines naming the nearest vertex index
    and the marker position.
    """
    rows: List[str] = []
    vertices: List[np.ndarray] = []
    for mt in result.merged_tracks:
        r, g, b = color_for(mt.id)
        for tp in mt.points:
            rows.append(f"{tp.point.x:.6f} {tp.point.y:.6f} {tp.point.z:.6f} {r} {g} {b}")
            vertices.append(tp.point.position)

    comments: List[str] = []
    if vertices:
        cloud = np.array(vertices)
        for i, bif in enumerate(result.bifurcations):
            x, y, z = bif.position
            comments.append(f"comment bifurcation {i} vertex {_nearest_vertex(cloud, bif.p)} {x:.6f} {y:.6f} {z:.6f}")
        for site in result.needle_sites:
            x, y, z = site.position
            comments.append(
                f"comment needle {site.bifurcation_index} vertex {_nearest_vertex(cloud, site.p)} {x:.6f} {y:.6f} {z:.6f}"
            )

    header = [
        "ply",
        "format ascii 1.0",
        *comments,
        f"element vertex {len(rows)}",
        "property float x",
        "property float y",
        "property float z",
        "property uchar red",
        "property uchar green",
        "property uchar blue",
        "end_header",
    ]
    return "\n".join(header + rows) + "\n"


def write_ply(result: PipelineResult, path: "Path | str") -> None:
    """Write the result's point cloud."""
    Path(path).write_text(render_ply(result), encoding="ascii")


def read_ply_vertex_count(path: "Path | str") -> int:
    """Vertex count declared in a PLY header."""
    with Path(path).open(encoding="ascii") as handle:
        for line in handle:
            if line.startswith("element vertex"):
                return int(line.split()[2])
            if line.startswith("end_header"):
                break
    return 0
