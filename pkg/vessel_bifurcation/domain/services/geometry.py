"""Geometric primitives: minimum enclosing circles, 3D line fits, closest points between lines."""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from vessel_bifurcation.domain.entities.geometry import Circle2, ClosestPoints, Line3, Point2, Point3
from vessel_bifurcation.domain.exceptions import DegeneratePointSetError, EmptyInputError

# Above this many points the circle is computed on the convex hull vertices only.
HULL_THRESHOLD = 512
MEC_SEED = 0
DEFAULT_EPS_I = 1e-9

_Circle = Tuple[float, float, float]
_XY = Tuple[float, float]

Points2 = Union[Sequence[Point2], np.ndarray]
Points3 = Union[Sequence[Point3], np.ndarray]


def _as_xy(points: Points2) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 2)
    return np.array([(p.x, p.y) for p in points], dtype=float).reshape(-1, 2)


def _as_xyz(points: Points3) -> np.ndarray:
    if isinstance(points, np.ndarray):
        return np.asarray(points, dtype=float).reshape(-1, 3)
    return np.array([(p.x, p.y, p.z) for p in points], dtype=float).reshape(-1, 3)


def _inside(c: Optional[_Circle], p: _XY) -> bool:
    return c is not None and math.hypot(p[0] - c[0], p[1] - c[1]) <= c[2] * (1 + 1e-12) + 1e-12


def _diameter(a: _XY, b: _XY) -> _Circle:
    cx = (a[0] + b[0]) / 2.0
    cy = (a[1] + b[1]) / 2.0
    return cx, cy, max(math.hypot(cx - a[0], cy - a[1]), math.hypot(cx - b[0], cy - b[1]))


def _circumcircle(a: _XY, b: _XY, c: _XY) -> Optional[_Circle]:
    # Shift to the bounding-box center to limit cancellation.
    ox = (min(a[0], b[0], c[0]) + max(a[0], b[0], c[0])) / 2.0
    oy = (min(a[1], b[1], c[1]) + max(a[1], b[1], c[1])) / 2.0
    ax, ay = a[0] - ox, a[1] - oy
    bx, by = b[0] - ox, b[1] - oy
    cx, cy = c[0] - ox, c[1] - oy
    d = (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by)) * 2.0
    if d == 0.0:
        return None
    x = ox + ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d
    y = oy + ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d
    r = max(math.hypot(x - a[0], y - a[1]), math.hypot(x - b[0], y - b[1]), math.hypot(x - c[0], y - c[1]))
    return x, y, r


def _cross(o: _XY, a: _XY, b: _XY) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _circle_two_boundary(points: List[_XY], p: _XY, q: _XY) -> _Circle:
    circ = _diameter(p, q)
    left: Optional[_Circle] = None
    right: Optional[_Circle] = None
    for r in points:
        if _inside(circ, r):
            continue
        side = _cross(p, q, r)
        c = _circumcircle(p, q, r)
        if c is None:
            continue
        if side > 0.0 and (left is None or _cross(p, q, (c[0], c[1])) > _cross(p, q, (left[0], left[1]))):
            left = c
        elif side < 0.0 and (right is None or _cross(p, q, (c[0], c[1])) < _cross(p, q, (right[0], right[1]))):
            right = c
    if left is None and right is None:
        return circ
    if left is None:
        return right  # type: ignore[return-value]
    if right is None:
        return left
    return left if left[2] <= right[2] else right


def _circle_one_boundary(points: List[_XY], p: _XY) -> _Circle:
    c: _Circle = (p[0], p[1], 0.0)
    for i, q in enumerate(points):
        if not _inside(c, q):
            if c[2] == 0.0:
                c = _diameter(p, q)
            else:
                c = _circle_two_boundary(points[: i + 1], p, q)
    return c


def _hull_reduce(xy: np.ndarray) -> np.ndarray:
    try:
        hull = ConvexHull(xy)
    except (QhullError, ValueError):
        # Collinear or otherwise flat sets: keep everything.
        return xy
    return xy[np.sort(hull.vertices)]


def min_enclosing_circle(points: Points2, seed: int = MEC_SEED) -> Circle2:
    """
    Smallest circle covering all points (randomized incremental Welzl).

    The shuffle is seeded, so the result is deterministic for a fixed input order.

    Args:
        points: Point2 sequence or (N, 2) array of (x, y)
        seed: Shuffle seed

    Returns:
        Circle2 covering every point

    Raises:
        EmptyInputError: If no points are given
    """
    xy = _as_xy(points)
    if len(xy) == 0:
        raise EmptyInputError("no points")
    if len(xy) > HULL_THRESHOLD:
        xy = _hull_reduce(xy)

    order = np.random.default_rng(seed).permutation(len(xy))
    shuffled: List[_XY] = [(float(x), float(y)) for x, y in xy[order]]

    c: Optional[_Circle] = None
    for i, p in enumerate(shuffled):
        if c is None or not _inside(c, p):
            c = _circle_one_boundary(shuffled[: i + 1], p)
    assert c is not None
    return Circle2(center=Point2(x=c[0], y=c[1]), radius=c[2])


def fit_line3(points: Points3) -> Line3:
    """
    Least-squares 3D line through a point set.

    The anchor is the mean of the points and the direction the dominant eigenvector of the
    covariance of mean-centered positions, signed so its largest-magnitude component is positive.

    Args:
        points: Point3 sequence or (N, 3) array

    Returns:
        Fitted Line3

    Raises:
        EmptyInputError: If no points are given
        DegeneratePointSetError: If all points coincide
    """
    xyz = _as_xyz(points)
    if len(xyz) == 0:
        raise EmptyInputError("no points")
    if len(xyz) < 2 or float(np.ptp(xyz, axis=0).max()) == 0.0:
        raise DegeneratePointSetError(point_count=len(xyz))

    anchor = xyz.mean(axis=0)
    centered = xyz - anchor
    covariance = centered.T @ centered / len(xyz)
    _, eigenvectors = np.linalg.eigh(covariance)
    direction = eigenvectors[:, -1]
    direction = direction / np.linalg.norm(direction)
    if direction[int(np.argmax(np.abs(direction)))] < 0:
        direction = -direction
    return Line3.through(anchor, direction)


def closest_points(a: Line3, b: Line3, eps_i: float = DEFAULT_EPS_I) -> ClosestPoints:
    """
    Closest points between two lines in closed form.

    Solves the 2x2 normal equations of argmin ||P1(t1) - P2(t2)||^2 with the general
    ||V||^2 terms. The lines are parallel when the determinant magnitude is at most ``eps_i``.

    Args:
        a: First line
        b: Second line
        eps_i: Parallel tolerance on the determinant

    Returns:
        ClosestPoints; for parallel lines only ``distance`` (between the lines) is set
    """
    s1, v1, s2, v2 = a.s, a.v, b.s, b.v
    v11 = float(v1 @ v1)
    v22 = float(v2 @ v2)
    v12 = float(v1 @ v2)
    denominator = v12 * v12 - v11 * v22
    d = s2 - s1

    if abs(denominator) <= eps_i:
        perpendicular = d - (float(d @ v1) / v11) * v1
        return ClosestPoints(distance=float(np.linalg.norm(perpendicular)), parallel=True)

    r1 = float(d @ v1)
    r2 = float(d @ v2)
    t1 = (-v22 * r1 + v12 * r2) / denominator
    t2 = (-v12 * r1 + v11 * r2) / denominator
    p1 = s1 + t1 * v1
    p2 = s2 + t2 * v2
    return ClosestPoints(
        t1_star=t1,
        t2_star=t2,
        p1=(float(p1[0]), float(p1[1]), float(p1[2])),
        p2=(float(p2[0]), float(p2[1]), float(p2[2])),
        distance=float(np.linalg.norm(p1 - p2)),
        parallel=False,
    )


def acute_angle_deg(a: Line3, b: Line3) -> float:
    """Acute angle between two lines in degrees, in [0, 90]."""
    cosine = abs(float(a.v @ b.v)) / (float(np.linalg.norm(a.v)) * float(np.linalg.norm(b.v)))
    return float(np.degrees(np.arccos(min(1.0, cosine))))
