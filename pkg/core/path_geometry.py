"""Polygon geometry of the region between a lattice path and its bounding line.

Used only as a cross-check of the integer step rules in path_oracle: shapely
computes the area of the closed polygon and we compare twice that area with
the accumulated step contributions.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple

from shapely.geometry import Polygon

Vertex = Tuple[int, int]


def _twice_area(ring: Sequence[Tuple[float, float]]) -> int:
    if len(ring) < 3:
        return 0
    area = Polygon(ring).area
    twice = round(2 * area)
    if abs(2 * area - twice) > 1e-9:
        raise ValueError(f"region area {area} is not a half-integer")
    return twice


def area_under_path_twice(vertices: Sequence[Vertex]) -> int:
    """Twice the area between the path and the x-axis."""
    if len(vertices) < 2:
        return 0
    x_end = vertices[-1][0]
    ring: List[Tuple[float, float]] = [tuple(v) for v in vertices]
    ring += [(x_end, 0), (vertices[0][0], 0)]
    return _twice_area(ring)


def slope_region_j(vertices: Sequence[Vertex], m: int, n: int, l: int) -> int:
    """Area index j (twice the area) between a path to (nl, ml) and the line ny = mx."""
    return m * n * l * l - area_under_path_twice(vertices)


def strip_region_j(vertices: Sequence[Vertex], f: int, l: int) -> int:
    """Area index j between a path and the line x = f y, capped at height l.

    The path is cut at its first vertex on y = l; the closing edges run along
    y = l back to (fl, l) and down the line to the origin.
    """
    if l == 0:
        return 0
    cut: List[Tuple[float, float]] = []
    for v in vertices:
        cut.append(tuple(v))
        if v[1] == l:
            break
    ring = cut + [(f * l, l), (0, 0)]
    return _twice_area(ring)
