"""Rectangle (+) ellipse footprints.

The sum is approximated from outside by intersecting support half-planes
``u.x <= h_rect(u) + h_ellipse(u)``: one per rectangle edge normal and
``arc_samples`` more fanned across each rounded corner. Every half-plane
contains the exact sum, so the polygon does too.
"""
from typing import NamedTuple, Tuple

import numpy as np

from driving.geometry import Rectangle, polygon_area, separating_axis_overlap
from driving.uncertainty.ellipse import Ellipse

DEFAULT_ARC_SAMPLES = 4
DUPLICATE_TOL = 1e-12


class InflatedFootprint(NamedTuple):
    vertices: np.ndarray
    rect: Rectangle
    ellipse: Ellipse

    @property
    def area(self) -> float:
        return polygon_area(self.vertices)


def support_directions(heading: float, arc_samples: int = DEFAULT_ARC_SAMPLES) -> np.ndarray:
    """Unit directions in counter-clockwise order, starting at the right-side edge normal."""
    per_quadrant = np.arange(arc_samples + 1) * (np.pi / 2) / (arc_samples + 1)
    angles = heading - np.pi / 2 + np.concatenate([per_quadrant + k * np.pi / 2 for k in range(4)])
    return np.stack([np.cos(angles), np.sin(angles)], axis=1)


def rectangle_support(rect: Rectangle, directions: np.ndarray) -> np.ndarray:
    along = np.array([np.cos(rect.heading), np.sin(rect.heading)])
    across = np.array([-along[1], along[0]])
    center = np.array([rect.center_x, rect.center_y])
    return (directions @ center
            + 0.5 * rect.length * np.abs(directions @ along)
            + 0.5 * rect.width * np.abs(directions @ across))


def minkowski_inflate(rect: Rectangle, ellipse: Ellipse, arc_samples: int = DEFAULT_ARC_SAMPLES) -> InflatedFootprint:
    """Conservative polygon for ``rect (+) ellipse``.

    A zero ellipse returns the rectangle corners unchanged.
    """
    if ellipse.a == 0.0 and ellipse.b == 0.0:
        return InflatedFootprint(rect.corners(), rect, ellipse)

    directions = support_directions(rect.heading, arc_samples)
    offsets = rectangle_support(rect, directions) + ellipse.support(directions)

    nxt = np.roll(np.arange(len(directions)), -1)
    vertices = np.empty_like(directions)
    for i, j in enumerate(nxt):
        vertices[i] = np.linalg.solve(np.stack([directions[i], directions[j]]), [offsets[i], offsets[j]])

    keep = np.linalg.norm(vertices - np.roll(vertices, 1, axis=0), axis=1) > DUPLICATE_TOL
    if not np.any(keep):
        keep[0] = True
    return InflatedFootprint(vertices[keep], rect, ellipse)


def inflated_dimensions(length: float, width: float, heading: float, ellipse: Ellipse) -> Tuple[float, float]:
    """Length and width of the footprint's bounding box in the vehicle frame."""
    along = np.array([[np.cos(heading), np.sin(heading)]])
    across = np.array([[-np.sin(heading), np.cos(heading)]])
    return (float(length + 2.0 * ellipse.support(along)[0]),
            float(width + 2.0 * ellipse.support(across)[0]))


def collision_with_uncertainty(fp_a: InflatedFootprint, fp_b: InflatedFootprint) -> bool:
    """Separating-axis overlap test over both footprints' edge normals."""
    return separating_axis_overlap(fp_a.vertices, fp_b.vertices)
