"""Planar convex-polygon helpers shared by exact and uncertainty-aware collision checks.

Polygons are ``(n, 2)`` arrays of vertices in counter-clockwise order.
"""
from typing import NamedTuple

import numpy as np


class Rectangle(NamedTuple):
    """Oriented rectangle: ``length`` along ``heading``, ``width`` across it."""
    length: float
    width: float
    center_x: float
    center_y: float
    heading: float

    def corners(self) -> np.ndarray:
        return rectangle_corners(self.center_x, self.center_y, self.length, self.width, self.heading)


def rectangle_corners(center_x: float, center_y: float, length: float, width: float, heading: float) -> np.ndarray:
    """Corners of an oriented rectangle, counter-clockwise starting at the rear right."""
    c, s = np.cos(heading), np.sin(heading)
    half = np.array([[-length, -width], [length, -width], [length, width], [-length, width]]) / 2.0
    rotation = np.array([[c, -s], [s, c]])
    return half @ rotation.T + np.array([center_x, center_y])


def edge_normals(vertices: np.ndarray) -> np.ndarray:
    """Unit outward normals, one per edge ``vertices[i] -> vertices[i + 1]``."""
    edges = np.roll(vertices, -1, axis=0) - vertices
    normals = np.stack([edges[:, 1], -edges[:, 0]], axis=1)
    lengths = np.linalg.norm(normals, axis=1)
    return normals[lengths > 1e-12] / lengths[lengths > 1e-12, None]


def separating_axis_overlap(vertices_a: np.ndarray, vertices_b: np.ndarray) -> bool:
    """True if two convex polygons overlap or touch.

    Projects both polygons on every edge normal of either polygon; any axis with
    disjoint projection intervals separates them.
    """
    axes = np.concatenate([edge_normals(vertices_a), edge_normals(vertices_b)])
    proj_a = vertices_a @ axes.T
    proj_b = vertices_b @ axes.T
    separated = (proj_a.min(axis=0) > proj_b.max(axis=0)) | (proj_b.min(axis=0) > proj_a.max(axis=0))
    return not bool(np.any(separated))


def polygon_area(vertices: np.ndarray) -> float:
    """Signed shoelace area, positive for counter-clockwise order."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))


def contains_points(vertices: np.ndarray, points: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Mask of points inside (or within ``tol`` of) a counter-clockwise convex polygon."""
    points = np.atleast_2d(points)
    edges = np.roll(vertices, -1, axis=0) - vertices
    rel = points[:, None, :] - vertices[None, :, :]
    cross = edges[None, :, 0] * rel[:, :, 1] - edges[None, :, 1] * rel[:, :, 0]
    scale = np.linalg.norm(edges, axis=1)[None, :]
    return np.all(cross >= -tol * np.maximum(scale, 1.0), axis=1)


def is_convex(vertices: np.ndarray, tol: float = 1e-12) -> bool:
    edges = np.roll(vertices, -1, axis=0) - vertices
    nxt = np.roll(edges, -1, axis=0)
    turns = edges[:, 0] * nxt[:, 1] - edges[:, 1] * nxt[:, 0]
    return bool(np.all(turns >= -tol))
