"""Arclength-parameterised centre lines.

A :class:`ReferenceLine` stores samples spaced exactly ``ds`` apart. Between
samples the position is linear and the (unwrapped) heading and curvature are
interpolated linearly, which is what the projection in ``conversion`` inverts.
"""
import logging
from pathlib import Path
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from driving.frenet.errors import DegenerateInputError, OutOfRangeError

logger = logging.getLogger(__name__)

DEFAULT_DS = 0.5


class ReferenceLine(NamedTuple):
    x: np.ndarray
    y: np.ndarray
    heading: np.ndarray
    curvature: np.ndarray
    s: np.ndarray
    ds: float

    @property
    def length(self) -> float:
        return float(self.s[-1])

    @property
    def n_samples(self) -> int:
        return len(self.s)

    def locate(self, sigma: float) -> Tuple[int, float]:
        """Segment index and fraction for an arclength."""
        if sigma < -1e-9 or sigma > self.length + 1e-9:
            raise OutOfRangeError("sigma {:.3f} outside reference line [0, {:.3f}]".format(sigma, self.length))
        i = min(max(int(np.floor(sigma / self.ds)), 0), self.n_samples - 2)
        return i, sigma / self.ds - i

    def point(self, sigma: float) -> Tuple[float, float, float, float]:
        """``(x, y, heading, curvature)`` at an arclength."""
        i, u = self.locate(sigma)
        return self.point_on_segment(i, u)

    def point_on_segment(self, i: int, u: float) -> Tuple[float, float, float, float]:
        x = self.x[i] + u * (self.x[i + 1] - self.x[i])
        y = self.y[i] + u * (self.y[i + 1] - self.y[i])
        heading = self.heading[i] + u * (self.heading[i + 1] - self.heading[i])
        curvature = self.curvature[i] + u * (self.curvature[i + 1] - self.curvature[i])
        return float(x), float(y), float(heading), float(curvature)


def build_reference_line(waypoints: Sequence[Sequence[float]], ds: float = DEFAULT_DS) -> ReferenceLine:
    """Resample a waypoint polyline every ``ds`` metres.

    Heading and curvature come from central finite differences of the resampled points.

    Raises:
        DegenerateInputError: fewer than two waypoints, duplicate consecutive waypoints,
            non-positive ``ds``, or a polyline shorter than ``ds``.
    """
    pts = np.asarray(waypoints, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or len(pts) < 2:
        raise DegenerateInputError("need at least two (x, y) waypoints, got shape {}".format(pts.shape))
    if not ds > 0:
        raise DegenerateInputError("ds must be positive, got {}".format(ds))

    seg_len = np.hypot(*np.diff(pts, axis=0).T)
    duplicates = np.flatnonzero(seg_len <= 1e-12)
    if len(duplicates):
        raise DegenerateInputError("duplicate consecutive waypoints at index {}".format(int(duplicates[0])))

    cum = np.concatenate([[0.0], np.cumsum(seg_len)])
    n = int(np.floor(cum[-1] / ds + 1e-9)) + 1
    if n < 2:
        raise DegenerateInputError("polyline of length {:.3f} m is shorter than ds={}".format(cum[-1], ds))

    s = np.arange(n) * ds
    x = np.interp(s, cum, pts[:, 0])
    y = np.interp(s, cum, pts[:, 1])
    heading = np.unwrap(np.arctan2(np.gradient(y, ds), np.gradient(x, ds)))
    curvature = np.gradient(heading, ds)
    logger.debug("Reference line: %d samples over %.1f m", n, s[-1])
    return ReferenceLine(x, y, heading, curvature, s, float(ds))


def straight_line(length: float, ds: float = DEFAULT_DS, heading: float = 0.0) -> ReferenceLine:
    end = (length * np.cos(heading), length * np.sin(heading))
    return build_reference_line([(0.0, 0.0), end], ds)


def load_waypoints(file_path: Union[str, Path]) -> np.ndarray:
    """Read ``x y`` pairs, one per line, ``#`` starts a comment."""
    rows = []
    for line_no, line in enumerate(Path(file_path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").split()
        if len(fields) != 2:
            raise DegenerateInputError("{}:{}: expected 'x y', got {!r}".format(file_path, line_no, line))
        rows.append((float(fields[0]), float(fields[1])))
    return np.asarray(rows, dtype=np.float64).reshape(-1, 2)


def line_from_file(file_path: Union[str, Path], ds: float = DEFAULT_DS) -> ReferenceLine:
    return build_reference_line(load_waypoints(file_path), ds)


def nearest_index(line: ReferenceLine, x: float, y: float, hint: Optional[int] = None, window: int = 20) -> int:
    """Nearest sample, searching around ``hint`` first and falling back to the whole line."""
    if hint is not None:
        lo = max(0, hint - window)
        hi = min(line.n_samples, hint + window + 1)
        local = lo + int(np.argmin((line.x[lo:hi] - x) ** 2 + (line.y[lo:hi] - y) ** 2))
        # Inside the window (or at a true end of the line) the local minimum is the answer.
        if lo < local < hi - 1 or local in (0, line.n_samples - 1):
            return local
    return int(np.argmin((line.x - x) ** 2 + (line.y - y) ** 2))
