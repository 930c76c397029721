"""Cartesian <-> Frenet conversion against a :class:`ReferenceLine`.

Velocity and acceleration are decomposed with tangential acceleration only::

    sigma_dot  = v cos(dtheta) / (1 - kappa d)     d_dot  = v sin(dtheta)
    sigma_ddot = a cos(dtheta) / (1 - kappa d)     d_ddot = a sin(dtheta)

so the two directions are exact inverses of each other.
"""
import math
from typing import NamedTuple, Optional

from scipy.optimize import brentq

from driving.frenet.errors import OutOfCorridorError, SingularProjectionError
from driving.frenet.reference_line import ReferenceLine, nearest_index
from driving.frenet.state import FrenetState

DEFAULT_CORRIDOR = 20.0


class CartesianPose(NamedTuple):
    x: float
    y: float
    heading: float
    v: float
    a: float


def wrap_angle(angle: float) -> float:
    return (angle + math.pi) % (2.0 * math.pi) - math.pi


def _project(line: ReferenceLine, x: float, y: float, hint: Optional[int]) -> float:
    """Arclength of the foot point of (x, y)."""
    i = nearest_index(line, x, y, hint)
    best_sigma, best_dist = None, math.inf
    for seg in (i - 1, i):
        if seg < 0 or seg > line.n_samples - 2:
            continue

        def tangential_offset(u, seg=seg):
            px, py, heading, _ = line.point_on_segment(seg, u)
            return (x - px) * math.cos(heading) + (y - py) * math.sin(heading)

        f0, f1 = tangential_offset(0.0), tangential_offset(1.0)
        if f0 == 0.0:
            u = 0.0
        elif f1 == 0.0:
            u = 1.0
        elif f0 * f1 < 0.0:
            u = brentq(tangential_offset, 0.0, 1.0, xtol=1e-15, rtol=4 * 2.2e-16)
        else:
            continue
        px, py, _, _ = line.point_on_segment(seg, u)
        dist = math.hypot(x - px, y - py)
        if dist < best_dist:
            best_sigma, best_dist = (seg + u) * line.ds, dist

    if best_sigma is None:
        # Beyond either end of the line: fall back to the nearest sample.
        best_sigma = float(line.s[i])
    return best_sigma


def cartesian_to_frenet(line: ReferenceLine, pose: CartesianPose, corridor: float = DEFAULT_CORRIDOR,
                        hint: Optional[int] = None) -> FrenetState:
    """Project a pose onto the line.

    Args:
        line: Reference line.
        pose: ``(x, y, heading, v, a)``.
        corridor: Largest accepted ``|d|`` in metres.
        hint: Sample index near the expected foot point (for example the previous
            projection), used to search locally before scanning the whole line.

    Raises:
        OutOfCorridorError: ``|d| > corridor``.
        SingularProjectionError: the pose sits at or beyond the curvature centre.
    """
    x, y, heading, v, a = pose
    sigma = _project(line, x, y, hint)
    rx, ry, r_heading, kappa = line.point(sigma)
    d = -(x - rx) * math.sin(r_heading) + (y - ry) * math.cos(r_heading)
    if abs(d) > corridor:
        raise OutOfCorridorError("pose is {:.2f} m from the reference line (corridor {:.2f} m)".format(d, corridor))
    one_minus_kappa_d = 1.0 - kappa * d
    if one_minus_kappa_d <= 0.0:
        raise SingularProjectionError("1 - kappa*d = {:.3g} at sigma={:.2f}".format(one_minus_kappa_d, sigma))

    delta_theta = wrap_angle(heading - r_heading)
    cos_dt, sin_dt = math.cos(delta_theta), math.sin(delta_theta)
    return FrenetState(
        sigma=sigma,
        sigma_dot=v * cos_dt / one_minus_kappa_d,
        sigma_ddot=a * cos_dt / one_minus_kappa_d,
        d=d,
        d_dot=v * sin_dt,
        d_ddot=a * sin_dt,
    )


def frenet_to_cartesian(line: ReferenceLine, fs: FrenetState) -> CartesianPose:
    """Inverse of :func:`cartesian_to_frenet` on its image.

    Raises:
        OutOfRangeError: sigma outside the line.
        SingularProjectionError: ``1 - d * kappa <= 0``.
    """
    rx, ry, r_heading, kappa = line.point(fs.sigma)
    one_minus_kappa_d = 1.0 - kappa * fs.d
    if one_minus_kappa_d <= 0.0:
        raise SingularProjectionError("1 - kappa*d = {:.3g} at sigma={:.2f}".format(one_minus_kappa_d, fs.sigma))

    x = rx - fs.d * math.sin(r_heading)
    y = ry + fs.d * math.cos(r_heading)
    v_tangent = fs.sigma_dot * one_minus_kappa_d
    v = math.hypot(v_tangent, fs.d_dot)
    delta_theta = math.atan2(fs.d_dot, v_tangent) if v > 0.0 else 0.0
    a = fs.sigma_ddot * one_minus_kappa_d * math.cos(delta_theta) + fs.d_ddot * math.sin(delta_theta)
    return CartesianPose(x, y, wrap_angle(r_heading + delta_theta), v, a)
