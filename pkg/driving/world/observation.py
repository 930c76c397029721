"""Flat, normalised observation vector.

Layout: an AV block ``(d, d_dot, d_ddot, sigma_dot, sigma_ddot, theta, speed_limit, l, w)``
followed by ``n_max`` participant blocks ``(sigma_rel, d, theta, l, w, v_sigma, v_d, valid)``
ordered by ``|sigma_rel|``. Missing participants are all zeros.
"""
from typing import Dict, Optional, Tuple

import numpy as np

from driving.world.state import VehicleState, WorldState

AV_FEATURES = 9
PARTICIPANT_FEATURES = 8

LATERAL_SCALE = 3.5
LONGITUDINAL_SCALE = 50.0
SPEED_SCALE = 15.0
ACCEL_SCALE = 3.0
ANGLE_SCALE = np.pi / 4
LENGTH_SCALE = 5.0
WIDTH_SCALE = 2.0

Dims = Dict[int, Tuple[float, float]]


def observation_size(n_max: int) -> int:
    return AV_FEATURES + PARTICIPANT_FEATURES * n_max


def _dims(vehicle: VehicleState, dims: Optional[Dims]) -> Tuple[float, float]:
    if dims is not None and vehicle.id in dims:
        return dims[vehicle.id]
    return vehicle.length, vehicle.width


def observe(world: WorldState, dims: Optional[Dims] = None) -> np.ndarray:
    """Observation of ``world``.

    Args:
        world: World to observe.
        dims: Optional ``id -> (length, width)`` overrides, for example footprints
            inflated by position uncertainty. The AV has id 0.
    """
    n_max = world.config.n_max
    obs = np.zeros(observation_size(n_max))
    av = world.av.frenet
    av_l, av_w = _dims(world.av, dims)
    obs[:AV_FEATURES] = (
        av.d / LATERAL_SCALE,
        av.d_dot / SPEED_SCALE,
        av.d_ddot / ACCEL_SCALE,
        av.sigma_dot / SPEED_SCALE,
        av.sigma_ddot / ACCEL_SCALE,
        world.av.heading / ANGLE_SCALE,
        world.road.speed_limit / SPEED_SCALE,
        av_l / LENGTH_SCALE,
        av_w / WIDTH_SCALE,
    )
    if not world.participants:
        return obs

    rel = np.array([p.frenet.sigma - av.sigma for p in world.participants])
    order = np.argsort(np.abs(rel), kind="stable")[:n_max]
    for slot, i in enumerate(order):
        p = world.participants[i]
        l, w = _dims(p, dims)
        start = AV_FEATURES + slot * PARTICIPANT_FEATURES
        obs[start:start + PARTICIPANT_FEATURES] = (
            rel[i] / LONGITUDINAL_SCALE,
            p.frenet.d / LATERAL_SCALE,
            p.heading / ANGLE_SCALE,
            l / LENGTH_SCALE,
            w / WIDTH_SCALE,
            p.frenet.sigma_dot / SPEED_SCALE,
            p.frenet.d_dot / SPEED_SCALE,
            1.0,
        )
    return obs

