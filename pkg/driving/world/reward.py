"""Per-step driving reward.

Weighted penalties on lateral/longitudinal acceleration and jerk, on the offset
from the target lane centre and on the deviation from the desired speed, plus a
collision term that is negative on a hit and slightly positive otherwise.
"""
from typing import NamedTuple, Optional

from driving.world.collision import collides_with_any
from driving.world.errors import TimeMismatchError
from driving.world.state import WorldState

TIME_TOL = 1e-9


class RewardBreakdown(NamedTuple):
    lat_acc: float
    lat_jerk: float
    long_acc: float
    long_jerk: float
    lateral_dev: float
    speed_dev: float
    collision: float
    total: float


def compute_reward(s: WorldState, s_next: WorldState, collided: Optional[bool] = None) -> RewardBreakdown:
    """Reward of the transition ``s -> s_next``.

    Accelerations are taken from the next AV state, jerks from the change of
    acceleration across the step.

    Args:
        s: World before the step.
        s_next: World one step later.
        collided: Collision outcome to use instead of the exact check on ``s_next``
            (used with inflated footprints).

    Raises:
        TimeMismatchError: ``s_next.time != s.time + step``.
    """
    config = s.config
    step = config.step
    if abs(s_next.time - s.time - step) > TIME_TOL:
        raise TimeMismatchError("expected t={:.6f}, got t={:.6f}".format(s.time + step, s_next.time))
    w = config.weights
    prev, nxt = s.av.frenet, s_next.av.frenet
    if collided is None:
        collided = collides_with_any(s_next.av, s_next.participants)

    lat_acc = w.lat_acc * abs(nxt.d_ddot)
    lat_jerk = w.lat_jerk * abs(nxt.d_ddot - prev.d_ddot) / step
    long_acc = w.long_acc * abs(nxt.sigma_ddot)
    long_jerk = w.long_jerk * abs(nxt.sigma_ddot - prev.sigma_ddot) / step
    lateral_dev = w.lateral_dev * abs(nxt.d)
    speed_dev = w.speed_dev * abs(nxt.speed - config.v_des)
    collision = w.collision_hit if collided else w.collision_free
    total = lat_acc + lat_jerk + long_acc + long_jerk + lateral_dev + speed_dev + collision
    return RewardBreakdown(lat_acc, lat_jerk, long_acc, long_jerk, lateral_dev, speed_dev, collision, total)
