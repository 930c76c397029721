"""The simulator pieces a predicted rollout is built from.

Bundled as callables so tests can swap in hand-made planners or rewards.
"""
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from driving.actions import GoalAction
from driving.frenet import DEFAULT_MAX_DURATION, FrenetState, PlannedTrajectory, plan_trajectory
from driving.world import (RewardBreakdown, VehicleState, WorldState, collides_with_any, compute_reward,
                           observe)


class WorldModel(NamedTuple):
    plan: Callable[[FrenetState, np.ndarray, float, float], PlannedTrajectory]
    reward: Callable[[WorldState, WorldState, Optional[bool]], RewardBreakdown]
    observe: Callable[..., np.ndarray]
    collide: Callable[[VehicleState, Sequence[VehicleState]], bool]


def default_world_model(max_goal_duration: float = DEFAULT_MAX_DURATION) -> WorldModel:
    def plan(fs: FrenetState, action: np.ndarray, step: float, horizon: float) -> PlannedTrajectory:
        return plan_trajectory(fs, GoalAction(*(float(a) for a in action)), step, horizon, max_goal_duration)

    return WorldModel(plan=plan, reward=compute_reward, observe=observe, collide=collides_with_any)
