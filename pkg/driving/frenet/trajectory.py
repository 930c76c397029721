"""Goal-directed trajectories sampled every planning step."""
import logging
from typing import NamedTuple, Optional

import numpy as np

from driving.actions import GoalAction
from driving.frenet.errors import InvalidDurationError, NonDivisibleStepError
from driving.frenet.quintic import evaluate_state, quintic_coeffs
from driving.frenet.state import FRENET_FIELDS, FrenetState

logger = logging.getLogger(__name__)

DEFAULT_MAX_DURATION = 4.0
STEP_TOLERANCE = 1e-9


class PlannedTrajectory(NamedTuple):
    """States at ``t + step, t + 2 step, ..., t + horizon``.

    ``states`` has one row per sample, columns in ``FRENET_FIELDS`` order.
    """
    step: float
    horizon: float
    states: np.ndarray
    source_action: Optional[GoalAction]

    def __len__(self) -> int:
        return len(self.states)

    def state(self, k: int) -> FrenetState:
        return FrenetState.from_array(self.states[k])

    def column(self, name: str) -> np.ndarray:
        return self.states[:, FRENET_FIELDS.index(name)]


def horizon_steps(step: float, horizon: float) -> int:
    """Number of samples ``horizon / step``.

    Raises:
        InvalidDurationError: non-positive step or horizon.
        NonDivisibleStepError: the horizon is not a whole number of steps within 1e-9 s.
    """
    if not step > 0 or not horizon > 0:
        raise InvalidDurationError("step and horizon must be positive, got step={} horizon={}".format(step, horizon))
    n = int(round(horizon / step))
    if n < 1 or abs(n * step - horizon) > STEP_TOLERANCE:
        raise NonDivisibleStepError("horizon {} s is not a multiple of step {} s".format(horizon, step))
    return n


def plan_trajectory(fs: FrenetState, action: GoalAction, step: float, horizon: float,
                    max_duration: float = DEFAULT_MAX_DURATION) -> PlannedTrajectory:
    """Plan lateral and longitudinal quintics toward a goal and sample them.

    The lateral polynomial ends at ``(d_target, 0, 0)`` and the longitudinal one at
    ``(sigma + sigma_target, sigma_dot_target, 0)``, both after ``T_target`` seconds.
    Past ``T_target`` the trajectory keeps ``d = d_target`` and moves on at the
    constant speed ``sigma_dot_target``.

    Args:
        fs: Current state.
        action: Goal tuple, ``sigma_target`` relative to ``fs.sigma``.
        step: Sampling step in seconds.
        horizon: Planning horizon in seconds, a multiple of ``step``.
        max_duration: Largest accepted ``T_target``.

    Raises:
        InvalidDurationError: ``T_target`` outside ``[step, max_duration]``.
        NonDivisibleStepError: ``horizon`` is not a multiple of ``step``.
    """
    n = horizon_steps(step, horizon)
    T_target = float(action.T_target)
    if T_target < step - STEP_TOLERANCE or T_target > max_duration + STEP_TOLERANCE:
        raise InvalidDurationError("T_target {} s outside [{}, {}]".format(T_target, step, max_duration))

    lateral = quintic_coeffs((fs.d, fs.d_dot, fs.d_ddot), (action.d_target, 0.0, 0.0), T_target)
    sigma_end = fs.sigma + action.sigma_target
    longitudinal = quintic_coeffs((fs.sigma, fs.sigma_dot, fs.sigma_ddot),
                                  (sigma_end, action.sigma_dot_target, 0.0), T_target)

    t = np.arange(1, n + 1) * step
    inside = t <= T_target + 1e-12
    t_in = t[inside]
    t_after = t[~inside] - T_target

    states = np.empty((n, len(FRENET_FIELDS)))
    sigma, sigma_dot, sigma_ddot = evaluate_state(longitudinal, t_in)
    d, d_dot, d_ddot = evaluate_state(lateral, t_in)
    states[inside] = np.stack([sigma, sigma_dot, sigma_ddot, d, d_dot, d_ddot], axis=1)

    states[~inside, 0] = sigma_end + action.sigma_dot_target * t_after
    states[~inside, 1] = action.sigma_dot_target
    states[~inside, 2] = 0.0
    states[~inside, 3] = action.d_target
    states[~inside, 4] = 0.0
    states[~inside, 5] = 0.0
    return PlannedTrajectory(float(step), float(horizon), states, action)


def continuation_goal(fs: FrenetState, T_target: float) -> GoalAction:
    """Goal that keeps the current lateral offset and speed."""
    return GoalAction(T_target, fs.d, fs.sigma_dot * T_target, fs.sigma_dot)
