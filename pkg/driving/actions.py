"""Agent action types shared by the planner, the simulator and the agent."""
from typing import NamedTuple, Sequence

import numpy as np


class GoalAction(NamedTuple):
    """Goal of the next trajectory in the road frame.

    ``sigma_target`` is the longitudinal advance relative to the current position.
    """
    T_target: float
    d_target: float
    sigma_target: float
    sigma_dot_target: float

    def as_array(self) -> np.ndarray:
        return np.asarray(self, dtype=np.float64)


class ControlAction(NamedTuple):
    """Direct control command used by the control-command baseline."""
    steer: float
    accel: float

    def as_array(self) -> np.ndarray:
        return np.asarray(self, dtype=np.float64)


class ActionBounds(NamedTuple):
    low: np.ndarray
    high: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.low)

    def contains(self, values: Sequence[float]) -> bool:
        values = np.asarray(values, dtype=np.float64)
        return bool(np.all(values >= self.low) and np.all(values <= self.high))

    def from_unit(self, y: np.ndarray) -> np.ndarray:
        """Map values in [-1, 1] to the physical range; -1 and +1 land exactly on the bounds."""
        u = (np.clip(np.asarray(y, dtype=np.float64), -1.0, 1.0) + 1.0) / 2.0
        return self.low * (1.0 - u) + self.high * u

    def to_unit(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=np.float64)
        return 2.0 * (values - self.low) / (self.high - self.low) - 1.0


GOAL_BOUNDS = ActionBounds(
    low=np.array([1.0, -5.25, 1.0, 0.0]),
    high=np.array([4.0, 5.25, 50.0, 16.7]),
)

CONTROL_BOUNDS = ActionBounds(
    low=np.array([-0.5, -6.0]),
    high=np.array([0.5, 3.0]),
)
