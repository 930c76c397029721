"""Driving testbed: simulator, planner, uncertainty model, DDPG agent and critic targets."""
# Logging level, float64 and jit flags come from the environment; configure them before anything else.
import nn.init_config  # noqa: F401

from .actions import CONTROL_BOUNDS, GOAL_BOUNDS, ActionBounds, ControlAction, GoalAction
