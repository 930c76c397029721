"""One environment tick and whole evaluation episodes for a run configuration."""
import functools
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from driving.actions import ControlAction, GoalAction
from driving.agent import DdpgAgent, PredictionContext
from driving.frenet import plan_trajectory
from driving.targets import IRP_UP
from driving.uncertainty import EGO, OTHER, NoiseConfig, confidence_ellipse, inflated_dimensions
from driving.world import (EpisodeStatus, RewardBreakdown, WorldState, compute_reward, episode_status, observe,
                           predict_participants, stack_predictions, step_av, step_av_control, step_participants)
from driving.harness.config import RunConfig


class EpisodeResult(NamedTuple):
    rewards: List[RewardBreakdown]
    status: EpisodeStatus
    worlds: List[WorldState]

    @property
    def length(self) -> int:
        return len(self.rewards)

    @property
    def avg_reward_per_step(self) -> float:
        return float(np.mean([r.total for r in self.rewards])) if self.rewards else 0.0


def make_agent(cfg: RunConfig, obs_dim: int) -> DdpgAgent:
    return DdpgAgent(obs_dim, cfg.bounds, cfg.agent)


def observe_for(world: WorldState, cfg: RunConfig) -> np.ndarray:
    """Observation the agent acts on; ``irp_up`` sees footprints inflated by the initial covariances."""
    if cfg.strategy != IRP_UP:
        return observe(world)
    confidence = cfg.noise.confidence
    cov_ego, cov_other = shared_covariances(cfg.noise)
    ego = confidence_ellipse(cov_ego[:2, :2], confidence)
    other = confidence_ellipse(cov_other[:2, :2], confidence)
    av = world.av
    dims = {av.id: inflated_dimensions(av.length, av.width, av.heading, ego)}
    for p in world.participants:
        dims[p.id] = inflated_dimensions(p.length, p.width, p.heading, other)
    return observe(world, dims)


def advance(world: WorldState, action: np.ndarray, cfg: RunConfig) -> WorldState:
    """One tick: participants move, then the AV follows its goal (or control command)."""
    step = cfg.world.step
    moved = step_participants(world, step)
    if cfg.uses_goals:
        goal = GoalAction(*(float(a) for a in action))
        traj = plan_trajectory(world.av.frenet, goal, step, cfg.world.horizon, cfg.world.max_goal_duration)
        return step_av(moved, traj, step)
    return step_av_control(moved, ControlAction(*(float(a) for a in action)), step)


@functools.lru_cache(maxsize=8)
def shared_covariances(noise: NoiseConfig) -> Tuple[np.ndarray, np.ndarray]:
    """Read-only initial ego and participant covariances, one pair per noise configuration."""
    covs = noise.initial_covariance(EGO), noise.initial_covariance(OTHER)
    for cov in covs:
        cov.flags.writeable = False
    return covs


def prediction_context(world: WorldState, next_world: WorldState, cfg: RunConfig) -> Optional[PredictionContext]:
    """Context stored with a transition for the predicted-return targets, ``None`` for one-step TD."""
    spec = cfg.target_spec
    if not spec.needs_context:
        return None
    predictions = stack_predictions(predict_participants(world, spec.horizon, spec.step), spec.n_steps)
    if spec.strategy == IRP_UP:
        return PredictionContext.capture(world, next_world, predictions, *shared_covariances(cfg.noise))
    return PredictionContext.capture(world, next_world, predictions)


def greedy_action(agent: DdpgAgent, actor, obs: np.ndarray) -> np.ndarray:
    """Noise-free physical action."""
    return agent.bounds.from_unit(agent.policy_unit(actor, obs)[0])


def run_episode(agent: DdpgAgent, actor, world: WorldState, cfg: RunConfig) -> EpisodeResult:
    """Drive one episode with the noise-free policy until it ends."""
    worlds = [world]
    rewards = []
    status = episode_status(world)
    while not status.ends_episode:
        action = greedy_action(agent, actor, observe_for(world, cfg))
        next_world = advance(world, action, cfg)
        rewards.append(compute_reward(world, next_world))
        status = episode_status(next_world)
        worlds.append(next_world)
        world = next_world
    return EpisodeResult(rewards, status, worlds)
