"""Predicted rollouts behind the reward-prediction critic targets.

A rollout replays one stored transition forward over the planning horizon. The
first step is the realised transition itself (received reward, stored next
observation). Every later step merges a predicted AV state with the participants'
predictions made when the action was taken:

* ``rp`` samples the AV from the single trajectory planned for the stored action;
* ``irp`` asks the target actor for a new goal on the previous merged observation
  and advances the AV one step along the freshly planned trajectory;
* ``irp_up`` is ``irp`` with position covariances propagated every step and every
  footprint inflated by its confidence ellipse, for both the collision term and
  the observed vehicle dimensions.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from driving.agent import Bootstrap, MissingContextError, PredictionContext, ReplayTransition
from driving.frenet import FrenetState
from driving.uncertainty import (EGO, OTHER, ZERO_ELLIPSE, Ellipse, InflatedFootprint, NoiseModel,
                                 collision_with_uncertainty, confidence_ellipse, inflated_dimensions,
                                 make_noise_model, minkowski_inflate, propagate_covariance)
from driving.world import (WorldState, is_off_course, participants_at, reached_goal, vehicle_rectangle,
                           vehicle_with_frenet)
from driving.targets.decorators import rollout_debug_decorator
from driving.targets.spec import IRP_UP, PREDICTIVE, RP, TargetSpec
from driving.targets.world_model import WorldModel, default_world_model

logger = logging.getLogger(__name__)


class RolloutStep(NamedTuple):
    """One predicted step ``tau`` seconds after the stored action was taken.

    ``collided`` uses the footprints of the rollout's strategy (inflated for
    ``irp_up``); ``terminal`` also covers reaching the goal and leaving the road.
    Covariances are only set for ``irp_up``.
    """
    tau: float
    world: WorldState
    obs: np.ndarray
    reward: float
    collided: bool
    terminal: bool
    av_footprint: InflatedFootprint
    participant_footprints: Tuple[InflatedFootprint, ...]
    cov_ego: Optional[np.ndarray] = None
    cov_other: Optional[np.ndarray] = None


class PredictedRollout(NamedTuple):
    """All ``horizon / step`` predicted steps of one transition.

    ``terminal_index`` is the index of the first terminal step (``0`` when the
    stored transition is already terminal) or ``len(steps)`` when the horizon is
    reached without one; rewards after it are not accumulated and the bootstrap
    is dropped.
    """
    steps: Tuple[RolloutStep, ...]
    bootstrap_obs: np.ndarray
    bootstrap_action: np.ndarray
    terminal_index: int

    @property
    def rewards(self) -> np.ndarray:
        return np.array([s.reward for s in self.steps], dtype=np.float64)

    @property
    def collision_flags(self) -> np.ndarray:
        return np.array([s.collided for s in self.steps], dtype=bool)


class _Uncertainty(NamedTuple):
    cov_ego: np.ndarray
    cov_other: np.ndarray
    ego: Ellipse
    other: Ellipse


def _check_context(tr: ReplayTransition, strategy: str) -> PredictionContext:
    if tr.ctx is None:
        raise MissingContextError("{} targets need transitions stored with a prediction context".format(strategy))
    if strategy == IRP_UP and (tr.ctx.cov_ego is None or tr.ctx.cov_other is None):
        raise MissingContextError("irp_up targets need the initial ego and participant covariances")
    return tr.ctx


def _uncertainty(cov_ego: np.ndarray, cov_other: np.ndarray, confidence: float) -> _Uncertainty:
    return _Uncertainty(cov_ego, cov_other, confidence_ellipse(cov_ego[:2, :2], confidence),
                        confidence_ellipse(cov_other[:2, :2], confidence))


def _footprints(world: WorldState, ego: Ellipse, other: Ellipse,
                arc_samples: int) -> Tuple[InflatedFootprint, Tuple[InflatedFootprint, ...]]:
    av = minkowski_inflate(vehicle_rectangle(world.av), ego, arc_samples)
    participants = tuple(minkowski_inflate(vehicle_rectangle(p), other, arc_samples) for p in world.participants)
    return av, participants


def _inflated_dims(world: WorldState, unc: _Uncertainty) -> Dict[int, Tuple[float, float]]:
    av = world.av
    dims = {av.id: inflated_dimensions(av.length, av.width, av.heading, unc.ego)}
    for p in world.participants:
        dims[p.id] = inflated_dimensions(p.length, p.width, p.heading, unc.other)
    return dims


def _merged_world(prev: WorldState, ctx: PredictionContext, av_row: np.ndarray, k: int, step: float) -> WorldState:
    """AV moved to ``av_row`` and participants to their prediction for step ``k``."""
    road = ctx.road
    av = vehicle_with_frenet(prev.av, FrenetState.from_array(av_row), road)
    n_predicted = ctx.predictions.shape[1] if ctx.predictions.ndim == 3 else 0
    if ctx.participants and n_predicted:
        participants = participants_at(ctx.participants, ctx.predictions[:, min(k, n_predicted - 1)], road)
    else:
        participants = ctx.participants
    return prev._replace(time=prev.time + step, av=av, participants=participants)


class _Track:
    """Mutable per-transition bookkeeping while a batch of rollouts is built."""

    def __init__(self, tr: ReplayTransition, ctx: PredictionContext):
        self.tr = tr
        self.ctx = ctx
        self.steps: List[RolloutStep] = []
        self.plan = None
        self.unc: Optional[_Uncertainty] = None

    @property
    def last(self) -> RolloutStep:
        return self.steps[-1]


def _first_step(track: _Track, spec: TargetSpec, model: WorldModel) -> RolloutStep:
    """The realised transition; for ``irp_up`` its footprints carry the initial covariances."""
    world = track.ctx.next_world
    cov_ego = cov_other = None
    if spec.strategy == IRP_UP:
        track.unc = _uncertainty(np.asarray(track.ctx.cov_ego, dtype=np.float64),
                                 np.asarray(track.ctx.cov_other, dtype=np.float64), spec.confidence)
        av_fp, part_fps = _footprints(world, track.unc.ego, track.unc.other, spec.noise.arc_samples)
        collided = any(collision_with_uncertainty(av_fp, fp) for fp in part_fps)
        cov_ego, cov_other = track.unc.cov_ego, track.unc.cov_other
    else:
        av_fp, part_fps = _footprints(world, ZERO_ELLIPSE, ZERO_ELLIPSE, spec.noise.arc_samples)
        collided = model.collide(world.av, world.participants)
    return RolloutStep(spec.step, world, np.asarray(track.tr.next_obs, dtype=np.float64), float(track.tr.reward),
                       bool(collided), bool(track.tr.done), av_fp, part_fps, cov_ego, cov_other)


def _predicted_step(track: _Track, av_row: np.ndarray, k: int, spec: TargetSpec, model: WorldModel,
                    noise: Optional[NoiseModel]) -> RolloutStep:
    prev = track.last.world
    world = _merged_world(prev, track.ctx, av_row, k, spec.step)
    cov_ego = cov_other = None
    dims = None
    if spec.strategy == IRP_UP:
        track.unc = _uncertainty(propagate_covariance(track.unc.cov_ego, noise, EGO),
                                 propagate_covariance(track.unc.cov_other, noise, OTHER), spec.confidence)
        av_fp, part_fps = _footprints(world, track.unc.ego, track.unc.other, spec.noise.arc_samples)
        collided = any(collision_with_uncertainty(av_fp, fp) for fp in part_fps)
        dims = _inflated_dims(world, track.unc)
        cov_ego, cov_other = track.unc.cov_ego, track.unc.cov_other
    else:
        av_fp, part_fps = _footprints(world, ZERO_ELLIPSE, ZERO_ELLIPSE, spec.noise.arc_samples)
        collided = model.collide(world.av, world.participants)
    reward = model.reward(prev, world, bool(collided)).total
    obs = model.observe(world, dims)
    terminal = bool(collided) or reached_goal(world) or is_off_course(world)
    return RolloutStep((k + 1) * spec.step, world, obs, float(reward), bool(collided), terminal, av_fp, part_fps,
                       cov_ego, cov_other)


def _terminal_index(steps: Sequence[RolloutStep]) -> int:
    for i, step in enumerate(steps):
        if step.terminal:
            return i
    return len(steps)


@rollout_debug_decorator
def predict_rollouts(transitions: Sequence[ReplayTransition], spec: TargetSpec, bootstrap: Bootstrap,
                     model: Optional[WorldModel] = None) -> List[PredictedRollout]:
    """Predicted rollouts for a batch of transitions.

    The target actor is queried once per predicted step on the whole batch, and
    once more on the last observations for the bootstrap actions.

    Args:
        transitions: Transitions stored with a :class:`PredictionContext`.
        spec: Strategy (``rp``, ``irp`` or ``irp_up``), step, horizon and noise settings.
        bootstrap: Target actor and critic.
        model: Planner, reward, observation and collision functions; the simulator's by default.

    Raises:
        MissingContextError: a transition has no context, or no covariances for ``irp_up``.
        ValueError: ``spec`` is invalid or names a strategy without a predicted rollout.
    """
    spec.validate()
    if spec.strategy not in PREDICTIVE:
        raise ValueError("{!r} targets do not use predicted rollouts".format(spec.strategy))
    model = model or default_world_model(spec.max_goal_duration)
    noise = make_noise_model(spec.step, spec.noise) if spec.strategy == IRP_UP else None
    n = spec.n_steps

    tracks = [_Track(tr, _check_context(tr, spec.strategy)) for tr in transitions]
    if not tracks:
        return []
    for track in tracks:
        track.steps.append(_first_step(track, spec, model))
        if spec.strategy == RP:
            track.plan = model.plan(track.ctx.av_frenet, np.asarray(track.tr.action, dtype=np.float64), spec.step,
                                    spec.horizon)

    for k in range(1, n):
        if spec.strategy == RP:
            rows = [track.plan.states[k] for track in tracks]
        else:
            actions = bootstrap.policy(np.stack([track.last.obs for track in tracks]))
            rows = [model.plan(track.last.world.av.frenet, action, spec.step, spec.step).states[0]
                    for track, action in zip(tracks, actions)]
        for track, row in zip(tracks, rows):
            track.steps.append(_predicted_step(track, row, k, spec, model, noise))

    boot_obs = np.stack([track.last.obs for track in tracks])
    boot_actions = np.asarray(bootstrap.policy(boot_obs), dtype=np.float64)
    rollouts = []
    for track, obs, action in zip(tracks, boot_obs, boot_actions):
        steps = tuple(track.steps)
        rollouts.append(PredictedRollout(steps, obs, action, _terminal_index(steps)))
    logger.debug("Predicted %d %s rollouts of %d steps", len(rollouts), spec.strategy, n)
    return rollouts


def predict_rollout(tr: ReplayTransition, spec: TargetSpec, bootstrap: Bootstrap,
                    model: Optional[WorldModel] = None) -> PredictedRollout:
    """Single-transition version of :func:`predict_rollouts`."""
    return predict_rollouts([tr], spec, bootstrap, model)[0]


