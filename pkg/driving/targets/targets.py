"""Critic targets: one-step TD and the predicted-return family.

Every strategy goes through :func:`discounted_returns`, so a predicted rollout of
a single step gives exactly the one-step TD target.
"""
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from driving.agent import Bootstrap, ReplayTransition, TargetFn, collate
from driving.targets.rollout import predict_rollouts
from driving.targets.spec import IRP, IRP_UP, RP, TD1, TargetSpec
from driving.targets.world_model import WorldModel


def discounted_returns(rewards: np.ndarray, terminal_index: np.ndarray, q: np.ndarray, gamma: float) -> np.ndarray:
    """``sum_k gamma^k r_k + gamma^n q`` cut after the first terminal step.

    Args:
        rewards: ``(batch, n)`` per-step rewards; column 0 is the received reward.
        terminal_index: ``(batch,)`` index of the first terminal step, ``n`` if none.
            Rewards up to and including that step are kept; the bootstrap only
            applies when it equals ``n``.
        q: ``(batch,)`` bootstrap values.
        gamma: Discount factor.
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    terminal_index = np.asarray(terminal_index)
    n = rewards.shape[1]
    y = rewards[:, 0].copy()
    for k in range(1, n):
        y = np.where(terminal_index >= k, y + gamma ** k * rewards[:, k], y)
    return np.where(terminal_index >= n, y + gamma ** n * np.asarray(q, dtype=np.float64), y)


def compute_targets(transitions: Sequence[ReplayTransition], spec: TargetSpec, bootstrap: Bootstrap,
                    model: Optional[WorldModel] = None) -> np.ndarray:
    """Critic targets ``y`` for a batch, using the target networks in ``bootstrap``.

    Raises:
        MissingContextError: a predictive strategy meets a transition without context.
    """
    spec.validate()
    if spec.strategy == TD1:
        batch = collate(list(transitions))
        rewards = batch.rewards[:, None]
        terminal_index = np.where(batch.dones, 0, 1)
        boot_obs = batch.next_obs
        boot_actions = bootstrap.policy(boot_obs)
    else:
        rollouts = predict_rollouts(transitions, spec, bootstrap, model)
        rewards = np.stack([r.rewards for r in rollouts])
        terminal_index = np.array([r.terminal_index for r in rollouts])
        boot_obs = np.stack([r.bootstrap_obs for r in rollouts])
        boot_actions = np.stack([r.bootstrap_action for r in rollouts])
    q = bootstrap.q(boot_obs, boot_actions)
    return discounted_returns(rewards, terminal_index, q, spec.gamma)


def _single(tr: ReplayTransition, spec: TargetSpec, strategy: str, bootstrap: Bootstrap,
            model: Optional[WorldModel]) -> float:
    return float(compute_targets([tr], replace(spec, strategy=strategy), bootstrap, model)[0])


def td1_target(tr: ReplayTransition, spec: TargetSpec, bootstrap: Bootstrap) -> float:
    """``r + gamma * Q'(s', pi'(s'))``, or just ``r`` when ``tr`` is terminal."""
    return _single(tr, spec, TD1, bootstrap, None)


def rp_target(tr: ReplayTransition, spec: TargetSpec, bootstrap: Bootstrap,
              model: Optional[WorldModel] = None) -> float:
    return _single(tr, spec, RP, bootstrap, model)


def irp_target(tr: ReplayTransition, spec: TargetSpec, bootstrap: Bootstrap,
               model: Optional[WorldModel] = None) -> float:
    return _single(tr, spec, IRP, bootstrap, model)


def irp_up_target(tr: ReplayTransition, spec: TargetSpec, bootstrap: Bootstrap,
                  model: Optional[WorldModel] = None) -> float:
    return _single(tr, spec, IRP_UP, bootstrap, model)


def make_target_fn(spec: TargetSpec, model: Optional[WorldModel] = None) -> TargetFn:
    """``target_fn(transitions, bootstrap)`` for :meth:`DdpgAgent.critic_update`."""
    spec.validate()

    def target_fn(transitions: Sequence[ReplayTransition], bootstrap: Bootstrap) -> np.ndarray:
        return compute_targets(transitions, spec, bootstrap, model)

    return target_fn
