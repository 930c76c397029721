"""DDPG actor-critic on top of the ``nn`` MLPs.

The actor maps an observation to a tanh vector that :class:`ActionBounds` turns
into a physical action. The critic reads the observation concatenated with the
action in that same ``[-1, 1]`` space. Critic targets come from a pluggable
``target_fn(transitions, bootstrap) -> y`` so every return estimator shares one
update.
"""
import logging
from pathlib import Path
from typing import Callable, NamedTuple, Sequence, Tuple, Union

import jax
import jax.numpy as jnp
import numpy as np
from jax.tree_util import tree_flatten, tree_map

from nn import (MlpSpec, OptimizerState, ShapeMismatchError, adam, backward, forward, init_params, load_params,
                mean_squared_error, mlp, optimizer_step, save_params)
from nn.typing import MlpParams

from driving.actions import ActionBounds
from driving.agent.config import AgentConfig
from driving.agent.replay import ReplayTransition, collate

logger = logging.getLogger(__name__)

ACTOR_FILE = "actor.bin"
CRITIC_FILE = "critic.bin"


class Bootstrap(NamedTuple):
    """Frozen target networks as numpy callables.

    ``policy(obs) -> physical actions`` and ``q(obs, physical actions) -> values``,
    both over ``(batch, ...)`` arrays.
    """
    policy: Callable[[np.ndarray], np.ndarray]
    q: Callable[[np.ndarray, np.ndarray], np.ndarray]


class AgentState(NamedTuple):
    actor: MlpParams
    critic: MlpParams
    actor_target: MlpParams
    critic_target: MlpParams
    actor_opt: OptimizerState
    critic_opt: OptimizerState
    updates: int = 0


TargetFn = Callable[[Sequence[ReplayTransition], Bootstrap], np.ndarray]


def soft_update(targets: MlpParams, online: MlpParams, tau: float) -> MlpParams:
    """Polyak blend ``tau * online + (1 - tau) * targets``.

    Raises:
        ShapeMismatchError: the two trees differ in structure or leaf shapes.
    """
    t_leaves, t_def = tree_flatten(targets)
    o_leaves, o_def = tree_flatten(online)
    if t_def != o_def:
        raise ShapeMismatchError("target tree {} does not match online tree {}".format(t_def, o_def))
    for t, o in zip(t_leaves, o_leaves):
        if jnp.shape(t) != jnp.shape(o):
            raise ShapeMismatchError("target leaf {} vs online leaf {}".format(jnp.shape(t), jnp.shape(o)))
    return tree_map(lambda t, o: tau * o + (1.0 - tau) * t, targets, online)


class DdpgAgent:
    """Networks, optimizers and jitted update steps for one action space.

    The agent itself is stateless; parameters travel in an :class:`AgentState`.
    """

    def __init__(self, obs_dim: int, bounds: ActionBounds, config: AgentConfig = AgentConfig()):
        config.validate()
        self.obs_dim = obs_dim
        self.bounds = bounds
        self.config = config
        self.actor_net = mlp(MlpSpec((obs_dim, *config.hidden, bounds.dim), "tanh"), name="actor")
        self.critic_net = mlp(MlpSpec((obs_dim + bounds.dim, *config.hidden, 1)), name="critic")
        self.actor_opt = adam(config.lr_actor)
        self.critic_opt = adam(config.lr_critic)
        self._actor_apply = jax.jit(self.actor_net.apply_fun)
        self._critic_apply = jax.jit(self.critic_net.apply_fun)
        self._critic_step = jax.jit(self._critic_step_impl)
        self._actor_step = jax.jit(self._actor_step_impl)

    def init_state(self, key: jax.Array) -> AgentState:
        actor_key, critic_key = jax.random.split(key)
        actor = init_params(self.actor_net, actor_key)
        critic = init_params(self.critic_net, critic_key)
        return AgentState(actor, critic, actor, critic, self.actor_opt.init_fn(actor),
                          self.critic_opt.init_fn(critic), 0)

    def with_params(self, actor: MlpParams, critic: MlpParams) -> AgentState:
        """Fresh state (targets equal to online, new optimizer moments) around given parameters."""
        return AgentState(actor, critic, actor, critic, self.actor_opt.init_fn(actor),
                          self.critic_opt.init_fn(critic), 0)

    # Acting

    def policy_unit(self, actor: MlpParams, obs: np.ndarray) -> np.ndarray:
        return np.asarray(self._actor_apply(actor, jnp.asarray(np.atleast_2d(obs), dtype=jnp.float64)))

    def select_action(self, actor: MlpParams, obs: np.ndarray, noise_sigma: float,
                      rng: np.random.Generator) -> np.ndarray:
        """Physical action for one observation.

        Gaussian noise of scale ``noise_sigma`` is added to the tanh output and the
        result clipped to ``[-1, 1]`` before mapping to the bounds. One normal draw
        per action dimension is taken even when ``noise_sigma`` is zero.
        """
        y = self.policy_unit(actor, obs)[0]
        y = np.clip(y + noise_sigma * rng.normal(size=y.shape), -1.0, 1.0)
        return self.bounds.from_unit(y)

    def q_values(self, critic: MlpParams, obs: np.ndarray, actions: np.ndarray) -> np.ndarray:
        x = np.concatenate([np.atleast_2d(obs), self.bounds.to_unit(np.atleast_2d(actions))], axis=1)
        return np.asarray(self._critic_apply(critic, jnp.asarray(x)))[:, 0]

    def bootstrap(self, state: AgentState) -> Bootstrap:
        """Target networks used inside critic targets."""
        return Bootstrap(
            policy=lambda obs: self.bounds.from_unit(self.policy_unit(state.actor_target, obs)),
            q=lambda obs, actions: self.q_values(state.critic_target, obs, actions),
        )

    # Updates

    def _critic_step_impl(self, critic: MlpParams, critic_opt: OptimizerState, inputs: jax.Array,
                          y: jax.Array) -> Tuple[MlpParams, OptimizerState, jax.Array]:
        def loss_fn(params):
            return mean_squared_error(self.critic_net.apply_fun(params, inputs)[:, 0], y)

        loss, grads = jax.value_and_grad(loss_fn)(critic)
        critic, critic_opt = optimizer_step(self.critic_opt, grads, critic_opt)
        return critic, critic_opt, loss

    def _actor_step_impl(self, actor: MlpParams, actor_opt: OptimizerState, critic: MlpParams,
                         obs: jax.Array) -> Tuple[MlpParams, OptimizerState, jax.Array]:
        # L = -mean Q(s, pi(s)); dL/da comes out of the critic's input gradient.
        actions, actor_cache = forward(self.actor_net, actor, obs)
        q, critic_cache = forward(self.critic_net, critic, jnp.concatenate([obs, actions], axis=1))
        _, dx = backward(critic, critic_cache, -jnp.ones_like(q) / q.shape[0])
        grads, _ = backward(actor, actor_cache, dx[:, self.obs_dim:])
        actor, actor_opt = optimizer_step(self.actor_opt, grads, actor_opt)
        return actor, actor_opt, -jnp.mean(q)

    def critic_update(self, state: AgentState, transitions: Sequence[ReplayTransition],
                      target_fn: TargetFn) -> Tuple[AgentState, float]:
        """One optimizer step on ``mean (Q(s, a) - y)^2`` with ``y`` held constant.

        Returns:
            The new state and the loss before the step.
        """
        if not transitions:
            raise ValueError("critic update needs a nonempty batch")
        y = np.asarray(target_fn(transitions, self.bootstrap(state)), dtype=np.float64)
        batch = collate(list(transitions))
        inputs = np.concatenate([batch.obs, self.bounds.to_unit(batch.actions)], axis=1)
        critic, critic_opt, loss = self._critic_step(state.critic, state.critic_opt, jnp.asarray(inputs),
                                                     jnp.asarray(y))
        return state._replace(critic=critic, critic_opt=critic_opt), float(loss)

    def actor_update(self, state: AgentState, transitions: Sequence[ReplayTransition]) -> Tuple[AgentState, float]:
        """One optimizer step ascending ``Q(s, pi(s))`` through the online critic."""
        if not transitions:
            raise ValueError("actor update needs a nonempty batch")
        obs = jnp.asarray(np.stack([t.obs for t in transitions]))
        actor, actor_opt, loss = self._actor_step(state.actor, state.actor_opt, state.critic, obs)
        return state._replace(actor=actor, actor_opt=actor_opt), float(loss)

    def update_targets(self, state: AgentState) -> AgentState:
        tau = self.config.tau
        return state._replace(actor_target=soft_update(state.actor_target, state.actor, tau),
                              critic_target=soft_update(state.critic_target, state.critic, tau))

    def update(self, state: AgentState, transitions: Sequence[ReplayTransition],
               target_fn: TargetFn) -> Tuple[AgentState, float, float]:
        """Critic step, actor step, then Polyak update of both target networks."""
        state, critic_loss = self.critic_update(state, transitions, target_fn)
        state, actor_loss = self.actor_update(state, transitions)
        state = self.update_targets(state)
        return state._replace(updates=state.updates + 1), critic_loss, actor_loss

    # Checkpoints

    def save(self, state: AgentState, directory: Union[str, Path]) -> None:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        save_params(state.actor, self.actor_net.spec, directory / ACTOR_FILE)
        save_params(state.critic, self.critic_net.spec, directory / CRITIC_FILE)
        logger.debug("Checkpoint written to %s", directory)

    def load(self, directory: Union[str, Path]) -> AgentState:
        """State built from ``actor.bin``/``critic.bin`` of a checkpoint directory.

        Raises:
            CheckpointError: missing or corrupt files, or sizes that do not fit this agent.
        """
        directory = Path(directory)
        _, actor = load_params(directory / ACTOR_FILE, expected=self.actor_net.spec)
        _, critic = load_params(directory / CRITIC_FILE, expected=self.critic_net.spec)
        return self.with_params(actor, critic)

