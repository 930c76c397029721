import jax
import jax.numpy as jnp
import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from driving.actions import CONTROL_BOUNDS, GOAL_BOUNDS
from driving.agent import (AgentConfig, DdpgAgent, ReplayBuffer, ReplayTransition, UndersizedBufferError, collate,
                           replay_sample, replay_store, soft_update)
from nn import CheckpointError, ShapeMismatchError


def _transition(i, obs_dim=3, action=(0.1, 0.5)):
    obs = np.full(obs_dim, float(i))
    return ReplayTransition(obs, np.asarray(action), float(i), obs + 1.0, i % 2 == 0)


class TestConfig:
    @pytest.mark.parametrize("fields", [dict(gamma=1.0), dict(tau=0.0), dict(batch_size=0),
                                        dict(batch_size=10, replay_capacity=5), dict(lr_actor=0.0),
                                        dict(update_every=0), dict(noise_sigma=-0.1)])
    def test_rejects_out_of_range(self, fields):
        with pytest.raises(ValueError):
            AgentConfig(**fields).validate()

    def test_exploration_decays_linearly(self):
        config = AgentConfig(noise_sigma=0.5, final_noise_sigma=0.1, warmup_steps=2000)
        assert config.exploration_sigma(0) == pytest.approx(0.5)
        assert config.exploration_sigma(1000) == pytest.approx(0.3)
        assert config.exploration_sigma(5000) == pytest.approx(0.1)
        assert AgentConfig(warmup_steps=0).exploration_sigma(0) == AgentConfig().final_noise_sigma

    def test_updates_wait_for_the_warmup(self):
        config = AgentConfig(batch_size=128, warmup_steps=2000, update_every=1)
        assert not config.updates_at(1999, 1999)
        assert config.updates_at(2000, 2000)
        assert not config.updates_at(2000, 100)
        every_other = AgentConfig(batch_size=4, warmup_steps=10, update_every=2)
        assert [step for step in range(8, 16) if every_other.updates_at(step, step)] == [10, 12, 14]


class TestBounds:
    def test_unit_endpoints_land_on_the_bounds(self):
        assert_array_equal(GOAL_BOUNDS.from_unit(-np.ones(4)), GOAL_BOUNDS.low)
        assert_array_equal(GOAL_BOUNDS.from_unit(np.ones(4)), GOAL_BOUNDS.high)
        assert GOAL_BOUNDS.contains(GOAL_BOUNDS.from_unit(np.array([3.0, -7.0, 0.2, 0.0])))

    def test_to_unit_inverts_from_unit(self):
        y = np.array([-0.3, 0.9])
        assert_allclose(CONTROL_BOUNDS.to_unit(CONTROL_BOUNDS.from_unit(y)), y)


class TestReplay:
    def test_ring_overwrites_oldest(self):
        buffer = ReplayBuffer(3)
        for i in range(5):
            replay_store(buffer, _transition(i))
        assert len(buffer) == 3
        assert [t.reward for t in buffer] == [2.0, 3.0, 4.0]

    def test_sampling_without_replacement(self):
        buffer = ReplayBuffer(10)
        for i in range(10):
            buffer.store(_transition(i))
        batch = replay_sample(buffer, 10, np.random.default_rng(0))
        assert sorted(t.reward for t in batch) == [float(i) for i in range(10)]
        again = replay_sample(buffer, 4, np.random.default_rng(7))
        assert [t.reward for t in again] == [t.reward for t in replay_sample(buffer, 4, np.random.default_rng(7))]

    def test_undersized_buffer(self):
        buffer = ReplayBuffer(10)
        buffer.store(_transition(0))
        with pytest.raises(UndersizedBufferError):
            buffer.sample(2, np.random.default_rng(0))
        with pytest.raises(ValueError):
            ReplayBuffer(0)

    def test_collate(self):
        batch = collate([_transition(i) for i in range(4)])
        assert batch.obs.shape == (4, 3) and batch.actions.shape == (4, 2)
        assert batch.dones.dtype == bool
        assert batch.dones.tolist() == [True, False, True, False]
        assert_array_equal(batch.rewards, [0.0, 1.0, 2.0, 3.0])


class TestSoftUpdate:
    def test_blend(self):
        targets = [(jnp.zeros((2, 2)), jnp.zeros((1, 2))), ()]
        online = [(jnp.ones((2, 2)), jnp.full((1, 2), 2.0)), ()]
        blended = soft_update(targets, online, 0.25)
        assert_allclose(np.asarray(blended[0][0]), 0.25)
        assert_allclose(np.asarray(blended[0][1]), 0.5)
        assert_array_equal(np.asarray(soft_update(targets, online, 1.0)[0][0]), 1.0)

    def test_mismatched_trees(self):
        with pytest.raises(ShapeMismatchError):
            soft_update([(jnp.zeros((2, 2)), jnp.zeros((1, 2)))], [(jnp.zeros((3, 2)), jnp.zeros((1, 2)))], 0.1)
        with pytest.raises(ShapeMismatchError):
            soft_update([(jnp.zeros((2, 2)), jnp.zeros((1, 2)))], [(jnp.zeros((2, 2)), jnp.zeros((1, 2))), ()], 0.1)


class TestAgent:
    def test_actions_stay_in_bounds(self, goal_agent, goal_agent_state):
        rng = np.random.default_rng(0)
        for _ in range(20):
            action = goal_agent.select_action(goal_agent_state.actor, rng.normal(size=goal_agent.obs_dim), 2.0, rng)
            assert GOAL_BOUNDS.contains(action)

    def test_exploration_is_reproducible(self, goal_agent, goal_agent_state):
        obs = np.zeros(goal_agent.obs_dim)
        a = goal_agent.select_action(goal_agent_state.actor, obs, 0.3, np.random.default_rng(5))
        b = goal_agent.select_action(goal_agent_state.actor, obs, 0.3, np.random.default_rng(5))
        assert_array_equal(a, b)

    def test_fresh_actor_acts_near_the_middle(self, goal_agent, goal_agent_state):
        action = goal_agent.select_action(goal_agent_state.actor, np.zeros(goal_agent.obs_dim), 0.0,
                                          np.random.default_rng(0))
        assert_allclose(action, (GOAL_BOUNDS.low + GOAL_BOUNDS.high) / 2, rtol=0.05, atol=0.1)

    def test_critic_regresses_onto_the_targets(self):
        agent = DdpgAgent(3, CONTROL_BOUNDS, AgentConfig(hidden=(16,), lr_critic=1e-2, batch_size=4))
        state = agent.init_state(jax.random.PRNGKey(1))
        batch = [_transition(i) for i in range(4)]
        seen = []

        def target_fn(transitions, bootstrap):
            seen.append(bootstrap)
            return np.ones(len(transitions))

        state, first = agent.critic_update(state, batch, target_fn)
        for _ in range(300):
            state, loss = agent.critic_update(state, batch, target_fn)
        assert loss < 0.1 * first
        assert CONTROL_BOUNDS.contains(seen[0].policy(np.zeros((1, 3)))[0])

    def test_actor_climbs_a_linear_critic(self):
        agent = DdpgAgent(3, CONTROL_BOUNDS, AgentConfig(hidden=(), lr_actor=0.05, batch_size=2))
        state = agent.init_state(jax.random.PRNGKey(2))
        # Q(s, a) = sum of the unit-space action components.
        critic = [(jnp.concatenate([jnp.zeros((3, 1)), jnp.ones((2, 1))]), jnp.zeros((1, 1)))]
        state = agent.with_params(state.actor, critic)
        batch = [_transition(i) for i in (1, 2)]
        for _ in range(200):
            state, _ = agent.actor_update(state, batch)
        assert np.all(agent.policy_unit(state.actor, np.stack([t.obs for t in batch])) > 0.9)

    def test_update_moves_targets_and_counts(self, goal_agent, goal_agent_state):
        batch = [_transition(i, goal_agent.obs_dim, GOAL_BOUNDS.low + 1.0) for i in range(4)]
        state, critic_loss, _ = goal_agent.update(goal_agent_state, batch, lambda ts, b: np.full(len(ts), 5.0))
        assert state.updates == 1
        assert critic_loss > 0.0
        online, target = np.asarray(state.critic[0][1]), np.asarray(state.critic_target[0][1])
        before = np.asarray(goal_agent_state.critic_target[0][1])
        assert_allclose(target, 0.005 * online + 0.995 * before)

    def test_empty_batches(self, goal_agent, goal_agent_state):
        with pytest.raises(ValueError):
            goal_agent.critic_update(goal_agent_state, [], lambda ts, b: np.zeros(0))
        with pytest.raises(ValueError):
            goal_agent.actor_update(goal_agent_state, [])

    def test_checkpoint_round_trip(self, tmp_path, goal_agent, goal_agent_state):
        goal_agent.save(goal_agent_state, tmp_path / "ckpt")
        restored = goal_agent.load(tmp_path / "ckpt")
        obs = np.random.default_rng(0).normal(size=(3, goal_agent.obs_dim))
        actions = GOAL_BOUNDS.from_unit(np.zeros((3, 4)))
        assert_array_equal(goal_agent.q_values(restored.critic, obs, actions),
                           goal_agent.q_values(goal_agent_state.critic, obs, actions))
        assert_array_equal(goal_agent.policy_unit(restored.actor, obs),
                           goal_agent.policy_unit(goal_agent_state.actor, obs))

    def test_checkpoint_for_another_agent(self, tmp_path, goal_agent, goal_agent_state):
        goal_agent.save(goal_agent_state, tmp_path)
        other = DdpgAgent(goal_agent.obs_dim, GOAL_BOUNDS, AgentConfig(hidden=(32, 32)))
        with pytest.raises(CheckpointError):
            other.load(tmp_path)
