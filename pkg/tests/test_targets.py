import numpy as np
import pytest
from numpy.testing import assert_array_equal

from driving.actions import GoalAction
from driving.agent import Bootstrap, MissingContextError, PredictionContext, ReplayTransition
from driving.frenet import FrenetState, plan_trajectory
from driving.geometry import contains_points
from driving.targets import (IRP, IRP_UP, RP, TD1, TargetSpec, compute_targets, default_world_model,
                             discounted_returns, irp_target, irp_up_target, make_target_fn, predict_rollout,
                             predict_rollouts, rp_target, td1_target)
from driving.uncertainty import EGO, OTHER, NoiseConfig
from driving.world import (RewardBreakdown, VehicleState, compute_reward, episode_status, observe,
                           participants_at, predict_participants, scenario_world, stack_predictions, step_av,
                           step_participants, vehicle_with_frenet)

GAMMA = 0.99
CRUISE = np.array([2.0, 0.0, 16.0, 8.0])
ZERO_NOISE = NoiseConfig(q_ego=(0.0,) * 4, q_other=(0.0,) * 4)


def constant_bootstrap(action=CRUISE, value=0.0):
    action = np.asarray(action, dtype=np.float64)
    return Bootstrap(policy=lambda obs: np.tile(action, (len(obs), 1)),
                     q=lambda obs, actions: np.full(len(obs), float(value)))


def step_world(world, action):
    step = world.config.step
    moved = step_participants(world, step)
    traj = plan_trajectory(world.av.frenet, GoalAction(*action), step, world.config.horizon)
    return step_av(moved, traj, step)


def make_transition(world, action=CRUISE, noise=NoiseConfig()):
    nxt = step_world(world, action)
    predictions = stack_predictions(predict_participants(world, 3.0, 0.1), 30)
    ctx = PredictionContext.capture(world, nxt, predictions, noise.initial_covariance(EGO),
                                    noise.initial_covariance(OTHER))
    return ReplayTransition(observe(world), np.asarray(action, dtype=np.float64), compute_reward(world, nxt).total,
                            observe(nxt), episode_status(nxt).terminal, ctx)


def moving(vehicle_id, sigma, speed, d=0.0, lane=0):
    return VehicleState(vehicle_id, FrenetState(sigma, speed, 0.0, d, 0.0, 0.0), 0.0, 4.5, 1.8, lane, False, speed)


def spec_for(strategy, horizon=3.0, noise=NoiseConfig()):
    return TargetSpec(strategy=strategy, step=0.1, horizon=horizon, gamma=GAMMA, noise=noise)


@pytest.fixture
def av_start():
    return FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0)


@pytest.fixture
def traffic_world(world_builder, quiet_config, parked_vehicle, av_start):
    return world_builder(av_start, (moving(1, 30.0, 10.0, d=3.5, lane=1), parked_vehicle(2, 70.0, 3.5)),
                         quiet_config)


@pytest.fixture
def passing_world(world_builder, quiet_config, parked_vehicle, av_start):
    # Exact gap of 0.3 m between the AV's left side and the parked car's right side.
    return world_builder(av_start, (parked_vehicle(1, 40.0, 2.1),), quiet_config)


class TestDiscountedReturns:
    def test_geometric_sum_without_termination(self):
        y = discounted_returns(np.ones((1, 30)), np.array([30]), np.zeros(1), GAMMA)
        assert y[0] == pytest.approx((1 - GAMMA ** 30) / (1 - GAMMA), rel=1e-12)

    def test_bootstrap_only_without_termination(self):
        rewards = np.zeros((2, 3))
        y = discounted_returns(rewards, np.array([3, 1]), np.array([5.0, 5.0]), 0.5)
        assert y.tolist() == [5.0 * 0.125, 0.0]

    def test_rewards_after_the_terminal_step_are_dropped(self):
        rewards = np.arange(1.0, 7.0)[None, :]
        y = discounted_returns(rewards, np.array([2]), np.array([100.0]), 0.5)
        assert y[0] == pytest.approx(1.0 + 0.5 * 2.0 + 0.25 * 3.0)

    def test_terminal_first_step_keeps_only_the_received_reward(self):
        y = discounted_returns(np.array([[-10.0, 4.0]]), np.array([0]), np.array([3.0]), GAMMA)
        assert y[0] == -10.0


class TestTd1:
    def test_terminal_transition(self, cruising_world):
        tr = make_transition(cruising_world)._replace(done=True, reward=-10.0)
        assert td1_target(tr, spec_for(TD1), constant_bootstrap(value=7.0)) == -10.0

    def test_bootstraps_from_the_next_observation(self, cruising_world):
        tr = make_transition(cruising_world)._replace(reward=0.0, ctx=None)
        assert td1_target(tr, spec_for(TD1), constant_bootstrap(value=3.0)) == pytest.approx(GAMMA * 3.0)

    def test_td1_has_no_rollout(self, cruising_world):
        with pytest.raises(ValueError):
            predict_rollouts([make_transition(cruising_world)], spec_for(TD1), constant_bootstrap())


class TestSingleStepHorizon:
    @pytest.mark.parametrize("strategy", [RP, IRP, IRP_UP])
    def test_matches_td1(self, strategy, quiet_config, goal_agent, goal_agent_state):
        bootstrap = goal_agent.bootstrap(goal_agent_state)
        transitions = []
        for seed in range(3):
            world = scenario_world(1, seed, quiet_config)
            transitions.append(make_transition(world, np.array([2.5, 0.5, 20.0, 9.0])))
        transitions.append(transitions[0]._replace(done=True))
        td1 = compute_targets(transitions, spec_for(TD1), bootstrap)
        predicted = compute_targets(transitions, spec_for(strategy, horizon=0.1), bootstrap)
        assert_array_equal(predicted, td1)


class TestRewardPrediction:
    def test_discounted_sum_of_unit_rewards(self, cruising_world):
        unit = RewardBreakdown(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0)
        model = default_world_model()._replace(reward=lambda s, s_next, collided=None: unit)
        tr = make_transition(cruising_world)._replace(reward=1.0)
        expected = (1 - GAMMA ** 30) / (1 - GAMMA)
        for strategy in (RP, IRP):
            y = compute_targets([tr], spec_for(strategy), constant_bootstrap(), model)
            assert y[0] == pytest.approx(expected, rel=1e-12)

    def test_deterministic(self, traffic_world):
        tr = make_transition(traffic_world)
        bootstrap = constant_bootstrap(value=1.5)
        assert rp_target(tr, spec_for(RP), bootstrap) == rp_target(tr, spec_for(RP), bootstrap)

    def test_matches_a_hand_rolled_replay(self, traffic_world):
        action = np.array([2.5, 1.0, 22.0, 9.5])
        tr = make_transition(traffic_world, action)
        bootstrap = constant_bootstrap(value=2.0)
        road = traffic_world.road
        plan = plan_trajectory(traffic_world.av.frenet, GoalAction(*action), 0.1, 3.0)
        predictions = tr.ctx.predictions

        y = tr.reward
        prev = tr.ctx.next_world
        for k in range(1, 30):
            world = prev._replace(time=prev.time + 0.1, av=vehicle_with_frenet(prev.av, plan.state(k), road),
                                  participants=participants_at(traffic_world.participants, predictions[:, k], road))
            y += GAMMA ** k * compute_reward(prev, world).total
            prev = world
        obs = observe(prev)[None, :]
        y += GAMMA ** 30 * bootstrap.q(obs, bootstrap.policy(obs))[0]

        assert rp_target(tr, spec_for(RP), bootstrap) == pytest.approx(y, abs=1e-9)

    def test_rollout_times_and_length(self, traffic_world):
        tr = make_transition(traffic_world)
        rollout = predict_rollout(tr, spec_for(RP), constant_bootstrap())
        assert len(rollout.steps) == 30
        assert [s.tau for s in rollout.steps] == pytest.approx([0.1 * (k + 1) for k in range(30)])
        assert rollout.terminal_index == 30
        assert rollout.steps[0].world is tr.ctx.next_world
        assert rollout.steps[-1].world.time == pytest.approx(3.0)


class TestIterativeRewardPrediction:
    def test_cruise_policy_reproduces_the_single_plan(self, traffic_world):
        tr = make_transition(traffic_world, CRUISE)
        bootstrap = constant_bootstrap(CRUISE, value=1.0)
        assert irp_target(tr, spec_for(IRP), bootstrap) == pytest.approx(rp_target(tr, spec_for(RP), bootstrap),
                                                                         abs=1e-9)

    def test_matches_stepping_the_simulator_with_the_target_policy(self, world_builder, quiet_config, av_start,
                                                                    goal_agent, goal_agent_state):
        world = world_builder(av_start, (moving(1, 45.0, 6.0), moving(2, 30.0, 10.0, d=3.5, lane=1)), quiet_config)
        bootstrap = goal_agent.bootstrap(goal_agent_state)
        action = np.array([3.0, 0.0, 20.0, 8.0])
        tr = make_transition(world, action)

        y = tr.reward
        prev = step_world(world, action)
        terminated = tr.done
        for k in range(1, 30):
            if terminated:
                break
            action = bootstrap.policy(observe(prev)[None, :])[0]
            moved = step_participants(prev, 0.1)
            world = step_av(moved, plan_trajectory(prev.av.frenet, GoalAction(*action), 0.1, 0.1), 0.1)
            y += GAMMA ** k * compute_reward(prev, world).total
            terminated = episode_status(world).terminal
            prev = world
        if not terminated:
            obs = observe(prev)[None, :]
            y += GAMMA ** 30 * bootstrap.q(obs, bootstrap.policy(obs))[0]

        assert irp_target(tr, spec_for(IRP), bootstrap) == pytest.approx(y, abs=1e-6)

    def test_batch_matches_single_transitions(self, traffic_world, passing_world):
        transitions = [make_transition(traffic_world), make_transition(passing_world, np.array([3.0, 0.5, 20.0, 7.0]))]
        bootstrap = constant_bootstrap(np.array([2.0, 0.2, 15.0, 8.0]), value=0.5)
        batch = compute_targets(transitions, spec_for(IRP), bootstrap)
        singles = [irp_target(tr, spec_for(IRP), bootstrap) for tr in transitions]
        assert batch.tolist() == pytest.approx(singles, abs=1e-12)


class TestUncertaintyPropagation:
    def test_without_noise_it_equals_irp(self, traffic_world, passing_world):
        bootstrap = constant_bootstrap(np.array([2.0, 0.5, 15.0, 8.0]), value=0.0)
        for world in (traffic_world, passing_world):
            tr = make_transition(world, noise=ZERO_NOISE)
            up = irp_up_target(tr, spec_for(IRP_UP, noise=ZERO_NOISE), bootstrap)
            plain = irp_target(tr, spec_for(IRP, noise=ZERO_NOISE), bootstrap)
            assert up == pytest.approx(plain, abs=1e-12)

    def test_near_miss_becomes_a_collision(self, passing_world):
        noise = NoiseConfig(q_ego=(0.01,) * 4, q_other=(0.01,) * 4)
        tr = make_transition(passing_world, noise=noise)
        bootstrap = constant_bootstrap(value=0.0)
        plain = predict_rollout(tr, spec_for(IRP, noise=noise), bootstrap)
        inflated = predict_rollout(tr, spec_for(IRP_UP, noise=noise), bootstrap)
        assert not plain.collision_flags.any()
        assert inflated.collision_flags.any()
        assert inflated.terminal_index < 30
        assert (irp_up_target(tr, spec_for(IRP_UP, noise=noise), bootstrap)
                < irp_target(tr, spec_for(IRP, noise=noise), bootstrap))

    def test_more_noise_never_removes_a_collision(self, passing_world):
        def flags(scale):
            noise = NoiseConfig(q_ego=(scale,) * 4, q_other=(scale,) * 4, sigma0_ego=(0.0,) * 4,
                                sigma0_other=(0.0,) * 4)
            tr = make_transition(passing_world, noise=noise)
            return predict_rollout(tr, spec_for(IRP_UP, noise=noise), constant_bootstrap()).collision_flags

        low, high = flags(0.001), flags(0.004)
        assert np.all(high[low])
        assert high.sum() >= low.sum()

    def test_inflated_footprints_contain_the_exact_ones(self, traffic_world):
        noise = NoiseConfig()
        tr = make_transition(traffic_world, noise=noise)
        bootstrap = constant_bootstrap()
        plain = predict_rollout(tr, spec_for(IRP, noise=noise), bootstrap)
        inflated = predict_rollout(tr, spec_for(IRP_UP, noise=noise), bootstrap)
        for exact, wide in zip(plain.steps, inflated.steps):
            assert contains_points(wide.av_footprint.vertices, exact.av_footprint.vertices).all()
            for e, w in zip(exact.participant_footprints, wide.participant_footprints):
                assert contains_points(w.vertices, e.vertices).all()
            assert wide.av_footprint.area > exact.av_footprint.area

    def test_covariances_grow_along_the_rollout(self, traffic_world):
        tr = make_transition(traffic_world)
        rollout = predict_rollout(tr, spec_for(IRP_UP), constant_bootstrap())
        traces = [np.trace(s.cov_other) for s in rollout.steps]
        assert np.all(np.diff(traces) > 0.0)
        assert_array_equal(rollout.steps[0].cov_ego, NoiseConfig().initial_covariance(EGO))


class TestMissingContext:
    @pytest.mark.parametrize("strategy", [RP, IRP, IRP_UP])
    def test_transition_without_context(self, cruising_world, strategy):
        tr = make_transition(cruising_world)._replace(ctx=None)
        with pytest.raises(MissingContextError):
            compute_targets([tr], spec_for(strategy), constant_bootstrap())

    def test_irp_up_needs_covariances(self, cruising_world):
        tr = make_transition(cruising_world)
        tr = tr._replace(ctx=tr.ctx._replace(cov_other=None))
        with pytest.raises(MissingContextError):
            irp_up_target(tr, spec_for(IRP_UP), constant_bootstrap())
        assert np.isfinite(irp_target(tr, spec_for(IRP), constant_bootstrap()))


def test_target_fn_feeds_the_critic_update(traffic_world, goal_agent, goal_agent_state):
    transitions = [make_transition(traffic_world), make_transition(traffic_world, np.array([3.0, 1.0, 25.0, 9.0]))]
    state, loss = goal_agent.critic_update(goal_agent_state, transitions, make_target_fn(spec_for(IRP)))
    assert np.isfinite(loss)
    assert state.critic is not goal_agent_state.critic


def test_invalid_spec_is_rejected():
    with pytest.raises(ValueError):
        make_target_fn(TargetSpec(strategy="mc"))
    with pytest.raises(ValueError):
        make_target_fn(TargetSpec(strategy=RP, horizon=0.25))
