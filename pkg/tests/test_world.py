import csv

import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from driving.actions import ControlAction, GoalAction
from driving.frenet import FrenetState, PlannedTrajectory, plan_trajectory
from driving.world import (AV_FEATURES, PARTICIPANT_FEATURES, EmptyTrajectoryError, EpisodeStatus, SimConfig,
                           TimeMismatchError, UnknownScenarioError, VehicleState, check_collision, compute_reward,
                           episode_status, find_leader, idm_acceleration, kmh, observation_size, observe,
                           predict_participants, scenario_spec, scenario_world, spawn_scenario, step_av,
                           step_av_control, step_participants, trace_header, write_trace)


def _moving(vehicle_id, sigma, speed, d=0.0, lane=0, desired=None):
    return VehicleState(vehicle_id, FrenetState(sigma, speed, 0.0, d, 0.0, 0.0), 0.0, 4.5, 1.8, lane, False,
                        speed if desired is None else desired)


def _advanced(world, sigma_delta, **fields):
    fs = world.av.frenet._replace(sigma=world.av.frenet.sigma + sigma_delta, **fields)
    return world._replace(time=world.time + world.config.step, av=world.av._replace(frenet=fs))


class TestScenarios:
    def test_unknown_scenario(self):
        with pytest.raises(UnknownScenarioError):
            scenario_spec(7)
        with pytest.raises(UnknownScenarioError):
            scenario_world(0, seed=1)

    def test_overrides(self):
        assert scenario_spec(1, max_static=0).max_static == 0
        assert scenario_spec(1).max_static == 2

    def test_spawning_is_deterministic(self):
        a, b = scenario_world(2, seed=11), scenario_world(2, seed=11)
        assert a.av == b.av
        assert a.participants == b.participants
        assert a.rng_state == b.rng_state

    @pytest.mark.parametrize("seed", range(10))
    def test_scenario1_has_only_parked_cars(self, seed):
        world = scenario_world(1, seed)
        assert len(world.participants) <= 2
        assert all(p.is_static for p in world.participants)
        assert all(45.0 <= p.frenet.sigma <= 125.0 for p in world.participants)
        assert abs(world.av.frenet.d) <= 1.5
        assert world.goal_sigma == pytest.approx(150.0)

    @pytest.mark.parametrize("seed", range(10))
    def test_scenario2_has_only_moving_traffic(self, seed):
        world = scenario_world(2, seed)
        assert len(world.participants) <= 5
        for p in world.participants:
            assert not p.is_static
            assert kmh(15.0) <= p.frenet.sigma_dot <= kmh(35.0)

    def test_scenario3_starts_right_of_the_target_lane(self):
        world = scenario_world(3, seed=2)
        assert world.road.lane_count == 3
        assert world.road.target_lane == 1
        assert world.av.frenet.d == pytest.approx(-3.5, abs=1.5)

    def test_participants_capped_at_n_max(self):
        world = scenario_world(2, seed=0, config=SimConfig(n_max=1))
        assert len(world.participants) <= 1


class TestTraffic:
    def test_idm_free_road(self):
        config = SimConfig()
        assert idm_acceleration(10.0, 10.0, None, 0.0, config) == pytest.approx(0.0)
        assert idm_acceleration(0.0, 10.0, None, 0.0, config) == pytest.approx(config.idm_max_accel)

    def test_spawned_car_speeds_up_on_a_free_road(self, quiet_config):
        spec = scenario_spec(2, max_dynamic=1)
        worlds = [spawn_scenario(spec, seed, quiet_config) for seed in range(20)]
        worlds = [w for w in worlds if len(w.participants) == 1]
        assert worlds
        for world in worlds:
            start = world.participants[0].frenet.sigma_dot
            assert world.participants[0].desired_speed == quiet_config.v_des
            speeds = [start]
            for _ in range(50):
                world = step_participants(world, 0.1)
                speeds.append(world.participants[0].frenet.sigma_dot)
            assert np.all(np.diff(speeds) > 0.0)
            assert speeds[-1] <= quiet_config.speed_limit

    def test_idm_brakes_behind_a_close_leader(self):
        assert idm_acceleration(10.0, 13.0, 5.0, 5.0, SimConfig()) < -SimConfig().idm_comfort_decel

    def test_leader_is_the_closest_ahead_in_lane(self):
        me = _moving(1, 50.0, 8.0)
        others = [_moving(2, 70.0, 8.0), _moving(3, 60.0, 8.0), _moving(4, 55.0, 8.0, d=3.5, lane=1),
                  _moving(5, 40.0, 8.0)]
        assert find_leader(me, others).id == 3
        assert find_leader(others[0], others + [me]) is None

    def test_parked_cars_and_clock_stay_put(self, world_builder, quiet_config, parked_vehicle):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0),
                              (parked_vehicle(1, 60.0, 0.2), _moving(2, 40.0, 10.0)), quiet_config)
        moved = step_participants(world, 0.1)
        assert moved.participants[0] == world.participants[0]
        assert moved.participants[1].frenet.sigma > 40.0
        assert moved.time == world.time

    def test_prediction_matches_the_simulator_without_lane_changes(self, world_builder, quiet_config):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0),
                              (_moving(1, 40.0, 12.0, desired=13.0), _moving(2, 55.0, 6.0), _moving(3, 45.0, 9.0,
                                                                                                     d=3.5, lane=1)),
                              quiet_config)
        predictions = predict_participants(world, 3.0, 0.1)
        w = world
        for k in range(30):
            w = step_participants(w, 0.1)
            for i, p in enumerate(w.participants):
                assert_array_equal(predictions[i].states[k], p.frenet.as_array())

    def test_follower_never_overtakes_in_lane(self, world_builder, quiet_config):
        world = world_builder(FrenetState(0.0, 0.0, 0.0, -3.5, 0.0, 0.0),
                              (_moving(1, 40.0, 12.0, desired=13.0), _moving(2, 55.0, 4.0, desired=4.0)),
                              quiet_config)
        for _ in range(200):
            world = step_participants(world, 0.1)
            follower, leader = world.participants
            assert leader.frenet.sigma - follower.frenet.sigma > 4.5

    def test_lane_changes_end_on_a_lane_centre(self, world_builder):
        config = SimConfig(lane_change_rate=5.0)
        world = world_builder(FrenetState(0.0, 0.0, 0.0, -3.5, 0.0, 0.0), (_moving(1, 40.0, 10.0),), config)
        for _ in range(200):
            world = step_participants(world, 0.1)
        d = world.participants[0].frenet.d
        if world.participants[0].lane_change is None:
            assert d in (0.0, 3.5)


class TestTracking:
    def test_follows_the_first_sample_without_noise(self, cruising_world):
        traj = plan_trajectory(cruising_world.av.frenet, GoalAction(2.0, 1.0, 18.0, 9.0), 0.1, 3.0)
        nxt = step_av(cruising_world, traj, 0.1)
        assert_array_equal(nxt.av.frenet.as_array(), traj.states[0])
        assert nxt.time == pytest.approx(0.1)

    def test_tracking_noise_is_reproducible(self, scenario1_world):
        traj = plan_trajectory(scenario1_world.av.frenet, GoalAction(2.0, 0.0, 10.0, 5.0), 0.1, 3.0)
        a, b = step_av(scenario1_world, traj, 0.1), step_av(scenario1_world, traj, 0.1)
        assert a.av == b.av
        assert a.tracking_rng_state != scenario1_world.tracking_rng_state
        assert a.av.frenet.sigma != traj.states[0][0]

    def test_empty_trajectory(self, cruising_world):
        with pytest.raises(EmptyTrajectoryError):
            step_av(cruising_world, PlannedTrajectory(0.1, 0.1, np.zeros((0, 6)), None), 0.1)

    def test_bicycle_coasts_straight(self, cruising_world):
        nxt = step_av_control(cruising_world, ControlAction(0.0, 0.0), 0.1)
        assert nxt.av.frenet.sigma == pytest.approx(20.8)
        assert nxt.av.frenet.d == pytest.approx(0.0, abs=1e-9)
        assert nxt.av.frenet.sigma_dot == pytest.approx(8.0)

    def test_bicycle_steers_left(self, cruising_world):
        w = cruising_world
        for _ in range(10):
            w = step_av_control(w, ControlAction(0.3, 1.0), 0.1)
        assert w.av.frenet.d > 0.0
        assert w.av.frenet.speed > 8.0


class TestReward:
    def test_smooth_cruise(self, cruising_world):
        s_next = _advanced(cruising_world, 0.8)
        reward = compute_reward(cruising_world, s_next)
        w = cruising_world.config.weights
        assert reward.collision == w.collision_free
        assert reward.lat_acc == 0.0 and reward.long_jerk == 0.0
        assert reward.speed_dev == pytest.approx(w.speed_dev * (kmh(50.0) - 8.0))
        assert reward.total == pytest.approx(sum(reward[:-1]))

    def test_terms_are_penalties(self, cruising_world):
        s_next = _advanced(cruising_world, 0.8, d=1.0, d_ddot=2.0, sigma_ddot=-1.0)
        reward = compute_reward(cruising_world, s_next)
        assert reward.lat_acc < 0.0 and reward.lat_jerk < 0.0
        assert reward.long_acc < 0.0 and reward.long_jerk < 0.0
        assert reward.lateral_dev == pytest.approx(cruising_world.config.weights.lateral_dev)

    def test_collision_term(self, cruising_world, parked_vehicle):
        s_next = _advanced(cruising_world, 0.8)._replace(participants=(parked_vehicle(1, 22.0, 0.0),))
        assert compute_reward(cruising_world, s_next).collision == cruising_world.config.weights.collision_hit
        assert compute_reward(cruising_world, s_next, collided=False).collision > 0.0

    def test_states_must_be_one_step_apart(self, cruising_world):
        with pytest.raises(TimeMismatchError):
            compute_reward(cruising_world, cruising_world)


class TestObservation:
    def test_layout(self, world_builder, parked_vehicle):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.5, 0.0, 0.0),
                              (parked_vehicle(1, 50.0, 0.0), parked_vehicle(2, 15.0, 3.5), parked_vehicle(3, 30.0, 0.0)))
        obs = observe(world)
        assert obs.shape == (observation_size(5),) == (AV_FEATURES + 5 * PARTICIPANT_FEATURES,)
        assert obs[0] == pytest.approx(0.5 / 3.5)
        assert obs[3] == pytest.approx(8.0 / 15.0)
        rel = [obs[AV_FEATURES + k * PARTICIPANT_FEATURES] for k in range(3)]
        assert rel == pytest.approx([-5.0 / 50.0, 10.0 / 50.0, 30.0 / 50.0])
        assert all(obs[AV_FEATURES + k * PARTICIPANT_FEATURES + 7] == 1.0 for k in range(3))
        assert_array_equal(obs[AV_FEATURES + 3 * PARTICIPANT_FEATURES:], 0.0)

    def test_nearest_participants_fill_the_slots(self, world_builder, parked_vehicle):
        participants = tuple(parked_vehicle(i + 1, 20.0 + 10.0 * (i + 1), 0.0) for i in range(7))
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0), participants)
        obs = observe(world)
        assert obs[AV_FEATURES + 4 * PARTICIPANT_FEATURES] == pytest.approx(50.0 / 50.0)

    def test_dimension_overrides(self, world_builder, parked_vehicle):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0), (parked_vehicle(1, 40.0, 0.0),))
        obs = observe(world, {0: (5.0, 2.0), 1: (6.0, 3.0)})
        assert obs[7:9] == pytest.approx([1.0, 1.0])
        assert obs[AV_FEATURES + 3:AV_FEATURES + 5] == pytest.approx([6.0 / 5.0, 3.0 / 2.0])


class TestStatus:
    def test_running(self, cruising_world):
        status = episode_status(cruising_world)
        assert status is EpisodeStatus.RUNNING
        assert not status.terminal and not status.ends_episode

    def test_collision(self, cruising_world, parked_vehicle):
        world = cruising_world._replace(participants=(parked_vehicle(1, 22.0, 0.5),))
        assert episode_status(world) is EpisodeStatus.COLLISION

    def test_off_course(self, world_builder):
        assert episode_status(world_builder(FrenetState(20.0, 8.0, 0.0, -2.0, 0.0, 0.0))) is EpisodeStatus.OFF_COURSE

    @pytest.mark.parametrize("d", [1.6, -1.6])
    def test_off_course_just_outside_the_target_lane(self, world_builder, d):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, d, 0.0, 0.0))
        assert not world.scenario.off_course_band
        assert episode_status(world) is EpisodeStatus.OFF_COURSE

    @pytest.mark.parametrize("d", [1.4, -1.4, 1.5])
    def test_within_the_tolerance_keeps_running(self, world_builder, d):
        assert episode_status(world_builder(FrenetState(20.0, 8.0, 0.0, d, 0.0, 0.0))) is EpisodeStatus.RUNNING

    def test_merging_scenario_uses_the_lane_band(self, world_builder):
        # Target lane 1: lane 0 is centred at d = -3.5.
        in_lane = world_builder(FrenetState(20.0, 8.0, 0.0, -3.5, 0.0, 0.0), scenario_id=3)
        assert in_lane.scenario.off_course_band
        assert episode_status(in_lane) is EpisodeStatus.RUNNING
        outside = world_builder(FrenetState(20.0, 8.0, 0.0, -5.1, 0.0, 0.0), scenario_id=3)
        assert episode_status(outside) is EpisodeStatus.OFF_COURSE
        past_goal = in_lane._replace(goal_sigma=15.0)
        assert episode_status(past_goal) is EpisodeStatus.OFF_COURSE

    def test_band_is_opt_in(self):
        assert [scenario_spec(i).off_course_band for i in (1, 2, 3, 4)] == [False, False, True, False]

    def test_success_needs_the_target_lane(self, world_builder):
        world = world_builder(FrenetState(20.0, 8.0, 0.0, 0.3, 0.0, 0.0))._replace(goal_sigma=15.0)
        assert episode_status(world) is EpisodeStatus.SUCCESS
        wrong_lane = world_builder(FrenetState(20.0, 8.0, 0.0, 3.5, 0.0, 0.0))._replace(goal_sigma=15.0)
        assert episode_status(wrong_lane) is EpisodeStatus.OFF_COURSE

    def test_timeout_is_not_terminal(self, world_builder):
        status = episode_status(world_builder(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0), time=60.0))
        assert status is EpisodeStatus.TIMEOUT
        assert status.ends_episode and not status.terminal


class TestTrace:
    def test_rows_and_columns(self, tmp_path, cruising_world, parked_vehicle):
        world = cruising_world._replace(participants=(parked_vehicle(1, 40.0, 0.0),))
        nxt = _advanced(world, 0.8)
        path = tmp_path / "traces" / "ep.csv"
        write_trace(path, [world, nxt], [compute_reward(world, nxt)])
        with open(path) as f:
            rows = list(csv.reader(f))
        assert rows[0] == trace_header(5)
        assert len(rows) == 3
        assert all(len(r) == len(rows[0]) for r in rows)
        assert float(rows[2][1]) == pytest.approx(20.8)
        assert rows[1][-1] == "" and rows[2][-1] != ""
        assert rows[1][9] == ""

    def test_reward_count_must_match(self, tmp_path, cruising_world):
        with pytest.raises(ValueError):
            write_trace(tmp_path / "ep.csv", [cruising_world], [compute_reward(cruising_world,
                                                                                _advanced(cruising_world, 0.8))])


def test_exact_collision_touching(parked_vehicle):
    a, b = parked_vehicle(1, 10.0, 0.0), parked_vehicle(2, 14.5, 0.0)
    assert check_collision(a, b)
    assert not check_collision(a, parked_vehicle(3, 14.6, 0.0))
    assert_allclose(a.frenet.sigma, 10.0)
