import math

import jax
import numpy as np
import pytest

from driving.agent import AgentConfig, DdpgAgent
from driving.actions import GOAL_BOUNDS
from driving.frenet import FrenetState, build_reference_line, straight_line
from driving.world import (AV_ID, SimConfig, VehicleState, WorldState, build_road, observation_size, scenario_spec,
                           scenario_world)


@pytest.fixture
def straight():
    return straight_line(200.0)


@pytest.fixture
def curved():
    """Quarter circle of radius 100 m, turning left."""
    theta = np.linspace(0.0, math.pi / 2, 2000)
    return build_reference_line(np.stack([100.0 * np.sin(theta), 100.0 * (1.0 - np.cos(theta))], axis=1))


@pytest.fixture
def quiet_config():
    """No tracking noise and no random lane changes: predictions match the simulator exactly."""
    return SimConfig(tracking_pos_std=0.0, tracking_speed_std=0.0, lane_change_rate=0.0)


def _make_world(av_frenet, participants=(), config=SimConfig(), scenario_id=1, time=0.0):
    """Hand-built world on a scenario's road."""
    spec = scenario_spec(scenario_id)
    road = build_road(spec, config)
    av = VehicleState(AV_ID, av_frenet, av_frenet.heading, spec.vehicle_length, spec.vehicle_width,
                      road.lane_of(av_frenet.d), False, config.v_des)
    return WorldState(time, av, tuple(participants), road, av_frenet.sigma + spec.goal_distance,
                      np.random.default_rng(1).bit_generator.state, np.random.default_rng(2).bit_generator.state,
                      config, spec)


def _parked(vehicle_id, sigma, d, length=4.5, width=1.8, lane=1):
    return VehicleState(vehicle_id, FrenetState(sigma, 0.0, 0.0, d, 0.0, 0.0), 0.0, length, width, lane, True)


@pytest.fixture
def cruising_world(quiet_config):
    return _make_world(FrenetState(20.0, 8.0, 0.0, 0.0, 0.0, 0.0), config=quiet_config)


@pytest.fixture
def scenario1_world():
    return scenario_world(1, seed=3)


@pytest.fixture
def goal_agent():
    return DdpgAgent(observation_size(SimConfig().n_max), GOAL_BOUNDS, AgentConfig(hidden=(16, 16), batch_size=4))


@pytest.fixture
def goal_agent_state(goal_agent):
    return goal_agent.init_state(jax.random.PRNGKey(0))


@pytest.fixture
def world_builder():
    return _make_world


@pytest.fixture
def parked_vehicle():
    return _parked
