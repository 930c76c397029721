"""Randomised initial worlds for the four scenarios."""
import logging
from typing import List, Optional, Sequence, Union

import numpy as np

from driving.frenet import FrenetState, line_from_file, straight_line
from driving.world.config import SCENARIOS, ScenarioSpec, SimConfig, scenario_spec
from driving.world.errors import UnknownScenarioError
from driving.world.state import AV_ID, Road, VehicleState, WorldState

logger = logging.getLogger(__name__)

Seed = Union[int, np.random.SeedSequence]
MAX_PLACEMENT_TRIES = 100


def build_road(spec: ScenarioSpec, config: SimConfig) -> Road:
    if config.waypoint_file:
        line = line_from_file(config.waypoint_file, config.ds)
    else:
        line = straight_line(config.road_length, config.ds)
    return Road(line, spec.lane_count, config.lane_width, spec.target_lane, spec.allowed_lanes, config.speed_limit)


def _place(rng: np.random.Generator, count: int, lanes: Sequence[int], sigma_range, min_spacing: float,
           taken: List[tuple], any_lane: bool) -> List[tuple]:
    """Rejection-sample ``(lane, sigma)`` slots keeping ``min_spacing`` to earlier slots.

    With ``any_lane`` the spacing applies across lanes too, so parked cars never block
    every lane at once.
    """
    placed = []
    for _ in range(count):
        for _ in range(MAX_PLACEMENT_TRIES):
            lane = int(rng.choice(lanes))
            sigma = float(rng.uniform(*sigma_range))
            neighbours = [s for other_lane, s in taken + placed if any_lane or other_lane == lane]
            if all(abs(sigma - s) >= min_spacing for s in neighbours):
                placed.append((lane, sigma))
                break
        else:
            logger.debug("Could not place a vehicle after %d tries, spawning fewer", MAX_PLACEMENT_TRIES)
    return placed


def spawn_scenario(spec: ScenarioSpec, seed: Seed, config: SimConfig = SimConfig()) -> WorldState:
    """Spawn the AV and a random set of participants.

    The AV starts near its start lane centre with a random lateral offset, heading and
    speed. Parked cars and moving traffic are placed ahead of it; the goal lies
    ``spec.goal_distance`` ahead of the AV.

    Args:
        spec: Scenario description.
        seed: Integer seed or ``SeedSequence``. Spawning, participant behaviour and
            tracking noise each get their own child stream.
        config: Simulation settings carried by the world.

    Raises:
        UnknownScenarioError: ``spec.scenario_id`` is not a built-in scenario.
    """
    if spec.scenario_id not in SCENARIOS:
        raise UnknownScenarioError("unknown scenario {!r}".format(spec.scenario_id))
    seq = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    spawn_seq, behavior_seq, tracking_seq = seq.spawn(3)
    rng = np.random.default_rng(spawn_seq)
    road = build_road(spec, config)

    sigma0 = spec.av_start_sigma
    d0 = road.lane_center(spec.start_lane) + rng.uniform(-spec.av_lateral_dev, spec.av_lateral_dev)
    theta0 = rng.uniform(-spec.av_heading_dev, spec.av_heading_dev)
    v0 = rng.uniform(*spec.av_speed_range)
    av_frenet = FrenetState(sigma0, v0 * np.cos(theta0), 0.0, d0, v0 * np.sin(theta0), 0.0)
    av = VehicleState(AV_ID, av_frenet, float(theta0), spec.vehicle_length, spec.vehicle_width,
                      road.lane_of(d0), False, config.v_des)

    n_static = int(rng.integers(0, spec.max_static + 1))
    n_dynamic = int(rng.integers(0, spec.max_dynamic + 1))
    static_range = (sigma0 + spec.static_sigma_range[0], sigma0 + spec.static_sigma_range[1])
    dynamic_range = (sigma0 + spec.dynamic_sigma_range[0], sigma0 + spec.dynamic_sigma_range[1])
    static_slots = _place(rng, n_static, spec.static_lanes, static_range, spec.static_min_spacing, [], True)
    dynamic_slots = _place(rng, n_dynamic, spec.dynamic_lanes, dynamic_range, spec.dynamic_min_spacing,
                           static_slots, False)

    participants = []
    for lane, sigma in static_slots:
        d = road.lane_center(lane) + rng.uniform(-spec.static_lateral_dev, spec.static_lateral_dev)
        heading = rng.uniform(-spec.static_heading_dev, spec.static_heading_dev)
        participants.append(VehicleState(len(participants) + 1, FrenetState(sigma, 0.0, 0.0, d, 0.0, 0.0),
                                         float(heading), spec.vehicle_length, spec.vehicle_width, lane, True))
    for lane, sigma in dynamic_slots:
        speed = float(rng.uniform(*spec.dynamic_speed_range))
        fs = FrenetState(sigma, speed, 0.0, road.lane_center(lane), 0.0, 0.0)
        participants.append(VehicleState(len(participants) + 1, fs, 0.0, spec.vehicle_length, spec.vehicle_width,
                                         lane, False, config.v_des))
    participants = participants[:config.n_max]

    logger.debug("Scenario %d: %d parked, %d moving participants", spec.scenario_id, len(static_slots),
                 len(dynamic_slots))
    return WorldState(
        time=0.0,
        av=av,
        participants=tuple(participants),
        road=road,
        goal_sigma=sigma0 + spec.goal_distance,
        rng_state=np.random.default_rng(behavior_seq).bit_generator.state,
        tracking_rng_state=np.random.default_rng(tracking_seq).bit_generator.state,
        config=config,
        scenario=spec,
    )


def scenario_world(scenario_id: int, seed: Seed, config: Optional[SimConfig] = None) -> WorldState:
    return spawn_scenario(scenario_spec(scenario_id), seed, config or SimConfig())
