"""Traffic participant behaviour: IDM car following plus random lane changes.

Leaders are other participants in the same lane; the AV is never treated as a
leader, so participant motion does not depend on what the AV does.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from driving.frenet import FrenetState, PlannedTrajectory, evaluate_state, horizon_steps, quintic_coeffs
from driving.world.config import SimConfig
from driving.world.state import LaneChange, Road, VehicleState, WorldState, generator_from_state, vehicle_with_frenet

logger = logging.getLogger(__name__)

MIN_GAP = 0.1


def idm_acceleration(speed: float, desired_speed: float, gap: Optional[float], closing_speed: float,
                     config: SimConfig) -> float:
    """Intelligent Driver Model acceleration.

    Args:
        speed: Own speed.
        desired_speed: Free-road target speed, must be positive.
        gap: Bumper-to-bumper distance to the leader, ``None`` on a free road.
        closing_speed: Own speed minus leader speed.
        config: IDM parameters.
    """
    a, b = config.idm_max_accel, config.idm_comfort_decel
    free = 1.0 - (speed / desired_speed) ** config.idm_exponent
    if gap is None:
        return a * free
    s_star = config.idm_min_gap + max(0.0, speed * config.idm_time_headway
                                      + speed * closing_speed / (2.0 * np.sqrt(a * b)))
    return a * (free - (s_star / max(gap, MIN_GAP)) ** 2)


def find_leader(vehicle: VehicleState, others: Sequence[VehicleState]) -> Optional[VehicleState]:
    """Closest participant ahead in the same lane."""
    ahead = [o for o in others if o.id != vehicle.id and o.lane_index == vehicle.lane_index
             and o.frenet.sigma > vehicle.frenet.sigma]
    return min(ahead, key=lambda o: o.frenet.sigma) if ahead else None


def start_lane_change(vehicle: VehicleState, road: Road, rng: np.random.Generator,
                      config: SimConfig) -> Optional[LaneChange]:
    options = [lane for lane in (vehicle.lane_index - 1, vehicle.lane_index + 1) if 0 <= lane < road.lane_count]
    if not options:
        return None
    target = int(rng.choice(options))
    fs = vehicle.frenet
    lateral = quintic_coeffs((fs.d, fs.d_dot, fs.d_ddot), (road.lane_center(target), 0.0, 0.0),
                             config.lane_change_duration)
    return LaneChange(lateral, 0.0, target)


def _advance(vehicle: VehicleState, participants: Sequence[VehicleState], road: Road, step: float,
             lane_change: Optional[LaneChange], config: SimConfig) -> VehicleState:
    fs = vehicle.frenet
    speed = fs.sigma_dot
    v0 = max(min(vehicle.desired_speed, road.speed_limit), 1e-3)
    leader = find_leader(vehicle, participants)
    if leader is None:
        accel = idm_acceleration(speed, v0, None, 0.0, config)
    else:
        gap = leader.frenet.sigma - fs.sigma - 0.5 * (leader.length + vehicle.length)
        accel = idm_acceleration(speed, v0, gap, speed - leader.frenet.sigma_dot, config)
    new_speed = min(max(speed + accel * step, 0.0), road.speed_limit)
    sigma = fs.sigma + 0.5 * (speed + new_speed) * step

    d, d_dot, d_ddot = fs.d, 0.0, 0.0
    if lane_change is not None:
        elapsed = lane_change.elapsed + step
        if elapsed >= config.lane_change_duration - 1e-9:
            d = road.lane_center(lane_change.target_lane)
            lane_change = None
        else:
            d, d_dot, d_ddot = (float(v) for v in evaluate_state(lane_change.lateral, elapsed))
            lane_change = lane_change._replace(elapsed=elapsed)

    new_fs = FrenetState(sigma, new_speed, (new_speed - speed) / step, d, d_dot, d_ddot)
    return vehicle_with_frenet(vehicle, new_fs, road)._replace(lane_change=lane_change)


def step_participants(world: WorldState, step: float, lane_changes: bool = True) -> WorldState:
    """Advance every moving participant by ``step`` seconds.

    Parked participants are returned unchanged and ``world.time`` is left alone; the
    AV step advances the clock.

    Args:
        world: Current world.
        step: Time step in seconds.
        lane_changes: Draw new lane changes from ``world.rng_state``. Maneuvers in
            progress always continue; with ``False`` no random numbers are drawn.
    """
    config = world.config
    rng = generator_from_state(world.rng_state) if lane_changes else None
    trigger_probability = 1.0 - np.exp(-config.lane_change_rate * step)

    moved = []
    for vehicle in world.participants:
        if vehicle.is_static:
            moved.append(vehicle)
            continue
        lane_change = vehicle.lane_change
        if rng is not None and rng.random() < trigger_probability and lane_change is None:
            lane_change = start_lane_change(vehicle, world.road, rng, config)
            if lane_change is not None:
                logger.debug("Participant %d changes to lane %d at t=%.1f", vehicle.id, lane_change.target_lane,
                             world.time)
        moved.append(_advance(vehicle, world.participants, world.road, step, lane_change, config))

    rng_state = rng.bit_generator.state if rng is not None else world.rng_state
    return world._replace(participants=tuple(moved), rng_state=rng_state)


def predict_participants(world: WorldState, horizon: float, step: float) -> List[PlannedTrajectory]:
    """Roll every participant forward with new lane changes suppressed.

    Returns one trajectory per participant, in ``world.participants`` order, holding
    the states at ``t + step ... t + horizon``.
    """
    n = horizon_steps(step, horizon)
    rows = np.empty((len(world.participants), n, 6))
    w = world
    for k in range(n):
        w = step_participants(w, step, lane_changes=False)
        for i, vehicle in enumerate(w.participants):
            rows[i, k] = vehicle.frenet.as_array()
    return [PlannedTrajectory(float(step), float(horizon), rows[i], None) for i in range(len(world.participants))]


def stack_predictions(predictions: Sequence[PlannedTrajectory], n_steps: int) -> np.ndarray:
    """``(participants, n_steps, 6)`` array of predicted states."""
    if not predictions:
        return np.zeros((0, n_steps, 6))
    return np.stack([p.states for p in predictions])


def participants_at(participants: Sequence[VehicleState], states: np.ndarray, road: Road) -> tuple:
    """Participants moved to one predicted step; ``states`` is ``(participants, 6)``."""
    return tuple(vehicle_with_frenet(v, FrenetState.from_array(row), road)
                 for v, row in zip(participants, states))
