"""Value types of the simulated world."""
from typing import Any, Dict, NamedTuple, Optional, Tuple

import numpy as np

from driving.frenet import FrenetState, QuinticCoeffs, ReferenceLine
from driving.world.config import ScenarioSpec, SimConfig

AV_ID = 0


class LaneChange(NamedTuple):
    """Lateral quintic a participant is committed to; ``elapsed`` counts from its start."""
    lateral: QuinticCoeffs
    elapsed: float
    target_lane: int


class VehicleState(NamedTuple):
    """A vehicle in road coordinates.

    ``heading`` is the angle to the road tangent. Dynamic vehicles keep it equal to
    the direction of their Frenet velocity; parked ones keep their spawn heading.
    """
    id: int
    frenet: FrenetState
    heading: float
    length: float
    width: float
    lane_index: int
    is_static: bool
    desired_speed: float = 0.0
    lane_change: Optional[LaneChange] = None


class Road(NamedTuple):
    """Reference line along the target lane centre plus the lane layout around it."""
    line: ReferenceLine
    lane_count: int
    lane_width: float
    target_lane: int
    allowed_lanes: Tuple[int, int]
    speed_limit: float

    def lane_center(self, lane: int) -> float:
        return (lane - self.target_lane) * self.lane_width

    def lane_of(self, d: float) -> int:
        lane = int(np.floor(d / self.lane_width + self.target_lane + 0.5))
        return min(max(lane, 0), self.lane_count - 1)

    def allowed_band(self, margin: float) -> Tuple[float, float]:
        lo, hi = self.allowed_lanes
        return self.lane_center(lo) - margin, self.lane_center(hi) + margin


class WorldState(NamedTuple):
    """Complete simulator state; stepping returns a new value.

    ``rng_state`` drives participant behaviour and ``tracking_rng_state`` the AV
    tracking noise, both as ``numpy`` bit generator states.
    """
    time: float
    av: VehicleState
    participants: Tuple[VehicleState, ...]
    road: Road
    goal_sigma: float
    rng_state: Dict[str, Any]
    tracking_rng_state: Dict[str, Any]
    config: SimConfig
    scenario: ScenarioSpec


def generator_from_state(state: Dict[str, Any]) -> np.random.Generator:
    rng = np.random.Generator(np.random.PCG64())
    rng.bit_generator.state = state
    return rng


def vehicle_with_frenet(vehicle: VehicleState, fs: FrenetState, road: Road) -> VehicleState:
    """Move a vehicle to ``fs``, updating heading and lane index."""
    heading = vehicle.heading if vehicle.is_static else fs.heading
    return vehicle._replace(frenet=fs, heading=heading, lane_index=road.lane_of(fs.d))
