"""Simulation, reward and scenario settings.

All of them are frozen dataclasses so a world can carry its configuration by value.
Speeds are in m/s, distances in m, times in s, angles in rad.
"""
import math
from dataclasses import dataclass, field, replace
from typing import Dict, Optional, Tuple

from driving.world.errors import UnknownScenarioError


def kmh(value: float) -> float:
    return value / 3.6


@dataclass(frozen=True)
class RewardWeights:
    """Weights of the per-step reward; penalties are negative."""
    lat_acc: float = -0.05
    long_acc: float = -0.05
    lat_jerk: float = -0.01
    long_jerk: float = -0.01
    lateral_dev: float = -0.1
    speed_dev: float = -0.05
    collision_hit: float = -10.0
    collision_free: float = 0.1


@dataclass(frozen=True)
class SimConfig:
    step: float = 0.1
    horizon: float = 3.0
    lane_width: float = 3.5
    speed_limit: float = kmh(50.0)
    # None means "drive at the speed limit".
    desired_speed: Optional[float] = None
    n_max: int = 5
    corridor: float = 20.0
    road_length: float = 1000.0
    waypoint_file: Optional[str] = None
    ds: float = 0.5
    tracking_pos_std: float = 0.05
    tracking_speed_std: float = 0.1
    wheelbase: float = 2.7
    max_goal_duration: float = 4.0
    lane_change_rate: float = 0.03
    lane_change_duration: float = 4.0
    idm_max_accel: float = 1.5
    idm_comfort_decel: float = 2.0
    idm_time_headway: float = 1.5
    idm_min_gap: float = 2.0
    idm_exponent: float = 4.0
    weights: RewardWeights = field(default_factory=RewardWeights)

    @property
    def v_des(self) -> float:
        return self.speed_limit if self.desired_speed is None else self.desired_speed

    @property
    def horizon_steps(self) -> int:
        return int(round(self.horizon / self.step))


@dataclass(frozen=True)
class ScenarioSpec:
    """Road layout and spawn distributions of one scenario.

    Lanes are numbered from the right. The AV is off course once it is more than
    ``success_tolerance`` from the target lane centre; with ``off_course_band`` set
    it may use the whole inclusive ``allowed_lanes`` band instead.
    """
    scenario_id: int
    lane_count: int
    start_lane: int
    target_lane: int
    allowed_lanes: Tuple[int, int]
    max_static: int
    max_dynamic: int
    static_lanes: Tuple[int, ...] = (0, 1)
    dynamic_lanes: Tuple[int, ...] = (0, 1)
    av_start_sigma: float = 20.0
    av_lateral_dev: float = 1.5
    av_heading_dev: float = math.radians(20.0)
    av_speed_range: Tuple[float, float] = (kmh(5.0), kmh(15.0))
    static_lateral_dev: float = 0.5
    static_heading_dev: float = math.radians(20.0)
    static_sigma_range: Tuple[float, float] = (25.0, 105.0)
    static_min_spacing: float = 20.0
    dynamic_sigma_range: Tuple[float, float] = (15.0, 110.0)
    dynamic_speed_range: Tuple[float, float] = (kmh(15.0), kmh(35.0))
    dynamic_min_spacing: float = 12.0
    vehicle_length: float = 4.5
    vehicle_width: float = 1.8
    goal_distance: float = 130.0
    success_tolerance: float = 1.5
    off_course_band: bool = False
    time_limit: float = 60.0


SCENARIOS: Dict[int, ScenarioSpec] = {
    1: ScenarioSpec(1, lane_count=2, start_lane=0, target_lane=0, allowed_lanes=(0, 1),
                    max_static=2, max_dynamic=0),
    2: ScenarioSpec(2, lane_count=2, start_lane=0, target_lane=0, allowed_lanes=(0, 1),
                    max_static=0, max_dynamic=5),
    # The AV starts one lane right of the target lane and has to merge.
    3: ScenarioSpec(3, lane_count=3, start_lane=0, target_lane=1, allowed_lanes=(0, 1),
                    max_static=0, max_dynamic=5, dynamic_lanes=(0, 1, 2), off_course_band=True),
    # Parked cars in the rightmost lane, moving traffic on the two lanes beside it.
    4: ScenarioSpec(4, lane_count=3, start_lane=0, target_lane=0, allowed_lanes=(0, 1),
                    max_static=2, max_dynamic=3, static_lanes=(0,), dynamic_lanes=(1, 2)),
}


def scenario_spec(scenario_id: int, **overrides) -> ScenarioSpec:
    """Built-in scenario with optional field overrides.

    Raises:
        UnknownScenarioError: ``scenario_id`` not in 1..4.
    """
    if scenario_id not in SCENARIOS:
        raise UnknownScenarioError("unknown scenario {!r}, expected one of {}".format(scenario_id, sorted(SCENARIOS)))
    return replace(SCENARIOS[scenario_id], **overrides)
