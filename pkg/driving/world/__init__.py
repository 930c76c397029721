from .errors import EmptyTrajectoryError, TimeMismatchError, UnknownScenarioError
from .config import SCENARIOS, RewardWeights, ScenarioSpec, SimConfig, kmh, scenario_spec
from .state import AV_ID, LaneChange, Road, VehicleState, WorldState, generator_from_state, vehicle_with_frenet
from .scenarios import build_road, scenario_world, spawn_scenario
from .traffic import (find_leader, idm_acceleration, participants_at, predict_participants, stack_predictions,
                      step_participants)
from .tracking import step_av, step_av_control
from .collision import check_collision, collides_with_any, vehicle_rectangle
from .reward import RewardBreakdown, compute_reward
from .observation import AV_FEATURES, PARTICIPANT_FEATURES, observation_size, observe
from .status import EpisodeStatus, episode_status, is_off_course, reached_goal
from .trace import trace_header, write_trace
