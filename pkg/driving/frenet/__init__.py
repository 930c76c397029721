from .errors import (DegenerateInputError, InvalidDurationError, NonDivisibleStepError, OutOfCorridorError,
                     OutOfRangeError, SingularProjectionError)
from .state import FRENET_FIELDS, FrenetState
from .reference_line import (DEFAULT_DS, ReferenceLine, build_reference_line, line_from_file, load_waypoints,
                             nearest_index, straight_line)
from .conversion import CartesianPose, cartesian_to_frenet, frenet_to_cartesian, wrap_angle
from .quintic import QuinticCoeffs, evaluate, evaluate_state, quintic_coeffs, squared_jerk_integral
from .trajectory import (DEFAULT_MAX_DURATION, PlannedTrajectory, continuation_goal, horizon_steps,
                         plan_trajectory)
