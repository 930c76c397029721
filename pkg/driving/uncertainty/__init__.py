from .errors import InvalidConfidenceError, NotPositiveSemidefiniteError
from .covariance import (EGO, OTHER, PARTICIPANT_KINDS, NoiseConfig, NoiseModel, check_psd,
                         constant_velocity_transition, make_noise_model, propagate_covariance, propagate_many)
from .ellipse import ZERO_ELLIPSE, Ellipse, confidence_ellipse
from .minkowski import (DEFAULT_ARC_SAMPLES, InflatedFootprint, collision_with_uncertainty, inflated_dimensions,
                        minkowski_inflate, rectangle_support, support_directions)
