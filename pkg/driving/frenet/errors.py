class DegenerateInputError(ValueError):
    """Waypoints cannot define a reference line (too few, duplicated, or shorter than one step)."""


class OutOfCorridorError(ValueError):
    """A pose lies farther from the reference line than the configured corridor."""


class OutOfRangeError(ValueError):
    """An arclength lies outside the reference line."""


class SingularProjectionError(ValueError):
    """The lateral offset reaches the curvature centre (1 - d * kappa <= 0)."""


class InvalidDurationError(ValueError):
    """A polynomial or goal duration is not positive or exceeds the allowed maximum."""


class NonDivisibleStepError(ValueError):
    """The planning horizon is not an integer number of steps."""
