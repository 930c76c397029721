class UnknownScenarioError(ValueError):
    """The scenario id is not one of the four built-in scenarios."""


class EmptyTrajectoryError(ValueError):
    """A trajectory to follow has no samples."""


class TimeMismatchError(ValueError):
    """Two world states handed to the reward are not one step apart."""
