class UndersizedBufferError(ValueError):
    """A batch larger than the number of stored transitions was requested."""


class MissingContextError(ValueError):
    """A predicted-return target needs the transition's prediction context (or its covariances)."""
