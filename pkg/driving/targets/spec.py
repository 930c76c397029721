from dataclasses import dataclass, field

from driving.frenet import DEFAULT_MAX_DURATION, horizon_steps
from driving.uncertainty import NoiseConfig

TD1 = "td1"
RP = "rp"
IRP = "irp"
IRP_UP = "irp_up"
STRATEGIES = (TD1, RP, IRP, IRP_UP)
PREDICTIVE = (RP, IRP, IRP_UP)


@dataclass(frozen=True)
class TargetSpec:
    """How the critic target is built.

    ``horizon / step`` rewards are accumulated (the first one is the received
    reward) before bootstrapping with the target networks; ``td1`` ignores the
    horizon and always uses a single step.
    """
    strategy: str = TD1
    step: float = 0.1
    horizon: float = 3.0
    gamma: float = 0.99
    noise: NoiseConfig = field(default_factory=NoiseConfig)
    max_goal_duration: float = DEFAULT_MAX_DURATION

    @property
    def confidence(self) -> float:
        return self.noise.confidence

    @property
    def n_steps(self) -> int:
        return 1 if self.strategy == TD1 else horizon_steps(self.step, self.horizon)

    @property
    def needs_context(self) -> bool:
        return self.strategy in PREDICTIVE

    def validate(self) -> None:
        if self.strategy not in STRATEGIES:
            raise ValueError("strategy must be one of {}, got {!r}".format(STRATEGIES, self.strategy))
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must be in (0, 1), got {}".format(self.gamma))
        horizon_steps(self.step, self.horizon)
        if not 0.0 < self.noise.confidence < 1.0:
            raise ValueError("confidence must be in (0, 1), got {}".format(self.noise.confidence))
