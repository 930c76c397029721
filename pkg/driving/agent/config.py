from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class AgentConfig:
    """DDPG hyperparameters.

    Exploration noise is Gaussian in the actor's tanh space; its scale decays
    linearly from ``noise_sigma`` to ``final_noise_sigma`` over ``warmup_steps``.
    Network updates start once ``warmup_steps`` env steps have been taken.
    """
    gamma: float = 0.99
    lr_actor: float = 1e-4
    lr_critic: float = 1e-3
    replay_capacity: int = 200_000
    batch_size: int = 128
    tau: float = 0.005
    hidden: Tuple[int, ...] = (128, 128)
    noise_sigma: float = 0.5
    final_noise_sigma: float = 0.1
    warmup_steps: int = 2000
    update_every: int = 1

    def validate(self) -> None:
        """Raise ``ValueError`` naming the first out-of-range field."""
        if not 0.0 < self.gamma < 1.0:
            raise ValueError("gamma must be in (0, 1), got {}".format(self.gamma))
        if not 0.0 < self.tau <= 1.0:
            raise ValueError("tau must be in (0, 1], got {}".format(self.tau))
        if self.batch_size < 1 or self.replay_capacity < self.batch_size:
            raise ValueError("need 1 <= batch_size <= replay_capacity, got {} and {}".format(
                self.batch_size, self.replay_capacity))
        if self.update_every < 1 or self.warmup_steps < 0:
            raise ValueError("update_every must be >= 1 and warmup_steps >= 0")
        if self.lr_actor <= 0 or self.lr_critic <= 0:
            raise ValueError("learning rates must be positive")
        if self.noise_sigma < 0 or self.final_noise_sigma < 0:
            raise ValueError("exploration noise must be non-negative")

    def updates_at(self, env_step: int, stored: int) -> bool:
        """Whether to run an update after env step ``env_step`` with ``stored`` transitions in replay."""
        return (env_step >= self.warmup_steps and stored >= self.batch_size
                and env_step % self.update_every == 0)

    def exploration_sigma(self, env_step: int) -> float:
        if self.warmup_steps == 0:
            return self.final_noise_sigma
        frac = min(env_step / self.warmup_steps, 1.0)
        return self.noise_sigma + frac * (self.final_noise_sigma - self.noise_sigma)
