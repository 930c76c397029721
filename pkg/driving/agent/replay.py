"""Transitions and the uniform replay ring buffer."""
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from driving.agent.errors import UndersizedBufferError
from driving.frenet import FrenetState
from driving.world import Road, VehicleState, WorldState


class PredictionContext(NamedTuple):
    """What the predicted-return targets need to replay a transition.

    ``av_frenet`` and ``participants`` are the AV state and the participants the
    action was taken with. ``next_world`` is the realised state one step later,
    stored without its random generator states, which rollouts never draw from;
    its road, configuration and vehicles are shared with the live world.
    ``predictions`` holds the participants' predicted states
    ``(participants, T/step, 6)`` made at the time of the action and
    ``cov_ego``/``cov_other`` are the initial 4x4 covariances, shared between
    transitions.
    """
    av_frenet: FrenetState
    participants: Tuple[VehicleState, ...]
    next_world: WorldState
    predictions: np.ndarray
    cov_ego: Optional[np.ndarray] = None
    cov_other: Optional[np.ndarray] = None

    @property
    def road(self) -> Road:
        return self.next_world.road

    @classmethod
    def capture(cls, world: WorldState, next_world: WorldState, predictions: np.ndarray,
                cov_ego: Optional[np.ndarray] = None, cov_other: Optional[np.ndarray] = None) -> "PredictionContext":
        return cls(world.av.frenet, world.participants,
                   next_world._replace(rng_state=None, tracking_rng_state=None),
                   np.ascontiguousarray(predictions, dtype=np.float64), cov_ego, cov_other)


class ReplayTransition(NamedTuple):
    """``action`` is the physical action array (goal tuple or control command)."""
    obs: np.ndarray
    action: np.ndarray
    reward: float
    next_obs: np.ndarray
    done: bool
    ctx: Optional[PredictionContext] = None


class Batch(NamedTuple):
    obs: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_obs: np.ndarray
    dones: np.ndarray


def collate(transitions: List[ReplayTransition]) -> Batch:
    return Batch(
        obs=np.stack([t.obs for t in transitions]),
        actions=np.stack([np.asarray(t.action, dtype=np.float64) for t in transitions]),
        rewards=np.array([t.reward for t in transitions], dtype=np.float64),
        next_obs=np.stack([t.next_obs for t in transitions]),
        dones=np.array([t.done for t in transitions], dtype=bool),
    )


class ReplayBuffer:
    """Fixed-capacity ring buffer; the oldest transition is overwritten first."""

    def __init__(self, capacity: int):
        if capacity < 1:
            raise ValueError("capacity must be positive, got {}".format(capacity))
        self.capacity = capacity
        self._items: List[ReplayTransition] = []
        self._next = 0

    def __len__(self) -> int:
        return len(self._items)

    def store(self, transition: ReplayTransition) -> None:
        if len(self._items) < self.capacity:
            self._items.append(transition)
        else:
            self._items[self._next] = transition
        self._next = (self._next + 1) % self.capacity

    def sample(self, batch_size: int, rng: np.random.Generator) -> List[ReplayTransition]:
        """Uniform sample without replacement.

        Raises:
            UndersizedBufferError: fewer than ``batch_size`` transitions stored.
        """
        if batch_size > len(self._items):
            raise UndersizedBufferError("cannot sample {} transitions from a buffer holding {}".format(
                batch_size, len(self._items)))
        idx = rng.choice(len(self._items), size=batch_size, replace=False)
        return [self._items[i] for i in idx]

    def __iter__(self):
        """Stored transitions, oldest first."""
        if len(self._items) < self.capacity:
            return iter(list(self._items))
        return iter(self._items[self._next:] + self._items[:self._next])


def replay_store(buffer: ReplayBuffer, transition: ReplayTransition) -> None:
    buffer.store(transition)


def replay_sample(buffer: ReplayBuffer, batch_size: int, rng: np.random.Generator) -> List[ReplayTransition]:
    return buffer.sample(batch_size, rng)
