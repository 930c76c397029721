from .errors import MissingContextError, UndersizedBufferError
from .config import AgentConfig
from .replay import (Batch, PredictionContext, ReplayBuffer, ReplayTransition, collate, replay_sample,
                     replay_store)
from .ddpg import ACTOR_FILE, CRITIC_FILE, AgentState, Bootstrap, DdpgAgent, TargetFn, soft_update
