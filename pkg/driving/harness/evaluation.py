import logging
from pathlib import Path
from typing import List, NamedTuple, Optional, Union

import numpy as np
from tqdm import tqdm

from driving.agent import DdpgAgent
from driving.world import EpisodeStatus, observation_size, spawn_scenario, write_trace
from driving.harness.config import RunConfig
from driving.harness.episode import EpisodeResult, make_agent, run_episode
from driving.harness.errors import ConfigError

logger = logging.getLogger(__name__)

# Second entropy word of the evaluation seed tree.
EVAL_SEED_TAG = 0x5EED


class EvalSummary(NamedTuple):
    avg_reward_per_step: float
    collision_rate: float
    success_rate: float
    episodes: int


def eval_seeds(seed: int, episodes: int) -> List[np.random.SeedSequence]:
    """The same ``episodes`` seeds for every evaluation of a run."""
    return np.random.SeedSequence((seed, EVAL_SEED_TAG)).spawn(episodes)


def summarize(results: List[EpisodeResult]) -> EvalSummary:
    n = len(results)
    return EvalSummary(
        avg_reward_per_step=float(np.mean([r.avg_reward_per_step for r in results])),
        collision_rate=sum(r.status == EpisodeStatus.COLLISION for r in results) / n,
        success_rate=sum(r.status == EpisodeStatus.SUCCESS for r in results) / n,
        episodes=n,
    )


def evaluate_policy(agent: DdpgAgent, actor, cfg: RunConfig, trace_dir: Optional[Union[str, Path]] = None,
                    progress: bool = False) -> EvalSummary:
    """Run ``cfg.eval_episodes`` noise-free episodes on the run's evaluation seeds.

    Raises:
        ConfigError: ``cfg.eval_episodes`` is zero.
    """
    if cfg.eval_episodes < 1:
        raise ConfigError("evaluation needs at least one episode, got {}".format(cfg.eval_episodes))
    scenario = cfg.scenario
    results = []
    for i, seq in enumerate(tqdm(eval_seeds(cfg.seed, cfg.eval_episodes), desc="eval", disable=not progress)):
        result = run_episode(agent, actor, spawn_scenario(scenario, seq, cfg.world), cfg)
        results.append(result)
        if trace_dir is not None:
            write_trace(Path(trace_dir) / "episode_{:03d}.csv".format(i), result.worlds, result.rewards)
    return summarize(results)


def run_eval(cfg: RunConfig, checkpoint: Union[str, Path], trace_dir: Optional[Union[str, Path]] = None,
             progress: bool = True) -> EvalSummary:
    """Evaluate a saved checkpoint.

    Raises:
        ConfigError: invalid configuration or ``eval_episodes == 0``.
        CheckpointError: unreadable checkpoint or one that does not fit the method's networks.
    """
    cfg.validate()
    if cfg.eval_episodes < 1:
        raise ConfigError("evaluation needs at least one episode, got {}".format(cfg.eval_episodes))
    agent = make_agent(cfg, observation_size(cfg.world.n_max))
    state = agent.load(checkpoint)
    summary = evaluate_policy(agent, state.actor, cfg, trace_dir, progress)
    logger.info("Evaluated %s over %d episodes: reward/step %.4f, collisions %.1f%%, success %.1f%%",
                checkpoint, summary.episodes, summary.avg_reward_per_step, 100 * summary.collision_rate,
                100 * summary.success_rate)
    return summary
