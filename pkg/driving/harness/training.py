"""Seeded training runs.

One root ``SeedSequence`` per run fans out into independent streams for the
episode worlds, exploration noise, replay sampling and network initialisation,
so changing one of them leaves the others untouched. Each spawned world splits
its own seed again into spawn, participant behaviour and tracking noise.
"""
import logging
from pathlib import Path
from typing import NamedTuple, Optional

import jax
import numpy as np
from tqdm import tqdm

from nn.init_config import info2_enabled

from driving.agent import AgentState, DdpgAgent, ReplayBuffer, ReplayTransition
from driving.targets import make_target_fn
from driving.world import EpisodeStatus, compute_reward, episode_status, observation_size, spawn_scenario
from driving.harness.config import RunConfig
from driving.harness.episode import advance, make_agent, observe_for, prediction_context
from driving.harness.evaluation import EvalSummary, evaluate_policy
from driving.harness.metrics import EVAL_HEADER, METRICS_HEADER, EvalRow, RollingMetrics, append_row, write_rows

logger = logging.getLogger(__name__)

METRICS_FILE = "metrics.csv"
EVAL_FILE = "eval.csv"
BEST_DIR = "best"
FINAL_DIR = "final"


class TrainingResult(NamedTuple):
    metrics_path: Path
    eval_path: Path
    best_checkpoint: Optional[Path]
    best_eval: Optional[EvalSummary]
    state: AgentState


class _Best:
    def __init__(self):
        self.summary: Optional[EvalSummary] = None

    def improves(self, summary: EvalSummary) -> bool:
        if self.summary is None:
            return True
        return (summary.success_rate, summary.avg_reward_per_step) > (self.summary.success_rate,
                                                                       self.summary.avg_reward_per_step)


def _evaluate(agent: DdpgAgent, state: AgentState, cfg: RunConfig, env_step: int, eval_path: Path, out: Path,
              best: _Best) -> None:
    summary = evaluate_policy(agent, state.actor, cfg)
    append_row(eval_path, EvalRow(env_step, summary.avg_reward_per_step, summary.collision_rate,
                                  summary.success_rate))
    logger.info("step %d: eval reward/step %.4f, collisions %.1f%%, success %.1f%%", env_step,
                summary.avg_reward_per_step, 100 * summary.collision_rate, 100 * summary.success_rate)
    if best.improves(summary):
        best.summary = summary
        agent.save(state, out / BEST_DIR)


def run_training(cfg: RunConfig, progress: bool = True) -> TrainingResult:
    """Train one method on one scenario.

    Writes ``metrics.csv`` (one row per episode), ``eval.csv`` (one row per
    evaluation), the best checkpoint by evaluation success rate under ``best/``
    and the last networks under ``final/``.

    Raises:
        ConfigError: invalid configuration, before anything is written.
    """
    cfg.validate()
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    metrics_path, eval_path = out / METRICS_FILE, out / EVAL_FILE
    write_rows(metrics_path, METRICS_HEADER, [])
    write_rows(eval_path, EVAL_HEADER, [])

    episode_seq, explore_seq, replay_seq, init_seq = np.random.SeedSequence(cfg.seed).spawn(4)
    explore_rng = np.random.default_rng(explore_seq)
    replay_rng = np.random.default_rng(replay_seq)
    key = jax.random.PRNGKey(int(init_seq.generate_state(1)[0]))

    scenario = cfg.scenario
    agent = make_agent(cfg, observation_size(cfg.world.n_max))
    state = agent.init_state(key)
    target_fn = make_target_fn(cfg.target_spec)
    buffer = ReplayBuffer(cfg.agent.replay_capacity)
    metrics = RollingMetrics()
    best = _Best()
    evaluate = cfg.eval_every > 0 and cfg.eval_episodes > 0
    last_eval_step = 0

    logger.info("Training %s on scenario %d, seed %d, %d env steps", cfg.method, cfg.scenario_id, cfg.seed,
                cfg.total_env_steps)
    env_step = 0
    with tqdm(total=cfg.total_env_steps, disable=not progress or info2_enabled(), unit="step") as bar:
        while env_step < cfg.total_env_steps:
            world = spawn_scenario(scenario, episode_seq.spawn(1)[0], cfg.world)
            obs = observe_for(world, cfg)
            rewards = []
            status = EpisodeStatus.RUNNING
            while not status.ends_episode and env_step < cfg.total_env_steps:
                action = agent.select_action(state.actor, obs, cfg.agent.exploration_sigma(env_step), explore_rng)
                next_world = advance(world, action, cfg)
                reward = compute_reward(world, next_world).total
                status = episode_status(next_world)
                next_obs = observe_for(next_world, cfg)
                buffer.store(ReplayTransition(obs, action, reward, next_obs, status.terminal,
                                              prediction_context(world, next_world, cfg)))
                rewards.append(reward)
                env_step += 1
                bar.update(1)

                if cfg.agent.updates_at(env_step, len(buffer)):
                    batch = buffer.sample(cfg.agent.batch_size, replay_rng)
                    state, critic_loss, actor_loss = agent.update(state, batch, target_fn)
                    logger.debug("update %d: critic loss %.5f, actor loss %.5f", state.updates, critic_loss,
                                 actor_loss)
                if evaluate and env_step % cfg.eval_every == 0:
                    _evaluate(agent, state, cfg, env_step, eval_path, out, best)
                    last_eval_step = env_step
                world, obs = next_world, next_obs

            row = metrics.add(env_step, float(np.mean(rewards)), status == EpisodeStatus.COLLISION,
                              status == EpisodeStatus.SUCCESS, len(rewards))
            append_row(metrics_path, row)
            bar.set_postfix_str("success {:.0%} collision {:.0%}".format(row.roll_success_rate,
                                                                         row.roll_collision_rate))

    if cfg.eval_episodes > 0 and last_eval_step != env_step:
        _evaluate(agent, state, cfg, env_step, eval_path, out, best)
    agent.save(state, out / FINAL_DIR)
    best_checkpoint = out / BEST_DIR if best.summary is not None else None
    logger.info("Finished %d episodes; best checkpoint %s", len(metrics.rows), best_checkpoint)
    return TrainingResult(metrics_path, eval_path, best_checkpoint, best.summary, state)
