"""Command line entry point: ``python -m driving train|eval|plot``.

Settings are layered as defaults, then the ``--config`` file, then flags.
"""
import argparse
import logging
import sys
from typing import List, Optional

from nn import CheckpointError

from driving.harness.config import METHODS, RunConfig, load_config, with_overrides
from driving.harness.errors import ConfigError, MetricsFormatError
from driving.harness.evaluation import run_eval
from driving.harness.plots import emit_plots
from driving.harness.training import run_training

logger = logging.getLogger(__name__)


def _add_run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="key-value config file")
    parser.add_argument("--scenario", type=int, dest="scenario_id", help="scenario 1-4")
    parser.add_argument("--method", choices=METHODS)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--no-progress", action="store_true", help="hide progress bars")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="driving", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    train = commands.add_parser("train", help="train one method on one scenario")
    _add_run_flags(train)
    train.add_argument("--steps", type=int, dest="total_env_steps", help="environment steps")
    train.add_argument("--out", dest="out_dir", help="output directory")

    evaluate = commands.add_parser("eval", help="evaluate a checkpoint directory")
    _add_run_flags(evaluate)
    evaluate.add_argument("--checkpoint", required=True, help="directory with actor.bin and critic.bin")
    evaluate.add_argument("--episodes", type=int, dest="eval_episodes", help="evaluation episodes")
    evaluate.add_argument("--trace", help="write one trace CSV per episode into this directory")

    plot = commands.add_parser("plot", help="plot metrics CSVs as SVG charts")
    plot.add_argument("--out", required=True, help="output directory")
    plot.add_argument("files", nargs="+", help="metrics.csv files, one series each")
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    flags = {k: getattr(args, k, None) for k in ("scenario_id", "method", "seed", "total_env_steps", "out_dir",
                                                   "eval_episodes")}
    return with_overrides(cfg, **flags)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "plot":
            for path in emit_plots(args.files, args.out):
                print(path)
            return 0
        cfg = _run_config(args)
        if args.command == "train":
            result = run_training(cfg, progress=not args.no_progress)
            print(result.metrics_path)
        else:
            summary = run_eval(cfg, args.checkpoint, args.trace, progress=not args.no_progress)
            print("avg_reward_per_step={:.6f} collision_rate={:.4f} success_rate={:.4f} episodes={}".format(
                summary.avg_reward_per_step, summary.collision_rate, summary.success_rate, summary.episodes))
        return 0
    except (ConfigError, MetricsFormatError, CheckpointError) as e:
        logger.error("%s", e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
