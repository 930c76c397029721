"""Desk-scale comparison of all five methods on scenario 1.

Trains every method for 5 seeds at 50k environment steps each, prints the final
rolling success and collision rates per method and the paired-seed orderings,
and plots every run's curves. The whole sweep takes a couple of hours on one core.
"""
import sys
sys.path.append("..")

# Import the TQDM config for cleaner progress bars
import training_examples.helpers.tqdm_config # pyright: ignore
from tqdm import tqdm

import itertools
from dataclasses import replace
from pathlib import Path

import numpy as np

from driving.harness import METHODS, RunConfig, emit_plots, read_metrics, run_training

OUT_DIR = Path("runs/scenario1_comparison")
SEEDS = range(5)
STEPS = 50_000


def final_rates(metrics_path):
    last = read_metrics(metrics_path)[-1]
    return last.roll_success_rate, last.roll_collision_rate


def main():
    base = RunConfig(scenario_id=1, total_env_steps=STEPS, eval_every=10_000, eval_episodes=20)
    success = {m: [] for m in METHODS}
    collision = {m: [] for m in METHODS}
    metrics_files = []

    runs = list(itertools.product(METHODS, SEEDS))
    for method, seed in (t := tqdm(runs)):
        t.set_description_str("{} seed {}".format(method, seed))
        cfg = replace(base, method=method, seed=seed, out_dir=str(OUT_DIR / method / "seed{}".format(seed)))
        result = run_training(cfg, progress=False)
        s, c = final_rates(result.metrics_path)
        success[method].append(s)
        collision[method].append(c)
        metrics_files.append(result.metrics_path)

    print("method       success   collision")
    for method in METHODS:
        print("{:<12} {:>7.1%}   {:>7.1%}".format(method, np.mean(success[method]), np.mean(collision[method])))

    # Adjacent pairs in the expected order, counted over paired seeds.
    order = ["irp_up", "irp", "rp", "baseline2", "baseline1"]
    for better, worse in zip(order, order[1:]):
        wins = sum(a >= b for a, b in zip(success[better], success[worse]))
        print("{} >= {} in {}/{} seeds".format(better, worse, wins, len(SEEDS)))
    reduction = 1.0 - np.mean(collision["irp_up"]) / max(np.mean(collision["baseline2"]), 1e-12)
    print("irp_up collision rate vs baseline2: {:.1%} lower".format(reduction))

    for path in emit_plots(metrics_files, OUT_DIR / "plots"):
        print("Wrote", path)


if __name__ == "__main__":
    main()
