"""Training curves as SVG: reward per step, collision rate and success rate against env steps."""
import logging
from pathlib import Path
from typing import Dict, List, Sequence, Union

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from driving.harness.metrics import ROLLING_WINDOW, MetricsRow, read_metrics  # noqa: E402

logger = logging.getLogger(__name__)

CHARTS = (
    ("avg_reward", "Average reward per step", "avg_reward_per_step"),
    ("collision_rate", "Collision rate", "collision"),
    ("success_rate", "Success rate", "success"),
)


def rolling_mean(values: np.ndarray, window: int = ROLLING_WINDOW) -> np.ndarray:
    """Mean over the trailing ``window`` values (fewer at the start)."""
    values = np.asarray(values, dtype=np.float64)
    sums = np.cumsum(values)
    lagged = np.zeros_like(sums)
    lagged[window:] = sums[:-window]
    counts = np.minimum(np.arange(1, len(values) + 1), window)
    return (sums - lagged) / counts


def series_labels(paths: Sequence[Path]) -> List[str]:
    """File stems; clashing stems get parent directories prepended until they differ."""
    def label(p: Path, depth: int) -> str:
        return "/".join(p.with_suffix("").parts[-depth:])

    depths = [1] * len(paths)
    while True:
        labels = [label(p, d) for p, d in zip(paths, depths)]
        clashes = [i for i, name in enumerate(labels)
                   if labels.count(name) > 1 and depths[i] < len(paths[i].with_suffix("").parts)]
        if not clashes:
            return labels
        for i in clashes:
            depths[i] += 1


def emit_plots(metrics_files: Sequence[Union[str, Path]], out_dir: Union[str, Path],
               window: int = ROLLING_WINDOW) -> List[Path]:
    """Write one SVG per chart with a series per metrics file.

    Raises:
        ValueError: no input files.
        MetricsFormatError: an input file is malformed.
    """
    if not metrics_files:
        raise ValueError("need at least one metrics file to plot")
    paths = [Path(p) for p in metrics_files]
    runs: Dict[str, List[MetricsRow]] = {label: read_metrics(p) for label, p in zip(series_labels(paths), paths)}
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    written = []
    for name, title, column in CHARTS:
        fig, ax = plt.subplots(figsize=(8, 5))
        for label, rows in runs.items():
            steps = np.array([r.env_step for r in rows])
            values = np.array([float(getattr(r, column)) for r in rows])
            ax.plot(steps, rolling_mean(values, window), label=label)
        ax.set_title("{} (rolling {} episodes)".format(title, window))
        ax.set_xlabel("Environment steps")
        ax.set_ylabel(title)
        ax.grid(True, alpha=0.3)
        ax.legend()
        path = out_dir / "{}.svg".format(name)
        # no timestamp
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
        written.append(path)
    logger.info("Wrote %d charts for %d runs to %s", len(written), len(runs), out_dir)
    return written
