"""Per-episode training metrics and periodic evaluation rows as CSV.

Rolling rates are written as the mean over the trailing ``ROLLING_WINDOW``
episodes and checked against a recomputation from the per-episode flags
whenever a file is read back.
"""
import csv
import math
from collections import deque
from pathlib import Path
from typing import Iterable, List, NamedTuple, Union

from driving.harness.errors import MetricsFormatError

ROLLING_WINDOW = 100
RATE_TOLERANCE = 1e-9

METRICS_HEADER = ("episode", "env_step", "avg_reward_per_step", "collision", "success", "ep_len",
                  "roll_collision_rate", "roll_success_rate")
EVAL_HEADER = ("env_step", "avg_reward_per_step", "collision_rate", "success_rate")


class MetricsRow(NamedTuple):
    episode: int
    env_step: int
    avg_reward_per_step: float
    collision: bool
    success: bool
    ep_len: int
    roll_collision_rate: float
    roll_success_rate: float


class EvalRow(NamedTuple):
    env_step: int
    avg_reward_per_step: float
    collision_rate: float
    success_rate: float


class RollingMetrics:
    """Turns finished episodes into :class:`MetricsRow` objects with trailing-window rates."""

    def __init__(self, window: int = ROLLING_WINDOW):
        self.window = window
        self._collisions = deque(maxlen=window)
        self._successes = deque(maxlen=window)
        self.rows: List[MetricsRow] = []

    def add(self, env_step: int, avg_reward: float, collision: bool, success: bool, ep_len: int) -> MetricsRow:
        self._collisions.append(bool(collision))
        self._successes.append(bool(success))
        row = MetricsRow(len(self.rows), env_step, float(avg_reward), bool(collision), bool(success), ep_len,
                         sum(self._collisions) / len(self._collisions),
                         sum(self._successes) / len(self._successes))
        self.rows.append(row)
        return row


def _format(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    return repr(value) if isinstance(value, float) else str(value)


def write_rows(path: Union[str, Path], header: Iterable[str], rows: Iterable[tuple]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_format(v) for v in row])


def append_row(path: Union[str, Path], row: tuple) -> None:
    with open(path, "a", newline="", encoding="utf-8") as f:
        csv.writer(f, lineterminator="\n").writerow([_format(v) for v in row])


def write_metrics(path: Union[str, Path], rows: Iterable[MetricsRow]) -> None:
    write_rows(path, METRICS_HEADER, rows)


def _parse_flag(text: str) -> bool:
    if text not in ("0", "1"):
        raise ValueError("expected 0 or 1, got {!r}".format(text))
    return text == "1"


def _parse_metrics_row(fields: List[str]) -> MetricsRow:
    row = MetricsRow(int(fields[0]), int(fields[1]), float(fields[2]), _parse_flag(fields[3]),
                     _parse_flag(fields[4]), int(fields[5]), float(fields[6]), float(fields[7]))
    if not math.isfinite(row.avg_reward_per_step):
        raise ValueError("avg_reward_per_step is not finite")
    if not (0.0 <= row.roll_collision_rate <= 1.0 and 0.0 <= row.roll_success_rate <= 1.0):
        raise ValueError("rates must lie in [0, 1]")
    return row


def read_metrics(path: Union[str, Path], window: int = ROLLING_WINDOW) -> List[MetricsRow]:
    """Rows of a metrics CSV.

    Raises:
        MetricsFormatError: wrong header, a malformed row, an empty body, or rolling
            rates that disagree with the per-episode flags.
    """
    with open(path, newline="", encoding="utf-8") as f:
        lines = list(csv.reader(f))
    if not lines or tuple(lines[0]) != METRICS_HEADER:
        raise MetricsFormatError("expected header {}".format(",".join(METRICS_HEADER)), 1)
    if len(lines) == 1:
        raise MetricsFormatError("no episodes in {}".format(path), 2)

    check = RollingMetrics(window)
    rows = []
    for line_no, fields in enumerate(lines[1:], start=2):
        if len(fields) != len(METRICS_HEADER):
            raise MetricsFormatError("expected {} fields, got {}".format(len(METRICS_HEADER), len(fields)), line_no)
        try:
            row = _parse_metrics_row(fields)
        except ValueError as e:
            raise MetricsFormatError(str(e), line_no) from e
        expected = check.add(row.env_step, row.avg_reward_per_step, row.collision, row.success, row.ep_len)
        if (abs(expected.roll_collision_rate - row.roll_collision_rate) > RATE_TOLERANCE
                or abs(expected.roll_success_rate - row.roll_success_rate) > RATE_TOLERANCE):
            raise MetricsFormatError("rolling rates do not match the episode flags", line_no)
        rows.append(row)
    return rows
