"""Episode traces as CSV: Cartesian poses of every vehicle plus the reward terms."""
import csv
from pathlib import Path
from typing import List, Optional, Sequence, Union

from driving.frenet import frenet_to_cartesian
from driving.world.reward import RewardBreakdown
from driving.world.state import VehicleState, WorldState

REWARD_COLUMNS = RewardBreakdown._fields
POSE_FIELDS = ("x", "y", "theta", "v")


def trace_header(n_max: int) -> List[str]:
    header = ["t"] + ["av_" + f for f in POSE_FIELDS]
    for k in range(n_max):
        header += ["p{}_{}".format(k, f) for f in POSE_FIELDS]
    return header + list(REWARD_COLUMNS)


def _pose(world: WorldState, vehicle: VehicleState) -> List[str]:
    pose = frenet_to_cartesian(world.road.line, vehicle.frenet)
    theta = world.road.line.point(vehicle.frenet.sigma)[2] + vehicle.heading
    return ["{:.6f}".format(v) for v in (pose.x, pose.y, theta, pose.v)]


def trace_row(world: WorldState, reward: Optional[RewardBreakdown]) -> List[str]:
    row = ["{:.6f}".format(world.time)] + _pose(world, world.av)
    for k in range(world.config.n_max):
        if k < len(world.participants):
            row += _pose(world, world.participants[k])
        else:
            row += [""] * len(POSE_FIELDS)
    if reward is None:
        row += [""] * len(REWARD_COLUMNS)
    else:
        row += ["{:.9g}".format(v) for v in reward]
    return row


def write_trace(file_path: Union[str, Path], worlds: Sequence[WorldState],
                rewards: Sequence[RewardBreakdown]) -> None:
    """Write one row per world; row ``k > 0`` carries the reward of the step into it.

    Args:
        file_path: Output CSV.
        worlds: Consecutive worlds of one episode, starting with the spawned one.
        rewards: ``len(worlds) - 1`` rewards.
    """
    if len(rewards) != max(len(worlds) - 1, 0):
        raise ValueError("need one reward per step: {} worlds, {} rewards".format(len(worlds), len(rewards)))
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    n_max = worlds[0].config.n_max if worlds else 0
    with open(file_path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(trace_header(n_max))
        for k, world in enumerate(worlds):
            writer.writerow(trace_row(world, rewards[k - 1] if k > 0 else None))
