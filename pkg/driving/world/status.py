from enum import Enum

from driving.world.collision import collides_with_any
from driving.world.state import WorldState


class EpisodeStatus(str, Enum):
    RUNNING = "running"
    SUCCESS = "success"
    COLLISION = "collision"
    TIMEOUT = "timeout"
    OFF_COURSE = "off_course"

    @property
    def terminal(self) -> bool:
        """Ends the return: no bootstrapping past this state."""
        return self in (EpisodeStatus.SUCCESS, EpisodeStatus.COLLISION, EpisodeStatus.OFF_COURSE)

    @property
    def ends_episode(self) -> bool:
        return self is not EpisodeStatus.RUNNING


def reached_goal(world: WorldState) -> bool:
    return world.av.frenet.sigma >= world.goal_sigma


def is_off_course(world: WorldState) -> bool:
    """More than the tolerance from the target lane centre.

    Scenarios with ``off_course_band`` only require the AV to stay within the
    allowed lanes (plus the tolerance) until it passes the goal.
    """
    tolerance = world.scenario.success_tolerance
    d = world.av.frenet.d
    if not world.scenario.off_course_band:
        return abs(d) > tolerance
    lo, hi = world.road.allowed_band(tolerance)
    if d < lo or d > hi:
        return True
    return reached_goal(world) and abs(d) > tolerance


def episode_status(world: WorldState) -> EpisodeStatus:
    """Status checked in the order collision, off course, success, timeout."""
    if collides_with_any(world.av, world.participants):
        return EpisodeStatus.COLLISION
    if is_off_course(world):
        return EpisodeStatus.OFF_COURSE
    if reached_goal(world):
        return EpisodeStatus.SUCCESS
    if world.time >= world.scenario.time_limit - 1e-9:
        return EpisodeStatus.TIMEOUT
    return EpisodeStatus.RUNNING
