"""AV motion: noisy trajectory following and the kinematic bicycle used by the control baseline."""
import math

from driving.actions import ControlAction
from driving.frenet import CartesianPose, FrenetState, PlannedTrajectory, cartesian_to_frenet, frenet_to_cartesian
from driving.world.errors import EmptyTrajectoryError
from driving.world.state import WorldState, generator_from_state, vehicle_with_frenet


def _with_tracking_noise(world: WorldState, fs: FrenetState) -> tuple:
    """Add zero-mean Gaussian errors to position (sigma, d) and speed (sigma_dot, d_dot)."""
    config = world.config
    rng = generator_from_state(world.tracking_rng_state)
    pos_noise = rng.normal(size=2) * config.tracking_pos_std
    speed_noise = rng.normal(size=2) * config.tracking_speed_std
    noisy = fs._replace(sigma=fs.sigma + pos_noise[0], d=fs.d + pos_noise[1],
                        sigma_dot=fs.sigma_dot + speed_noise[0], d_dot=fs.d_dot + speed_noise[1])
    return noisy, rng.bit_generator.state


def step_av(world: WorldState, traj: PlannedTrajectory, step: float) -> WorldState:
    """Follow the first sample of ``traj`` and advance the clock by ``step``.

    Raises:
        EmptyTrajectoryError: ``traj`` has no samples.
    """
    if traj is None or len(traj) == 0:
        raise EmptyTrajectoryError("cannot track an empty trajectory")
    target = FrenetState.from_array(traj.states[0])
    noisy, rng_state = _with_tracking_noise(world, target)
    av = vehicle_with_frenet(world.av, noisy, world.road)
    return world._replace(time=world.time + step, av=av, tracking_rng_state=rng_state)


def step_av_control(world: WorldState, control: ControlAction, step: float) -> WorldState:
    """Integrate one kinematic bicycle step from a steering/acceleration command."""
    line = world.road.line
    pose = frenet_to_cartesian(line, world.av.frenet)
    x, y, v = pose.x, pose.y, pose.v
    heading = line.point(world.av.frenet.sigma)[2] + world.av.heading
    accel = float(control.accel)
    x += v * math.cos(heading) * step
    y += v * math.sin(heading) * step
    heading += v / world.config.wheelbase * math.tan(float(control.steer)) * step
    v = max(v + accel * step, 0.0)

    hint = int(world.av.frenet.sigma / line.ds)
    fs = cartesian_to_frenet(line, CartesianPose(x, y, heading, v, accel), world.config.corridor, hint)
    noisy, rng_state = _with_tracking_noise(world, fs)
    av = vehicle_with_frenet(world.av, noisy, world.road)
    return world._replace(time=world.time + step, av=av, tracking_rng_state=rng_state)

