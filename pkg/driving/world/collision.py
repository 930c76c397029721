"""Exact rectangle collisions in the road plane (sigma along, d across)."""
from typing import Iterable

from driving.geometry import Rectangle, separating_axis_overlap
from driving.world.state import VehicleState


def vehicle_rectangle(vehicle: VehicleState) -> Rectangle:
    return Rectangle(vehicle.length, vehicle.width, vehicle.frenet.sigma, vehicle.frenet.d, vehicle.heading)


def check_collision(a: VehicleState, b: VehicleState) -> bool:
    """Separating-axis overlap of the two footprints; touching counts as a collision."""
    return separating_axis_overlap(vehicle_rectangle(a).corners(), vehicle_rectangle(b).corners())


def collides_with_any(vehicle: VehicleState, others: Iterable[VehicleState]) -> bool:
    return any(check_collision(vehicle, other) for other in others)
