from typing import NamedTuple

import numpy as np

FRENET_FIELDS = ("sigma", "sigma_dot", "sigma_ddot", "d", "d_dot", "d_ddot")


class FrenetState(NamedTuple):
    """Kinematic state in road coordinates: arclength sigma, signed lateral offset d (positive left)."""
    sigma: float
    sigma_dot: float
    sigma_ddot: float
    d: float
    d_dot: float
    d_ddot: float

    def as_array(self) -> np.ndarray:
        return np.asarray(self, dtype=np.float64)

    @classmethod
    def from_array(cls, row) -> "FrenetState":
        return cls(*(float(v) for v in row))

    @property
    def speed(self) -> float:
        return float(np.hypot(self.sigma_dot, self.d_dot))

    @property
    def heading(self) -> float:
        """Heading relative to the road tangent."""
        if self.sigma_dot == 0.0 and self.d_dot == 0.0:
            return 0.0
        return float(np.arctan2(self.d_dot, self.sigma_dot))
