"""Power-law rheology and the constant-radius capillary solutions.

The straight-tube relations anchor every limit check in the package: all
five corrugated geometries collapse onto them when the radius contrast
goes to one.
"""

import math
import warnings
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "PowerLawFluid",
    "apparent_viscosity",
    "straight_tube_conductance",
    "straight_tube_flow_rate",
    "straight_tube_pressure_drop",
]

# Flow behavior indices outside this range still compute, but the
# special-function continuations lose guaranteed accuracy.
SUPPORTED_INDEX_RANGE = (0.2, 2.0)


@dataclass(frozen=True)
class PowerLawFluid:
    """Two-parameter shear-thinning/thickening fluid model.

    Parameters
    ----------
    consistency : float
        Consistency factor C in Pa*s^n, strictly positive.
    index : float
        Flow behavior index n (dimensionless, strictly positive).
        n < 1 thins, n = 1 is Newtonian, n > 1 thickens.
    """

    consistency: float
    index: float

    def __post_init__(self):
        if not (self.consistency > 0.0 and math.isfinite(self.consistency)):
            raise DomainError(
                f"consistency must be positive, got {self.consistency}"
            )
        if not (self.index > 0.0 and math.isfinite(self.index)):
            raise DomainError(f"index must be positive, got {self.index}")
        lo, hi = SUPPORTED_INDEX_RANGE
        if not lo <= self.index <= hi:
            warnings.warn(
                f"flow index n={self.index} is outside the guaranteed-accuracy "
                f"range [{lo}, {hi}]; results are computed but unvalidated",
                stacklevel=2,
            )


def apparent_viscosity(fluid: PowerLawFluid, strain_rate: float) -> float:
    """Apparent viscosity ``C * rate^(n-1)`` in Pa*s.

    The model has no low-shear plateau, so a zero or negative strain rate
    is a domain error (the n < 1 viscosity diverges at rest).
    """
    if not strain_rate > 0.0:
        raise DomainError(f"strain_rate must be positive, got {strain_rate}")
    return fluid.consistency * strain_rate ** (fluid.index - 1.0)


def straight_tube_conductance(fluid: PowerLawFluid, radius: float,
                              length: float) -> float:
    """Coefficient K with P = K * Q^n for a constant-radius capillary."""
    if not radius > 0.0:
        raise DomainError(f"radius must be positive, got {radius}")
    if not length > 0.0:
        raise DomainError(f"length must be positive, got {length}")
    n = fluid.index
    return (2.0 * fluid.consistency * (3.0 * n + 1.0) ** n * length
            / (math.pi**n * n**n * radius ** (3.0 * n + 1.0)))


def straight_tube_pressure_drop(fluid: PowerLawFluid, radius: float,
                                length: float, flow_rate: float) -> float:
    """Pressure drop in Pa across a straight capillary at ``flow_rate``.

    Zero flow returns exactly zero pressure drop.
    """
    if flow_rate < 0.0:
        raise DomainError(f"flow_rate must be non-negative, got {flow_rate}")
    return straight_tube_conductance(fluid, radius, length) * flow_rate**fluid.index


def straight_tube_flow_rate(fluid: PowerLawFluid, radius: float,
                            length: float, pressure_drop: float) -> float:
    """Flow rate in m^3/s through a straight capillary; exact inverse of
    :func:`straight_tube_pressure_drop`."""
    if pressure_drop < 0.0:
        raise DomainError(
            f"pressure_drop must be non-negative, got {pressure_drop}"
        )
    k = straight_tube_conductance(fluid, radius, length)
    return (pressure_drop / k) ** (1.0 / fluid.index)
