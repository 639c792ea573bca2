"""The five converging-diverging tube profiles.

Every profile lives on the symmetric frame ``x in [-L/2, L/2]`` with the
throat (minimum radius) at ``x = 0`` and the maximum radius at both ends.
:func:`coefficients` maps ``(r_min, r_max, length)`` to each profile's
internal parameters; :func:`radius_at` and :func:`radius_profile` evaluate
the radius itself and are the only profile knowledge the quadrature oracle
is allowed to use.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels
from .errors import DomainError

__all__ = [
    "ProfileCoefficients",
    "TubeShape",
    "TubeSpec",
    "coefficients",
    "radius_at",
    "radius_profile",
    "sample_profile",
]

# Relative slack on the |x| <= L/2 domain check, to absorb endpoint
# rounding from node generation.
_EDGE_SLACK = 1e-12


class TubeShape(Enum):
    """Closed enumeration of the supported converging-diverging profiles."""

    CONIC = "conic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"
    COSH = "cosh"
    SINUSOIDAL = "sinusoidal"


_SHAPE_CODE = {
    TubeShape.CONIC: _kernels.CONIC,
    TubeShape.PARABOLIC: _kernels.PARABOLIC,
    TubeShape.HYPERBOLIC: _kernels.HYPERBOLIC,
    TubeShape.COSH: _kernels.COSH,
    TubeShape.SINUSOIDAL: _kernels.SINUSOIDAL,
}


@dataclass(frozen=True)
class TubeSpec:
    """Geometry of one converging-diverging unit.

    Parameters
    ----------
    shape : TubeShape
    r_min : float
        Throat radius in m, at the tube midpoint.
    r_max : float
        Entry/exit radius in m; must satisfy ``r_min <= r_max``.
    length : float
        Axial length of the unit in m.

    Equal radii are accepted for every shape and flag the spec as a
    straight-tube degenerate, which downstream solvers dispatch to the
    constant-radius formula.
    """

    shape: TubeShape
    r_min: float
    r_max: float
    length: float

    def __post_init__(self):
        if not (self.r_min > 0.0 and math.isfinite(self.r_min)):
            raise DomainError(f"r_min must be positive, got {self.r_min}")
        if not (self.r_max >= self.r_min and math.isfinite(self.r_max)):
            raise DomainError(
                f"r_max must satisfy r_max >= r_min > 0, got r_min={self.r_min}, "
                f"r_max={self.r_max}"
            )
        if not (self.length > 0.0 and math.isfinite(self.length)):
            raise DomainError(f"length must be positive, got {self.length}")

    @property
    def is_straight(self) -> bool:
        """True when r_min equals r_max and the profile is a constant radius."""
        return self.r_min == self.r_max


@dataclass(frozen=True)
class ProfileCoefficients:
    """Per-shape internal parameters (a, b, and k for the sinusoid).

    ``b = 0`` marks the straight-tube degenerate; ``k`` is None except for
    the sinusoidal profile where it is the angular wavenumber 2*pi/L.
    """

    a: float
    b: float
    k: float | None = None


def coefficients(spec: TubeSpec) -> ProfileCoefficients:
    """Map (r_min, r_max, length) to the profile's internal coefficients."""
    dr = spec.r_max - spec.r_min
    length = spec.length
    if spec.shape is TubeShape.CONIC:
        return ProfileCoefficients(spec.r_min, 2.0 * dr / length)
    if spec.shape is TubeShape.PARABOLIC:
        return ProfileCoefficients(spec.r_min, (2.0 / length) ** 2 * dr)
    if spec.shape is TubeShape.HYPERBOLIC:
        return ProfileCoefficients(
            spec.r_min**2,
            (2.0 / length) ** 2 * (spec.r_max**2 - spec.r_min**2),
        )
    if spec.shape is TubeShape.COSH:
        return ProfileCoefficients(
            spec.r_min, 2.0 / length * math.acosh(spec.r_max / spec.r_min)
        )
    if spec.shape is TubeShape.SINUSOIDAL:
        return ProfileCoefficients(
            0.5 * (spec.r_max + spec.r_min),
            0.5 * dr,
            2.0 * math.pi / length,
        )
    raise DomainError(f"unknown shape {spec.shape!r}")


def _kernel_args(spec: TubeSpec):
    coef = coefficients(spec)
    if spec.is_straight:
        # All shapes collapse to r(x) = r_min; avoids 0/0 in shape formulas.
        return _kernels.STRAIGHT, spec.r_min, 0.0, 0.0
    return (_SHAPE_CODE[spec.shape], coef.a, coef.b,
            coef.k if coef.k is not None else 0.0)


def radius_at(spec: TubeSpec, x: float) -> float:
    """Tube radius at axial position ``x`` (m), ``|x| <= length/2``."""
    half = 0.5 * spec.length
    if abs(x) > half * (1.0 + _EDGE_SLACK):
        raise DomainError(
            f"x={x} outside the tube domain [-{half}, {half}]"
        )
    x = min(max(x, -half), half)
    code, a, b, k = _kernel_args(spec)
    return float(_kernels.profile_radius(code, a, b, k, np.float64(x)))


def radius_profile(spec: TubeSpec, x: np.ndarray) -> np.ndarray:
    """Vectorized :func:`radius_at` over an array of axial positions."""
    half = 0.5 * spec.length
    x = np.asarray(x, dtype=np.float64)
    if np.any(np.abs(x) > half * (1.0 + _EDGE_SLACK)):
        raise DomainError("profile positions outside the tube domain")
    x = np.clip(x, -half, half)
    code, a, b, k = _kernel_args(spec)
    return _kernels.profile_radius(code, a, b, k, x)


def sample_profile(spec: TubeSpec, samples: int):
    """Evenly spaced ``(x, r)`` samples spanning the full tube length."""
    if samples < 2:
        raise DomainError(f"samples must be >= 2, got {samples}")
    x = np.linspace(-0.5 * spec.length, 0.5 * spec.length, samples)
    return x, radius_profile(spec, x)
