"""Worst-case interference region: the lune between two circles.

The victim receiver sits at the origin. ``C0`` is the finite-network disk of
radius ``r_max`` centred on the origin; ``C1`` is the primary protection disk
of radius ``r_p`` centred at ``(r_dec, 0)``. Transmitters may occupy
``C0 \\ C1``.

Angles are measured from the negative u-axis (pointing away from the
primary), so ``theta1`` is the half-angle of the admissible arc of ``C0``:
``pi`` for the full disk and 0 for a fully protected network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GeometryError

__all__ = [
    "RegionSpec",
    "LuneGeometry",
    "lune",
    "contains",
    "lens_area",
    "truncation_radius",
    "satisfies_truncation",
    "admissible_half_angle",
]


@dataclass(frozen=True)
class RegionSpec:
    """Finite-network disk minus a protection disk.

    Parameters
    ----------
    r_max : float
        Radius of the finite network around the victim receiver.
    r_p : float
        Protection radius around the primary transmitter.
    r_dec : float
        Distance from the victim receiver to the primary transmitter.
    epsilon : float, optional
        Mean-interference matching factor. When given, ``r_max`` is checked
        against the truncation rule once a path-loss exponent is bound.
    """

    r_max: float
    r_p: float = 0.0
    r_dec: float = 0.0
    epsilon: Optional[float] = None

    def __post_init__(self):
        if not (self.r_max > 0 and math.isfinite(self.r_max)):
            raise GeometryError(f"r_max must be positive and finite, got {self.r_max}")
        if not self.r_p >= 0:
            raise GeometryError(f"r_p must be >= 0, got {self.r_p}")
        if not self.r_dec >= 0:
            raise GeometryError(f"r_dec must be >= 0, got {self.r_dec}")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise GeometryError(f"epsilon must lie in (0, 1), got {self.epsilon}")


@dataclass(frozen=True)
class LuneGeometry:
    """Derived quantities of a :class:`RegionSpec`.

    ``chord_x`` is the u-coordinate of the circle intersection points, or
    the value ``-r_max cos(theta1)`` would give in the degenerate cases.
    ``cap_angle = pi - theta1`` is the half-angle of the excluded arc
    measured from the positive u-axis.
    """

    theta1: float
    area: float
    chord_x: float

    @property
    def cap_angle(self):
        return math.pi - self.theta1


def truncation_radius(alpha: float, epsilon: float) -> float:
    """Smallest ``r_max`` with ``1 - r_max**(2 - alpha) >= 1 - epsilon``."""
    if not alpha > 2:
        raise GeometryError(f"the truncation rule needs alpha > 2, got {alpha}")
    if not 0 < epsilon < 1:
        raise GeometryError(f"epsilon must lie in (0, 1), got {epsilon}")
    return epsilon ** (-1.0 / (alpha - 2.0))


def satisfies_truncation(r_max: float, alpha: float, epsilon: float) -> bool:
    # boundary counts as satisfied so truncation_radius() itself is admissible
    return r_max ** (2.0 - alpha) <= epsilon * (1 + 1e-12)


def lens_area(r0: float, r1: float, d: float) -> float:
    """Area of the intersection of two disks with radii ``r0, r1`` and centre distance ``d``."""
    if r0 <= 0 or r1 <= 0 or d >= r0 + r1:
        return 0.0
    if d <= abs(r0 - r1):
        return math.pi * min(r0, r1) ** 2
    c0 = (d * d + r0 * r0 - r1 * r1) / (2 * d * r0)
    c1 = (d * d + r1 * r1 - r0 * r0) / (2 * d * r1)
    c0 = min(1.0, max(-1.0, c0))
    c1 = min(1.0, max(-1.0, c1))
    k = (-d + r0 + r1) * (d + r0 - r1) * (d - r0 + r1) * (d + r0 + r1)
    return r0 * r0 * math.acos(c0) + r1 * r1 * math.acos(c1) - 0.5 * math.sqrt(max(k, 0.0))


def lune(region: RegionSpec) -> LuneGeometry:
    r_max, r_p, d = region.r_max, region.r_p, region.r_dec
    full = math.pi * r_max * r_max
    if r_p == 0 or d >= r_max + r_p:
        return LuneGeometry(theta1=math.pi, area=full, chord_x=-r_max)
    if d + r_max <= r_p:
        return LuneGeometry(theta1=0.0, area=0.0, chord_x=r_max)
    if d + r_p <= r_max:
        # protection disk strictly inside C0 (concentric case included): annulus-like region
        return LuneGeometry(theta1=math.pi, area=full - math.pi * r_p * r_p, chord_x=-r_max)
    chord_x = (r_max * r_max + d * d - r_p * r_p) / (2.0 * d)
    theta1 = math.acos(min(1.0, max(-1.0, -chord_x / r_max)))
    return LuneGeometry(theta1=theta1, area=full - lens_area(r_max, r_p, d), chord_x=chord_x)


def contains(point, region: RegionSpec):
    """Membership in the lune; vectorised over an ``(..., 2)`` array of points."""
    p = np.asarray(point, dtype=float)
    u, v = p[..., 0], p[..., 1]
    inside = u * u + v * v <= region.r_max ** 2
    if region.r_p > 0:
        inside &= (u - region.r_dec) ** 2 + v * v >= region.r_p ** 2
    if inside.ndim == 0:
        return bool(inside)
    return inside


def admissible_half_angle(r, region: RegionSpec):
    """Half-width of the admissible angular set on the circle of radius ``r``.

    Angles are measured from the negative u-axis; at radius ``r`` the points
    with ``|phi| <= admissible_half_angle`` lie outside the protection disk.
    Vectorised over ``r``.
    """
    r = np.asarray(r, dtype=float)
    if region.r_p == 0:
        return np.full_like(r, math.pi)
    d = region.r_dec
    with np.errstate(divide="ignore", invalid="ignore"):
        # excluded where cos(angle from +u) > (r^2 + d^2 - r_p^2) / (2 r d)
        c = (r * r + d * d - region.r_p ** 2) / (2.0 * r * d)
    c = np.where(np.isnan(c), np.where(r >= region.r_p, 2.0, -2.0), c)
    return np.pi - np.arccos(np.clip(c, -1.0, 1.0))
