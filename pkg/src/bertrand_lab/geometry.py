"""Chord geometry on the unit circle and the Cartesian/polar transform.

Chords of the radius-1 circle are described in three interchangeable ways:
by the Cartesian coordinates of their midpoint, by the angle they form with
the tangent at one endpoint, and by the polar coordinates of their
intersection with the orthogonal diameter.  All functions here are pure and
thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Comparison tolerance for pure geometry; every quantity here is O(1).
GEOMETRY_TOL = 1e-12


@dataclass(frozen=True)
class PointXY:
    """A point in the plane, usually the midpoint of a chord."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True)
class PolarRT:
    """Polar coordinates (r, theta) with r >= 0 and theta in (-pi, pi]."""

    r: float
    theta: float

    def __post_init__(self) -> None:
        if not self.r >= 0.0:
            raise ValueError(f"r must be >= 0, got {self.r}")
        if not (-math.pi < self.theta <= math.pi):
            raise ValueError(f"theta must lie in (-pi, pi], got {self.theta}")


@dataclass(frozen=True)
class TangentAngles:
    """Endpoint position alpha in [0, 2pi] and tangent angle beta in [0, pi]."""

    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 2.0 * math.pi:
            raise ValueError(f"alpha must lie in [0, 2pi], got {self.alpha}")
        if not 0.0 <= self.beta <= math.pi:
            raise ValueError(f"beta must lie in [0, pi], got {self.beta}")


def chord_length_from_midpoint(p: PointXY) -> float:
    """Length of the unit-circle chord whose midpoint is ``p``.

    The chord is orthogonal to the radius through its midpoint, so the
    length is ``2 * sqrt(1 - (x^2 + y^2))``.  Raises ValueError if the point
    lies outside the closed unit disc (beyond GEOMETRY_TOL).
    """
    s = p.x * p.x + p.y * p.y
    if s > 1.0 + GEOMETRY_TOL:
        raise ValueError(f"midpoint ({p.x}, {p.y}) lies outside the unit disc")
    return 2.0 * math.sqrt(max(0.0, 1.0 - s))


def chord_length_from_tangent_angle(beta: float) -> float:
    """Length of the chord forming angle ``beta`` with the tangent: 2*sin(beta)."""
    if not 0.0 <= beta <= math.pi:
        raise ValueError(f"beta must lie in [0, pi], got {beta}")
    return 2.0 * math.sin(beta)


def chord_length_from_polar(p: PolarRT) -> float:
    """Length of the chord meeting the orthogonal diameter at radius ``p.r``.

    Independent of theta: ``2 * sqrt(1 - r^2)``.
    """
    if p.r > 1.0 + GEOMETRY_TOL:
        raise ValueError(f"r must be <= 1 for a chord intersection, got {p.r}")
    return 2.0 * math.sqrt(max(0.0, 1.0 - p.r * p.r))


def cartesian_to_polar(p: PointXY) -> PolarRT:
    """Convert to polar coordinates with theta normalized into (-pi, pi].

    The origin has no defined angle and raises ValueError.
    """
    if p.x == 0.0 and p.y == 0.0:
        raise ValueError("theta is undefined at the origin")
    theta = math.atan2(p.y, p.x)
    if theta <= -math.pi:
        theta = math.pi  # atan2(-0.0, x<0) returns -pi; fold onto the kept endpoint
    return PolarRT(math.hypot(p.x, p.y), theta)


def polar_to_cartesian(p: PolarRT) -> PointXY:
    """Convert polar coordinates back to Cartesian: (r cos theta, r sin theta)."""
    return PointXY(p.r * math.cos(p.theta), p.r * math.sin(p.theta))


def polar_jacobian(p: PolarRT) -> float:
    """Jacobian determinant of the Cartesian-to-polar map, 1/r.

    This is the factor by which the polar map stretches area elements, and
    the reason a density uniform in (x, y) is not uniform in (r, theta).
    Raises ZeroDivisionError at r = 0 where the map is singular.
    """
    if p.r == 0.0:
        raise ZeroDivisionError("polar map is singular at r = 0")
    return 1.0 / p.r
