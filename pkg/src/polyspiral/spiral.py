"""Logarithmic spirals and exact nearest-point computation.

The solver seeds the spiral angle from the query point's radius, scans a
window of whole turns on each side, and refines each candidate with
bisection on the perpendicularity condition (the tangent at the nearest
point is orthogonal to the connecting segment).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class LogSpiral:
    """Polar curve r = exp(beta * theta) - offset, beta > 0, offset >= 0."""

    beta: float
    offset: float = 0.0

    def __post_init__(self):
        if self.beta <= 0.0:
            raise ValueError("beta must be > 0")
        if self.offset < 0.0:
            raise ValueError("offset must be >= 0")

    @property
    def min_theta(self) -> float:
        """Smallest angle with nonnegative radius."""
        if self.offset == 0.0:
            return -math.inf
        return math.log(self.offset) / self.beta

    def radius(self, theta):
        return np.exp(self.beta * np.asarray(theta, dtype=float)) - self.offset

    def point(self, theta):
        theta = np.asarray(theta, dtype=float)
        return self.radius(theta) * np.exp(1j * theta)

    def tangent(self, theta):
        """d(point)/d(theta); points in the direction of increasing radius."""
        theta = np.asarray(theta, dtype=float)
        growth = self.beta * np.exp(self.beta * theta)
        return (growth + 1j * self.radius(theta)) * np.exp(1j * theta)


def spiral_point(spiral: LogSpiral, theta: float) -> complex:
    """Point on the spiral at angle theta; rejects angles with negative radius."""
    if spiral.offset > 0.0 and theta < spiral.min_theta:
        raise ValueError(f"theta {theta} below radial-validity threshold {spiral.min_theta}")
    return complex(spiral.point(theta))


_COARSE = np.linspace(-math.pi, math.pi, 33)
_BISECT_ITERS = 55


def _perp(spiral: LogSpiral, z: np.ndarray, theta: np.ndarray) -> np.ndarray:
    """Re[conj(tangent) * (z - point)]; positive before a distance minimum."""
    return np.real(np.conj(spiral.tangent(theta)) * (z - spiral.point(theta)))


def nearest_distances(spiral: LogSpiral, z, turns: int = 2):
    """Vectorized nearest distance and angle from each point of z to the spiral.

    Scans 2*turns + 1 whole turns around the radius-matching seed angle;
    within each turn the best coarse sample is refined by bisection on the
    perpendicularity condition.  All turns are batched so the iteration
    count is independent of the number of points.  Returns (distances,
    thetas).
    """
    if turns < 1:
        raise ValueError("turns must be >= 1")
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    if np.any(z == 0):
        raise ValueError("points must be nonzero (the curve accumulates at the origin)")

    radius = np.abs(z)
    arg = np.angle(z)
    theta_radius = np.log(radius + spiral.offset) / spiral.beta
    theta0 = arg + TWO_PI * np.round((theta_radius - arg) / TWO_PI)

    offsets = TWO_PI * np.arange(-turns, turns + 1)
    centers = theta0[None, :] + offsets[:, None]  # (turns axis, point axis)
    grid = centers[:, None, :] + _COARSE[None, :, None]
    if spiral.offset > 0.0:
        grid = np.maximum(grid, spiral.min_theta)
    d2 = np.abs(z[None, None, :] - spiral.point(grid)) ** 2
    pick = np.argmin(d2, axis=1)
    rows, cols = np.indices(pick.shape)
    d2_pick = d2[rows, pick, cols]
    theta_pick = grid[rows, pick, cols]

    lo = grid[rows, np.maximum(pick - 1, 0), cols]
    hi = grid[rows, np.minimum(pick + 1, len(_COARSE) - 1), cols]
    bracketed = (_perp(spiral, z, lo) > 0.0) & (_perp(spiral, z, hi) < 0.0)

    a, b = lo, hi
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (a + b)
        take_hi = _perp(spiral, z, mid) > 0.0
        a = np.where(take_hi, mid, a)
        b = np.where(take_hi, b, mid)
    theta_ref = 0.5 * (a + b)
    d2_ref = np.abs(z[None, :] - spiral.point(theta_ref)) ** 2

    use_ref = bracketed & (d2_ref < d2_pick)
    cand_d2 = np.where(use_ref, d2_ref, d2_pick)
    cand_theta = np.where(use_ref, theta_ref, theta_pick)
    best = np.argmin(cand_d2, axis=0)
    cols = np.arange(z.size)
    return np.sqrt(cand_d2[best, cols]), cand_theta[best, cols]


def nearest_distance(spiral: LogSpiral, z: complex, turns: int = 2) -> tuple[float, float]:
    """Nearest distance from z to the spiral and the minimizing angle."""
    d, theta = nearest_distances(spiral, [z], turns=turns)
    return float(d[0]), float(theta[0])


def offset_distance_profile(beta: float, c: float, r_values) -> list[tuple[float, float, float]]:
    """Measured vs predicted distances from the offset curve to the base spiral.

    For each radius r, takes the point at radius r on r = exp(beta*theta) - c,
    measures its nearest distance to r = exp(beta*theta), and pairs it with
    the flat prediction c / sqrt(1 + beta^2).
    """
    if beta <= 0.0:
        raise ValueError("beta must be > 0")
    if c < 0.0:
        raise ValueError("c must be >= 0")
    base = LogSpiral(beta, 0.0)
    predicted = c / math.sqrt(1.0 + beta * beta)
    rows = []
    for r in r_values:
        theta = math.log(r + c) / beta
        point = r * complex(math.cos(theta), math.sin(theta))
        if c == 0.0:
            rows.append((float(r), 0.0, 0.0))
            continue
        d, _ = nearest_distance(base, point)
        rows.append((float(r), d, predicted))
    return rows
