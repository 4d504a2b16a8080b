"""Exact construction of the polygon-center sequences and the vertex-level chain.

The chain starts from a unit equilateral triangle and attaches a regular
(k+1)-gon to the k-gon, edge to edge, always bending left as little as
possible.  Two centre sequences are built: one over all polygon counts
(3, 4, 5, ...) and one over the odd counts only (3, 5, 7, ...).  The
vertex-level chain is an independent computation path used to cross-check
the closed-form centre sums.

All polygons have side length 1; the plane is the complex plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

SEED_CENTER = complex(-math.sqrt(3.0) / 6.0, 0.0)
SEED_VERTICES = (  # counterclockwise
    complex(0.0, 0.5),
    complex(-math.sqrt(3.0) / 2.0, 0.0),
    complex(0.0, -0.5),
)


class Family(Enum):
    """Which polygon-count sequence a centre sequence belongs to."""

    ALL_POLYGONS = "all"
    ODD_POLYGONS = "odd"


@dataclass(frozen=True)
class HarmonicPair:
    """Partial harmonic sum H and partial alternating harmonic sum h at index n."""

    n: int
    H: float
    h: float


@dataclass(frozen=True)
class CenterSequence:
    """Ordered polygon centres, indexed from ``first_index``.

    ``centers[i]`` is the centre with sequence index ``first_index + i``.
    Units are polygon side lengths.
    """

    family: Family
    first_index: int
    centers: np.ndarray

    def __len__(self) -> int:
        return len(self.centers)

    @property
    def last_index(self) -> int:
        return self.first_index + len(self.centers) - 1

    def center(self, n: int) -> complex:
        """Centre with sequence index n."""
        if not self.first_index <= n <= self.last_index:
            raise IndexError(f"index {n} outside [{self.first_index}, {self.last_index}]")
        return complex(self.centers[n - self.first_index])

    def slice(self, start: int, end: int) -> np.ndarray:
        """Centres for sequence indices start..end inclusive."""
        if start > end:
            raise ValueError("empty index range")
        if start < self.first_index or end > self.last_index:
            raise IndexError(f"range [{start}, {end}] outside [{self.first_index}, {self.last_index}]")
        i = start - self.first_index
        return self.centers[i : i + (end - start + 1)]


@dataclass
class Polygon:
    sides: int
    vertices: np.ndarray
    centroid: complex


@dataclass
class PolygonChain:
    polygons: list[Polygon]

    def __len__(self) -> int:
        return len(self.polygons)


@dataclass(frozen=True)
class Violation:
    polygon: int
    kind: str
    value: float


def harmonic(n: int) -> float:
    """Partial harmonic sum 1 + 1/2 + ... + 1/n, smallest term first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0.0
    for j in range(n, 0, -1):
        total += 1.0 / j
    return total


def alt_harmonic(n: int) -> float:
    """Partial alternating harmonic sum 1 - 1/2 + 1/3 - ..., smallest term first."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0.0
    for j in range(n, 0, -1):
        term = 1.0 / j
        total += term if j % 2 else -term
    return total


def harmonic_pair(n: int) -> HarmonicPair:
    return HarmonicPair(n, harmonic(n), alt_harmonic(n))


def _cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def step_magnitude(k: int) -> float:
    """Distance between the centres of the k-gon and the (k+1)-gon.

    Sum of the two apothems: (cot(pi/k) + cot(pi/(k+1))) / 2.  k = 2 is the
    degenerate seed case (cot(pi/2) = 0).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    return 0.5 * (_cot(math.pi / k) + _cot(math.pi / (k + 1)))


def step_angle(k: int) -> float:
    """Direction of the centre-to-centre step leaving the k-gon.

    Equals (pi/2) * (H_k + h_k), i.e. pi times the sum of 1/j over odd
    j <= k; the even-j contributions cancel between the two harmonic sums.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    total = 0.0
    j = k if k % 2 else k - 1
    while j >= 1:
        total += 1.0 / j
        j -= 2
    return math.pi * total


def step_magnitudes(k_max: int) -> np.ndarray:
    """step_magnitude(k) for k = 2..k_max as an array."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    k = np.arange(2, k_max + 1, dtype=float)
    apothem = 0.5 / np.tan(np.pi / k)
    apothem_next = 0.5 / np.tan(np.pi / (k + 1))
    return apothem + apothem_next


def _step_angle_fractions(k_max: int) -> np.ndarray:
    """step_angle(k) / pi for k = 2..k_max (shared cumulative sum)."""
    k = np.arange(2, k_max + 1)
    increments = np.where(k % 2 == 1, 1.0 / k, 0.0)
    increments[0] = 1.0  # k = 2 contributes the j = 1 term
    return np.cumsum(increments)


def step_angles(k_max: int) -> np.ndarray:
    """step_angle(k) for k = 2..k_max as an array (shared cumulative sum)."""
    if k_max < 2:
        raise ValueError("k_max must be >= 2")
    return math.pi * _step_angle_fractions(k_max)


def _expi_pi(s: np.ndarray) -> np.ndarray:
    """exp(i*pi*s) with argument reduction, exact at integer s."""
    s = np.asarray(s, dtype=float)
    n = np.rint(s)
    f = s - n
    sign = np.where(np.mod(n, 2.0) == 0.0, 1.0, -1.0)
    return sign * (np.cos(np.pi * f) + 1j * (np.sin(np.pi * f) + 0.0))


def _compensated_cumsum(terms: np.ndarray) -> np.ndarray:
    """Kahan-compensated cumulative sum of complex terms."""
    out = np.empty_like(terms)
    total = 0.0 + 0.0j
    comp = 0.0 + 0.0j
    for i, t in enumerate(terms):
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
        out[i] = total
    return out


def centers_all(n_max: int) -> CenterSequence:
    """Centres of the 3-gon through the n_max-gon (cumulative step sums)."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    mags = step_magnitudes(n_max - 1)
    terms = mags * _expi_pi(_step_angle_fractions(n_max - 1))
    centers = _compensated_cumsum(terms)
    return CenterSequence(Family.ALL_POLYGONS, 3, centers)


def centers_odd(n_max: int) -> CenterSequence:
    """Centres of the odd-count chain: term k joins the (2k-1)- and (2k+1)-gons.

    The k-th step has magnitude (cot(pi/(2k-1)) + cot(pi/(2k+1))) / 2 and
    direction pi * (H_{2k} - H_k / 2); entries are indexed 2..n_max.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    k = np.arange(2, n_max + 1, dtype=float)
    mags = 0.5 * (1.0 / np.tan(np.pi / (2 * k - 1)) + 1.0 / np.tan(np.pi / (2 * k + 1)))
    recip = 1.0 / np.arange(1, 2 * n_max + 1, dtype=float)
    hsum = np.cumsum(recip)  # hsum[j-1] = H_j
    ki = np.arange(2, n_max + 1)
    terms = mags * _expi_pi(hsum[2 * ki - 1] - 0.5 * hsum[ki - 1])
    centers = _compensated_cumsum(terms)
    return CenterSequence(Family.ODD_POLYGONS, 2, centers)


def circumradius(sides: int) -> float:
    """Circumradius of a unit-side regular polygon."""
    return 0.5 / math.sin(math.pi / sides)


def build_chain(n_max: int) -> PolygonChain:
    """Vertex-level chain of polygons from the triangle up to the n_max-gon.

    The seed triangle is fixed at SEED_VERTICES.  Each following (k+1)-gon is
    placed against the k-gon across the edge whose midpoint lies one apothem
    from the k-gon's centre in the step direction.  Centroids are vertex
    averages, an independent path from the closed-form centre sums.
    """
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    seed = np.array(SEED_VERTICES, dtype=complex)
    polygons = [Polygon(3, seed, complex(seed.mean()))]
    if n_max == 3:
        return PolygonChain(polygons)

    seq = centers_all(n_max)
    angs = step_angles(n_max - 1)
    for m in range(4, n_max + 1):
        center = seq.center(m)
        theta_prev = angs[m - 3]  # step angle leaving the (m-1)-gon
        first_vertex_angle = theta_prev + math.pi + math.pi / m
        j = np.arange(m)
        vertices = center + circumradius(m) * np.exp(1j * (first_vertex_angle + 2 * np.pi * j / m))
        polygons.append(Polygon(m, vertices, complex(vertices.mean())))
    return PolygonChain(polygons)


def _is_convex_cyclic(vertices: np.ndarray) -> bool:
    v = vertices
    nxt = np.roll(v, -1)
    edges = nxt - v
    cross = np.imag(np.conj(edges) * np.roll(edges, -1))
    return bool(np.all(cross > 0.0))


EDGE_TOL = 1e-9


def validate_chain(chain: PolygonChain) -> list[Violation]:
    """Check unit edges, shared edges, convexity, centroid agreement.

    Violations are returned as data; an empty list means the chain satisfies
    every invariant.
    """
    if not chain.polygons:
        raise ValueError("chain is empty")
    report: list[Violation] = []
    n_max = chain.polygons[-1].sides
    expected = centers_all(n_max)

    for idx, poly in enumerate(chain.polygons):
        if len(poly.vertices) != poly.sides:
            report.append(Violation(poly.sides, "vertex-count", float(len(poly.vertices))))
            continue
        edge_lengths = np.abs(np.roll(poly.vertices, -1) - poly.vertices)
        worst = float(np.max(np.abs(edge_lengths - 1.0)))
        if worst > EDGE_TOL:
            report.append(Violation(poly.sides, "unit-edge", worst))
        if not _is_convex_cyclic(poly.vertices):
            report.append(Violation(poly.sides, "convexity", math.nan))
        centroid_err = abs(complex(poly.vertices.mean()) - expected.center(poly.sides))
        if centroid_err > EDGE_TOL:
            report.append(Violation(poly.sides, "centroid", centroid_err))
        if idx + 1 < len(chain.polygons):
            nxt = chain.polygons[idx + 1]
            dist = np.abs(poly.vertices[:, None] - nxt.vertices[None, :])
            shared = int(np.count_nonzero(dist < EDGE_TOL))
            if shared != 2:
                report.append(Violation(poly.sides, "shared-edge", float(shared)))
    return report
