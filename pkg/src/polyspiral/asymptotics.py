"""Expansion machinery behind the centre sequence's spiral limit.

Harmonic-sum expansions, Euler-Maclaurin corrections at orders 1 and 3,
the three complex power sums with their closed asymptotic forms, the
two-parameter asymptotic family the centres follow, and the radial gap
between a point and the spiral r = exp(4*theta/pi).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

import numpy as np

EULER_GAMMA = 0.5772156649015329

GROWTH_RATE = 4.0 / math.pi  # beta of every spiral in this package

#: i*pi/2, the shared imaginary exponent of the power sums.
LOG_TWIST = 0.5j * math.pi

#: 1 + i*pi/4, the coefficient tying the three leading terms together.
UNIT_COEFF = 1.0 + 0.25j * math.pi

# Weights recombining the power sums S_1, S_0, S_-1 into the centre sum.
# The inverse-power weight is kept as exact rationals (pi-multiple real
# part, rational imaginary part) to guard against transcription drift.
INVERSE_WEIGHT_PI_PART = Fraction(-35, 96)
INVERSE_WEIGHT_IMAG = Fraction(1, 48)


def power_sum_weights() -> tuple[complex, complex, complex]:
    """Weights (w1, w0, wm1) with centre sum ~ w1*S_1 + w0*S_0 + wm1*S_-1."""
    wm1 = complex(float(INVERSE_WEIGHT_PI_PART) * math.pi, float(INVERSE_WEIGHT_IMAG))
    return 1.0 / math.pi, -0.25j, wm1


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.EVEN if n % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class BernoulliPoly:
    """Bernoulli polynomial with exact rational coefficients (ascending)."""

    degree: int
    coefficients: tuple[Fraction, ...]

    def __call__(self, x):
        result = 0.0
        for c in reversed(self.coefficients):
            result = result * x + float(c)
        return result

    def integral_over_unit_interval(self) -> Fraction:
        return sum(c / (k + 1) for k, c in enumerate(self.coefficients))

    @property
    def sup_norm(self) -> float:
        """max |B(x)| over [0, 1]."""
        if self.degree == 1:
            return 0.5
        # stationary points of B_3 on (0, 1): (3 +- sqrt(3)) / 6
        root = math.sqrt(3.0)
        candidates = [0.0, 1.0, (3.0 - root) / 6.0, (3.0 + root) / 6.0]
        return max(abs(self(x)) for x in candidates)


B1 = BernoulliPoly(1, (Fraction(-1, 2), Fraction(1)))
B3 = BernoulliPoly(3, (Fraction(0), Fraction(1, 2), Fraction(-3, 2), Fraction(1)))


@dataclass(frozen=True)
class ApproximantCoefficients:
    """Constant-term coefficients of the centre approximant, by parity.

    The complex constant is a + b*(pi/4)*i with a = 1/4 for both parities
    and b = 43/6 (even) or 31/6 (odd).
    """

    parity: Parity
    a: Fraction = Fraction(1, 4)
    b: Fraction = Fraction(0)

    @classmethod
    def for_parity(cls, parity: Parity) -> "ApproximantCoefficients":
        b = Fraction(43, 6) if parity is Parity.EVEN else Fraction(31, 6)
        return cls(parity, Fraction(1, 4), b)

    @classmethod
    def for_index(cls, n: int) -> "ApproximantCoefficients":
        return cls.for_parity(Parity.of(n))

    def constant(self) -> complex:
        return complex(float(self.a), float(self.b) * math.pi / 4.0)


def harmonic_expansion(n: int) -> float:
    """Three-term expansion of H_n: gamma + log(n + 1/2) + 1/(24 n^2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return EULER_GAMMA + math.log(n + 0.5) + 1.0 / (24.0 * n * n)


def detemple_bounds(n: int) -> tuple[float, float]:
    """Strict two-sided bounds on H_n - gamma - log(n + 1/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 1.0 / (24.0 * (n + 1) ** 2), 1.0 / (24.0 * n**2)


def alt_harmonic_expansion(n: int) -> float:
    """Expansion of the alternating partial sum: log 2 -(-1)^n/(2n) + (-1)^n/(4n^2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    sign = -1.0 if n % 2 else 1.0
    return math.log(2.0) - sign / (2.0 * n) + sign / (4.0 * n * n)


class EmOrder(Enum):
    ONE = 1
    THREE = 3


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _periodized_integral(g: Callable[[np.ndarray], np.ndarray], bern: BernoulliPoly, m: int, n: int) -> complex:
    """Integral of g(t) * B({t}) over [m, n], Gauss-Legendre per unit interval."""
    starts = np.arange(m, n, dtype=float)
    frac = 0.5 * (_GL_NODES + 1.0)  # nodes mapped to [0, 1)
    t = starts[:, None] + frac[None, :]
    values = np.asarray(g(t)) * bern(frac)[None, :]
    return complex(0.5 * np.sum(values * _GL_WEIGHTS[None, :]))


def em_sum_minus_integral(
    f: Callable[[np.ndarray], np.ndarray],
    m: int,
    n: int,
    order: EmOrder = EmOrder.THREE,
    df: Callable[[np.ndarray], np.ndarray] | None = None,
    d3f: Callable[[np.ndarray], np.ndarray] | None = None,
) -> complex:
    """Euler-Maclaurin value of sum_{i=m}^{n} f(i) - integral_m^n f.

    Order ONE uses the endpoint average plus the B_1-weighted integral of
    f'; order THREE adds (f'(n) - f'(m))/12 and the B_3-weighted integral
    of f'''/6.  Callables must accept numpy arrays.
    """
    if m >= n:
        raise ValueError("m must be < n")
    if df is None:
        raise ValueError("df is required")
    endpoint = 0.5 * (complex(f(float(m))) + complex(f(float(n))))
    if order is EmOrder.ONE:
        return endpoint + _periodized_integral(df, B1, m, n)
    if d3f is None:
        raise ValueError("d3f is required at order THREE")
    gradient = (complex(df(float(n))) - complex(df(float(m)))) / 12.0
    return endpoint + gradient + _periodized_integral(d3f, B3, m, n) / 6.0


def _validate_power_sum_args(p: int, n: int, alternating: bool) -> None:
    if p not in (-1, 0, 1):
        raise ValueError("p must be in {-1, 0, 1}")
    if n < 3:
        raise ValueError("n must be >= 3")
    if alternating and p != 0:
        raise ValueError("alternating sums only exist for p = 0")


def power_sum_exact(p: int, n: int, alternating: bool = False) -> complex:
    """Direct summation of sum_{k=2}^{n-1} (+-1)^k (k + 1/2)^(p + i*pi/2)."""
    _validate_power_sum_args(p, n, alternating)
    k = np.arange(2, n, dtype=float)
    terms = np.exp((p + LOG_TWIST) * np.log(k + 0.5))
    if alternating:
        terms = terms * np.where(np.arange(2, n) % 2 == 0, 1.0, -1.0)
    return complex(np.sum(terms))


def power_sum_prefix(p: int, n_max: int, alternating: bool = False) -> np.ndarray:
    """power_sum_exact(p, n) for every n = 3..n_max (cumulative sweep)."""
    _validate_power_sum_args(p, n_max, alternating)
    k = np.arange(2, n_max, dtype=float)
    terms = np.exp((p + LOG_TWIST) * np.log(k + 0.5))
    if alternating:
        terms = terms * np.where(np.arange(2, n_max) % 2 == 0, 1.0, -1.0)
    return np.cumsum(terms)


def power_sum_closed(p: int, n, alternating: bool = False):
    """Closed asymptotic form of the power sum (valid up to an additive constant).

    p = 1: three descending powers of (n - 1/2); p = -1: the single
    inverse-twist term; p = 0 (alternating only): the parity-flipping
    half-magnitude term.  Accepts scalar or array n.
    """
    if p == 0 and not alternating:
        raise ValueError("no closed form for the non-alternating p = 0 sum")
    if np.ndim(n) == 0:
        _validate_power_sum_args(p, int(n), alternating)
    t = np.asarray(n, dtype=float) - 0.5
    tw = np.exp(LOG_TWIST * np.log(t))
    if p == 1:
        value = t**2 * tw / (2.0 + LOG_TWIST) + 0.5 * t * tw + (1.0 + LOG_TWIST) / 12.0 * tw
    elif p == -1:
        value = tw / LOG_TWIST
    else:
        sign = np.where(np.asarray(n) % 2 == 0, 1.0, -1.0)
        value = -0.5 * sign * tw
    return complex(value) if np.ndim(n) == 0 else value


def asymptotic_form(t: float, a: float, b: float) -> complex:
    """The two-parameter family t^(2+ipi/2) + (1+ipi/4)(t^(1+ipi/2) + (a+b*ipi/4) t^(ipi/2)).

    Defined for t > 0 via the real logarithm; the centre approximant is the
    (a, b) = (1/4, 43/6 or 31/6) member evaluated at t = n - 1/2.
    """
    if np.any(np.asarray(t) <= 0.0):
        raise ValueError("t must be > 0")
    t = np.asarray(t, dtype=float)
    logt = np.log(t)
    tw = np.exp(LOG_TWIST * logt)
    value = t**2 * tw + UNIT_COEFF * (t * tw + (a + 0.25j * math.pi * b) * tw)
    return complex(value) if value.ndim == 0 else value


def approximant(n) -> complex:
    """Centre approximant at index n: the asymptotic family at t = n - 1/2.

    Constant coefficient 1/4 + (37/24 + (-1)^n/4) * pi * i, i.e. b = 43/6
    for even n and 31/6 for odd n.
    """
    if np.ndim(n) == 0:
        if n < 3:
            raise ValueError("n must be >= 3")
        return asymptotic_form(n - 0.5, 0.25, float(ApproximantCoefficients.for_index(int(n)).b))
    n = np.asarray(n)
    b_even = float(Fraction(43, 6))
    b_odd = float(Fraction(31, 6))
    even = asymptotic_form(np.asarray(n, dtype=float) - 0.5, 0.25, b_even)
    odd = asymptotic_form(np.asarray(n, dtype=float) - 0.5, 0.25, b_odd)
    return np.where(n % 2 == 0, even, odd)


def unwrap_angle(z: complex, theta_hint: float) -> float:
    """Representative of arg z closest to theta_hint."""
    if z == 0:
        raise ValueError("z must be nonzero")
    principal = cmath.phase(complex(z))
    k = round((theta_hint - principal) / (2.0 * math.pi))
    return principal + 2.0 * math.pi * k


def spiral_gap(z: complex, theta_hint: float) -> float:
    """Radial gap |z| - exp(4*theta/pi) with theta unwrapped near theta_hint.

    Callers tracking the asymptotic family pass theta_hint = (pi/2) log t,
    the continuous branch the family's argument follows.
    """
    theta = unwrap_angle(z, theta_hint)
    return abs(z) - math.exp(GROWTH_RATE * theta)


def gap_limit(b: float) -> float:
    """Limiting radial gap of the asymptotic family: (1/2 - b)(1 + pi^2/16)."""
    return (0.5 - b) * (1.0 + math.pi**2 / 16.0)
