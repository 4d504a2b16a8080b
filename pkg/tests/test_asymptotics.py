import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyspiral import asymptotics as asym
from polyspiral import geometry as geo


class TestHarmonicExpansions:
    def test_gamma_bracket(self):
        assert 0.577215 < asym.EULER_GAMMA < 0.577216

    def test_expansion_at_ten(self):
        assert asym.harmonic_expansion(10) == pytest.approx(2.9290075887316771, abs=1e-12)
        residual = geo.harmonic(10) - asym.harmonic_expansion(10)
        assert abs(residual) < 4e-5  # consistent with a cubic-order tail

    def test_two_sided_bound_at_ten(self):
        value = geo.harmonic(10) - asym.EULER_GAMMA - math.log(10.5)
        lo, hi = asym.detemple_bounds(10)
        assert lo == pytest.approx(1.0 / (24 * 121), abs=1e-18)
        assert hi == pytest.approx(1.0 / 2400, abs=1e-18)
        assert lo < value < hi

    def test_two_sided_bound_at_one(self):
        value = geo.harmonic(1) - asym.EULER_GAMMA - math.log(1.5)
        assert value == pytest.approx(0.017319, abs=1e-6)
        assert 1.0 / 96.0 < value < 1.0 / 24.0

    def test_alt_expansion_at_ten(self):
        expected = math.log(2.0) - 0.05 + 0.0025
        assert asym.alt_harmonic_expansion(10) == pytest.approx(expected, abs=1e-15)
        assert abs(geo.alt_harmonic(10) - asym.alt_harmonic_expansion(10)) < 2e-5

    def test_alt_expansion_tends_to_log_two(self):
        assert asym.alt_harmonic_expansion(10**9) == pytest.approx(math.log(2.0), abs=1e-8)

    def test_alt_residual_cubic_rate_at_hundred(self):
        residual = abs(geo.alt_harmonic(100) - asym.alt_harmonic_expansion(100))
        assert residual <= 2.0 / 100**3

    @pytest.mark.parametrize("func", [asym.harmonic_expansion, asym.alt_harmonic_expansion])
    def test_rejects_nonpositive(self, func):
        with pytest.raises(ValueError):
            func(0)


class TestBernoulli:
    def test_unit_interval_integrals_vanish(self):
        assert asym.B1.integral_over_unit_interval() == 0
        assert asym.B3.integral_over_unit_interval() == 0

    def test_cubic_endpoint_roots(self):
        assert asym.B3(0.0) == 0.0
        assert asym.B3(1.0) == 0.0

    def test_values(self):
        assert asym.B1(0.75) == pytest.approx(0.25, abs=1e-15)
        assert asym.B3(0.5) == pytest.approx(0.0, abs=1e-15)

    def test_sup_norms(self):
        assert asym.B1.sup_norm == 0.5
        assert asym.B3.sup_norm == pytest.approx(math.sqrt(3.0) / 36.0, abs=1e-15)


def _poly_callables(c0, c1, c2, c3):
    f = lambda t: c0 + c1 * np.asarray(t, float) + c2 * np.asarray(t, float) ** 2 + c3 * np.asarray(t, float) ** 3
    df = lambda t: c1 + 2 * c2 * np.asarray(t, float) + 3 * c3 * np.asarray(t, float) ** 2
    d3f = lambda t: 6 * c3 * np.ones_like(np.asarray(t, float))
    return f, df, d3f


class TestEulerMaclaurin:
    def test_constant_function(self):
        f, df, _ = _poly_callables(1.0, 0.0, 0.0, 0.0)
        value = asym.em_sum_minus_integral(f, 0, 5, asym.EmOrder.ONE, df=df)
        assert value == pytest.approx(1.0, abs=1e-14)

    def test_square_on_unit_interval(self):
        f, df, d3f = _poly_callables(0.0, 0.0, 1.0, 0.0)
        value = asym.em_sum_minus_integral(f, 0, 1, asym.EmOrder.THREE, df=df, d3f=d3f)
        # S = 1, I = 1/3: endpoint average 1/2 plus gradient term 1/6
        assert value == pytest.approx(2.0 / 3.0, abs=1e-14)

    @settings(max_examples=40, deadline=None)
    @given(
        st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
        st.integers(-3, 3), st.integers(1, 9),
    )
    def test_cubic_exactness(self, c0, c1, c2, c3, m, span):
        n = m + span
        f, df, d3f = _poly_callables(c0, c1, c2, c3)
        direct = sum(f(float(i)) for i in range(m, n + 1))
        direct -= sum(c * (n ** (k + 1) - m ** (k + 1)) / (k + 1) for k, c in enumerate((c0, c1, c2, c3)))
        value = asym.em_sum_minus_integral(f, m, n, asym.EmOrder.THREE, df=df, d3f=d3f)
        assert value == pytest.approx(direct, abs=1e-11)

    def test_linear_exactness_order_one(self):
        f, df, _ = _poly_callables(0.5, -2.0, 0.0, 0.0)
        direct = sum(f(float(i)) for i in range(2, 9)) - (0.5 * (8 - 2) - 1.0 * (64 - 4))
        assert direct == -9.5
        value = asym.em_sum_minus_integral(f, 2, 8, asym.EmOrder.ONE, df=df)
        assert value == pytest.approx(direct, abs=1e-12)

    def test_complex_power_vs_direct_oracle(self):
        q = 1.0 + asym.LOG_TWIST
        f = lambda t: np.exp(q * np.log(np.asarray(t, float) + 0.5))
        df = lambda t: q * np.exp((q - 1) * np.log(np.asarray(t, float) + 0.5))
        d3f = lambda t: q * (q - 1) * (q - 2) * np.exp((q - 3) * np.log(np.asarray(t, float) + 0.5))
        # direct summation minus exact antiderivative difference, 50-digit oracle
        oracle = complex(29.45931523960457598836964, 41.53949022852972519678096)
        value = asym.em_sum_minus_integral(f, 2, 99, asym.EmOrder.THREE, df=df, d3f=d3f)
        assert abs(value - oracle) < 1e-10
        value_one = asym.em_sum_minus_integral(f, 2, 99, asym.EmOrder.ONE, df=df)
        assert abs(value_one - oracle) < 1e-10

    def test_rejects_bad_range_and_missing_derivatives(self):
        f, df, _ = _poly_callables(1.0, 0.0, 0.0, 0.0)
        with pytest.raises(ValueError):
            asym.em_sum_minus_integral(f, 5, 5, asym.EmOrder.ONE, df=df)
        with pytest.raises(ValueError):
            asym.em_sum_minus_integral(f, 0, 5, asym.EmOrder.ONE)
        with pytest.raises(ValueError):
            asym.em_sum_minus_integral(f, 0, 5, asym.EmOrder.THREE, df=df)


class TestPowerSums:
    def test_single_term(self):
        expected = cmath.exp((1 + 0.5j * math.pi) * math.log(2.5))
        assert asym.power_sum_exact(1, 3) == pytest.approx(expected, abs=1e-15)
        assert asym.power_sum_exact(1, 3) == pytest.approx(
            complex(0.3277790861614548, 2.4784190264511693), abs=1e-14
        )

    def test_alternating_two_terms(self):
        # signs (+, -) for k = 2, 3
        assert asym.power_sum_exact(0, 4, alternating=True) == pytest.approx(
            complex(0.5178011434198642, 0.0691576433474505), abs=1e-14
        )

    def test_invalid_combinations(self):
        with pytest.raises(ValueError):
            asym.power_sum_exact(1, 10, alternating=True)
        with pytest.raises(ValueError):
            asym.power_sum_exact(2, 10)
        with pytest.raises(ValueError):
            asym.power_sum_exact(1, 2)
        with pytest.raises(ValueError):
            asym.power_sum_closed(0, 10, alternating=False)

    def test_alternating_sum_stays_bounded(self):
        prefix = asym.power_sum_prefix(0, 2000, alternating=True)
        assert np.abs(prefix).max() <= 2.0

    def test_closed_alternating_modulus_is_half(self):
        for n in (10, 11, 1000, 1001):
            assert abs(abs(asym.power_sum_closed(0, n, alternating=True)) - 0.5) < 1e-15

    @pytest.mark.parametrize("p", [1, -1])
    def test_pair_differences_decay(self, p):
        prefix = asym.power_sum_prefix(p, 2001)
        ns = np.arange(50, 1001)
        diff = (prefix[2 * ns - 3] - asym.power_sum_closed(p, 2 * ns)) - (
            prefix[ns - 3] - asym.power_sum_closed(p, ns)
        )
        assert float((ns * np.abs(diff)).max()) <= 10.0

    def test_prefix_matches_scalar(self):
        prefix = asym.power_sum_prefix(1, 50)
        assert prefix[47 - 3] == pytest.approx(asym.power_sum_exact(1, 47), abs=1e-12)


class TestApproximant:
    def test_parity_coefficients(self):
        even = asym.ApproximantCoefficients.for_index(4)
        odd = asym.ApproximantCoefficients.for_index(5)
        assert even.b == Fraction(43, 6) and odd.b == Fraction(31, 6)
        assert even.b - odd.b == 2
        assert even.a == odd.a == Fraction(1, 4)
        assert even.constant() == pytest.approx(0.25 + (43.0 / 24.0) * math.pi * 1j, abs=1e-15)
        assert odd.constant() == pytest.approx(0.25 + (31.0 / 24.0) * math.pi * 1j, abs=1e-15)

    def test_leading_term_dominates(self):
        n = 10**4
        assert abs(asym.approximant(n)) / (n - 0.5) ** 2 == pytest.approx(1.0, abs=1e-3)

    def test_matches_family_members(self):
        assert asym.approximant(10) == pytest.approx(asym.asymptotic_form(9.5, 0.25, 43.0 / 6.0), abs=1e-12)
        assert asym.approximant(11) == pytest.approx(asym.asymptotic_form(10.5, 0.25, 31.0 / 6.0), abs=1e-12)

    def test_vectorized_agrees_with_scalar(self):
        ns = np.array([7, 8, 9])
        vec = asym.approximant(ns)
        for i, n in enumerate(ns):
            assert vec[i] == pytest.approx(asym.approximant(int(n)), abs=1e-12)


class TestAsymptoticFamily:
    def test_unit_argument(self):
        assert asym.asymptotic_form(1.0, 0.0, 0.0) == pytest.approx(2.0 + 0.25j * math.pi, abs=1e-15)

    def test_against_high_precision_oracle(self):
        value = asym.asymptotic_form(100.0, 0.25, 43.0 / 6.0)
        oracle = complex(5798.99910750235115518448, 8264.653339169683947377386)
        assert abs(value - oracle) / abs(oracle) < 1e-9

    def test_ratio_tends_to_one(self):
        t = 1e6
        assert abs(asym.asymptotic_form(t, 0.25, 43.0 / 6.0)) / t**2 == pytest.approx(1.0, abs=1e-5)

    def test_rejects_nonpositive_argument(self):
        with pytest.raises(ValueError):
            asym.asymptotic_form(0.0, 0.0, 0.0)


class TestSpiralGap:
    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            asym.spiral_gap(0j, 0.0)

    def test_balanced_coefficient_gap_vanishes(self):
        z = asym.asymptotic_form(1e4, 0.3, 0.5)
        assert abs(asym.spiral_gap(z, 0.5 * math.pi * math.log(1e4))) < 1e-3

    def test_even_coefficient_gap(self):
        z = asym.asymptotic_form(1e4, 0.25, 43.0 / 6.0)
        gap = asym.spiral_gap(z, 0.5 * math.pi * math.log(1e4))
        assert gap == pytest.approx(-(20.0 / 3.0) * (1.0 + math.pi**2 / 16.0), abs=1e-2)
        assert asym.gap_limit(43.0 / 6.0) == pytest.approx(-10.779001833787233, abs=1e-12)

    def test_odd_coefficient_gap(self):
        z = asym.asymptotic_form(1e4, 0.25, 31.0 / 6.0)
        gap = asym.spiral_gap(z, 0.5 * math.pi * math.log(1e4))
        assert gap == pytest.approx(-(14.0 / 3.0) * (1.0 + math.pi**2 / 16.0), abs=1e-2)
        assert asym.gap_limit(31.0 / 6.0) == pytest.approx(-7.545301283651063, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(min_value=-5.0, max_value=12.0))
    def test_points_on_curve_have_zero_gap(self, theta):
        z = cmath.exp(asym.GROWTH_RATE * theta) * cmath.exp(1j * theta)
        assert abs(asym.spiral_gap(z, theta)) < 1e-9 * max(1.0, abs(z))

    def test_unwrapping_follows_hint(self):
        z = cmath.exp(1j * 0.3)
        for k in (-2, 0, 3):
            hint = 0.3 + 2.0 * math.pi * k
            assert asym.unwrap_angle(z, hint) == pytest.approx(hint, abs=1e-12)


class TestSeriesWeights:
    def test_inverse_weight_recomposition(self):
        # (1/pi) * (i pi/48 - pi^2/32) - pi/3 collected over exact rationals
        real_pi_part = Fraction(-1, 32) - Fraction(1, 3)
        imag_part = Fraction(1, 48)
        assert real_pi_part == asym.INVERSE_WEIGHT_PI_PART
        assert imag_part == asym.INVERSE_WEIGHT_IMAG
        w1, w0, wm1 = asym.power_sum_weights()
        assert w1 == pytest.approx(1.0 / math.pi, abs=1e-16)
        assert w0 == pytest.approx(-0.25j, abs=1e-16)
        assert wm1 == pytest.approx(complex(-35.0 * math.pi / 96.0, 1.0 / 48.0), abs=1e-15)
