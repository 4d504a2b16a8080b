import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polyspiral import spiral as sp

BETA = 4.0 / math.pi
BASE = sp.LogSpiral(BETA, 0.0)


class TestLogSpiral:
    def test_point_at_zero(self):
        assert sp.spiral_point(BASE, 0.0) == pytest.approx(1.0 + 0.0j, abs=1e-15)

    def test_point_quarter_turn(self):
        assert sp.spiral_point(BASE, math.pi / 2.0) == pytest.approx(1j * math.exp(2.0), abs=1e-12)

    def test_offset_point_reaches_origin(self):
        assert sp.spiral_point(sp.LogSpiral(BETA, 1.0), 0.0) == pytest.approx(0.0j, abs=1e-15)

    def test_offset_domain_guard(self):
        with pytest.raises(ValueError):
            sp.spiral_point(sp.LogSpiral(BETA, 1.0), -0.5)

    def test_parameter_guards(self):
        with pytest.raises(ValueError):
            sp.LogSpiral(0.0, 0.0)
        with pytest.raises(ValueError):
            sp.LogSpiral(1.0, -1.0)

    def test_tangent_direction(self):
        # tangent slope relative to the radial direction is arctan(1/beta)
        t = complex(BASE.tangent(0.0))
        assert t == pytest.approx(complex(BETA, 1.0), abs=1e-12)


class TestNearestDistance:
    def test_on_curve_point(self):
        z = sp.spiral_point(BASE, 1.0)
        d, theta = sp.nearest_distance(BASE, z)
        assert d < 1e-10
        assert theta == pytest.approx(1.0, abs=1e-6)

    def test_against_dense_sampling_oracle(self):
        z = 2.0 + 0.0j
        seed = math.log(2.0) / BETA
        thetas = np.linspace(seed - 3.0 * math.pi, seed + 3.0 * math.pi, 10**6)
        oracle = float(np.abs(z - BASE.point(thetas)).min())
        d, _ = sp.nearest_distance(BASE, z)
        assert d == pytest.approx(oracle, abs=1e-6)

    def test_offset_curve_point_at_large_radius(self):
        # distance from the offset-1 curve at r ~ 10^3 to the base curve
        r = 1e3
        theta = math.log(r + 1.0) / BETA
        z = r * complex(math.cos(theta), math.sin(theta))
        d, _ = sp.nearest_distance(BASE, z)
        assert d == pytest.approx(1.0 / math.sqrt(1.0 + BETA**2), abs=1e-2)

    def test_rejects_origin(self):
        with pytest.raises(ValueError):
            sp.nearest_distance(BASE, 0j)
        with pytest.raises(ValueError):
            sp.nearest_distances(BASE, [1.0 + 0j, 0j])

    def test_rejects_bad_turns(self):
        with pytest.raises(ValueError):
            sp.nearest_distance(BASE, 1.0 + 1j, turns=0)

    @settings(max_examples=50, deadline=None)
    @given(
        st.floats(min_value=0.5, max_value=50.0),
        st.floats(min_value=-math.pi, max_value=math.pi),
        st.floats(min_value=-12.0, max_value=12.0),
    )
    def test_never_exceeds_sampled_distances(self, radius, angle, theta_offset):
        z = radius * complex(math.cos(angle), math.sin(angle))
        d, _ = sp.nearest_distance(BASE, z)
        seed = math.log(radius) / BETA
        sample_theta = seed + theta_offset
        assert d <= abs(z - complex(BASE.point(sample_theta))) + 1e-9

    def test_vectorized_matches_scalar(self):
        zs = np.array([2.0 + 1j, -3.0 + 0.5j, 0.1 - 0.2j])
        ds, thetas = sp.nearest_distances(BASE, zs)
        for i, z in enumerate(zs):
            d, theta = sp.nearest_distance(BASE, complex(z))
            assert ds[i] == pytest.approx(d, abs=1e-12)
            assert thetas[i] == pytest.approx(theta, abs=1e-9)


class TestOffsetProfile:
    def test_zero_offset_gives_zero_distances(self):
        rows = sp.offset_distance_profile(BETA, 0.0, [10.0, 100.0])
        assert all(d == 0.0 and pred == 0.0 for _, d, pred in rows)

    def test_unit_offset_far_field(self):
        rows = sp.offset_distance_profile(BETA, 1.0, [1e4])
        _, d, pred = rows[0]
        assert pred == pytest.approx(0.61766782483885603, abs=1e-14)
        assert abs(d - pred) <= 5e-4

    def test_residual_rate(self):
        rs = np.geomspace(1e2, 1e4, 13)
        rows = sp.offset_distance_profile(BETA, 1.0, rs)
        assert max(abs(d - pred) * r for r, d, pred in rows) <= 5.0

    def test_parameter_guards(self):
        with pytest.raises(ValueError):
            sp.offset_distance_profile(-1.0, 1.0, [10.0])
        with pytest.raises(ValueError):
            sp.offset_distance_profile(1.0, -1.0, [10.0])
