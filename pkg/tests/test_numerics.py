import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pppt.numerics import (
    BracketError,
    QuadratureError,
    QuadratureSpec,
    SeriesTruncation,
    find_root,
    gamma,
    integrate,
    maximize_unimodal,
    poisson_weight,
    truncated_poisson_weights,
    upper_incomplete_gamma,
)

# Reference values computed with 40-digit arithmetic (mpmath 1.3), frozen.
GAMMA_REFS = [
    (0.5, 1.7724538509055160273),
    (1.5, 0.88622692545275801365),
    (2.0, 1.0),
    (3.0, 2.0),
    (4.0, 6.0),
    (5.5, 52.342777784553520181),
    (7.25, 1155.3810139199896872),
    (10.0, 362880.0),
]
UPPER_GAMMA_REFS = [
    (0.5, 0.25, 0.84989183807993112979),
    (1.5, 2.5, 0.15225125499165762764),
    (2.0, 1.0, 0.73575888234288464319),
    (3.0, 1.0, 1.839397205857211608),
    (3.0, 10.0, 0.0055387914310231518873),
    (4.0, 50.0, 2.5614955230869606509e-17),
    (2.5, 300.0, 2.6884809777468196255e-127),
    (3.0, 700.0, 4.8450647729566389185e-299),
]


class TestSpecs:
    def test_quadrature_spec_validation(self):
        with pytest.raises(ValueError):
            QuadratureSpec(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureSpec(abs_tol=-1.0)
        with pytest.raises(ValueError):
            QuadratureSpec(max_subdivisions=0)

    def test_truncation_validation(self):
        with pytest.raises(ValueError):
            SeriesTruncation(mass_tol=0.0)
        with pytest.raises(ValueError):
            SeriesTruncation(mass_tol=1.0)
        with pytest.raises(ValueError):
            SeriesTruncation(hard_cap=-1)

    def test_default_cap_policy(self):
        t = SeriesTruncation()
        assert t.cap_for(0.0) == 20
        assert t.cap_for(100.0) == 100 + 120 + 20
        assert SeriesTruncation(hard_cap=5).cap_for(1e6) == 5


class TestIntegrate:
    def test_exponential(self):
        assert integrate(lambda x: math.exp(-x), 0.0, math.inf) == pytest.approx(1.0, rel=1e-8)

    def test_endpoint_singularity(self):
        assert integrate(lambda x: x**-0.5, 0.0, 1.0) == pytest.approx(2.0, rel=1e-6)

    @pytest.mark.parametrize("lam", [0.1, 1.0, 10.0])
    def test_nearest_distance_normalization(self, lam):
        f = lambda x: 2.0 * lam * math.pi * x * math.exp(-lam * math.pi * x * x)
        assert integrate(f, 0.0, math.inf) == pytest.approx(1.0, rel=1e-8)

    def test_requires_ordered_interval(self):
        with pytest.raises(ValueError):
            integrate(math.exp, 1.0, 0.0)

    def test_failure_carries_estimate(self):
        spec = QuadratureSpec(rel_tol=1e-13, abs_tol=1e-14, max_subdivisions=3)
        f = lambda x: math.cos(50.0 / (x + 1e-3)) / (x + 1e-3) ** 2
        with pytest.raises(QuadratureError) as err:
            integrate(f, 0.0, 1.0, spec)
        assert math.isfinite(err.value.estimate)
        assert err.value.error_bound > 0

    @given(
        c=st.tuples(*[st.floats(-10, 10) for _ in range(3)]),
        d=st.tuples(*[st.floats(-10, 10) for _ in range(3)]),
    )
    @settings(max_examples=25, deadline=None)
    def test_linearity_on_damped_polynomials(self, c, d):
        # integral of (c0 + c1 x + c2 x^2) e^-x over [0, inf) is c0 + c1 + 2 c2
        f = lambda x: (c[0] + c[1] * x + c[2] * x * x) * math.exp(-x)
        g = lambda x: (d[0] + d[1] * x + d[2] * x * x) * math.exp(-x)
        bi = integrate(lambda x: f(x) + g(x), 0.0, math.inf)
        fi = integrate(f, 0.0, math.inf)
        gi = integrate(g, 0.0, math.inf)
        scale = 1.0 + abs(fi) + abs(gi)
        assert abs(bi - fi - gi) <= 1e-7 * scale
        assert abs(fi - (c[0] + c[1] + 2 * c[2])) <= 1e-7 * scale


class TestFindRoot:
    def test_linear(self):
        assert find_root(lambda x: x - 1.0, (0.0, 2.0), tol=1e-12) == pytest.approx(1.0, abs=1e-10)

    def test_sqrt_two(self):
        root = find_root(lambda x: x * x - 2.0, (1.0, 2.0), tol=1e-12)
        assert root == pytest.approx(math.sqrt(2.0), abs=1e-9)

    def test_bracket_must_change_sign(self):
        with pytest.raises(BracketError):
            find_root(lambda x: x * x + 1.0, (-1.0, 1.0), tol=1e-9)

    def test_residual_bound(self):
        h = lambda x: math.tanh(3.0 * (x - 0.7))
        root = find_root(h, (0.0, 2.0), tol=1e-10)
        assert abs(root - 0.7) < 1e-9


class TestMaximizeUnimodal:
    def test_parabola(self):
        x, v = maximize_unimodal(lambda x: -((x - 3.0) ** 2), (0.0, 10.0), tol=1e-8)
        assert x == pytest.approx(3.0, abs=1e-6)
        assert v == pytest.approx(0.0, abs=1e-10)

    def test_damped_ramp(self):
        x, v = maximize_unimodal(lambda x: x * math.exp(-x), (0.0, 10.0), tol=1e-9)
        assert x == pytest.approx(1.0, abs=1e-7)
        assert v == pytest.approx(math.exp(-1.0), rel=1e-12)


class TestPoissonWeights:
    def test_pmf_at_zero(self):
        assert poisson_weight(1.0, 0) == pytest.approx(math.exp(-1.0), rel=1e-15)

    def test_degenerate(self):
        assert poisson_weight(0.0, 0) == 1.0
        assert poisson_weight(0.0, 3) == 0.0

    def test_validation(self):
        with pytest.raises(ValueError):
            poisson_weight(-1.0, 0)
        with pytest.raises(ValueError):
            poisson_weight(1.0, -1)

    def test_log_space_large_mean(self):
        from scipy import stats
        assert poisson_weight(1e4, 10_000) == pytest.approx(
            float(stats.poisson.pmf(10_000, 1e4)), rel=1e-12)

    @pytest.mark.parametrize("mean", [0.5, 5.0, 50.0])
    def test_cumulative_mass(self, mean):
        w = truncated_poisson_weights(mean)
        assert w.sum() >= 1.0 - 1e-10
        assert w.sum() <= 1.0 + 1e-12

    def test_degenerate_weights(self):
        np.testing.assert_array_equal(truncated_poisson_weights(0.0), [1.0])

    @given(mean=st.floats(1e-6, 1e4))
    @settings(max_examples=60, deadline=None)
    def test_mass_property(self, mean):
        w = truncated_poisson_weights(mean)
        assert 1.0 - 1e-10 <= w.sum() <= 1.0 + 1e-12
        assert np.all(w >= 0)


class TestSpecialFunctions:
    @pytest.mark.parametrize("z,ref", GAMMA_REFS)
    def test_gamma(self, z, ref):
        assert gamma(z) == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("z,a,ref", UPPER_GAMMA_REFS)
    def test_upper_incomplete_gamma(self, z, a, ref):
        assert upper_incomplete_gamma(z, a) == pytest.approx(ref, rel=1e-12)
