import math

import numpy as np
import pytest
from scipy.integrate import quad

from pppt import ian, opt
from pppt.model import NetworkConfig
from pppt.numerics import SeriesTruncation, truncated_poisson_weights

# Frozen from a term-by-term Riemann-sum oracle cross-checked by a direct
# 4e6-draw Monte Carlo of the model law and by 30-digit mpmath quadrature.
C_OPT_AT_INV_PI = 0.52184369656323789

CFG1 = NetworkConfig(1 / math.pi, 1.0, 4.0)  # mu = 1
NORMALIZATION_CFGS = [
    NetworkConfig(0.1, 1.0, 3.0),
    NetworkConfig(1.0, 1.0, 4.0),
    NetworkConfig(2.0, 0.5, 6.0),
]


class TestTruncatedSirPdf:
    def test_zero_at_and_below_one(self):
        assert opt.pdf_sir(CFG1, 0.5) == 0.0
        assert opt.pdf_sir(CFG1, 1.0) == 0.0

    def test_support_edge_value(self):
        # at mu = 1, alpha = 4 the density steps up to 1/2 just above 1
        assert opt.pdf_sir(CFG1, 1.0 + 1e-12) == pytest.approx(0.5, rel=1e-9)

    @pytest.mark.parametrize("cfg", NORMALIZATION_CFGS)
    def test_normalization(self, cfg):
        mass, _ = quad(lambda x: opt.pdf_sir(cfg, x), 1.0, np.inf, limit=500)
        assert mass == pytest.approx(1.0, abs=1e-8)


class TestConditionalRatePdf:
    def test_direct_substitution(self):
        # n = 0, mu = 1, alpha = 4, x = 2: the SIR matching the rate is 3
        expected = math.log(4.0) * 3.0**-0.5 * math.exp(-(math.sqrt(3.0) - 1.0))
        assert opt.pdf_rate_conditional(CFG1, 0, 2.0) == pytest.approx(expected, rel=1e-12)

    def test_support(self):
        edge = opt.conditional_support_edge(1)
        assert edge == pytest.approx(math.log2(3.0) / 2.0, rel=1e-15)
        assert opt.pdf_rate_conditional(CFG1, 1, 0.79) == 0.0
        assert opt.pdf_rate_conditional(CFG1, 1, edge) == 0.0
        assert opt.pdf_rate_conditional(CFG1, 1, edge + 1e-9) > 0.0

    def test_rejects_negative_count(self):
        with pytest.raises(ValueError):
            opt.pdf_rate_conditional(CFG1, -1, 1.0)

    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_normalization(self, n):
        edge = opt.conditional_support_edge(n)
        f = lambda x: opt.pdf_rate_conditional(CFG1, n, x)
        mass = quad(f, edge, edge + 5.0, limit=500)[0] + quad(f, edge + 5.0, np.inf, limit=500)[0]
        assert mass == pytest.approx(1.0, abs=1e-6)

    @pytest.mark.parametrize("n", [0, 1, 3])
    def test_change_of_variables(self, n):
        # conditional rate pdf = truncated SIR pdf through (1+n) R = log2(1 + (1+n) sir)
        k = 1 + n
        for x in np.linspace(opt.conditional_support_edge(n) + 0.05, 6.0, 20):
            sir = math.expm1(k * x * math.log(2.0)) / k
            jac = (1.0 + k * sir) * math.log(2.0)
            assert opt.pdf_rate_conditional(CFG1, n, x) == pytest.approx(
                opt.pdf_sir(CFG1, sir) * jac, rel=1e-10)


class TestMixturePdf:
    def test_degenerate_mixture_is_first_conditional(self):
        cfg = NetworkConfig(1e-8, 1.0, 4.0)
        xs = np.linspace(1.05, 5.0, 9)
        np.testing.assert_allclose(
            opt.pdf_rate(cfg, xs), opt.pdf_rate_conditional(cfg, 0, xs), rtol=1e-6)

    @pytest.mark.parametrize("lam", [0.1 / math.pi, 1 / math.pi, 5 / math.pi])
    def test_normalization(self, lam):
        cfg = NetworkConfig(lam, 1.0, 4.0)
        w = truncated_poisson_weights(cfg.mu)
        edges = sorted({opt.conditional_support_edge(i) for i in range(len(w))})
        f = lambda x: opt.pdf_rate(cfg, x)
        mass = quad(f, 0.0, 2.0, points=edges, limit=800)[0] + quad(f, 2.0, np.inf, limit=500)[0]
        assert mass == pytest.approx(1.0, abs=1e-6)

    def test_mixture_below_largest_component(self):
        w = truncated_poisson_weights(CFG1.mu)
        for x in np.linspace(0.2, 4.0, 12):
            mix = opt.pdf_rate(CFG1, x)
            components = [opt.pdf_rate_conditional(CFG1, i, x) for i in range(len(w))]
            assert mix <= max(components) + 1e-12


class TestCognitiveThroughput:
    def test_pinned_value(self):
        tv = opt.cognitive_throughput(CFG1)
        assert tv.value == pytest.approx(C_OPT_AT_INV_PI, rel=1e-8)
        assert tv.kind == "quadrature"

    def test_vanishes_with_density(self):
        assert opt.cognitive_throughput(NetworkConfig(1e-12, 1.0, 4.0)).value < 1e-9

    def test_dominates_interference_as_noise(self):
        for lam in (0.05, 1 / math.pi, 2.0):
            cfg = NetworkConfig(lam, 1.0, 4.0)
            assert opt.cognitive_throughput(cfg).value >= ian.cognitive_throughput(cfg).value

    def test_nondecreasing_in_density(self):
        vals = [
            opt.cognitive_throughput(NetworkConfig(lam, 1.0, 4.0)).value
            for lam in np.geomspace(0.01, 10.0, 8)
        ]
        assert all(b >= a - 1e-9 for a, b in zip(vals, vals[1:]))

    def test_conditional_mean_above_support_edge(self):
        for n in (0, 2, 7):
            assert opt.conditional_mean_rate(CFG1, n) > opt.conditional_support_edge(n)


class TestLowerBound:
    def test_constant_schedule_below_throughput(self):
        for lam in (0.05, 1 / math.pi, 2.0):
            cfg = NetworkConfig(lam, 1.0, 4.0)
            assert opt.lower_bound(cfg, 2.0).value <= opt.cognitive_throughput(cfg).value + 1e-9

    def test_schedule_below_support_rejected(self):
        with pytest.raises(ValueError):
            opt.lower_bound(CFG1, 0.5)  # below the single-link edge of 1
        with pytest.raises(ValueError):
            opt.lower_bound(CFG1, lambda i: opt.conditional_support_edge(i))

    def test_callable_schedule(self):
        v = opt.lower_bound(CFG1, lambda i: opt.conditional_support_edge(i) + 0.5).value
        assert 0.0 < v <= opt.cognitive_throughput(CFG1).value + 1e-9


class TestUpperBound:
    def test_truncated_sir_mean_closed_form(self):
        # at mu = 1, alpha = 4 the mean is exactly 5
        assert opt.truncated_sir_mean(CFG1) == pytest.approx(5.0, rel=1e-12)

    @pytest.mark.parametrize("mu", [0.5, 5.0, 50.0, 300.0])
    def test_moment_against_direct_quadrature(self, mu):
        cfg = NetworkConfig(mu / math.pi, 1.0, 4.0)
        ref, _ = quad(lambda t: (1.0 + t / mu) ** 2 * math.exp(-t), 0.0, np.inf, limit=500)
        assert opt.truncated_sir_mean(cfg) == pytest.approx(ref, rel=1e-9)

    def test_moment_large_mu_path(self):
        cfg = NetworkConfig(1000.0, 1.0, 4.0)  # mu ~ 3142, past the closed form
        m = opt.truncated_sir_mean(cfg)
        assert m == pytest.approx(1.0 + 2.0 / cfg.mu, rel=1e-3)
        assert m > 1.0

    def test_first_term_direct_substitution(self):
        # weight e^-1 times log2(1 + 5) dominates the series at mu = 1
        w = truncated_poisson_weights(CFG1.mu)
        i = np.arange(len(w))
        series = float(np.sum(w / (1 + i) * np.log2(1.0 + (1 + i) * 5.0)))
        assert opt.upper_bound(CFG1).value == pytest.approx(series / math.pi, rel=1e-12)
        assert w[0] * math.log2(6.0) == pytest.approx(math.exp(-1.0) * math.log2(6.0), rel=1e-12)

    def test_dominates_throughput(self):
        for lam in (0.05, 1 / math.pi, 2.0):
            cfg = NetworkConfig(lam, 1.0, 4.0)
            assert opt.upper_bound(cfg).value >= opt.cognitive_throughput(cfg).value - 1e-9

    def test_ratio_tightens_with_density(self):
        ratios = [
            opt.cognitive_throughput(NetworkConfig(lam, 1.0, 4.0)).value
            / opt.upper_bound(NetworkConfig(lam, 1.0, 4.0)).value
            for lam in (10.0, 100.0)
        ]
        assert ratios[0] <= ratios[1] <= 1.0 + 1e-9


class TestTruncationControl:
    def test_hard_cap_respected(self):
        short = opt.cognitive_throughput(CFG1, truncation=SeriesTruncation(hard_cap=2)).value
        full = opt.cognitive_throughput(CFG1).value
        assert short < full  # dropped tail mass can only lower the series
