"""Rate statistics and spatial throughput when interference is noise.

Under the closest-interferer approximation the whole chain is driven by one
random variable: the distance r1 from the typical receiver to its nearest
interferer, Rayleigh-distributed with scale set by the density.  The highest
decodable SIR is (r1/d)^alpha and the highest achievable rate follows by
R = log2(1 + SIR).

All expectations are evaluated after the substitution u = mu * sir^(2/alpha)
(mu = lam*pi*d^2), which turns every integrand into a smooth function times
exp(-u) on [0, inf) — no endpoint singularities survive, so the adaptive
quadrature stays cheap.
"""
from __future__ import annotations

import math

import numpy as np

from .model import DecodingRule, NetworkConfig, ThroughputValue
from .numerics import (
    BracketError,
    QuadratureSpec,
    find_root,
    gamma,
    integrate,
    maximize_unimodal,
)

__all__ = [
    "asymptote",
    "cognitive_throughput",
    "lower_bound",
    "mean_rate",
    "optimal_density",
    "pdf_nearest_distance",
    "pdf_rate",
    "pdf_sir",
    "upper_bound",
]

_LN2 = math.log(2.0)
_LOG_LN4 = math.log(math.log(4.0))


def _log2_1p_scaled_pow(k: float, y: float, p: float) -> float:
    """log2(1 + k * y**p) without overflow for huge y**p."""
    if y <= 0.0:
        return 0.0
    t = p * math.log2(y) + math.log2(k)
    if t > 64.0:
        return t
    return math.log1p(k * y**p) / _LN2


def _scalar_or_array(out: np.ndarray):
    return float(out) if out.ndim == 0 else out


def pdf_nearest_distance(cfg: NetworkConfig, x):
    """Density of the distance to the nearest interferer: 2*lam*pi*x*exp(-lam*pi*x^2)."""
    x = np.asarray(x, dtype=float)
    lp = cfg.lam * math.pi
    out = np.where(x > 0, 2.0 * lp * x * np.exp(-lp * x * x), 0.0)
    return _scalar_or_array(out)


def pdf_sir(cfg: NetworkConfig, x):
    """Density of the highest decodable SIR, supported on x > 0.

    (2*mu/alpha) * x^(2/alpha - 1) * exp(-mu * x^(2/alpha)), the push-forward
    of the nearest-distance law through sir = (r1/d)^alpha.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = x > 0
    if np.any(m):
        xm = x[m]
        e = 2.0 / cfg.alpha
        out[m] = (2.0 * cfg.mu / cfg.alpha) * xm ** (e - 1.0) * np.exp(-cfg.mu * xm**e)
    return _scalar_or_array(out)


def pdf_rate(cfg: NetworkConfig, x):
    """Density of the highest achievable rate in bits/s/Hz, supported on x > 0.

    Push-forward of the SIR density through R = log2(1 + sir); behaves like
    x^(2/alpha - 1) near zero (integrable for alpha > 2) and decays
    double-exponentially in x.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = x > 0
    if np.any(m):
        xm = x[m]
        e = 2.0 / cfg.alpha
        with np.errstate(over="ignore"):
            s = np.expm1(xm * _LN2)  # 2^x - 1
            logpdf = (
                _LOG_LN4
                + math.log(cfg.mu / cfg.alpha)
                + xm * _LN2
                + (e - 1.0) * np.log(s)
                - cfg.mu * s**e
            )
            out[m] = np.exp(logpdf)
    return _scalar_or_array(out)


def mean_rate(cfg: NetworkConfig, spec: QuadratureSpec | None = None) -> float:
    """Expected highest achievable rate of the typical link, bits/s/Hz."""
    mu, half_alpha = cfg.mu, cfg.alpha / 2.0

    def integrand(u: float) -> float:
        return _log2_1p_scaled_pow(1.0, u / mu, half_alpha) * math.exp(-u)

    return integrate(integrand, 0.0, math.inf, spec)


def cognitive_throughput(cfg: NetworkConfig, spec: QuadratureSpec | None = None) -> ThroughputValue:
    """Density times expected per-realization maximum rate, bits/s/Hz/m^2."""
    return ThroughputValue(
        value=cfg.lam * mean_rate(cfg, spec),
        method="cognitive",
        rule=DecodingRule.IAN,
        kind="quadrature",
    )


def lower_bound(cfg: NetworkConfig, y: float) -> ThroughputValue:
    """Markov-inequality lower bound lam * y * P[R >= y], valid for any y > 0."""
    if not y > 0:
        raise ValueError(f"y must be > 0, got {y}")
    with np.errstate(over="ignore"):
        s = math.expm1(y * _LN2)
        value = cfg.lam * y * math.exp(-cfg.mu * s ** (2.0 / cfg.alpha))
    return ThroughputValue(value=value, method="cognitive", rule=DecodingRule.IAN, kind="lower_bound")


def upper_bound(cfg: NetworkConfig) -> ThroughputValue:
    """Jensen upper bound lam * log2(1 + E[sir]); E[sir] = Gamma(1+alpha/2) * mu^(-alpha/2)."""
    half_alpha = cfg.alpha / 2.0
    log2_mean_sir = math.log2(gamma(1.0 + half_alpha)) - half_alpha * math.log2(cfg.mu)
    if log2_mean_sir > 64.0:
        value = cfg.lam * log2_mean_sir
    else:
        value = cfg.lam * math.log1p(2.0**log2_mean_sir) / _LN2
    return ThroughputValue(value=value, method="cognitive", rule=DecodingRule.IAN, kind="upper_bound")


def asymptote(cfg: NetworkConfig) -> ThroughputValue:
    """High-density equivalent c * lam^(1 - alpha/2).

    The constant c = (pi*d^2)^(-alpha/2) * Gamma(1 + alpha/2) / ln2 makes the
    ratio asymptote/upper_bound tend to 1, matching log2(1+x) ~ x/ln2.
    """
    half_alpha = cfg.alpha / 2.0
    c = (math.pi * cfg.d * cfg.d) ** (-half_alpha) * gamma(1.0 + half_alpha) / _LN2
    return ThroughputValue(
        value=c * cfg.lam ** (1.0 - half_alpha),
        method="cognitive",
        rule=DecodingRule.IAN,
        kind="asymptote",
    )


def _stationarity_residual(lam: float, d: float, alpha: float,
                           spec: QuadratureSpec | None) -> float:
    # d(lam * E[R])/dlam = 0 is equivalent, after the u-substitution, to
    #   int u^(..) log2(1+x(u)) e^-u du  =  int (u-1) * same  du;
    # both sides are evaluated with the same quadrature and subtracted.
    mu = lam * math.pi * d * d
    half_alpha = alpha / 2.0

    def phi(u: float) -> float:
        return _log2_1p_scaled_pow(1.0, u / mu, half_alpha) * math.exp(-u)

    lhs = integrate(phi, 0.0, math.inf, spec)
    rhs = integrate(lambda u: (u - 1.0) * phi(u), 0.0, math.inf, spec)
    return lhs - rhs


def optimal_density(d: float, alpha: float, spec: QuadratureSpec | None = None):
    """Density maximizing the cognitive throughput, with the value there.

    Solves the first-order condition by bracketed root finding over
    lam in [1e-6, 1e3] / d^2; if numerical noise produces several sign
    changes, the root closest to a golden-section argmax is kept.

    Returns (lam_star, ThroughputValue).
    """
    if not d > 0:
        raise ValueError(f"d must be > 0, got {d}")
    if not alpha > 2:
        raise ValueError(f"alpha must be > 2, got {alpha}")

    lo, hi = 1e-6 / (d * d), 1e3 / (d * d)
    grid = np.geomspace(lo, hi, 61)
    res = np.array([_stationarity_residual(l, d, alpha, spec) for l in grid])
    sign_flips = np.nonzero(np.sign(res[:-1]) * np.sign(res[1:]) < 0)[0]
    if sign_flips.size == 0:
        raise BracketError("stationarity residual has no sign change on the density bracket")

    roots = [
        find_root(lambda l: _stationarity_residual(l, d, alpha, spec),
                  (grid[i], grid[i + 1]), tol=1e-12)
        for i in sign_flips
    ]
    if len(roots) == 1:
        lam_star = roots[0]
    else:
        # tie-break: golden-section argmax of the throughput itself
        t_star, _ = maximize_unimodal(
            lambda t: math.exp(t) * mean_rate(NetworkConfig(math.exp(t), d, alpha), spec),
            (math.log(lo), math.log(hi)),
            tol=1e-10,
        )
        lam_g = math.exp(t_star)
        lam_star = min(roots, key=lambda r: abs(math.log(r) - math.log(lam_g)))

    return lam_star, cognitive_throughput(NetworkConfig(lam_star, d, alpha), spec)
