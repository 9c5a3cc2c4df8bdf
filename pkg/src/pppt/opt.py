"""Rate statistics and spatial throughput under joint decoding.

The receiver jointly decodes every interferer closer than its own
transmitter (there are n of them, Poisson with mean mu = lam*pi*d^2) and
treats the rest as noise.  Conditioned on n, the nearest noise interferer
lies beyond d, so the SIR law is the interference-as-noise one truncated to
sir > 1; the joint-decode constraint is shared symmetrically, giving
R = log2(1 + (1+n)*sir) / (1+n) on the support x > log2(2+n)/(1+n).
Unconditional quantities are Poisson mixtures over n, truncated by the
series policy in :mod:`pppt.numerics`.
"""
from __future__ import annotations

import math

import numpy as np

from .model import DecodingRule, NetworkConfig, ThroughputValue
from .numerics import (
    QuadratureSpec,
    SeriesTruncation,
    integrate,
    truncated_poisson_weights,
    upper_incomplete_gamma,
)
from .ian import _log2_1p_scaled_pow

__all__ = [
    "cognitive_throughput",
    "conditional_mean_rate",
    "conditional_support_edge",
    "lower_bound",
    "pdf_rate",
    "pdf_rate_conditional",
    "pdf_sir",
    "truncated_sir_mean",
    "upper_bound",
]

_LN2 = math.log(2.0)
_LOG_LN4 = math.log(math.log(4.0))

# closed-form moment overflows past exp(709); switch to quadrature well before
_MOMENT_CLOSED_FORM_MAX_MU = 600.0


def _scalar_or_array(out: np.ndarray):
    return float(out) if out.ndim == 0 else out


def pdf_sir(cfg: NetworkConfig, x):
    """Density of the highest decodable SIR given joint decoding, on x > 1.

    Same push-forward as the interference-as-noise law but conditioned on
    the nearest noise interferer being farther than d, hence exactly zero
    at and below 1.
    """
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = x > 1.0
    if np.any(m):
        xm = x[m]
        e = 2.0 / cfg.alpha
        out[m] = (2.0 * cfg.mu / cfg.alpha) * xm ** (e - 1.0) * np.exp(-cfg.mu * (xm**e - 1.0))
    return _scalar_or_array(out)


def conditional_support_edge(n: int) -> float:
    """Smallest rate with positive density when 1+n messages are decoded."""
    return math.log2(2.0 + n) / (1.0 + n)


def pdf_rate_conditional(cfg: NetworkConfig, n: int, x):
    """Rate density given that 1+n messages are jointly decoded.

    Zero at and below log2(2+n)/(1+n); above it, the push-forward of the
    truncated SIR density through (1+n)*R = log2(1 + (1+n)*sir).
    """
    if n < 0:
        raise ValueError(f"joint-decode count must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    m = x > conditional_support_edge(n)
    if np.any(m):
        k = 1.0 + n
        e = 2.0 / cfg.alpha
        t = k * x[m] * _LN2
        with np.errstate(over="ignore"):
            b = np.expm1(t) / k  # the SIR matching rate x
            logpdf = (
                _LOG_LN4
                + math.log(cfg.mu / cfg.alpha)
                + t
                + (e - 1.0) * np.log(b)
                - cfg.mu * (b**e - 1.0)
            )
            out[m] = np.exp(logpdf)
    return _scalar_or_array(out)


def pdf_rate(cfg: NetworkConfig, x, truncation: SeriesTruncation | None = None):
    """Unconditional rate density: Poisson mixture of the conditional ones."""
    w = truncated_poisson_weights(cfg.mu, truncation)
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    for i, wi in enumerate(w):
        out += wi * np.asarray(pdf_rate_conditional(cfg, i, x))
    return _scalar_or_array(out)


def conditional_mean_rate(cfg: NetworkConfig, n: int,
                          spec: QuadratureSpec | None = None) -> float:
    """Expected rate given 1+n jointly decoded messages, bits/s/Hz.

    Computed from the shifted-exponential form of the truncated SIR law:
    with t = mu*(sir^(2/alpha) - 1) ~ Exp(1),
    E[R | n] = (1+n)^-1 * E[ log2(1 + (1+n) * ((t+mu)/mu)^(alpha/2)) ].
    """
    if n < 0:
        raise ValueError(f"joint-decode count must be >= 0, got {n}")
    mu, half_alpha, k = cfg.mu, cfg.alpha / 2.0, 1.0 + n

    def integrand(t: float) -> float:
        return _log2_1p_scaled_pow(k, (t + mu) / mu, half_alpha) * math.exp(-t)

    return integrate(integrand, 0.0, math.inf, spec) / k


def cognitive_throughput(cfg: NetworkConfig, spec: QuadratureSpec | None = None,
                         truncation: SeriesTruncation | None = None) -> ThroughputValue:
    """Density times expected maximum rate under joint decoding."""
    w = truncated_poisson_weights(cfg.mu, truncation)
    total = 0.0
    for i, wi in enumerate(w):
        total += wi * conditional_mean_rate(cfg, i, spec)
    return ThroughputValue(
        value=cfg.lam * total,
        method="cognitive",
        rule=DecodingRule.OPT,
        kind="quadrature",
    )


def lower_bound(cfg: NetworkConfig, y,
                truncation: SeriesTruncation | None = None) -> ThroughputValue:
    """Markov-type lower bound with a per-joint-count rate schedule.

    ``y`` is a constant or a callable i -> y_i; every scheduled rate must
    exceed the conditional support edge log2(2+i)/(1+i).  Each term is the
    Poisson weight times y_i times the conditional survival probability at
    y_i.
    """
    schedule = y if callable(y) else (lambda i, _y=float(y): _y)
    w = truncated_poisson_weights(cfg.mu, truncation)
    e = 2.0 / cfg.alpha
    total = 0.0
    with np.errstate(over="ignore"):
        for i, wi in enumerate(w):
            yi = float(schedule(i))
            if not yi > conditional_support_edge(i):
                raise ValueError(
                    f"scheduled rate {yi} at joint count {i} is not above the "
                    f"support edge {conditional_support_edge(i)}"
                )
            b = math.expm1((1.0 + i) * yi * _LN2) / (1.0 + i)
            total += wi * yi * math.exp(-cfg.mu * (b**e - 1.0))
    return ThroughputValue(
        value=cfg.lam * total,
        method="cognitive",
        rule=DecodingRule.OPT,
        kind="lower_bound",
    )


def truncated_sir_mean(cfg: NetworkConfig, spec: QuadratureSpec | None = None) -> float:
    """Mean of the >1-truncated SIR law.

    Closed form e^mu * mu^(-alpha/2) * Gamma(1 + alpha/2, mu) while e^mu is
    representable; for larger mu the identical shifted-exponential integral
    int (1 + t/mu)^(alpha/2) e^-t dt is used instead (its value tends to 1).
    """
    mu, half_alpha = cfg.mu, cfg.alpha / 2.0
    if mu <= _MOMENT_CLOSED_FORM_MAX_MU:
        return math.exp(mu) * mu ** (-half_alpha) * upper_incomplete_gamma(1.0 + half_alpha, mu)
    return integrate(lambda t: (1.0 + t / mu) ** half_alpha * math.exp(-t), 0.0, math.inf, spec)


def upper_bound(cfg: NetworkConfig, spec: QuadratureSpec | None = None,
                truncation: SeriesTruncation | None = None) -> ThroughputValue:
    """Jensen upper bound: per-joint-count log of the mean truncated SIR."""
    w = truncated_poisson_weights(cfg.mu, truncation)
    mean_sir = truncated_sir_mean(cfg, spec)
    i = np.arange(len(w))
    value = cfg.lam * float(np.sum(w / (1.0 + i) * np.log1p((1.0 + i) * mean_sir) / _LN2))
    return ThroughputValue(
        value=value,
        method="cognitive",
        rule=DecodingRule.OPT,
        kind="upper_bound",
    )
