"""Non-cognitive baseline: predetermined coding rates optimized on average.

Transmitters cannot see their realization, so they pick one SIR threshold
per joint-decode count (a single one under interference-as-noise), code at
the matching rate, and accept outages.  The per-count objective
rate * success-probability is concave in the threshold; its stationary
point is found by bracketed root finding on the derivative of the log
objective, never by iterating the fixed-point form (whose naive iteration
collapses to the useless zero threshold).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import ian, opt
from .model import DecodingRule, NetworkConfig, ThroughputValue
from .numerics import QuadratureSpec, SeriesTruncation, find_root, truncated_poisson_weights

__all__ = [
    "BOUNDARY_SIR",
    "FixedRateSolution",
    "compare_cognitive_vs_fixed",
    "highest_throughput",
    "optimal_sir_threshold",
    "spatial_throughput_at",
]

_LN2 = math.log(2.0)

# supremum sits on the open boundary sir -> 1+ when no interior stationary
# point exists; returned threshold is nudged inside the support
BOUNDARY_SIR = 1.0 + 1e-9


@dataclass(frozen=True, eq=False)
class FixedRateSolution:
    """Optimal predetermined rates for one decoding rule.

    ``sir_thresholds[i]`` and ``rates[i]`` belong to joint-decode count i
    (a single entry, i = 0, under interference-as-noise).  ``at_boundary``
    flags counts whose objective has no interior maximum and was clamped to
    the support boundary.
    """

    rule: DecodingRule
    sir_thresholds: np.ndarray
    rates: np.ndarray
    throughput: ThroughputValue
    at_boundary: np.ndarray

    def __post_init__(self):
        for arr in (self.sir_thresholds, self.rates, self.at_boundary):
            arr.setflags(write=False)


def spatial_throughput_at(cfg: NetworkConfig, rule: DecodingRule, sir: float,
                          joint: int = 0) -> float:
    """Expected spatial throughput of the fixed-rate scheme at a threshold.

    IAN: lam * log2(1+sir) * exp(-mu * sir^(2/alpha)), sir > 0, joint = 0.
    OPT: the per-count objective
    lam * log2(1+(1+joint)*sir)/(1+joint) * exp(-mu*(sir^(2/alpha)-1)),
    sir > 1 (the success event requires the nearest noise interferer beyond
    the decode radius, which already exceeds d).
    """
    e = 2.0 / cfg.alpha
    if rule is DecodingRule.IAN:
        if joint != 0:
            raise ValueError("interference-as-noise has no jointly decoded messages")
        if not sir > 0:
            raise ValueError(f"sir must be > 0, got {sir}")
        return cfg.lam * math.log1p(sir) / _LN2 * math.exp(-cfg.mu * sir**e)
    if joint < 0:
        raise ValueError(f"joint must be >= 0, got {joint}")
    if not sir > 1:
        raise ValueError(f"sir must be > 1 under joint decoding, got {sir}")
    k = 1.0 + joint
    return cfg.lam * math.log1p(k * sir) / (k * _LN2) * math.exp(-cfg.mu * (sir**e - 1.0))


def _objective_slope(cfg: NetworkConfig, k: float):
    # derivative of log(rate * success probability) in the threshold,
    # rescaled by the positive factor b^(1 - 2/alpha) * (1+k*b) * ln(1+k*b)
    # so the root is bracketable without poles:
    #   g(b) = (2*mu/(k*alpha)) * (1+k*b) * ln(1+k*b) - b^((alpha-2)/alpha)
    # g < 0 where the objective rises, g > 0 where it falls.
    two_mu = 2.0 * cfg.mu

    def g(b: float) -> float:
        return (two_mu / (k * cfg.alpha)) * (1.0 + k * b) * math.log1p(k * b) - b ** (
            (cfg.alpha - 2.0) / cfg.alpha
        )

    return g


def optimal_sir_threshold(cfg: NetworkConfig, rule: DecodingRule, joint: int = 0):
    """Threshold maximizing the fixed-rate objective for one joint count.

    Returns (sir, at_boundary).  The interior maximum is the unique sign
    change of the rescaled slope, bracketed from below and above by
    geometric growth; under joint decoding the slope may already be
    negative at the support edge, in which case the boundary value is
    returned with the flag set.
    """
    if rule is DecodingRule.IAN:
        if joint != 0:
            raise ValueError("interference-as-noise has no jointly decoded messages")
        g = _objective_slope(cfg, 1.0)
        lo = 1e-9
        while g(lo) >= 0.0 and lo > 1e-300:
            lo *= 1e-2
        hi = 2.0
        while g(hi) < 0.0:
            hi *= 2.0
        return find_root(g, (lo, hi), tol=1e-12), False

    if joint < 0:
        raise ValueError(f"joint must be >= 0, got {joint}")
    g = _objective_slope(cfg, 1.0 + joint)
    if g(1.0) >= 0.0:
        return BOUNDARY_SIR, True
    hi = 2.0
    while g(hi) < 0.0:
        hi *= 2.0
    return find_root(g, (1.0, hi), tol=1e-12), False


def highest_throughput(cfg: NetworkConfig, rule: DecodingRule,
                       truncation: SeriesTruncation | None = None) -> FixedRateSolution:
    """Fixed-rate solution with the optimized thresholds and its throughput.

    Under joint decoding the value is the Poisson-weighted sum of the per
    count objectives, each at its own optimal threshold; the weights follow
    the series truncation policy.
    """
    e = 2.0 / cfg.alpha
    if rule is DecodingRule.IAN:
        b, _ = optimal_sir_threshold(cfg, rule)
        thresholds = np.array([b])
        rates = np.array([math.log1p(b) / _LN2])
        value = spatial_throughput_at(cfg, rule, b)
        boundary = np.array([False])
    else:
        w = truncated_poisson_weights(cfg.mu, truncation)
        thresholds = np.empty(len(w))
        rates = np.empty(len(w))
        boundary = np.empty(len(w), dtype=bool)
        total = 0.0
        for i, wi in enumerate(w):
            b, bd = optimal_sir_threshold(cfg, rule, joint=i)
            k = 1.0 + i
            thresholds[i] = b
            rates[i] = math.log1p(k * b) / (k * _LN2)
            boundary[i] = bd
            total += wi * rates[i] * math.exp(-cfg.mu * (b**e - 1.0))
        value = cfg.lam * total
    return FixedRateSolution(
        rule=rule,
        sir_thresholds=thresholds,
        rates=rates,
        throughput=ThroughputValue(value=value, method="fixed_rate", rule=rule, kind="quadrature"),
        at_boundary=boundary,
    )


def compare_cognitive_vs_fixed(cfg: NetworkConfig, spec: QuadratureSpec | None = None,
                               truncation: SeriesTruncation | None = None) -> dict:
    """All four throughputs and the cognitive-minus-fixed gaps at one config.

    The gaps are nonnegative up to quadrature noise; a violation beyond
    -1e-9 indicates an internal inconsistency and raises.
    """
    c_ian = ian.cognitive_throughput(cfg, spec).value
    c_opt = opt.cognitive_throughput(cfg, spec, truncation).value
    t_ian = highest_throughput(cfg, DecodingRule.IAN).throughput.value
    t_opt = highest_throughput(cfg, DecodingRule.OPT, truncation).throughput.value
    report = {
        "c_ian": c_ian,
        "t_ian": t_ian,
        "c_opt": c_opt,
        "t_opt": t_opt,
        "gap_ian": c_ian - t_ian,
        "gap_opt": c_opt - t_opt,
    }
    for key in ("gap_ian", "gap_opt"):
        if report[key] < -1e-9:
            raise ArithmeticError(f"{key} = {report[key]} violates the cognitive >= fixed ordering")
    return report
