"""Quadrature, root finding, scalar maximization, and Poisson-series helpers.

Thin wrappers with hard numerical contracts.  Adaptive Gauss-Kronrod
quadrature and Brent's bracketed root finder come from scipy; semi-infinite
ranges are mapped onto [0, 1) with u = (x - a) / (1 + x - a) before the
adaptive rule is applied.  The unimodal maximizer is a plain golden-section
search.  All functions here are pure and safe to call from any thread.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special
from scipy.integrate import quad as _quad

__all__ = [
    "BracketError",
    "QuadratureError",
    "QuadratureSpec",
    "SeriesTruncation",
    "find_root",
    "gamma",
    "integrate",
    "maximize_unimodal",
    "poisson_weight",
    "truncated_poisson_weights",
    "upper_incomplete_gamma",
]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


class QuadratureError(ArithmeticError):
    """Adaptive quadrature did not converge.

    Carries the best available estimate and its error bound so callers can
    decide whether the partial answer is usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(f"{message} (estimate={estimate!r}, error_bound={error_bound!r})")
        self.estimate = estimate
        self.error_bound = error_bound


class BracketError(ValueError):
    """The supplied bracket does not enclose a sign change."""


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances and subdivision budget for adaptive quadrature."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class SeriesTruncation:
    """Stopping policy for Poisson-weighted series.

    Summation stops once the accumulated probability mass reaches
    1 - mass_tol, and never runs past the hard cap.  The default cap,
    mean + 12*sqrt(mean) + 20, keeps the neglected mass far below mass_tol
    for any mean of practical size.
    """

    mass_tol: float = 1e-10
    hard_cap: int | None = None

    def __post_init__(self):
        if not 0.0 < self.mass_tol < 1.0:
            raise ValueError("mass_tol must be in (0, 1)")
        if self.hard_cap is not None and self.hard_cap < 0:
            raise ValueError("hard_cap must be >= 0")

    def cap_for(self, mean: float) -> int:
        if self.hard_cap is not None:
            return self.hard_cap
        return int(math.ceil(mean + 12.0 * math.sqrt(mean) + 20.0))


DEFAULT_QUADRATURE = QuadratureSpec()
DEFAULT_TRUNCATION = SeriesTruncation()


def integrate(f, a: float, b: float, spec: QuadratureSpec | None = None) -> float:
    """Integral of ``f`` over (a, b), where ``b`` may be +inf.

    The estimated error is kept below max(abs_tol, rel_tol * |I|).  The
    integrand may have an integrable endpoint singularity.  Semi-infinite
    ranges are transformed with u = (x - a) / (1 + x - a), which keeps
    exponentially decaying integrands smooth on the unit interval.

    Raises QuadratureError when convergence fails within the subdivision
    budget; the exception carries the best estimate and its error bound.
    """
    spec = spec or DEFAULT_QUADRATURE
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")

    if math.isinf(b):
        a0 = a

        def g(u):
            if u >= 1.0:
                return 0.0
            w = 1.0 - u
            return f(a0 + u / w) / (w * w)

        lo, hi = 0.0, 1.0
    else:
        g, lo, hi = f, a, b

    out = _quad(g, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                limit=spec.max_subdivisions, full_output=1)
    value, err = out[0], out[1]
    if len(out) > 3:
        raise QuadratureError(str(out[3]).replace("\n", " ").strip(), value, err)
    if not math.isfinite(value):
        raise QuadratureError("non-finite quadrature result", value, err)
    return value


def find_root(h, bracket, tol: float) -> float:
    """Root of ``h`` inside a sign-changing bracket [lo, hi].

    Brent's method (bisection fallback guarantees convergence); the result
    is located to within ``tol`` in the argument.
    """
    lo, hi = bracket
    flo, fhi = h(lo), h(hi)
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if flo * fhi > 0:
        raise BracketError(f"no sign change on [{lo}, {hi}]: h={flo!r}, {fhi!r}")
    return float(optimize.brentq(h, lo, hi, xtol=tol))


def maximize_unimodal(g, bracket, tol: float):
    """Golden-section maximization of a unimodal function.

    Returns (argmax, max); the argmax is within ``tol`` of the true one
    provided ``g`` is quasi-concave on the bracket.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    c = hi - _INVPHI * (hi - lo)
    d = lo + _INVPHI * (hi - lo)
    gc, gd = g(c), g(d)
    while hi - lo > tol:
        if gc >= gd:
            hi, d, gd = d, c, gc
            c = hi - _INVPHI * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + _INVPHI * (hi - lo)
            gd = g(d)
    x = 0.5 * (lo + hi)
    return x, g(x)


def poisson_weight(mean: float, i: int) -> float:
    """Poisson pmf value mean**i * exp(-mean) / i!.

    Evaluated in log space so large means and indices neither overflow nor
    underflow prematurely.
    """
    if mean < 0:
        raise ValueError("mean must be >= 0")
    if i < 0:
        raise ValueError("index must be >= 0")
    if mean == 0.0:
        return 1.0 if i == 0 else 0.0
    return math.exp(i * math.log(mean) - mean - math.lgamma(i + 1))


def truncated_poisson_weights(mean: float, truncation: SeriesTruncation | None = None) -> np.ndarray:
    """Poisson pmf values for i = 0..K, truncated by the stopping policy.

    K is the smallest index at which the accumulated mass reaches
    1 - mass_tol, capped by ``truncation.cap_for(mean)``.
    """
    truncation = truncation or DEFAULT_TRUNCATION
    if mean < 0:
        raise ValueError("mean must be >= 0")
    if mean == 0.0:
        return np.array([1.0])
    cap = truncation.cap_for(mean)
    i = np.arange(cap + 1)
    w = np.exp(i * math.log(mean) - mean - special.gammaln(i + 1))
    csum = np.cumsum(w)
    hit = np.nonzero(csum >= 1.0 - truncation.mass_tol)[0]
    k = int(hit[0]) if hit.size else cap
    return w[: k + 1]


def gamma(z: float) -> float:
    """Euler gamma function on z > 0."""
    return float(special.gamma(z))


def upper_incomplete_gamma(z: float, a: float) -> float:
    """Upper incomplete gamma integral from ``a`` to infinity, z > 0, a >= 0."""
    return float(special.gammaincc(z, a) * special.gamma(z))
