"""Closed-form success probability and average fidelity of one link.

The postselection keeps homodyne outcomes p in [-p_c, p_c].  With the
three probe branches at p-means 0 and +-eta*d, all carrying the
effective squeezed variance exp(-2 r')/4, the in-window masses reduce to
error functions of

    b_s = sqrt(2) (p_c + s eta d) exp(r'),   s in {-1, 0, +1},

giving  P_s = erf(b_0)/2 + erf(b_+1)/4 + erf(b_-1)/4  and

    F = erf(b_0) (1 + zeta) / [2 erf(b_0) + erf(b_+1) + erf(b_-1)].

The exponent in b_s is the effective squeeze factor r'; this choice
reproduces the reference operating point (P_s = 0.344, F = 0.989) and no
other reading tested does.  These forms neglect the small +-2 theta
rotation of the squeeze axis in the outer branches; the exact-covariance
path in :mod:`sqlink.link` quantifies that approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .params import LinkParams

_SQRT2 = math.sqrt(2.0)


def erf(x: float) -> float:
    """Error function, exactly odd, absolute error below 1e-14."""
    if not math.isfinite(x):
        raise ValueError(f"erf argument must be finite, got {x!r}")
    return -math.erf(-x) if x < 0.0 else math.erf(x)


def gaussian_window_mass(mean: float, variance: float, half_width: float) -> float:
    """Probability mass of N(mean, variance) on [-half_width, half_width],
    evaluated with the erf kernel."""
    if variance <= 0.0:
        raise ValueError(f"variance must be > 0, got {variance!r}")
    if half_width < 0.0:
        raise ValueError(f"half_width must be >= 0, got {half_width!r}")
    scale = 1.0 / math.sqrt(2.0 * variance)
    return 0.5 * (erf((half_width - mean) * scale) + erf((half_width + mean) * scale))


def b_coefficient(s: int, p_c: float, eta: float, d: float, r_prime: float) -> float:
    """b_s = sqrt(2) (p_c + s eta d) exp(r')."""
    if s not in (-1, 0, 1):
        raise ValueError(f"branch index must be -1, 0 or +1, got {s!r}")
    if p_c < 0.0 or not 0.0 < eta <= 1.0 or d < 0.0 or r_prime < 0.0:
        raise ValueError("b_coefficient requires p_c >= 0, 0 < eta <= 1, d >= 0, r' >= 0")
    return _SQRT2 * (p_c + s * eta * d) * math.exp(r_prime)


@dataclass(frozen=True)
class LinkFigures:
    """Bundle of the closed-form link figures: success probability,
    average fidelity and the window coefficients (b_-1, b_0, b_+1)."""

    p_s: float
    fidelity: float
    b: tuple[float, float, float]


def _b_triple(params: LinkParams) -> tuple[float, float, float]:
    rp = params.r_prime
    return (
        b_coefficient(-1, params.p_c, params.eta, params.d, rp),
        b_coefficient(0, params.p_c, params.eta, params.d, rp),
        b_coefficient(+1, params.p_c, params.eta, params.d, rp),
    )


def success_probability(params: LinkParams) -> float:
    """P_s = erf(b_0)/2 + erf(b_+1)/4 + erf(b_-1)/4; zero when p_c = 0."""
    bm, b0, bp = _b_triple(params)
    return 0.5 * erf(b0) + 0.25 * erf(bp) + 0.25 * erf(bm)


def average_fidelity(params: LinkParams) -> float:
    """F = erf(b_0)(1 + zeta) / [2 erf(b_0) + erf(b_+1) + erf(b_-1)].

    Raises for p_c = 0, where the expression is 0/0; use
    :func:`fidelity_small_window_limit` for the window -> 0 limit.
    """
    if params.p_c == 0.0:
        raise ValueError(
            "fidelity is indeterminate at p_c = 0; use fidelity_small_window_limit"
        )
    bm, b0, bp = _b_triple(params)
    return erf(b0) * (1.0 + params.zeta) / (2.0 * erf(b0) + erf(bp) + erf(bm))


def fidelity_small_window_limit(params: LinkParams) -> float:
    """Limit of the average fidelity as p_c -> 0+:

        (1 + zeta) / (2 + 2 exp(-2 (eta d e^{r'})^2))
    """
    g = params.eta * params.d * math.exp(params.r_prime)
    return (1.0 + params.zeta) / (2.0 + 2.0 * math.exp(-2.0 * g * g))


def link_figures(params: LinkParams) -> LinkFigures:
    """Success probability, average fidelity and b coefficients in one go."""
    bm, b0, bp = _b_triple(params)
    p_s = 0.5 * erf(b0) + 0.25 * erf(bp) + 0.25 * erf(bm)
    if params.p_c == 0.0:
        raise ValueError(
            "fidelity is indeterminate at p_c = 0; use fidelity_small_window_limit"
        )
    fidelity = erf(b0) * (1.0 + params.zeta) / (2.0 * erf(b0) + erf(bp) + erf(bm))
    return LinkFigures(p_s=p_s, fidelity=fidelity, b=(bm, b0, bp))
