"""Independent numerical checks of the closed-form link figures.

Two oracles are provided: a seeded stochastic simulation of homodyne
outcomes over the three-branch mixture, and a deterministic quadrature
of the Gaussian p marginals.  The quadrature path never calls the erf
kernel used by :mod:`sqlink.analytic`, so the two routes stay
independent.

Reproducibility contract: sampling uses the counter-based Philox
generator with one independent stream per fixed-size block of samples,
keyed by (seed, block index).  Results are therefore bit-identical for a
given (params, n, seed) regardless of how many workers process the
blocks, and across platforms for a given numpy major version.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from . import gaussian
from .link import BRANCH_LABELS, BRANCH_WEIGHTS, build_link_branches
from .params import LinkParams

BLOCK_SIZE = 1 << 16

_BRANCH_CDF = np.cumsum(BRANCH_WEIGHTS)[:-1]  # (0.25, 0.75)
_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class HomodyneSample:
    """One simulated homodyne shot: generating branch, measured p value,
    and whether it fell inside the selection window."""

    branch: str
    p_value: float
    accepted: bool


@dataclass(frozen=True)
class LinkEstimate:
    """Monte Carlo estimate of the link figures.

    ``std_err_ps`` is the binomial standard error of the acceptance
    frequency; ``std_err_f`` the ratio-statistic error of the fidelity
    estimate.  ``accepted_by_branch`` counts accepted samples per branch
    in the order ("00", "en", "11").
    """

    p_s_hat: float
    fidelity_hat: float
    std_err_ps: float
    std_err_f: float
    n_samples: int
    seed: int
    n_accepted: int
    accepted_by_branch: tuple[int, int, int]


def _branch_marginals(params: LinkParams) -> tuple[np.ndarray, np.ndarray]:
    """Means and standard deviations of the exact branch p marginals."""
    means, sigmas = [], []
    for branch in build_link_branches(params):
        mean, var = gaussian.homodyne_p_marginal(branch.probe)
        means.append(mean)
        sigmas.append(math.sqrt(var))
    return np.array(means), np.array(sigmas)


def _block_rng(seed: int, block_index: int) -> np.random.Generator:
    key = np.array([seed & _UINT64_MASK, block_index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def sample_link(params: LinkParams, rng: np.random.Generator) -> HomodyneSample:
    """Draw one homodyne shot: branch with weights (1/4, 1/2, 1/4), then
    a p value from that branch's exact marginal."""
    means, sigmas = _branch_marginals(params)
    idx = int(np.searchsorted(_BRANCH_CDF, rng.random(), side="right"))
    p_value = float(rng.normal(means[idx], sigmas[idx]))
    return HomodyneSample(
        branch=BRANCH_LABELS[idx],
        p_value=p_value,
        accepted=abs(p_value) <= params.p_c,
    )


def _run_block(seed, block_index, size, means, sigmas, p_c):
    rng = _block_rng(seed, block_index)
    idx = np.searchsorted(_BRANCH_CDF, rng.random(size), side="right")
    p_values = means[idx] + sigmas[idx] * rng.standard_normal(size)
    accepted = np.abs(p_values) <= p_c
    return np.array([np.count_nonzero(accepted & (idx == k)) for k in range(3)])


def estimate_link(params: LinkParams, n: int, seed: int, workers: int = 1) -> LinkEstimate:
    """Estimate P_s and the average fidelity from ``n`` seeded homodyne
    shots.

    The acceptance frequency estimates P_s.  Accepted samples contribute
    fidelity (1 + zeta)/2 when drawn from the entangled branch and 0
    otherwise, exactly matching the definition of the postselected
    average fidelity.  ``workers`` only parallelizes the fixed block
    schedule; the output is identical for any worker count.
    """
    if n < 1:
        raise ValueError(f"sample count must be >= 1, got {n!r}")
    if workers < 1:
        raise ValueError(f"worker count must be >= 1, got {workers!r}")
    means, sigmas = _branch_marginals(params)
    blocks = [(b, min(BLOCK_SIZE, n - b * BLOCK_SIZE)) for b in range((n + BLOCK_SIZE - 1) // BLOCK_SIZE)]

    def run(block):
        index, size = block
        return _run_block(seed, index, size, means, sigmas, params.p_c)

    if workers == 1:
        counts = sum(run(block) for block in blocks)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            counts = sum(pool.map(run, blocks))  # map preserves block order

    n_accepted = int(counts.sum())
    p_s_hat = n_accepted / n
    std_err_ps = math.sqrt(p_s_hat * (1.0 - p_s_hat) / n)
    if n_accepted > 0:
        en_fraction = counts[1] / n_accepted
        fidelity_hat = 0.5 * (1.0 + params.zeta) * en_fraction
        std_err_f = 0.5 * (1.0 + params.zeta) * math.sqrt(
            en_fraction * (1.0 - en_fraction) / n_accepted
        )
    else:
        fidelity_hat = math.nan
        std_err_f = math.nan
    return LinkEstimate(
        p_s_hat=p_s_hat,
        fidelity_hat=fidelity_hat,
        std_err_ps=std_err_ps,
        std_err_f=std_err_f,
        n_samples=n,
        seed=seed,
        n_accepted=n_accepted,
        accepted_by_branch=tuple(int(c) for c in counts),
    )


def integrate_window(marginal_mean: float, marginal_var: float, p_c: float) -> float:
    """Mass of N(mean, var) on [-p_c, p_c] by adaptive quadrature of the
    density (absolute error <= 1e-12); intentionally erf-free."""
    if marginal_var <= 0.0:
        raise ValueError(f"marginal variance must be > 0, got {marginal_var!r}")
    if p_c < 0.0:
        raise ValueError(f"p_c must be >= 0, got {p_c!r}")
    if p_c == 0.0:
        return 0.0
    sigma = math.sqrt(marginal_var)
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def density(x):
        z = (x - marginal_mean) / sigma
        return norm * math.exp(-0.5 * z * z)

    # Restrict to the region where the density is non-negligible; the
    # mass beyond 40 sigma is < 1e-300, far below the error budget.
    lo = max(-p_c, marginal_mean - 40.0 * sigma)
    hi = min(p_c, marginal_mean + 40.0 * sigma)
    if lo >= hi:
        return 0.0
    value, _ = integrate.quad(density, lo, hi, epsabs=1e-13, epsrel=1e-13, limit=200)
    return value


def quadrature_link_figures(params: LinkParams, squeeze_rotation: bool = True) -> tuple[float, float]:
    """(P_s, fidelity) via quadrature of the branch p marginals.

    With ``squeeze_rotation`` the marginals carry the exact branch
    covariances; without it all three use the effective variance
    exp(-2 r')/4, mirroring the model behind the closed forms.
    """
    if params.p_c <= 0.0:
        raise ValueError("postselection window is empty (p_c = 0 accepts nothing)")
    means, sigmas = _branch_marginals(params)
    if not squeeze_rotation:
        sigmas = np.full(3, 0.5 * math.exp(-params.r_prime))
    masses = [
        w * integrate_window(m, s * s, params.p_c)
        for w, m, s in zip(BRANCH_WEIGHTS, means, sigmas)
    ]
    p_s = sum(masses)
    fidelity = masses[1] * 0.5 * (1.0 + params.zeta) / p_s
    return p_s, fidelity
