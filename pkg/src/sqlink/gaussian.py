"""Single-mode Gaussian and squeezed-state toolbox.

Conventions used throughout this package: the quadratures are
x = Re<a> and p = Im<a>, so the vacuum has variance 1/4 in each
quadrature.  A squeeze factor r reduces the variance of the quadrature
along the squeeze axis ``phi`` to exp(-2r)/4 and raises the orthogonal
one to exp(+2r)/4.  All states are immutable values and all operations
are pure functions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

VACUUM_VARIANCE = 0.25

# Squeeze factors beyond this overflow exp(2r) long before they become
# physically meaningful; reject them at construction.
MAX_SQUEEZE = 10.0

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class SqueezedState:
    """Pure squeezed state with complex amplitude ``alpha``, squeeze
    factor ``r`` >= 0 and squeeze phase ``phi`` (axis of the reduced
    quadrature, stored reduced to [0, 2*pi))."""

    alpha: complex
    r: float
    phi: float

    def __post_init__(self):
        alpha = complex(self.alpha)
        r = float(self.r)
        phi = float(self.phi)
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise ValueError(f"amplitude must be finite, got {alpha!r}")
        if not math.isfinite(r) or r < 0.0:
            raise ValueError(f"squeeze factor must be finite and >= 0, got {r!r}")
        if r > MAX_SQUEEZE:
            raise ValueError(f"squeeze factor {r} exceeds supported maximum {MAX_SQUEEZE}")
        if not math.isfinite(phi):
            raise ValueError(f"squeeze phase must be finite, got {phi!r}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "phi", phi % _TWO_PI)


@dataclass(frozen=True)
class GaussianState:
    """General (possibly mixed) single-mode Gaussian state.

    ``mean`` is the 2-vector (x, p) of quadrature means, ``cov`` the 2x2
    real covariance matrix.  The constructor enforces symmetry, strict
    positive definiteness and the uncertainty bound det(cov) >= 1/16
    (equality for pure states).
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.array(self.mean, dtype=float).reshape(2)
        cov = np.array(self.cov, dtype=float).reshape(2, 2)
        if not np.all(np.isfinite(mean)) or not np.all(np.isfinite(cov)):
            raise ValueError("mean and covariance must be finite")
        scale = max(abs(cov).max(), 1.0)
        if abs(cov[0, 1] - cov[1, 0]) > 1e-10 * scale:
            raise ValueError("covariance must be symmetric")
        cov[0, 1] = cov[1, 0] = 0.5 * (cov[0, 1] + cov[1, 0])
        det = cov[0, 0] * cov[1, 1] - cov[0, 1] * cov[1, 0]
        if cov[0, 0] <= 0.0 or det <= 0.0:
            raise ValueError("covariance must be positive definite")
        # Small slack absorbs roundoff from rotations and loss composition.
        if det < VACUUM_VARIANCE**2 * (1.0 - 1e-9):
            raise ValueError(
                f"covariance violates the uncertainty bound det >= 1/16 (det={det})"
            )
        mean.setflags(write=False)
        cov.setflags(write=False)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)

    @property
    def det_cov(self) -> float:
        c = self.cov
        return float(c[0, 0] * c[1, 1] - c[0, 1] * c[1, 0])

    @property
    def is_pure(self) -> bool:
        return abs(self.det_cov - VACUUM_VARIANCE**2) <= 1e-12


def rotation_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s], [s, c]])


def make_squeezed(alpha: complex, r: float, phi: float) -> SqueezedState:
    """Validated squeezed-state constructor; (0, 0, 0) is the vacuum and
    r = 0 gives a coherent state."""
    return SqueezedState(alpha, r, phi)


def to_gaussian(s: SqueezedState) -> GaussianState:
    """Phase-space image of a pure squeezed state.

    mean = (Re alpha, Im alpha); the covariance is exp(-2r)/4 along the
    axis at angle ``phi`` and exp(+2r)/4 orthogonal to it, so for
    phi = pi/2 the p quadrature is the squeezed one.
    """
    mean = np.array([s.alpha.real, s.alpha.imag])
    rot = rotation_matrix(s.phi)
    diag = np.diag([VACUUM_VARIANCE * math.exp(-2.0 * s.r),
                    VACUUM_VARIANCE * math.exp(2.0 * s.r)])
    return GaussianState(mean, rot @ diag @ rot.T)


def apply_phase_shift(g: GaussianState, theta: float) -> GaussianState:
    """Rotate the state by ``theta`` in phase space: mean -> R(theta) mean,
    cov -> R(theta) cov R(theta)^T.  Equivalent to alpha -> alpha e^{i theta}
    and phi -> phi + theta on a squeezed state."""
    if not math.isfinite(theta):
        raise ValueError(f"phase shift must be finite, got {theta!r}")
    rot = rotation_matrix(theta)
    return GaussianState(rot @ g.mean, rot @ g.cov @ rot.T)


def phase_shift_squeezed(s: SqueezedState, theta: float) -> SqueezedState:
    """Same rotation applied in squeezed-state parameters: the amplitude
    picks up e^{i theta} and the squeeze axis co-rotates by theta."""
    return SqueezedState(s.alpha * cmath.exp(1j * theta), s.r, s.phi + theta)


def apply_loss(g: GaussianState, eta: float) -> GaussianState:
    """Pure-loss channel with amplitude transmittance ``eta`` in (0, 1]:
    mean -> eta mean, cov -> eta^2 cov + (1 - eta^2)/4 I."""
    if not math.isfinite(eta) or not 0.0 < eta <= 1.0:
        raise ValueError(f"amplitude transmittance must lie in (0, 1], got {eta!r}")
    eta_sq = eta * eta
    cov = eta_sq * g.cov + (1.0 - eta_sq) * VACUUM_VARIANCE * np.eye(2)
    return GaussianState(eta * g.mean, cov)


def effective_squeeze_param(g: GaussianState) -> float:
    """Squeeze factor r' of the pure-state model that reproduces the
    state's p-quadrature variance: var(p) = exp(-2 r')/4.

    Valid only for the measured (p) marginal; the x marginal of a lossy
    state is generally much noisier than exp(+2 r')/4 would suggest.
    """
    var_p = float(g.cov[1, 1])
    if var_p > VACUUM_VARIANCE * (1.0 + 1e-12):
        raise ValueError(
            f"p quadrature is anti-squeezed (var={var_p} > 1/4); "
            "the effective pure-state model does not apply"
        )
    return -0.5 * math.log(min(var_p / VACUUM_VARIANCE, 1.0))


def wigner_value(g: GaussianState, x, p):
    """Wigner density W(x, p): the normalized bivariate Gaussian
    (2 pi sqrt(det cov))^{-1} exp(-delta^T cov^{-1} delta / 2).

    Broadcasts over array-valued ``x`` and ``p``.
    """
    dx = np.asarray(x, dtype=float) - g.mean[0]
    dp = np.asarray(p, dtype=float) - g.mean[1]
    det = g.det_cov
    a, b, c = g.cov[0, 0], g.cov[0, 1], g.cov[1, 1]
    # inverse of a 2x2 symmetric matrix, written out
    quad = (c * dx * dx - 2.0 * b * dx * dp + a * dp * dp) / det
    out = np.exp(-0.5 * quad) / (2.0 * math.pi * math.sqrt(det))
    return float(out) if out.ndim == 0 else out


def homodyne_p_marginal(g: GaussianState) -> tuple[float, float]:
    """(mean, variance) of the p-quadrature marginal of W."""
    return float(g.mean[1]), float(g.cov[1, 1])


def mean_photon_number(s: SqueezedState) -> float:
    """<n> = |alpha|^2 + sinh^2 r."""
    return abs(s.alpha) ** 2 + math.sinh(s.r) ** 2


def photon_number_variance(s: SqueezedState, theta_alpha: float) -> float:
    """Photon-number variance of a bright squeezed state:

        2 sinh^2 r cosh^2 r
        + |alpha|^2 [e^{-2r} cos^2(theta - phi) + e^{+2r} sin^2(theta - phi)]

    with ``theta_alpha`` the phase of the amplitude.  Invariant under a
    common phase-space rotation of both phases.
    """
    if not math.isfinite(theta_alpha):
        raise ValueError(f"amplitude phase must be finite, got {theta_alpha!r}")
    sh, ch = math.sinh(s.r), math.cosh(s.r)
    delta = theta_alpha - s.phi
    amp = abs(s.alpha) ** 2
    return 2.0 * sh * sh * ch * ch + amp * (
        math.exp(-2.0 * s.r) * math.cos(delta) ** 2
        + math.exp(2.0 * s.r) * math.sin(delta) ** 2
    )
