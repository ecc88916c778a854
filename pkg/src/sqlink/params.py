"""Physical knobs of one entanglement-distribution link.

Default values are the reference operating point of the scheme:
a bright probe with alpha = 150 and 7 dB of squeezing (r = 1.61),
a per-node dispersive phase of 0.00867 rad, a 10 km fiber span with
power transmittance 2/3, qubit coherence factor 0.995 and a homodyne
selection half-window of 0.3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import gaussian

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class LinkParams:
    """One link's parameters; derived quantities are recomputed on access
    so they can never go stale."""

    alpha: float = 150.0
    r: float = 1.61
    theta: float = 0.00867
    eta_sq: float = 2.0 / 3.0
    zeta: float = 0.995
    p_c: float = 0.3

    def __post_init__(self):
        for name in ("alpha", "r", "theta", "eta_sq", "zeta", "p_c"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            object.__setattr__(self, name, value)
        if self.alpha <= 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.r < 0.0 or self.r > gaussian.MAX_SQUEEZE:
            raise ValueError(f"r must lie in [0, {gaussian.MAX_SQUEEZE}], got {self.r}")
        # theta = 0 (no dispersive coupling) is a useful degenerate case
        # exercised by tests and the CLI, so the lower bound is inclusive.
        if not 0.0 <= self.theta < math.pi / 4.0:
            raise ValueError(f"theta must lie in [0, pi/4), got {self.theta}")
        if not 0.0 < self.eta_sq <= 1.0:
            raise ValueError(f"eta_sq must lie in (0, 1], got {self.eta_sq}")
        if not 0.0 <= self.zeta <= 1.0:
            raise ValueError(f"zeta must lie in [0, 1], got {self.zeta}")
        if self.p_c < 0.0:
            raise ValueError(f"p_c must be >= 0, got {self.p_c}")

    @property
    def eta(self) -> float:
        """Amplitude transmittance of the fiber span."""
        return math.sqrt(self.eta_sq)

    @property
    def d(self) -> float:
        """Homodyne displacement of the outer branches: d = alpha sin(theta)."""
        return self.alpha * math.sin(self.theta)

    @property
    def r_prime(self) -> float:
        """Effective squeeze factor of the probe after the fiber span,
        obtained from the exact loss channel acting on the probe state."""
        probe = gaussian.to_gaussian(gaussian.make_squeezed(self.alpha, self.r, HALF_PI))
        return gaussian.effective_squeeze_param(gaussian.apply_loss(probe, self.eta))
