"""Exact branch model of one entanglement-distribution link.

Both station qubits start in (|0> + |1>)/sqrt(2).  Reflecting the probe
off a qubit in |1> rotates it by -theta in phase space, so after the two
nodes, the fiber span between them, and a fixed +theta compensation
before detection, only three probe states remain distinguishable by the
p-quadrature homodyne: rotated by +theta (qubits in |00>), by -theta
(|11>), and unrotated (the entangled |01>/|10> sector).  Unlike the
closed forms in :mod:`sqlink.analytic`, the branches here carry the full
mixed covariance of the lossy probe, including the residual rotation of
the squeeze axis in the outer branches.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gaussian
from .analytic import gaussian_window_mass
from .params import HALF_PI, LinkParams

BRANCH_LABELS = ("00", "en", "11")
BRANCH_WEIGHTS = (0.25, 0.5, 0.25)

# Bell state (|01> + |10>)/sqrt(2) in the {|00>, |01>, |10>, |11>} basis.
PSI_PLUS = np.array([0.0, 1.0, 1.0, 0.0]) / math.sqrt(2.0)


@dataclass(frozen=True)
class Branch:
    """One qubit-labeled probe state with its probability weight."""

    label: str
    weight: float
    probe: gaussian.GaussianState

    def __post_init__(self):
        if self.label not in BRANCH_LABELS:
            raise ValueError(f"branch label must be one of {BRANCH_LABELS}, got {self.label!r}")


@dataclass(frozen=True)
class QubitPairDensity:
    """4x4 two-qubit density matrix over {|00>, |01>, |10>, |11>}."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex).reshape(4, 4)
        if not np.all(np.isfinite(m.view(float))):
            raise ValueError("density matrix must be finite")
        if not np.allclose(m, m.conj().T, rtol=0.0, atol=1e-12):
            raise ValueError("density matrix must be Hermitian")
        trace = m.trace().real
        if abs(trace - 1.0) > 1e-12:
            raise ValueError(f"density matrix must have unit trace, got {trace}")
        eigs = np.linalg.eigvalsh(m)
        if eigs.min() < -1e-12:
            raise ValueError(f"density matrix must be positive semidefinite, got eigenvalue {eigs.min()}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def dispersive_kick(probe: gaussian.GaussianState, qubit_bit: int, theta: float) -> gaussian.GaussianState:
    """Qubit-conditional phase rotation of the probe: identity for bit 0,
    a -theta phase-space rotation for bit 1."""
    if qubit_bit not in (0, 1):
        raise ValueError(f"qubit bit must be 0 or 1, got {qubit_bit!r}")
    if qubit_bit == 0:
        return probe
    return gaussian.apply_phase_shift(probe, -theta)


def build_link_branches(params: LinkParams) -> list[Branch]:
    """The three probe branches after the full link pipeline.

    Per branch: prepare the squeezed probe, kick at node 1, apply the
    span loss, kick at node 2, then the fixed +theta compensation.  The
    branches end with net rotations +theta ("00"), 0 ("en"), -theta
    ("11") applied to both mean and covariance.
    """
    probe0 = gaussian.to_gaussian(gaussian.make_squeezed(params.alpha, params.r, HALF_PI))
    branches = []
    for (bit_a, bit_b), label, weight in zip(((0, 0), (0, 1), (1, 1)), BRANCH_LABELS, BRANCH_WEIGHTS):
        g = dispersive_kick(probe0, bit_a, params.theta)
        g = gaussian.apply_loss(g, params.eta)
        g = dispersive_kick(g, bit_b, params.theta)
        g = gaussian.apply_phase_shift(g, params.theta)
        branches.append(Branch(label=label, weight=weight, probe=g))
    return branches


def rho_en(zeta: float) -> QubitPairDensity:
    """Two-qubit state of the entangled sector:
    (|01><01| + zeta |01><10| + zeta |10><01| + |10><10|)/2."""
    if not 0.0 <= zeta <= 1.0:
        raise ValueError(f"coherence factor must lie in [0, 1] for a physical state, got {zeta!r}")
    m = np.zeros((4, 4), dtype=complex)
    m[1, 1] = m[2, 2] = 0.5
    m[1, 2] = m[2, 1] = 0.5 * zeta
    return QubitPairDensity(m)


def fidelity_to_psi_plus(rho: QubitPairDensity) -> float:
    """Overlap <psi+| rho |psi+> with the target Bell state."""
    return float(np.real(PSI_PLUS @ rho.matrix @ PSI_PLUS))


def postselected_state(params: LinkParams) -> tuple[QubitPairDensity, float]:
    """Two-qubit state conditioned on an accepted homodyne outcome, and
    the acceptance probability.

    Each branch's in-window mass is evaluated on its exact p marginal;
    the conditional state mixes |00><00|, rho_en and |11><11| with the
    correspondingly reweighted branch probabilities.
    """
    if params.p_c <= 0.0:
        raise ValueError("postselection window is empty (p_c = 0 accepts nothing)")
    masses = []
    for branch in build_link_branches(params):
        mean, var = gaussian.homodyne_p_marginal(branch.probe)
        masses.append(branch.weight * gaussian_window_mass(mean, var, params.p_c))
    p_s = sum(masses)
    if p_s <= 0.0:
        raise ValueError("postselection accepted zero probability mass")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = masses[0]
    m += masses[1] * rho_en(params.zeta).matrix
    m[3, 3] = masses[2]
    return QubitPairDensity(m / p_s), p_s
