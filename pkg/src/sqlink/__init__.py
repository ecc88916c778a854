"""Simulator for entanglement distribution over a lossy fiber link with a
bright squeezed probe and windowed homodyne postselection.

The closed-form figures of merit live in :mod:`sqlink.analytic`, the
exact branch model in :mod:`sqlink.link`, and two independent oracles
(seeded sampling and deterministic quadrature) in
:mod:`sqlink.montecarlo`.
"""

__version__ = "0.1.0"

from .analytic import (
    LinkFigures,
    average_fidelity,
    b_coefficient,
    erf,
    fidelity_small_window_limit,
    gaussian_window_mass,
    link_figures,
    success_probability,
)
from .gaussian import (
    GaussianState,
    SqueezedState,
    apply_loss,
    apply_phase_shift,
    effective_squeeze_param,
    homodyne_p_marginal,
    make_squeezed,
    mean_photon_number,
    phase_shift_squeezed,
    photon_number_variance,
    to_gaussian,
    wigner_value,
)
from .link import (
    Branch,
    QubitPairDensity,
    build_link_branches,
    dispersive_kick,
    fidelity_to_psi_plus,
    postselected_state,
    rho_en,
)
from .montecarlo import (
    HomodyneSample,
    LinkEstimate,
    estimate_link,
    integrate_window,
    quadrature_link_figures,
    sample_link,
)
from .params import LinkParams

__all__ = [
    "Branch",
    "GaussianState",
    "HomodyneSample",
    "LinkEstimate",
    "LinkFigures",
    "LinkParams",
    "QubitPairDensity",
    "SqueezedState",
    "apply_loss",
    "apply_phase_shift",
    "average_fidelity",
    "b_coefficient",
    "build_link_branches",
    "dispersive_kick",
    "effective_squeeze_param",
    "erf",
    "estimate_link",
    "fidelity_small_window_limit",
    "fidelity_to_psi_plus",
    "gaussian_window_mass",
    "homodyne_p_marginal",
    "integrate_window",
    "link_figures",
    "make_squeezed",
    "mean_photon_number",
    "phase_shift_squeezed",
    "photon_number_variance",
    "postselected_state",
    "quadrature_link_figures",
    "rho_en",
    "sample_link",
    "success_probability",
    "to_gaussian",
    "wigner_value",
]
