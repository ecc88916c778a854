import dataclasses
import math

import numpy as np
import pytest

from sqlink import (
    LinkParams,
    QubitPairDensity,
    build_link_branches,
    dispersive_kick,
    fidelity_to_psi_plus,
    link_figures,
    make_squeezed,
    postselected_state,
    rho_en,
    to_gaussian,
)
from sqlink.link import BRANCH_LABELS, BRANCH_WEIGHTS, PSI_PLUS

DEFAULTS = LinkParams()
ETA_D = 1.0618405004827782  # eta * alpha * sin(theta) at the defaults
VAR_EN = 0.089992509710108985  # exp(-2 r')/4
VAR_OUTER = 0.090305557347062234  # after the residual +-theta covariance rotation


# -------------------------------------------------------------- dispersive_kick


def test_kick_bit_zero_is_identity():
    probe = to_gaussian(make_squeezed(150, 1.61, math.pi / 2))
    out = dispersive_kick(probe, 0, 0.00867)
    assert out is probe


def test_kick_with_zero_theta_is_identity():
    probe = to_gaussian(make_squeezed(150, 1.61, math.pi / 2))
    out = dispersive_kick(probe, 1, 0.0)
    np.testing.assert_allclose(out.mean, probe.mean, atol=1e-15)
    np.testing.assert_allclose(out.cov, probe.cov, atol=1e-15)


def test_kick_displaces_p_negative():
    probe = to_gaussian(make_squeezed(150, 1.61, math.pi / 2))
    out = dispersive_kick(probe, 1, 0.00867)
    assert out.mean[1] == pytest.approx(-150 * math.sin(0.00867), rel=1e-14)
    assert out.mean[1] == pytest.approx(-1.30, abs=5e-3)


def test_kick_rejects_bad_bit():
    probe = to_gaussian(make_squeezed(1, 0, 0))
    with pytest.raises(ValueError):
        dispersive_kick(probe, 2, 0.1)


# --------------------------------------------------------------------- branches


def test_branch_labels_and_weights():
    branches = build_link_branches(DEFAULTS)
    assert tuple(b.label for b in branches) == BRANCH_LABELS
    assert tuple(b.weight for b in branches) == BRANCH_WEIGHTS
    assert sum(b.weight for b in branches) == 1.0


def test_branch_means_at_default_operating_point():
    b00, ben, b11 = build_link_branches(DEFAULTS)
    assert ben.probe.mean[1] == pytest.approx(0.0, abs=1e-12)
    assert b00.probe.mean[1] == pytest.approx(ETA_D, abs=1e-12)
    assert b11.probe.mean[1] == pytest.approx(-ETA_D, abs=1e-12)
    # mirror symmetry of the outer branches
    assert abs(b00.probe.mean[1] + b11.probe.mean[1]) < 1e-12


def test_branch_variances_at_default_operating_point():
    b00, ben, b11 = build_link_branches(DEFAULTS)
    assert ben.probe.cov[1, 1] == pytest.approx(VAR_EN, rel=1e-12)
    assert b00.probe.cov[1, 1] == pytest.approx(VAR_OUTER, rel=1e-12)
    assert b11.probe.cov[1, 1] == pytest.approx(VAR_OUTER, rel=1e-12)
    # the +-theta rotations tilt the outer covariances in opposite senses
    assert b00.probe.cov[0, 1] == pytest.approx(-b11.probe.cov[0, 1], rel=1e-10)


def test_branches_identical_when_theta_zero():
    branches = build_link_branches(dataclasses.replace(DEFAULTS, theta=0.0))
    for branch in branches[1:]:
        np.testing.assert_allclose(branch.probe.mean, branches[0].probe.mean, atol=1e-12)
        np.testing.assert_allclose(branch.probe.cov, branches[0].probe.cov, atol=1e-12)


def test_en_branch_same_for_either_single_excitation():
    # (0,1) and (1,0) kick patterns give the same probe after compensation
    from sqlink import apply_loss, apply_phase_shift

    probe0 = to_gaussian(make_squeezed(DEFAULTS.alpha, DEFAULTS.r, math.pi / 2))

    def pipeline(bit_a, bit_b):
        g = dispersive_kick(probe0, bit_a, DEFAULTS.theta)
        g = apply_loss(g, DEFAULTS.eta)
        g = dispersive_kick(g, bit_b, DEFAULTS.theta)
        return apply_phase_shift(g, DEFAULTS.theta)

    g01 = pipeline(0, 1)
    g10 = pipeline(1, 0)
    np.testing.assert_allclose(g01.mean, g10.mean, atol=1e-12)
    np.testing.assert_allclose(g01.cov, g10.cov, atol=1e-12)


# ----------------------------------------------------------------------- rho_en


def test_rho_en_full_coherence_is_pure_bell_state():
    rho = rho_en(1.0)
    np.testing.assert_allclose(rho.matrix, np.outer(PSI_PLUS, PSI_PLUS), atol=1e-15)
    assert fidelity_to_psi_plus(rho) == pytest.approx(1.0, abs=1e-14)


def test_rho_en_zero_coherence_is_classical_mixture():
    rho = rho_en(0.0)
    assert fidelity_to_psi_plus(rho) == pytest.approx(0.5, abs=1e-14)
    np.testing.assert_allclose(np.diag(rho.matrix), [0, 0.5, 0.5, 0], atol=1e-15)


def test_rho_en_reference_coherence():
    rho = rho_en(0.995)
    assert fidelity_to_psi_plus(rho) == pytest.approx((1 + 0.995) / 2, abs=1e-14)
    assert fidelity_to_psi_plus(rho) == pytest.approx(0.9975, abs=1e-14)


@pytest.mark.parametrize("zeta", [0.0, 0.3, 0.995, 1.0])
def test_rho_en_eigenvalues(zeta):
    eigs = np.sort(np.linalg.eigvalsh(rho_en(zeta).matrix))
    np.testing.assert_allclose(eigs, [0, 0, (1 - zeta) / 2, (1 + zeta) / 2], atol=1e-14)


@pytest.mark.parametrize("zeta", [1.5, -0.2, 2.0])
def test_rho_en_rejects_unphysical_coherence(zeta):
    with pytest.raises(ValueError, match="physical"):
        rho_en(zeta)


# ------------------------------------------------------------ fidelity_to_psi_plus


def test_fidelity_of_basis_states():
    psi = QubitPairDensity(np.outer(PSI_PLUS, PSI_PLUS))
    assert fidelity_to_psi_plus(psi) == pytest.approx(1.0, abs=1e-14)
    zero = np.zeros((4, 4), dtype=complex)
    zero[0, 0] = 1.0
    assert fidelity_to_psi_plus(QubitPairDensity(zero)) == 0.0


# ------------------------------------------------------------- postselected_state


def test_postselected_state_default_operating_point():
    rho, p_s = postselected_state(DEFAULTS)
    assert p_s == pytest.approx(0.34416318514136382, rel=1e-12)
    assert fidelity_to_psi_plus(rho) == pytest.approx(0.989360405788988, rel=1e-12)
    assert rho.matrix.trace().real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.eigvalsh(rho.matrix).min() >= -1e-12


def test_postselected_state_quantifies_rotation_neglect():
    # The closed forms drop the +-theta covariance rotation of the outer
    # branches; with the exact mixed covariance retained, both figures
    # shift by 1.02e-4 relative at the default operating point.
    figures = link_figures(DEFAULTS)
    rho, p_s = postselected_state(DEFAULTS)
    rel_ps = abs(p_s - figures.p_s) / figures.p_s
    rel_f = abs(fidelity_to_psi_plus(rho) - figures.fidelity) / figures.fidelity
    assert rel_ps == pytest.approx(1.0196574934e-4, rel=1e-6)
    assert rel_f == pytest.approx(1.0195535339e-4, rel=1e-6)


def test_postselected_state_wide_window():
    rho, p_s = postselected_state(dataclasses.replace(DEFAULTS, p_c=1e9))
    assert p_s == pytest.approx(1.0, abs=1e-12)
    # unpostselected mixture: (1/4, 1/2 rho_en, 1/4)
    assert rho.matrix[0, 0].real == pytest.approx(0.25, abs=1e-12)
    assert rho.matrix[3, 3].real == pytest.approx(0.25, abs=1e-12)
    assert fidelity_to_psi_plus(rho) == pytest.approx((1 + DEFAULTS.zeta) / 4, abs=1e-12)


@pytest.mark.parametrize("p_c", [0.1, 0.5, 2.0])
def test_postselected_fidelity_theta_zero(p_c):
    params = dataclasses.replace(DEFAULTS, theta=0.0, p_c=p_c)
    rho, _ = postselected_state(params)
    assert fidelity_to_psi_plus(rho) == pytest.approx((1 + params.zeta) / 4, abs=1e-12)


def test_postselected_state_rejects_empty_window():
    with pytest.raises(ValueError, match="empty"):
        postselected_state(dataclasses.replace(DEFAULTS, p_c=0.0))


def test_zeta_enters_only_through_rho_en():
    # P_s is independent of zeta; fidelity scales as (1 + zeta)
    rho1, ps1 = postselected_state(dataclasses.replace(DEFAULTS, zeta=0.4))
    rho2, ps2 = postselected_state(dataclasses.replace(DEFAULTS, zeta=0.8))
    assert ps1 == pytest.approx(ps2, rel=1e-14)
    f1, f2 = fidelity_to_psi_plus(rho1), fidelity_to_psi_plus(rho2)
    assert f1 * 1.8 == pytest.approx(f2 * 1.4, rel=1e-12)


# ------------------------------------------------------------- QubitPairDensity


def test_density_rejects_non_hermitian():
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = 1.0
    m[0, 1] = 0.1
    with pytest.raises(ValueError, match="Hermitian"):
        QubitPairDensity(m)


def test_density_rejects_wrong_trace():
    with pytest.raises(ValueError, match="trace"):
        QubitPairDensity(0.5 * np.eye(4))


def test_density_rejects_negative_eigenvalue():
    m = np.diag([0.7, 0.7, -0.4, 0.0]).astype(complex)
    with pytest.raises(ValueError, match="semidefinite"):
        QubitPairDensity(m)
