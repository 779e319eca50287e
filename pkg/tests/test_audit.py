"""Energy quadrature, Caccioppoli growth audit, Holder fits, Morrey norms."""

import math

import numpy as np
import pytest

from pdi_lab.audit import (
    caccioppoli_audit,
    gradient_energy,
    holder_fit,
    morrey_norm,
    unit_ball_volume,
)
from pdi_lab.errors import (
    DomainExceeded,
    InsufficientScales,
    NonIntegrable,
    PreconditionViolation,
)
from pdi_lab.params import ProblemParams
from pdi_lab.radial import PowerProfile, SampledProfile, sharpness_profile
from pdi_lab.solver import (
    RadialPowerSource,
    SolverConfig,
    ZeroSource,
    solve_radial_dirichlet,
)
from pdi_lab.radial import PLaplacian


def test_unit_ball_volumes():
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)
    assert unit_ball_volume(4) == pytest.approx(math.pi**2 / 2.0)


def test_energy_of_unit_slope_is_ball_volume():
    lin = PowerProfile(c=1.0, a=1.0)
    for t in (0.25, 0.5, 1.0):
        want = 4.0 / 3.0 * math.pi * t**3
        assert gradient_energy(lin, 2.0, t, 3) == pytest.approx(want, rel=1e-5)


def test_energy_of_constant_is_zero():
    # dyadic spacing keeps the finite differences free of rounding residue,
    # so the energy is exactly zero rather than ~1e-28 noise to the gamma
    g = np.arange(1, 65) / 64.0
    flat = SampledProfile(g, np.full(64, 2.5))
    assert gradient_energy(flat, 2.0, 0.8, 3) == 0.0


def test_energy_closed_form_sharpness():
    prof = sharpness_profile(3, 2.0, 4.0)
    target = 4.0 * math.pi * (45.0 / 8.0) ** (4.0 / 3.0) * (16.0 / 81.0) * (3.0 / 5.0)
    got = gradient_energy(prof, 4.0, 1.0, 3)
    assert got == pytest.approx(target, rel=1e-5)


def test_energy_monotone_and_shell_consistent_on_grid():
    g = np.linspace(1e-6, 1.0, 2001)
    prof = SampledProfile(g, g.copy())
    ts = np.linspace(0.05, 1.0, 40)
    es = np.array([gradient_energy(prof, 2.0, float(t), 3) for t in ts])
    assert np.all(np.diff(es) > 0)
    # prefix quadrature telescopes: E(b) - E(a) is the shell integral,
    # and chaining shells back together recovers E exactly
    e_mid = gradient_energy(prof, 2.0, 0.437, 3)
    e_hi = gradient_energy(prof, 2.0, 0.811, 3)
    shell = e_hi - e_mid
    rebuilt = e_mid + shell
    assert rebuilt == pytest.approx(e_hi, rel=1e-12)
    assert es[0] <= e_mid <= e_hi <= es[-1]


def test_energy_respects_trivial_gradient_bound():
    g = np.linspace(1e-6, 2.0, 3001)
    prof = SampledProfile(g, np.sin(g))
    gamma, dim = 2.5, 3
    m = float(np.max(np.abs(np.gradient(prof.values, g))))
    for t in (0.5, 1.0, 2.0):
        bound = m**gamma * unit_ball_volume(dim) * t**dim
        assert gradient_energy(prof, gamma, t, dim) <= bound * (1.0 + 1e-12)


def test_energy_domain_guard():
    g = np.linspace(0.01, 1.0, 32)
    prof = SampledProfile(g, g**2)
    with pytest.raises(DomainExceeded):
        gradient_energy(prof, 2.0, 1.5, 3)


def test_caccioppoli_sharpness_growth_and_stability():
    prof = sharpness_profile(3, 2.0, 4.0)
    params = ProblemParams(dim=3, p=2.0, gamma=4.0)
    rep = caccioppoli_audit(prof, params, R=1.0, t_list=np.geomspace(0.02, 0.95, 24))
    assert rep.predicted_s == pytest.approx(4.0 / 3.0)
    assert rep.fitted_growth == pytest.approx(5.0 / 3.0, abs=0.05)
    assert rep.k_stable
    assert rep.passed
    assert rep.fitted_K > 0


def test_caccioppoli_constant_profile():
    g = np.arange(1, 65) / 64.0
    flat = SampledProfile(g, np.full(64, 1.0))
    params = ProblemParams(dim=3, p=2.0, gamma=4.0)
    rep = caccioppoli_audit(flat, params, R=1.0, t_list=np.linspace(0.1, 0.9, 9))
    assert np.all(rep.energies == 0.0)
    assert rep.fitted_K == 0.0
    assert rep.k_stable
    assert math.isnan(rep.fitted_growth)
    assert rep.passed


def test_caccioppoli_flags_faster_growth():
    # gradient blows up near r = 1 harder than the predicted exponent allows
    g = np.linspace(1e-4, 0.999, 20001)
    steep = SampledProfile(g, (1.0 - g) ** -0.5)
    params = ProblemParams(dim=3, p=2.0, gamma=2.0)
    rep = caccioppoli_audit(steep, params, R=1.0, t_list=np.geomspace(0.02, 0.99, 24))
    assert not rep.k_stable


def test_caccioppoli_lambda_part_override():
    g = np.arange(1, 65) / 64.0
    neg = SampledProfile(g, -g.copy())
    params = ProblemParams(dim=3, p=2.0, gamma=2.0, lam=2.0)
    t_list = np.linspace(0.1, 0.9, 9)
    plain = caccioppoli_audit(neg, params, R=1.0, t_list=t_list,
                              lambda_part=lambda t: 0.0)
    auto = caccioppoli_audit(neg, params, R=1.0, t_list=t_list)
    offset = caccioppoli_audit(neg, params, R=1.0, t_list=t_list,
                               lambda_part=lambda t: 7.0)
    # u < 0 everywhere, so the automatic lam-term integrates |u| and adds mass
    assert np.all(auto.energies > plain.energies)
    pure = np.array([gradient_energy(neg, 2.0, float(t), 3) for t in t_list])
    assert np.array_equal(plain.energies, pure)
    assert np.allclose(offset.energies - plain.energies, 7.0, rtol=0, atol=1e-12)


def test_caccioppoli_t_list_guard():
    prof = sharpness_profile(3, 2.0, 4.0)
    params = ProblemParams(dim=3, p=2.0, gamma=4.0)
    with pytest.raises(PreconditionViolation):
        caccioppoli_audit(prof, params, R=1.0, t_list=[0.5, 1.5])


def test_caccioppoli_integrability_branch_saturating_profile():
    """With q small enough the exponent comes from the integrability arm,
    s = dim/q, and u = r^(1 - s/gamma) saturates it: the energy integrand
    collapses to a constant, E(t) = (4 pi / 27) t, so the fitted growth
    must be dim - s exactly (up to the half-panel at r = 0)."""
    params = ProblemParams(dim=3, p=2.0, gamma=3.0, q=1.5)
    assert params.dim / params.q > params.gamma / (params.gamma - 1.0)
    prof = PowerProfile(c=1.0, a=1.0 / 3.0)
    t_list = np.geomspace(0.02, 0.9, 16)
    rep = caccioppoli_audit(prof, params, R=1.0, t_list=t_list)
    assert rep.predicted_s == pytest.approx(2.0)
    assert rep.fitted_growth == pytest.approx(1.0, abs=0.02)
    want = 4.0 * math.pi / 27.0 * t_list
    assert np.max(np.abs(rep.energies - want) / want) < 1e-3
    assert rep.k_stable
    assert rep.passed


def test_caccioppoli_bound_holds_on_solver_output():
    # singular source, q-branch active; the audit only promises the
    # two-ball bound with a stable constant, not a clean power law
    params = ProblemParams(dim=3, p=2.0, gamma=3.0, q=1.5)
    sol = solve_radial_dirichlet(
        PLaplacian(2.0), params, RadialPowerSource(1.0, 2.0), (0.005, 1.0),
        bc_left=0.0, bc_right=0.0, config=SolverConfig(n_nodes=1024),
    )
    rep = caccioppoli_audit(sol, params, R=1.0,
                            t_list=np.geomspace(0.02, 0.95, 20))
    assert rep.predicted_s == pytest.approx(2.0)
    assert rep.passed
    assert rep.k_stable
    assert np.all(np.diff(rep.energies) >= 0)


@pytest.mark.parametrize("a", [0.3, 0.5, 0.8])
def test_holder_fit_recovers_power_exponent(a):
    prof = PowerProfile(c=1.0, a=a)
    rep = holder_fit(prof, pair_budget=10000, scale_range=(1e-4, 0.5), seed=3)
    assert abs(rep.fitted_alpha - a) <= 0.03


def test_holder_fit_sharpness_and_linear():
    sharp = sharpness_profile(3, 2.0, 4.0)
    rep = holder_fit(sharp, pair_budget=20000, scale_range=(1e-4, 0.5),
                     predicted_alpha=2.0 / 3.0)
    assert rep.passed
    assert rep.r_squared >= 0.99
    lin = PowerProfile(c=1.0, a=1.0)
    rep2 = holder_fit(lin, pair_budget=20000, scale_range=(1e-3, 0.5),
                      predicted_alpha=1.0, tolerance=0.02)
    assert rep2.passed


def test_holder_fit_smooth_bump_is_lipschitz_at_small_scales():
    from pdi_lab.radial import BumpProfile

    # smooth with bounded slope: sup-increments scale linearly in distance
    prof = BumpProfile(c=1.0, delta=(2.0 - 1.8) / (1.8 - 1.0))
    rep = holder_fit(prof, pair_budget=20000, scale_range=(1e-4, 0.1),
                     domain=(0.0, 5.0), predicted_alpha=1.0)
    assert abs(rep.fitted_alpha - 1.0) <= 0.05


def test_holder_fit_determinism_and_scale_guards():
    prof = sharpness_profile(3, 2.0, 4.0)
    a = holder_fit(prof, pair_budget=5000, scale_range=(1e-4, 0.5), seed=11)
    b = holder_fit(prof, pair_budget=5000, scale_range=(1e-4, 0.5), seed=11)
    assert a.fitted_alpha == b.fitted_alpha
    assert np.array_equal(a.max_increments, b.max_increments)
    with pytest.raises(InsufficientScales):
        holder_fit(prof, pair_budget=5000, scale_range=(0.3, 0.5))
    with pytest.raises(PreconditionViolation):
        holder_fit(prof, pair_budget=5000, scale_range=(1e-4, 2.0))


def test_morrey_centered_power_oracle():
    norm = morrey_norm(RadialPowerSource(1.0, 1.0), s_index=1.0, theta=1.5,
                       omega_radius=1.0)
    assert norm.value == pytest.approx(2.0 * math.pi, rel=1e-9)
    assert norm.argmax_radius == pytest.approx(1.0)
    assert not norm.divergent


def test_morrey_divergence_flag():
    norm = morrey_norm(RadialPowerSource(1.0, 2.0), s_index=1.0, theta=1.5,
                       omega_radius=1.0)
    assert norm.divergent
    assert norm.value == math.inf


def test_morrey_zero_source():
    norm = morrey_norm(ZeroSource(), s_index=1.0, theta=1.5, omega_radius=1.0)
    assert norm.value == 0.0
    assert not norm.divergent


def test_morrey_theta_equal_dim_is_lebesgue_norm():
    # weight r^{(theta-dim)/s} = 1: the sup saturates at the full ball
    norm = morrey_norm(RadialPowerSource(1.0, 1.0), s_index=2.0, theta=3.0,
                       omega_radius=1.0)
    want = math.sqrt(4.0 * math.pi)  # (int_{B_1} |x|^{-2})^{1/2}
    assert norm.value == pytest.approx(want, rel=1e-9)
    assert norm.argmax_radius == pytest.approx(1.0)


def test_morrey_guards():
    with pytest.raises(NonIntegrable):
        morrey_norm(RadialPowerSource(1.0, 3.0), s_index=1.0, theta=1.5,
                    omega_radius=1.0)
    with pytest.raises(PreconditionViolation):
        morrey_norm(ZeroSource(), s_index=0.5, theta=1.5, omega_radius=1.0)
    with pytest.raises(PreconditionViolation):
        morrey_norm(ZeroSource(), s_index=1.0, theta=4.0, omega_radius=1.0)
