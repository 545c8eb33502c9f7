import math

import numpy as np
import pytest

from src.constants import (
    ConnectedGeometry,
    PLConstants,
    compute_pl_constants,
    compute_pl_constants_connected,
    compute_pl_constants_modulus,
    empirical_pl_constant,
    ensure_reference_optimal,
    error_bound_ratio,
    localization_radius,
    pl_ratio,
    segment_count,
)
from src.costs import power_modulus
from src.dual_core import DualPotentials
from src.errors import COmegaLessThanOne, InputError, MissingGeometry, ReferenceNotOptimal
from src.measures import GeometryConstants
from src.solvers import ConvergenceTrace, TraceRow


def _unit_geometry(**overrides) -> GeometryConstants:
    fields = dict(
        lambda_P=1.0,
        Lambda_P=1.0,
        delta_P=1.0,
        diam_Omega=1.0,
        lipschitz_L=1.0,
        ball_inf_fn=lambda r: min(1.0, r),
        dim=1,
        diam_Omega_prime=1.0,
    )
    fields.update(overrides)
    return GeometryConstants(**fields)


def _constants(gamma: float) -> PLConstants:
    return PLConstants(kappa=1.0, alpha=1.0, beta_eps=4.0 / gamma, gamma_eps=gamma, radius=1.0, variant="lipschitz")


def test_segment_count():
    assert segment_count(2.0) == 2
    assert segment_count(2.0 + 1e-14) == 2
    assert segment_count(2.1) == 3
    assert segment_count(0.3) == 1
    assert segment_count(0.0) == 1


def test_lipschitz_constants_unit_geometry():
    consts = compute_pl_constants(_unit_geometry(), 4.0)
    assert consts.radius == pytest.approx(0.5)
    assert consts.kappa == pytest.approx(0.5)
    assert consts.alpha == pytest.approx(1.0 / 16.0)
    assert consts.beta_eps == pytest.approx(1.0 / 128.0)
    assert consts.gamma_eps == pytest.approx(512.0)
    assert consts.gamma_literal == pytest.approx(consts.gamma_eps, rel=1e-12)
    assert consts.inputs["segments"] == 2


def test_two_point_geometry_constants():
    geom = _unit_geometry(delta_P=0.5, ball_inf_fn=lambda r: 0.5 if r <= 1.0 else 1.0)
    consts = compute_pl_constants(geom, 1.0)
    # radius 1/8, eight segments
    assert consts.gamma_eps == pytest.approx(262144.0)
    assert compute_pl_constants(geom, 8.0).gamma_eps == pytest.approx(64.0)


def test_gamma_decreases_with_eps():
    geom = _unit_geometry()
    gammas = [compute_pl_constants(geom, eps).gamma_eps for eps in (0.5, 1.0, 2.0, 4.0, 8.0)]
    assert all(a >= b for a, b in zip(gammas, gammas[1:]))


def test_report_keys():
    report = compute_pl_constants(_unit_geometry(empirical=True), 1.0).to_report()
    assert set(report) == {"variant", "kappa", "alpha", "beta_eps", "gamma_eps", "radius", "empirical", "inputs"}
    assert report["empirical"] is True
    assert report["variant"] == "lipschitz"


def test_missing_geometry_and_bad_eps():
    with pytest.raises(MissingGeometry):
        compute_pl_constants(None, 1.0)
    with pytest.raises(InputError):
        compute_pl_constants(_unit_geometry(), 0.0)


def test_modulus_variant_matches_lipschitz_for_linear_modulus():
    geom = _unit_geometry()
    linear = power_modulus(1.0, 1.0, coordinatewise=True)
    by_modulus = compute_pl_constants_modulus(geom, linear, 4.0)
    by_lipschitz = compute_pl_constants(geom, 4.0)
    assert by_modulus.variant == "modulus"
    assert by_modulus.radius == pytest.approx(by_lipschitz.radius)
    assert by_modulus.gamma_eps == pytest.approx(by_lipschitz.gamma_eps)
    assert by_modulus.inputs["R"] == 1.0


def test_modulus_variant_radius_for_holder_cost():
    consts = compute_pl_constants_modulus(_unit_geometry(), power_modulus(1.0, 0.5, coordinatewise=True), 2.0)
    assert consts.radius == pytest.approx(0.0625)
    assert consts.inputs["segments"] == 16


def test_connected_variant():
    geom = _unit_geometry()
    base = compute_pl_constants(geom, 4.0)
    consts = compute_pl_constants_connected(ConnectedGeometry(C_Omega=3.0, delta_Omega=0.5), geom, 4.0)
    assert consts.variant == "connected_lipschitz"
    # delta_P_tilde = min(1, lambda_P * delta_Omega) = 0.5 halves kappa; C_Omega divides alpha
    assert consts.gamma_eps == pytest.approx(base.gamma_eps * 2.0 * 3.0)
    direct = compute_pl_constants_connected(ConnectedGeometry(C_Omega=1.0, delta_P_tilde=1.0), geom, 4.0)
    assert direct.gamma_eps == pytest.approx(base.gamma_eps)


def test_connected_variant_rejects_bad_inputs():
    geom = _unit_geometry()
    with pytest.raises(COmegaLessThanOne):
        compute_pl_constants_connected(ConnectedGeometry(C_Omega=0.5, delta_Omega=1.0), geom, 1.0)
    with pytest.raises(MissingGeometry):
        compute_pl_constants_connected(ConnectedGeometry(C_Omega=2.0), geom, 1.0)


def test_localization_radius(two_by_two_instance, two_by_two_optimum):
    assert localization_radius(two_by_two_instance, two_by_two_optimum, two_by_two_optimum) == (0.0, 1.0)
    c_fg, r0 = localization_radius(two_by_two_instance, DualPotentials.zeros(2, 2), two_by_two_optimum)
    assert c_fg == pytest.approx(1.5)
    assert r0 == pytest.approx(1.0 / 3.0)


def test_pl_and_error_bound_ratios_one_atom(one_atom_instance):
    star = DualPotentials([0.5], [0.5])
    pot = DualPotentials([0.0], [0.0])
    consts = _constants(10.0)
    assert pl_ratio(one_atom_instance, pot, star, consts) == pytest.approx(40.0)
    assert error_bound_ratio(one_atom_instance, pot, star, consts) == pytest.approx(10.0 * math.sqrt(2.0))
    assert math.isinf(pl_ratio(one_atom_instance, star, star, consts))
    assert math.isinf(error_bound_ratio(one_atom_instance, star, star, consts))


def test_ratios_require_an_optimal_reference(one_atom_instance):
    wrong = DualPotentials([0.0], [0.0])
    with pytest.raises(ReferenceNotOptimal):
        pl_ratio(one_atom_instance, DualPotentials([1.0], [1.0]), wrong, _constants(1.0))
    with pytest.raises(ReferenceNotOptimal):
        ensure_reference_optimal(one_atom_instance, wrong)


def test_empirical_pl_constant():
    trace = ConvergenceTrace(algorithm="gradient_ascent")
    trace.append(TraceRow(iter=0, objective=0.0, grad_l2=1.0, gap=0.5, sup_dist=2.0))
    trace.append(TraceRow(iter=1, objective=0.0, grad_l2=0.5, gap=0.1, sup_dist=0.1))
    trace.append(TraceRow(iter=2, objective=0.0, grad_l2=0.0, gap=0.0, sup_dist=0.0))
    # rows give 0.5 / 2 and 0.1 / (1 * 0.25)
    assert empirical_pl_constant(trace, 1.0) == pytest.approx(0.4)
    assert empirical_pl_constant(ConvergenceTrace(algorithm="gradient_ascent"), 1.0) is None


def test_constants_cover_a_grid_instance(grid_instance, grid_geometry):
    consts = compute_pl_constants(grid_geometry, grid_instance.eps)
    assert consts.empirical_flag
    assert np.isfinite(consts.gamma_eps) and consts.gamma_eps > 0
    assert consts.beta_eps == pytest.approx(4.0 / consts.gamma_eps)


def test_gamma_beta_product_is_four():
    consts = compute_pl_constants(_unit_geometry(), 0.3)
    assert consts.gamma_eps * consts.beta_eps == pytest.approx(4.0, rel=1e-15)


def test_single_atom_support_uses_one_segment():
    consts = compute_pl_constants(_unit_geometry(diam_Omega=0.0), 1.0)
    assert consts.inputs["segments"] == 1
    assert math.isfinite(consts.gamma_eps)
