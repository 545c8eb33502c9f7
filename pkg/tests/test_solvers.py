import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.constants import compute_pl_constants
from src.dual_core import DualPotentials, gamma_objective, oplus_sup_distance
from src.errors import (
    InputError,
    LengthMismatch,
    MissingReference,
    NonFiniteIterate,
    StepSizeOutOfRange,
    ZeroWeights,
)
from src.measures import empirical_geometry
from src.solvers import (
    COORDINATE_ASCENT,
    COORDINATE_GRADIENT_ASCENT,
    GRADIENT_ASCENT,
    TRACE_COLUMNS,
    ConvergenceTrace,
    SolverConfig,
    TraceRow,
    align_reference,
    check_iterate_bounds,
    check_l2_iterate_bound,
    check_monotone,
    check_pl_rows,
    check_rate_bound,
    coordinate_ascent_run,
    coordinate_gradient_ascent_run,
    format_float,
    gradient_ascent_run,
    iterate_l2_constant,
    resolve_step,
    run_solver,
    solve_1d_foc,
    solve_1d_foc_rows,
    step_upper_bound,
    theoretical_rate,
)
from tests.helpers import random_instance, reference_potentials


# --- Exact one-dimensional solve ------------------------------------------------------
def test_solve_1d_foc_two_breakpoints():
    assert solve_1d_foc([0.0, 1.0], [0.5, 0.5], 1.0) == pytest.approx(1.5)
    assert solve_1d_foc([0.0, 1.0], [0.5, 0.5], 0.25) == pytest.approx(0.5)


def test_solve_1d_foc_first_piece():
    # 0.5 * (t - 0) = 0.1 is reached before the second breakpoint
    assert solve_1d_foc([0.0, 10.0], [0.5, 0.5], 0.1) == pytest.approx(0.2)


def _bisect_foc(b, w, eps, steps=200) -> float:
    lo, hi = float(b.min()), float(b.max()) + eps / float(w.sum())
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if np.sum(w * np.maximum(mid - b, 0.0)) < eps:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@settings(deadline=None)
@given(
    st.lists(st.floats(min_value=-5.0, max_value=5.0), min_size=1, max_size=10),
    st.floats(min_value=1e-3, max_value=10.0),
    st.integers(min_value=0, max_value=1000),
)
def test_solve_1d_foc_is_a_root(breakpoints, eps, seed):
    b = np.asarray(breakpoints)
    w = np.random.default_rng(seed).dirichlet(np.ones(b.size))
    t = solve_1d_foc(b, w, eps)
    assert abs(np.sum(w * np.maximum(t - b, 0.0)) - eps) <= 1e-12 * max(1.0, eps)
    assert abs(t - _bisect_foc(b, w, eps)) <= 1e-10 * max(1.0, abs(t))


def test_solve_1d_foc_rows_vectorized():
    B = np.array([[0.0, 1.0], [1.0, 0.0], [5.0, 5.0]])
    t = solve_1d_foc_rows(B, np.array([0.5, 0.5]), 1.0)
    np.testing.assert_allclose(t, [1.5, 1.5, 6.0])


def test_solve_1d_foc_input_errors():
    with pytest.raises(LengthMismatch):
        solve_1d_foc([0.0, 1.0], [1.0], 1.0)
    with pytest.raises(InputError):
        solve_1d_foc([0.0], [1.0], 0.0)
    with pytest.raises(ZeroWeights):
        solve_1d_foc([0.0, 1.0], [0.0, 0.0], 1.0)


# --- Step sizes ---------------------------------------------------------------------
def test_step_bounds_and_defaults():
    assert step_upper_bound(GRADIENT_ASCENT, 2.0) == 2.0
    assert step_upper_bound(COORDINATE_GRADIENT_ASCENT, 2.0) == pytest.approx(math.sqrt(2.0))
    assert resolve_step(SolverConfig(algorithm=GRADIENT_ASCENT), 2.0) == 1.0
    assert resolve_step(SolverConfig(algorithm=COORDINATE_GRADIENT_ASCENT), 2.0) == 1.0
    with pytest.raises(InputError):
        step_upper_bound(COORDINATE_ASCENT, 1.0)


def test_step_out_of_range_is_rejected_unless_unsafe():
    with pytest.raises(StepSizeOutOfRange):
        resolve_step(SolverConfig(algorithm=GRADIENT_ASCENT, step_size=1.0), 1.0)
    with pytest.raises(StepSizeOutOfRange):
        resolve_step(SolverConfig(algorithm=COORDINATE_GRADIENT_ASCENT, step_size=0.75), 1.0)
    unsafe = SolverConfig(algorithm=COORDINATE_GRADIENT_ASCENT, step_size=0.75, unsafe_step=True)
    assert resolve_step(unsafe, 1.0) == 0.75
    with pytest.raises(StepSizeOutOfRange):
        resolve_step(SolverConfig(algorithm=GRADIENT_ASCENT, step_size=-1.0, unsafe_step=True), 1.0)


def test_solver_config_validation():
    with pytest.raises(InputError):
        SolverConfig(algorithm="newton")
    with pytest.raises(InputError):
        SolverConfig(max_iters=-1)


# --- Algorithms on tiny instances ----------------------------------------------------------
def test_coordinate_gradient_ascent_first_iterates(one_atom_instance):
    config = SolverConfig(algorithm=COORDINATE_GRADIENT_ASCENT, max_iters=2, grad_tol=0.0)
    pot, trace = coordinate_gradient_ascent_run(one_atom_instance, DualPotentials.zeros(1, 1), config)
    assert pot.f[0] == pytest.approx(0.625)
    assert pot.g[0] == pytest.approx(0.3125)
    assert [row.iter for row in trace.rows] == [0, 1, 2]
    assert not trace.converged


def test_gradient_ascent_one_atom_converges_in_one_step(one_atom_instance):
    pot, trace = gradient_ascent_run(one_atom_instance, DualPotentials.zeros(1, 1), SolverConfig())
    np.testing.assert_allclose([pot.f[0], pot.g[0]], [0.5, 0.5])
    assert trace.converged and trace.last.iter == 1
    assert trace.step_size == 0.5


def test_coordinate_ascent_solves_two_by_two_immediately(two_by_two_instance, two_by_two_optimum):
    pot, trace = coordinate_ascent_run(two_by_two_instance, np.zeros(2), SolverConfig())
    np.testing.assert_allclose(pot.f, [1.5, 1.5])
    np.testing.assert_allclose(pot.g, [0.0, 0.0])
    assert trace.converged and len(trace) == 1
    assert trace.last.objective == pytest.approx(0.875)
    assert oplus_sup_distance(pot, two_by_two_optimum) == pytest.approx(0.0, abs=1e-15)


def test_coordinate_ascent_input_checks(two_by_two_instance):
    with pytest.raises(InputError):
        coordinate_ascent_run(two_by_two_instance, np.zeros(3), SolverConfig())
    with pytest.raises(InputError):
        coordinate_ascent_run(two_by_two_instance, np.array([0.0, math.inf]), SolverConfig())


@pytest.mark.parametrize("algorithm", [GRADIENT_ASCENT, COORDINATE_ASCENT, COORDINATE_GRADIENT_ASCENT])
def test_all_algorithms_reach_the_optimum(algorithm):
    inst = random_instance(7, n=5, m=4, eps=0.5)
    ref = reference_potentials(inst)
    config = SolverConfig(algorithm=algorithm, grad_tol=1e-10)
    pot, trace = run_solver(inst, DualPotentials.zeros(inst.n, inst.m), config)
    assert trace.converged
    assert gamma_objective(inst, pot) == pytest.approx(gamma_objective(inst, ref), abs=1e-9)
    assert not check_monotone(trace)


def test_record_trace_false_keeps_final_row():
    inst = random_instance(3)
    config = SolverConfig(algorithm=GRADIENT_ASCENT, record_trace=False, grad_tol=1e-8)
    _, trace = gradient_ascent_run(inst, DualPotentials.zeros(inst.n, inst.m), config)
    assert len(trace) == 1
    assert trace.last.iter > 0 and trace.last.grad_l2 <= 1e-8


def test_max_iters_zero_records_start_only(two_by_two_instance):
    config = SolverConfig(algorithm=GRADIENT_ASCENT, max_iters=0, grad_tol=0.0)
    pot, trace = gradient_ascent_run(two_by_two_instance, DualPotentials.zeros(2, 2), config)
    assert len(trace) == 1 and not trace.converged
    np.testing.assert_array_equal(pot.f, 0.0)


def test_run_solver_dispatch_only_reads_g_for_coordinate_ascent(two_by_two_instance):
    start = DualPotentials([100.0, -100.0], [0.0, 0.0])
    pot, _ = run_solver(two_by_two_instance, start, SolverConfig(algorithm=COORDINATE_ASCENT))
    np.testing.assert_allclose(pot.f, [1.5, 1.5])


def test_huge_unsafe_step_raises_with_partial_trace(one_atom_instance):
    config = SolverConfig(algorithm=GRADIENT_ASCENT, step_size=1e200, unsafe_step=True, max_iters=10)
    with pytest.raises(NonFiniteIterate) as info:
        gradient_ascent_run(one_atom_instance, DualPotentials.zeros(1, 1), config)
    trace = info.value.trace
    assert trace is not None and trace.unsafe
    assert trace.rows[0].iter == 0


# --- Traces ---------------------------------------------------------------------------
def test_trace_rows_carry_reference_columns(two_by_two_instance, two_by_two_optimum):
    config = SolverConfig(algorithm=GRADIENT_ASCENT, reference_potentials=two_by_two_optimum, grad_tol=1e-9)
    _, trace = gradient_ascent_run(two_by_two_instance, DualPotentials.zeros(2, 2), config)
    first = trace.rows[0]
    assert first.gap == pytest.approx(0.875)
    assert first.sup_dist == pytest.approx(1.5)
    assert first.pl_ratio is None
    assert all(g >= -1e-12 for g in trace.gaps())


def test_trace_csv_format(tmp_path):
    trace = ConvergenceTrace(algorithm=GRADIENT_ASCENT)
    trace.append(TraceRow(iter=0, objective=0.1, grad_l2=1.0, gap=math.inf))
    path = tmp_path / "trace.csv"
    trace.save_csv(str(path))
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(TRACE_COLUMNS)
    assert lines[1] == "0,0.10000000000000001,1,inf,,,"


def test_format_float():
    assert format_float(None) == ""
    assert format_float(-math.inf) == "-inf"
    assert float(format_float(1.0 / 3.0)) == 1.0 / 3.0


def test_empirical_contraction_of_geometric_gaps():
    trace = ConvergenceTrace(algorithm=GRADIENT_ASCENT)
    for k in range(40):
        trace.append(TraceRow(iter=k, objective=0.0, grad_l2=1.0, gap=0.5 ** k))
    assert trace.empirical_contraction() == pytest.approx(0.5)
    assert ConvergenceTrace(algorithm=GRADIENT_ASCENT).empirical_contraction() is None


# --- Rates and bounds -----------------------------------------------------------------------
def _unit_density_constants(inst):
    geom = empirical_geometry(inst.P, inst.Q, (1.0, 1.0), 1.0, lipschitz_L=2.0)
    return compute_pl_constants(geom, inst.eps)


def test_align_reference_centers_the_g_difference():
    ref = DualPotentials([0.0], [1.0, 3.0])
    aligned = align_reference(np.array([0.0, 0.0]), ref)
    np.testing.assert_allclose(aligned.g, [-1.0, 1.0])
    np.testing.assert_allclose(aligned.f, [2.0])


def test_theoretical_rates(two_by_two_instance, two_by_two_optimum):
    inst = two_by_two_instance
    start = DualPotentials.zeros(2, 2)
    gd = SolverConfig(algorithm=GRADIENT_ASCENT, reference_potentials=two_by_two_optimum)
    # D = 1.5, scale = max(3, 1)
    assert theoretical_rate(inst, gd, start, 10.0) == pytest.approx(0.5 * 0.5 / 30.0)
    assert iterate_l2_constant(inst, gd, start, 10.0) == pytest.approx(900.0 / 0.25)
    cga = SolverConfig(algorithm=COORDINATE_GRADIENT_ASCENT, reference_potentials=two_by_two_optimum)
    assert theoretical_rate(inst, cga, start, 10.0) == pytest.approx(0.5 * 0.75 / 60.0)
    ca = SolverConfig(algorithm=COORDINATE_ASCENT, reference_potentials=two_by_two_optimum)
    # g0 - g* = (-0.75, -0.75) has zero spread, so the scale is eps
    assert theoretical_rate(inst, ca, start, 10.0) == pytest.approx(1.0 / 20.0)
    assert iterate_l2_constant(inst, ca, start, 10.0) == pytest.approx(200.0)
    with pytest.raises(MissingReference):
        theoretical_rate(inst, SolverConfig(algorithm=GRADIENT_ASCENT), start, 10.0)
    with pytest.raises(InputError):
        theoretical_rate(inst, gd, start, 0.0)


@settings(deadline=None, max_examples=10)
@given(st.integers(min_value=0, max_value=10000), st.sampled_from([0.3, 0.6, 1.0]))
def test_guarantees_hold_along_every_algorithm(seed, eps):
    inst = random_instance(seed, n=4, m=3, eps=eps)
    ref = reference_potentials(inst)
    consts = _unit_density_constants(inst)
    start = DualPotentials.zeros(inst.n, inst.m)
    for algorithm in (GRADIENT_ASCENT, COORDINATE_ASCENT, COORDINATE_GRADIENT_ASCENT):
        config = SolverConfig(
            algorithm=algorithm, reference_potentials=ref, pl_constants=consts, grad_tol=1e-9, max_iters=20000
        )
        _, trace = run_solver(inst, start, config)
        q = theoretical_rate(inst, config, start, consts.gamma_eps)
        assert 0 < q < 1
        assert not check_monotone(trace)
        assert not check_rate_bound(trace, q)
        assert not check_l2_iterate_bound(trace, q, iterate_l2_constant(inst, config, start, consts.gamma_eps))
        assert not check_pl_rows(trace)
        assert not check_iterate_bounds(trace)


@pytest.mark.parametrize("algorithm", [GRADIENT_ASCENT, COORDINATE_ASCENT, COORDINATE_GRADIENT_ASCENT])
@pytest.mark.parametrize("shift", [0.0, 0.4])
def test_guarantees_hold_on_a_grid_discretization(grid_instance, grid_geometry, algorithm, shift):
    inst = grid_instance
    consts = compute_pl_constants(grid_geometry, inst.eps)
    ref = reference_potentials(inst)
    rng = np.random.default_rng(11)
    start = DualPotentials(shift * rng.normal(size=inst.n), shift * rng.normal(size=inst.m))
    config = SolverConfig(
        algorithm=algorithm, reference_potentials=ref, pl_constants=consts, grad_tol=1e-9, max_iters=20000
    )
    _, trace = run_solver(inst, start, config)
    assert trace.converged
    q = theoretical_rate(inst, config, start, consts.gamma_eps)
    assert 0 < q < 1
    assert not check_monotone(trace)
    assert not check_rate_bound(trace, q)
    assert not check_l2_iterate_bound(trace, q, iterate_l2_constant(inst, config, start, consts.gamma_eps))
    assert not check_pl_rows(trace)
    assert not check_iterate_bounds(trace)


def test_rate_check_flags_a_slow_trace():
    trace = ConvergenceTrace(algorithm=GRADIENT_ASCENT)
    for k, gap in enumerate([1.0, 0.9, 0.8]):
        trace.append(TraceRow(iter=k, objective=-gap, grad_l2=1.0, gap=gap))
    violations = check_rate_bound(trace, 0.5)
    assert [v.iter for v in violations] == [1, 2]
    assert violations[0].to_dict()["check"] == "rate"
    trace.unsafe = True
    assert check_rate_bound(trace, 0.5) == []


def test_monotone_check_flags_a_decrease():
    trace = ConvergenceTrace(algorithm=GRADIENT_ASCENT)
    trace.append(TraceRow(iter=0, objective=1.0, grad_l2=1.0))
    trace.append(TraceRow(iter=1, objective=0.5, grad_l2=1.0))
    assert check_monotone(trace)[0].iter == 1


def test_solve_1d_foc_root_on_a_breakpoint():
    assert solve_1d_foc([0.0, 2.0], [0.5, 0.5], 1.0) == pytest.approx(2.0)
