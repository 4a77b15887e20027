import math

import numpy as np
import pytest

from gencube.gates import joint_depol, local_dephase, pipeline
from gencube.pauli import BlochOp, eigenvalues_hermitian, partial_transpose, to_dense
from gencube.spaces import StateSpaceSpec
from gencube.thresholds import (

    ThresholdBracketError,
    ThresholdQuery,
    analytic_bound,
    analytic_intersection,
    curve,
    curve_to_csv,
    dephasing_impossibility,
    min_noise,
    sphere_grid_inputs,
)

CUBE = StateSpaceSpec.cube(1.0)


def test_cube_thresholds_reproduce_closed_forms():
    q = ThresholdQuery("joint-depol", CUBE, "cube-separable")
    assert abs(min_noise(q) - 2 / 3) < 1e-6
    q = ThresholdQuery("local-depol", CUBE, "cube-separable")
    assert abs(min_noise(q) - (2 - math.sqrt(2))) < 1e-6
    q = ThresholdQuery("local-dephase", CUBE, "cube-separable")
    assert abs(min_noise(q) - (1 - 1 / math.sqrt(2))) < 1e-6


def test_partial_dephasing_on_rescaled_cube_needs_total_noise():
    # for R != 1 only complete dephasing separates: the threshold sits at 1/2
    q = ThresholdQuery("local-dephase", StateSpaceSpec.cube(1.3), "cube-separable")
    assert min_noise(q, tol=1e-6) > 0.5 - 1e-5


def test_min_noise_bracket_errors(monkeypatch):
    import gencube.thresholds as th

    q = ThresholdQuery("joint-depol", CUBE, "cube-separable")
    monkeypatch.setattr(th, "_criterion_fn", lambda c: (lambda A: True))
    with pytest.raises(ThresholdBracketError):
        min_noise(q)
    monkeypatch.setattr(th, "_criterion_fn", lambda c: (lambda A: False))
    with pytest.raises(ThresholdBracketError):
        min_noise(q)


def test_analytic_bounds_at_unit_rescaling():
    ab = analytic_bound("local-depol", "cube", 1.0)
    assert ab.active == "xy"
    assert abs(ab.active_value - (math.sqrt(2) - 1)) < 1e-12
    jb = analytic_bound("joint-depol", "cube", 1.0)
    assert jb.active == "tdb1"
    assert abs(jb.active_value - 1 / 3) < 1e-12
    with pytest.raises(ValueError):
        analytic_bound("local-dephase", "cube", 1.0)


def test_analytic_bounds_monotone_xy():
    vals = [analytic_bound("local-depol", "cube", R).value("xy") for R in np.linspace(0.3, 2.0, 30)]
    assert all(a >= b - 1e-15 for a, b in zip(vals, vals[1:]))


def test_analytic_intersections():
    R, r = analytic_intersection("local-depol")
    assert abs((1 - r) - 0.392919) < 1e-4
    assert abs((1 - R) - 0.479927) < 1e-4
    Rj, rj = analytic_intersection("joint-depol")
    assert abs(Rj - 1 / math.sqrt(3)) < 1e-6
    assert abs(rj - math.sqrt(3) / (2 + math.sqrt(3))) < 1e-6


def test_curve_and_csv_format():
    q = ThresholdQuery("joint-depol", CUBE, "cube-separable")
    pts = curve(q, 0.9, 1.1, 3, tol=1e-6)
    assert [round(p.R, 6) for p in pts] == [0.9, 1.0, 1.1]
    mid = pts[1]
    assert abs(mid.lambda_star - 2 / 3) < 1e-5
    csv = curve_to_csv(pts)
    lines = csv.strip().splitlines()
    assert lines[0] == "R,lambda_star,method"
    assert len(lines) == 4
    assert lines[2].startswith("1,0.666666")


def test_dephasing_impossibility():
    v = dephasing_impossibility(1.2, 0.3)
    assert not v.valid
    expected = (1 - 2 * 0.3) * (1 / 1.2 - 1.2) / 4
    assert abs(v.witness - expected) < 1e-12
    assert v.witness < 0
    assert dephasing_impossibility(1.0, 0.123).valid
    assert dephasing_impossibility(1.7, 0.5).valid
    with pytest.raises(ValueError):
        dephasing_impossibility(0.0, 0.1)


def test_dephasing_witness_matches_pipeline_eigenvalue():
    R, p = 1.2, 0.3
    u = BlochOp(np.array([1.0, 0.0, 0.0]))
    v = BlochOp(np.array([0.0, 0.0, 1.0]))
    out = pipeline(u, v, R, local_dephase(p))
    eigs = eigenvalues_hermitian(to_dense(out))
    wit = dephasing_impossibility(R, p).witness
    assert abs(eigs[0] - wit) < 1e-12


def test_sphere_grid_reduction_spectra():
    # theta -> theta + pi is a local-unitary equivalence: spectra invariant
    rng = np.random.default_rng(55)
    for _ in range(5):
        th, ph = rng.uniform(0, math.pi / 2, 2)
        R = rng.uniform(0.7, 1.8)
        n = joint_depol(rng.uniform(0.1, 0.9))

        def out(theta, phi):
            u = BlochOp(np.array([math.cos(theta), 0.0, math.sin(theta)]))
            v = BlochOp(np.array([math.cos(phi), 0.0, math.sin(phi)]))
            return pipeline(u, v, R, n)

        a, b = out(th, ph), out(th + math.pi, ph)
        assert np.allclose(eigenvalues_hermitian(to_dense(a)),
                           eigenvalues_hermitian(to_dense(b)), atol=1e-10)
        assert np.allclose(
            eigenvalues_hermitian(to_dense(partial_transpose(a))),
            eigenvalues_hermitian(to_dense(partial_transpose(b))), atol=1e-10)
        # reflection of theta about pi/2 is the Z (x) I equivalence
        c = out(math.pi - th, ph)
        assert np.allclose(eigenvalues_hermitian(to_dense(a)),
                           eigenvalues_hermitian(to_dense(c)), atol=1e-10)


def test_sphere_grid_inputs_domain():
    grid = sphere_grid_inputs(5)
    assert len(grid) == 25
    for u, v, th, ph in grid:
        assert 0 <= th <= math.pi / 2 and 0 <= ph <= math.pi / 2
        assert abs(np.linalg.norm(u.bloch) - 1) < 1e-12
        assert u.bloch[1] == 0.0


def test_sphere_threshold_unit_rescaling_matches_cube_case():
    # joint depol on the unrescaled sphere: the EPR threshold 2/3
    q = ThresholdQuery("joint-depol", StateSpaceSpec.sphere(1.0),
                       "quantum-separable", "sphere-grid", grid_n=25)
    lam = min_noise(q, tol=1e-6)
    assert abs(lam - 2 / 3) < 2e-3


def test_worst_vertex_equals_all_vertices_smoke():
    # the full three-family agreement runs in the acceptance suite
    q1 = ThresholdQuery("joint-depol", CUBE, "cube-separable", "worst-vertex")
    q2 = ThresholdQuery("joint-depol", CUBE, "cube-separable", "all-vertices")
    assert abs(min_noise(q1, tol=1e-5) - min_noise(q2, tol=1e-5)) < 1e-4


def test_lp_threshold_never_below_analytic_bound():
    # positivity is necessary for separability
    for family in ("joint-depol", "local-depol"):
        for R in (0.6, 0.8, 1.0, 1.2):
            q = ThresholdQuery(family, StateSpaceSpec.cube(R), "cube-separable")
            lam = min_noise(q, tol=1e-6)
            r_bound = analytic_bound(family, "cube", R).active_value
            assert lam >= (1 - min(r_bound, 1.0)) - 1e-5


def test_pauli_positive_threshold_matches_analytic_bound():
    for family in ("joint-depol", "local-depol"):
        for R in (0.8, 1.0, 1.3):
            q = ThresholdQuery(family, StateSpaceSpec.cube(R), "pauli-positive")
            lam = min_noise(q, tol=1e-7)
            r_bound = analytic_bound(family, "cube", R).active_value
            assert abs(lam - (1 - min(r_bound, 1.0))) < 1e-6


def test_curve_respects_thread_env(monkeypatch):
    q = ThresholdQuery("joint-depol", CUBE, "cube-separable")
    seq = curve(q, 0.95, 1.05, 3, tol=1e-6, threads=1)
    monkeypatch.setenv("GENCUBE_THREADS", "3")
    par = curve(q, 0.95, 1.05, 3, tol=1e-6)
    assert [(p.R, round(p.lambda_star, 8)) for p in seq] == \
           [(p.R, round(p.lambda_star, 8)) for p in par]


def test_sphere_curve_smoke():
    q = ThresholdQuery("joint-depol", StateSpaceSpec.sphere(1.0),
                       "quantum-separable", "sphere-grid", grid_n=12)
    pts = curve(q, 1.0, 1.2, 2, tol=1e-5)
    assert len(pts) == 2
    assert pts[0].lambda_star > pts[1].lambda_star  # less gate noise needed at R > 1
    assert pts[0].achieved_by == "PPT"
