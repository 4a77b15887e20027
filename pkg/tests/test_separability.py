import math
from fractions import Fraction

import numpy as np
import pytest

from gencube import lp
from gencube.gates import csign, joint_depol, local_dephase, local_depol, apply_noise, pipeline
from gencube.pauli import BlochOp, PauliCoeffs2Q, from_dense, product
from gencube.separability import (
    LhvCertificate,
    appendix1_certificates,
    certificate_from_text,
    certificate_to_text,
    cube_separable,
    positive_for_pauli,
    quantum_separable_2q,
    verify_certificate,
    vertex_pair_index,
)
from gencube.spaces import cube_vertices

BELL = PauliCoeffs2Q(np.diag([1.0, 1.0, -1.0, 1.0]))
ALLONES = BlochOp(np.ones(3))


def test_bell_state_is_cube_separable():
    res = cube_separable(BELL)
    assert res.feasible
    assert verify_certificate(res.certificate, BELL)


def test_vertex_product_has_unit_weight_certificate():
    u = BlochOp(np.array([1.0, -1.0, 1.0]))
    v = BlochOp(np.array([-1.0, -1.0, 1.0]))
    A = product(u, v)
    res = cube_separable(A)
    assert res.feasible
    # some optimal basic solution: a single unit weight reproduces A
    w = np.zeros(64)
    w[vertex_pair_index(u.bloch, v.bloch)] = 1.0
    assert verify_certificate(LhvCertificate(w, 1e-12), A, tol=1e-12)


def test_noiseless_csign_output_infeasible_with_functional():
    A = csign(product(ALLONES, ALLONES))
    assert not positive_for_pauli(A)
    res = cube_separable(A)
    assert not res.feasible
    f = res.functional
    assert f is not None
    V = lp.vertex_product_matrix()
    vals = V.T @ f.dual.ravel()
    assert np.min(vals) >= -1e-9
    assert f.dual.ravel() @ A.coeffs.ravel() < 0
    assert f.violation > 0


def test_cube_separable_validates_input():
    bad = PauliCoeffs2Q(np.diag([2.0, 0, 0, 0]))
    with pytest.raises(ValueError):
        cube_separable(bad)


def test_positive_for_pauli():
    mixed = np.zeros((4, 4))
    mixed[0, 0] = 1.0
    assert positive_for_pauli(PauliCoeffs2Q(mixed))
    # rescaled dephased output fails for R != 1, p < 1/2
    out = pipeline(ALLONES, ALLONES, 1.3, local_dephase(0.2))
    assert not positive_for_pauli(out)
    out_flat = pipeline(ALLONES, ALLONES, 1.0, local_dephase(1 - 1 / math.sqrt(2)))
    assert positive_for_pauli(out_flat)


def test_quantum_separable_2q():
    assert not quantum_separable_2q(BELL)
    r = 1 / math.sqrt(3.0)
    damped = PauliCoeffs2Q(np.diag([1.0, r * r, -r * r, r * r]))
    assert quantum_separable_2q(damped)  # exactly on the PPT boundary
    u = BlochOp(np.array([0.3, -0.2, 0.4]))
    v = BlochOp(np.array([0.0, 0.5, -0.5]))
    assert quantum_separable_2q(product(u, v))


def test_quantum_separable_implies_cube_separable():
    rng = np.random.default_rng(41)
    for _ in range(200):
        terms = rng.integers(1, 5)
        acc = np.zeros((4, 4))
        ws = rng.dirichlet(np.ones(terms))
        for w in ws:
            a = rng.standard_normal(3)
            a = a / np.linalg.norm(a)
            b = rng.standard_normal(3)
            b = b / np.linalg.norm(b)
            acc += w * product(BlochOp(a), BlochOp(b)).coeffs
        A = PauliCoeffs2Q(acc)
        assert quantum_separable_2q(A)
        assert cube_separable(A).feasible


def test_separable_implies_pauli_positive():
    rng = np.random.default_rng(42)
    verts = cube_vertices()
    for _ in range(50):
        w = rng.dirichlet(np.ones(6))
        idx = rng.integers(0, 8, (6, 2))
        acc = sum(wk * product(verts[i], verts[j]).coeffs
                  for wk, (i, j) in zip(w, idx))
        A = PauliCoeffs2Q(acc)
        res = cube_separable(A)
        assert res.feasible
        assert positive_for_pauli(A)


def test_verify_certificate_rejects_bad_weights():
    res = cube_separable(BELL)
    w = np.array(res.certificate.weights)
    w[0] += 0.1
    assert not verify_certificate(LhvCertificate(w, 1e-9), BELL)


def test_certificate_serialization_round_trip():
    res = cube_separable(BELL)
    text = certificate_to_text(res.certificate)
    back = certificate_from_text(text)
    assert back.tolerance_used == res.certificate.tolerance_used
    assert np.array_equal(back.weights, res.certificate.weights)
    assert text.startswith("# lhv certificate tolerance=")
    assert len([l for l in text.splitlines() if l and not l.startswith("#")]) == 64


def test_positive_for_pauli_rescaled_frame():
    # membership in the R frame equals plain positivity after unrescaling
    rng = np.random.default_rng(44)
    from gencube.spaces import rescale2

    for _ in range(30):
        A = PauliCoeffs2Q(np.r_[1.0, rng.uniform(-1, 1, 15)].reshape(4, 4))
        for R in (0.7, 1.4):
            assert positive_for_pauli(rescale2(A, R), R) == positive_for_pauli(A, 1.0)


def test_cube_separable_with_rescaled_vertices():
    R = 0.8
    u = BlochOp(np.array([R, R, -R]))
    v = BlochOp(np.array([-R, R, R]))
    A = product(u, v)
    assert cube_separable(A, R=R).feasible
    # the unscaled corner product is outside the shrunken polytope
    big = product(ALLONES, ALLONES)
    assert not cube_separable(big, R=R).feasible


def test_exact_oracle_agreement_small():
    rng = np.random.default_rng(43)
    import random

    random.seed(43)
    V = lp.vertex_product_matrix()
    cols = lp.exact_vertex_columns()
    agree = 0
    for _ in range(40):
        nterm = random.randint(1, 6)
        idx = random.sample(range(64), nterm)
        raw = [Fraction(random.randint(1, 100)) for _ in range(nterm)]
        tot = sum(raw)
        b = [sum(r / tot * cols[j][i] for r, j in zip(raw, idx)) for i in range(16)]
        if random.random() < 0.6:
            mag = Fraction(random.choice([1, 5, 20]), 100)
            for i in range(1, 16):
                b[i] += mag * Fraction(random.randint(-1000, 1000), 1000)
        bfl = np.array([float(x) for x in b])
        res_float = cube_separable(PauliCoeffs2Q(bfl.reshape(4, 4)))
        status, cert = lp.solve_membership_exact(b)
        assert res_float.feasible == (status == "feasible")
        agree += 1
        if status == "feasible":
            resid = [sum(cols[j][i] * cert[j] for j in range(64)) - b[i] for i in range(16)]
            assert all(x == 0 for x in resid)
            assert all(x >= 0 for x in cert)
            assert sum(cert) == 1
        else:
            y = cert
            assert min(sum(y[i] * cols[j][i] for i in range(16)) for j in range(64)) >= 0
            assert sum(y[i] * b[i] for i in range(16)) < 0
    assert agree == 40


def test_appendix1_all_verify():
    items = appendix1_certificates()
    assert len(items) == 8  # item 5 contributes two sub-identities
    for item in items:
        assert item.valid, item.name
        assert verify_certificate(item.certificate, item.target, tol=1e-12), item.name


def test_appendix1_item1_matches_display():
    items = appendix1_certificates()
    target = items[0].target.coeffs
    expected = np.zeros((4, 4))
    expected[0, 0] = 1.0
    expected[1:, 1:] = 1.0
    assert np.array_equal(target, expected)


def test_appendix1_item4_is_joint_depol_output():
    items = appendix1_certificates()
    item4 = items[3]
    expected = apply_noise(csign(product(ALLONES, ALLONES)), joint_depol(2 / 3)).coeffs
    assert np.max(np.abs(item4.target.coeffs - expected)) < 1e-15
    assert abs(item4.target.coeffs[0, 1] - 1 / 3) < 1e-15
    assert abs(item4.target.coeffs[1, 2] + 1 / 3) < 1e-15


def test_appendix1_validity_boundaries():
    p6 = 1 - 1 / math.sqrt(2.0)
    p7 = 2 - math.sqrt(2.0)
    # exactly at threshold: leading weight vanishes, still valid
    at = appendix1_certificates(dephase_p=p6, depol_p=p7)
    assert at[6].valid and at[7].valid
    head6 = 1 - 2 * (1 - 2 * p6) - (1 - 2 * p6) ** 2
    assert abs(head6) < 1e-12
    # inside the valid region
    inside = appendix1_certificates(dephase_p=p6 + 1e-3, depol_p=p7 + 1e-3)
    for item in inside[6:]:
        assert item.valid
        assert verify_certificate(item.certificate, item.target, tol=1e-12)
    # just outside: a weight goes negative and verification fails
    outside = appendix1_certificates(dephase_p=p6 - 1e-3, depol_p=p7 - 1e-3)
    for item in outside[6:]:
        assert not item.valid
        assert item.validity_reason is not None
        assert not verify_certificate(item.certificate, item.target, tol=1e-12)


def test_appendix1_certs6_7_track_gate_outputs_over_range():
    for p in (0.31, 0.35, 0.45):
        item = appendix1_certificates(dephase_p=p)[6]
        expected = apply_noise(csign(product(ALLONES, ALLONES)), local_dephase(p)).coeffs
        assert np.max(np.abs(item.target.coeffs - expected)) < 1e-15
    for p in (0.6, 0.7, 0.9):
        item = appendix1_certificates(depol_p=p)[7]
        expected = apply_noise(csign(product(ALLONES, ALLONES)), local_depol(p)).coeffs
        assert np.max(np.abs(item.target.coeffs - expected)) < 1e-15
