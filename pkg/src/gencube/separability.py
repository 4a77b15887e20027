"""Separability deciders and LHV certificates.

Cube-separability of a two-particle coefficient matrix is membership in the
convex hull of the 64 products of cube vertices, decided by LP with primal
(convex weights) or dual (separating functional) certificates.  Quantum
separability of two qubits is positivity plus PPT.  The module also carries
the appendix catalog of hand-built LHV decompositions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import lp
from .gates import NoiseModel, apply_noise, csign, joint_depol, local_depol, local_dephase
from .pauli import (
    BlochOp,
    PauliCoeffs2Q,
    born_probability,
    eigenvalues_hermitian,
    partial_transpose,
    product,
    to_dense,
)
from .spaces import cube_vertices, rescale2

__all__ = [
    "LhvCertificate",
    "BellFunctional",
    "SeparabilityResult",
    "cube_separable",
    "positive_for_pauli",
    "quantum_separable_2q",
    "verify_certificate",
    "certificate_to_text",
    "certificate_from_text",
    "Appendix1Item",
    "appendix1_certificates",
    "vertex_pair_index",
    "VERTEX_PAIRS",
]

POSITIVITY_TOL = 1e-9

_VERTICES = cube_vertices()
VERTEX_PAIRS = tuple((u, v) for u in _VERTICES for v in _VERTICES)


def vertex_pair_index(u_signs, v_signs) -> int:
    """Index of a vertex pair in the canonical 64-column order.

    Each vertex maps to 3 bits, one per axis in (x, y, z) order, with
    bit 0 for +1 and bit 1 for -1.
    """
    iu = sum((1 << (2 - k)) for k in range(3) if u_signs[k] < 0)
    iv = sum((1 << (2 - k)) for k in range(3) if v_signs[k] < 0)
    return 8 * iu + iv


@dataclass(frozen=True)
class LhvCertificate:
    """Primal certificate: convex weights over the 64 vertex products."""

    weights: np.ndarray
    tolerance_used: float

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (64,):
            raise ValueError("weights must have length 64")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class BellFunctional:
    """Dual certificate: B with B.V >= 0 on all vertex products, B.A < 0."""

    dual: np.ndarray  # 4x4
    violation: float

    def __post_init__(self):
        d = np.asarray(self.dual, dtype=float).reshape(4, 4)
        object.__setattr__(self, "dual", d)


@dataclass(frozen=True)
class SeparabilityResult:
    feasible: bool
    certificate: LhvCertificate | None = None
    functional: BellFunctional | None = None
    method: str = "lp-float"


def cube_separable(A: PauliCoeffs2Q, R: float = 1.0,
                   tol: float = lp.FEASIBILITY_TOL) -> SeparabilityResult:
    """Decide membership of A in the R-scaled cube-product polytope.

    The float LP route answers clear instances; verdicts within the
    degeneracy margin are re-decided by the exact rational simplex on the
    rationalized instance.
    """
    if not A.is_normalized:
        raise ValueError("cube_separable expects A_00 = 1")
    if not R > 0:
        raise ValueError("R must be positive")
    b = A.coeffs.ravel()
    out = lp.solve_membership_float(b, R=R, tol=tol)
    if out.status == "feasible":
        return SeparabilityResult(
            True, certificate=LhvCertificate(out.weights, tol), method="lp-float"
        )
    if out.status == "infeasible":
        return SeparabilityResult(
            False,
            functional=BellFunctional(out.dual.reshape(4, 4), out.violation),
            method="lp-float",
        )
    # near-degenerate: certified exact fallback on the rationalized instance
    bf = [lp.rationalize(x) for x in b]
    Rf = lp.rationalize(R)
    status, cert = lp.solve_membership_exact(bf, Rf)
    if status == "feasible":
        V = lp.vertex_product_matrix(R)
        w, resid = lp.polish_weights(V, b, np.array([float(x) for x in cert]))
        return SeparabilityResult(
            True, certificate=LhvCertificate(w, max(tol, resid)), method="lp-exact"
        )
    y = np.array([float(x) for x in cert])
    scale = np.max(np.abs(y))
    if scale > 0:
        y = y / scale
    return SeparabilityResult(
        False,
        functional=BellFunctional(y.reshape(4, 4), float(-(y @ b))),
        method="lp-exact",
    )


def positive_for_pauli(A: PauliCoeffs2Q, R: float = 1.0,
                       tol: float = POSITIVITY_TOL) -> bool:
    """All 36 Pauli-pair Born probabilities nonnegative, in the R frame.

    The operator is brought back to the unit frame (Bloch parts divided by
    R, two-body parts by R^2) and its plain Born values are checked.
    """
    if not A.is_normalized:
        raise ValueError("positive_for_pauli expects A_00 = 1")
    base = rescale2(A, 1.0 / R) if R != 1.0 else A
    for p in (1, 2, 3):
        for q in (1, 2, 3):
            for s in (1, -1):
                for t in (1, -1):
                    if born_probability(base, p, s, q, t) < -tol:
                        return False
    return True


def quantum_separable_2q(A: PauliCoeffs2Q, tol: float = POSITIVITY_TOL) -> bool:
    """Two-qubit quantum separability: positive and PPT."""
    if not A.is_normalized:
        raise ValueError("quantum_separable_2q expects A_00 = 1")
    if eigenvalues_hermitian(to_dense(A))[0] < -tol:
        return False
    return eigenvalues_hermitian(to_dense(partial_transpose(A)))[0] >= -tol


def verify_certificate(cert: LhvCertificate, A: PauliCoeffs2Q, R: float = 1.0,
                       tol: float | None = None) -> bool:
    """Independent recheck of a primal certificate.

    Recomputes the convex combination directly from the vertex products
    (no LP involved) and demands nonnegative weights summing to one.
    """
    tol = cert.tolerance_used if tol is None else tol
    w = cert.weights
    if np.min(w) < -1e-12:
        return False
    if abs(float(np.sum(w)) - 1.0) > 1e-9:
        return False
    recon = lp.vertex_product_matrix(R) @ w
    return bool(np.max(np.abs(recon - A.coeffs.ravel())) <= tol)


def certificate_to_text(cert: LhvCertificate) -> str:
    """Line format: header, then 64 lines "u_bits v_bits weight".

    Bits follow (x, y, z) order with 0 for +1 and 1 for -1.
    """
    lines = [
        f"# lhv certificate tolerance={cert.tolerance_used!r}",
        "# columns: u_bits(x,y,z sign bits, 0=+1) v_bits weight",
    ]
    for k in range(64):
        lines.append(f"{k // 8:03b} {k % 8:03b} {float(cert.weights[k])!r}")
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> LhvCertificate:
    tol = None
    weights = np.zeros(64)
    seen = np.zeros(64, dtype=bool)
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if "tolerance=" in line:
                tol = float(line.split("tolerance=")[1].split()[0])
            continue
        ub, vb, wstr = line.split()
        k = 8 * int(ub, 2) + int(vb, 2)
        weights[k] = float(wstr)
        seen[k] = True
    if tol is None or not seen.all():
        raise ValueError("malformed certificate text")
    return LhvCertificate(weights, tol)


# ---------------------------------------------------------------------------
# Appendix catalog of hand-built LHV decompositions
# ---------------------------------------------------------------------------


def _weights(*pairs) -> np.ndarray:
    """Build a 64-weight vector from (u_signs, v_signs, weight) triples."""
    w = np.zeros(64)
    for u, v, wt in pairs:
        w[vertex_pair_index(u, v)] += wt
    return w


def _uniform(pair_list) -> np.ndarray:
    return _weights(*[(u, v, 1.0 / len(pair_list)) for u, v in pair_list])


# item 1: corners-of-ones target
_W_ITEM1 = _weights(((1, 1, 1), (1, 1, 1), 0.5), ((-1, -1, -1), (-1, -1, -1), 0.5))

# item 2: XX=YY=+1, XY=YX=-1 block with free z signs
_W_ITEM2 = _uniform(
    [((1, -1, r), (1, -1, q)) for r in (1, -1) for q in (1, -1)]
    + [((-1, 1, t), (-1, 1, s)) for t in (1, -1) for s in (1, -1)]
)

# item 2 with the free z signs pinned to +1 (used inside item 6)
_W_ITEM2_PINNED = _uniform([((1, -1, 1), (1, -1, 1)), ((-1, 1, 1), (-1, 1, 1))])

# item 3: XY=YX=-1 only
_W_ITEM3 = _uniform(
    [((-q, -p, s), (p, q, r)) for p in (1, -1) for q in (1, -1) for r in (1, -1) for s in (1, -1)]
)

# item 4: joint-depolarising LHV = 1/3 all-ones product + 2/3 item 3
_W_ITEM4 = _weights(((1, 1, 1), (1, 1, 1), 1.0 / 3.0)) + (2.0 / 3.0) * _W_ITEM3

# item 5, first display: rows I and Z all ones
_W_ITEM5A = _weights(((1, 1, 1), (1, 1, 1), 0.5), ((-1, -1, 1), (1, 1, 1), 0.5))
# item 5, second display: columns I and Z all ones
_W_ITEM5B = _weights(((1, 1, 1), (1, 1, 1), 0.5), ((1, 1, 1), (-1, -1, 1), 0.5))

# corner block of item 6: I/Z-plane products with z signs pinned up
_W_CORNERS = _uniform(
    [((x1, y1, 1), (x2, y2, 1)) for x1 in (1, -1) for y1 in (1, -1)
     for x2 in (1, -1) for y2 in (1, -1)]
)

# maximally mixed: one antipodal four-cycle suffices
_W_MIXED = _uniform(
    [((1, 1, 1), (1, 1, 1)), ((-1, -1, -1), (1, 1, 1)),
     ((1, 1, 1), (-1, -1, -1)), ((-1, -1, -1), (-1, -1, -1))]
)

# one-sided all-ones rows/columns used in item 7
_W_ROW_ONES = _weights(((1, 1, 1), (1, 1, 1), 0.5), ((-1, -1, -1), (1, 1, 1), 0.5))
_W_COL_ONES = _weights(((1, 1, 1), (1, 1, 1), 0.5), ((1, 1, 1), (-1, -1, -1), 0.5))


def _target_from_weights(w: np.ndarray) -> PauliCoeffs2Q:
    return PauliCoeffs2Q((lp.vertex_product_matrix() @ w).reshape(4, 4))


def _noisy_allones_output(noise: NoiseModel) -> PauliCoeffs2Q:
    allones = BlochOp(np.ones(3))
    return apply_noise(csign(product(allones, allones)), noise)


@dataclass(frozen=True)
class Appendix1Item:
    name: str
    target: PauliCoeffs2Q
    certificate: LhvCertificate
    valid: bool
    validity_reason: str | None = None


def appendix1_certificates(dephase_p: float | None = None,
                           depol_p: float | None = None) -> list[Appendix1Item]:
    """The seven appendix LHV decompositions, expanded to 64-vertex weights.

    Items 6 and 7 are parameterized by the dephasing / local-depolarizing
    probability; outside their validity inequality the decomposition
    acquires a negative weight and is returned flagged invalid rather than
    raising.  Defaults sit exactly at the two thresholds.
    """
    if dephase_p is None:
        dephase_p = 1.0 - 1.0 / math.sqrt(2.0)
    if depol_p is None:
        depol_p = 2.0 - math.sqrt(2.0)

    items: list[Appendix1Item] = []

    def fixed(name, w):
        items.append(
            Appendix1Item(name, _target_from_weights(w), LhvCertificate(w, 1e-12), True)
        )

    fixed("1: interior all-ones block", _W_ITEM1)
    fixed("2: XX=YY=1, XY=YX=-1 block", _W_ITEM2)
    fixed("3: XY=YX=-1 block", _W_ITEM3)

    items.append(
        Appendix1Item(
            "4: joint-depolarized CSIGN output at lambda=2/3",
            _noisy_allones_output(joint_depol(2.0 / 3.0)),
            LhvCertificate(_W_ITEM4, 1e-12),
            True,
        )
    )

    fixed("5a: I/Z rows of ones", _W_ITEM5A)
    fixed("5b: I/Z columns of ones", _W_ITEM5B)

    # item 6: locally dephased CSIGN output
    t = 1.0 - 2.0 * dephase_p
    head6 = 1.0 - 2.0 * t - t * t
    w6 = head6 * _W_CORNERS + t * (_W_ITEM5A + _W_ITEM5B) + t * t * _W_ITEM2_PINNED
    valid6 = head6 >= -1e-12 and 0.0 <= dephase_p <= 0.5
    items.append(
        Appendix1Item(
            f"6: locally dephased CSIGN output at p={dephase_p:.6f}",
            _noisy_allones_output(local_dephase(dephase_p)),
            LhvCertificate(w6, 1e-12),
            valid6,
            None if valid6 else f"requires 1-2(1-2p)-(1-2p)^2 >= 0; got {head6:.3e}",
        )
    )

    # item 7: locally depolarized CSIGN output
    u = 1.0 - depol_p
    head7 = 1.0 - 2.0 * u - u * u
    w7 = head7 * _W_MIXED + (u - u * u) * (_W_ROW_ONES + _W_COL_ONES) + 3.0 * u * u * _W_ITEM4
    valid7 = head7 >= -1e-12
    items.append(
        Appendix1Item(
            f"7: locally depolarized CSIGN output at p={depol_p:.6f}",
            _noisy_allones_output(local_depol(depol_p)),
            LhvCertificate(w7, 1e-12),
            valid7,
            None if valid7 else f"requires 1-2(1-p)-(1-p)^2 >= 0; got {head7:.3e}",
        )
    )
    return items
