"""The CSIGN gate as a signed permutation of Pauli coefficients, single-qubit
Clifford actions on Bloch vectors, and the coefficient-scaling noise models.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import BlochOp, PauliCoeffs2Q, product
from .spaces import rescale2

__all__ = [
    "CSIGN_MAP",
    "CLIFFORD_ACTIONS",
    "NoiseModel",
    "joint_depol",
    "local_depol",
    "local_dephase",
    "error_per_gate",
    "csign",
    "apply_noise",
    "noise_scale_matrix",
    "clifford1",
    "pauli_flip",
    "pipeline",
]

# CSIGN conjugation on Pauli products, transcribed entry by entry from the
# gate's action on a product input: (i, j) -> (k, l, sign) means the input
# coefficient A_ij lands on output coefficient A'_kl with the given sign.
CSIGN_MAP = {
    (0, 0): (0, 0, 1),
    (0, 1): (3, 1, 1),
    (0, 2): (3, 2, 1),
    (0, 3): (0, 3, 1),
    (1, 0): (1, 3, 1),
    (1, 1): (2, 2, 1),
    (1, 2): (2, 1, -1),
    (1, 3): (1, 0, 1),
    (2, 0): (2, 3, 1),
    (2, 1): (1, 2, -1),
    (2, 2): (1, 1, 1),
    (2, 3): (2, 0, 1),
    (3, 0): (3, 0, 1),
    (3, 1): (0, 1, 1),
    (3, 2): (0, 2, 1),
    (3, 3): (3, 3, 1),
}

# Bloch-vector actions (b, c, d) -> ... of the single-qubit Cliffords used
# in the vertex-transitivity argument.
CLIFFORD_ACTIONS = {
    "X": lambda b: np.array([b[0], -b[1], -b[2]]),
    "Y": lambda b: np.array([-b[0], b[1], -b[2]]),
    "Z": lambda b: np.array([-b[0], -b[1], b[2]]),
    "S": lambda b: np.array([-b[1], b[0], b[2]]),
    "H": lambda b: np.array([b[2], -b[1], b[0]]),
}


@dataclass(frozen=True)
class NoiseModel:
    """A noise channel attached to the CSIGN gate.

    kind is one of "joint-depol", "local-depol", "local-dephase",
    "error-per-gate"; strength is the probability parameter.  The
    error-per-gate variant carries an adversarial CP map and is handled by
    the bespoke constructions, not by apply_noise.
    """

    kind: str
    strength: float

    def __post_init__(self):
        if self.kind not in ("joint-depol", "local-depol", "local-dephase", "error-per-gate"):
            raise ValueError(f"unknown noise kind {self.kind!r}")
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError("noise strength must lie in [0, 1]")

    def with_strength(self, strength: float) -> "NoiseModel":
        return NoiseModel(self.kind, strength)


def joint_depol(lam: float) -> NoiseModel:
    return NoiseModel("joint-depol", lam)


def local_depol(p: float) -> NoiseModel:
    return NoiseModel("local-depol", p)


def local_dephase(p: float) -> NoiseModel:
    return NoiseModel("local-dephase", p)


def error_per_gate(lam: float) -> NoiseModel:
    return NoiseModel("error-per-gate", lam)


def csign(A: PauliCoeffs2Q) -> PauliCoeffs2Q:
    """Apply the CSIGN gate to a coefficient matrix (linear, involutive)."""
    src = A.coeffs
    out = np.empty((4, 4))
    for (i, j), (k, l, s) in CSIGN_MAP.items():
        out[k, l] = s * src[i, j]
    return PauliCoeffs2Q(out)


def noise_scale_matrix(n: NoiseModel) -> np.ndarray:
    """Entrywise factors the noise applies to the 4x4 coefficient matrix."""
    if n.kind == "joint-depol":
        m = np.full((4, 4), 1.0 - n.strength)
        m[0, 0] = 1.0
        return m
    if n.kind == "local-depol":
        f = np.array([1.0, 1 - n.strength, 1 - n.strength, 1 - n.strength])
        return np.outer(f, f)
    if n.kind == "local-dephase":
        t = 1.0 - 2.0 * n.strength
        f = np.array([1.0, t, t, 1.0])
        return np.outer(f, f)
    raise ValueError(f"{n.kind} is not a coefficient-scaling noise model")


def apply_noise(A: PauliCoeffs2Q, n: NoiseModel) -> PauliCoeffs2Q:
    """Coefficient-wise action of a scaling noise model (trace preserved)."""
    return PauliCoeffs2Q(A.coeffs * noise_scale_matrix(n))


def clifford1(a: BlochOp, gate: str) -> BlochOp:
    """Signed permutation of the Bloch components under a 1-qubit Clifford."""
    try:
        action = CLIFFORD_ACTIONS[gate]
    except KeyError:
        raise ValueError(f"unknown Clifford gate {gate!r}") from None
    return BlochOp(action(a.bloch), a.trace_coeff)


def pauli_flip(A: PauliCoeffs2Q, side: int, axis: int) -> PauliCoeffs2Q:
    """Conjugation by a Pauli on one side: flips the sign of the coefficient
    rows (side 0) or columns (side 1) whose index is neither 0 nor `axis`.
    """
    if side not in (0, 1) or axis not in (1, 2, 3):
        raise ValueError("side must be 0/1 and axis 1/2/3")
    f = np.array([1.0 if i in (0, axis) else -1.0 for i in range(4)])
    c = A.coeffs * (f[:, None] if side == 0 else f[None, :])
    return PauliCoeffs2Q(c)


def pipeline(u: BlochOp, v: BlochOp, R: float, n: NoiseModel) -> PauliCoeffs2Q:
    """Rescale by R, apply CSIGN, apply noise, undo the rescaling."""
    return rescale2(apply_noise(csign(rescale2(product(u, v), R)), n), 1.0 / R)
