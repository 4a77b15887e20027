"""Pauli-product-basis algebra for one- and two-qubit operators.

Operators are tracked by their real expansion coefficients in the Pauli
basis (sigma_0, sigma_1, sigma_2, sigma_3) = (I, X, Y, Z):

    single qubit:  rho = (1/2) (a I + b X + c Y + d Z)
    two qubits:    rho = (1/4) sum_ij A_ij  sigma_i (x) sigma_j

Normalized operators carry a = 1 (resp. A_00 = 1); the global 1/2 and 1/4
live only in the dense conversions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "AXES",
    "PAULIS",
    "BlochOp",
    "PauliCoeffs2Q",
    "DenseHermitian",
    "product",
    "to_dense",
    "from_dense",
    "bloch_to_dense",
    "bloch_from_dense",
    "born_probability",
    "single_born",
    "partial_transpose",
    "eigenvalues_hermitian",
]

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

AXES = {"X": 1, "Y": 2, "Z": 3}

# PP2[4*i+j] = sigma_i (x) sigma_j, used by the dense conversions
_PP2 = np.array([np.kron(PAULIS[i], PAULIS[j]) for i in range(4) for j in range(4)])

HERMITICITY_TOL = 1e-12


def axis_index(axis) -> int:
    """Map 'X'/'Y'/'Z' (or 1/2/3) to the Pauli index 1/2/3."""
    if isinstance(axis, str):
        try:
            return AXES[axis.upper()]
        except KeyError:
            raise ValueError(f"unknown axis {axis!r}") from None
    if axis in (1, 2, 3):
        return int(axis)
    raise ValueError(f"unknown axis {axis!r}")


def _readonly(arr: np.ndarray) -> np.ndarray:
    out = np.array(arr)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class BlochOp:
    """Single-particle operator: Bloch 3-vector plus identity coefficient."""

    bloch: np.ndarray
    trace_coeff: float = 1.0

    def __post_init__(self):
        b = np.asarray(self.bloch, dtype=float)
        if b.shape != (3,):
            raise ValueError("bloch must be a 3-vector")
        object.__setattr__(self, "bloch", _readonly(b))
        object.__setattr__(self, "trace_coeff", float(self.trace_coeff))

    @property
    def is_normalized(self) -> bool:
        return abs(self.trace_coeff - 1.0) < 1e-12


@dataclass(frozen=True)
class PauliCoeffs2Q:
    """4x4 real coefficient matrix A_ij of a two-qubit operator.

    Row index runs over the first particle's Pauli, column over the second,
    in the order (I, X, Y, Z).
    """

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float)
        if c.shape != (4, 4):
            raise ValueError("coeffs must be 4x4")
        object.__setattr__(self, "coeffs", _readonly(c))

    @property
    def is_normalized(self) -> bool:
        return abs(self.coeffs[0, 0] - 1.0) < 1e-12

    def __array__(self, dtype=None, copy=None):
        return np.array(self.coeffs, dtype=dtype)


@dataclass(frozen=True)
class DenseHermitian:
    """Dense complex Hermitian matrix with a validated symmetry invariant."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("entries must be square")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("entries are not Hermitian to 1e-12")
        object.__setattr__(self, "entries", _readonly(m))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)


def product(a: BlochOp, b: BlochOp) -> PauliCoeffs2Q:
    """Coefficient matrix of the product operator a (x) b.

    A_00 = 1, the first column is a's Bloch vector, the first row is b's,
    and the interior entries are the row/column products.
    """
    if not (a.is_normalized and b.is_normalized):
        raise ValueError("product expects normalized inputs (trace_coeff = 1)")
    va = np.concatenate(([1.0], a.bloch))
    vb = np.concatenate(([1.0], b.bloch))
    return PauliCoeffs2Q(np.outer(va, vb))


def to_dense(A: PauliCoeffs2Q) -> DenseHermitian:
    """Dense 4x4 operator (1/4) sum_ij A_ij sigma_i (x) sigma_j."""
    rho = np.tensordot(A.coeffs.ravel(), _PP2, axes=(0, 0)) / 4.0
    return DenseHermitian(rho)


def from_dense(rho) -> PauliCoeffs2Q:
    """Coefficient matrix A_ij = tr(rho sigma_i (x) sigma_j)."""
    m = np.asarray(rho.entries if isinstance(rho, DenseHermitian) else rho, dtype=complex)
    if m.shape != (4, 4):
        raise ValueError("from_dense expects a 4x4 matrix")
    coeffs = np.real(np.einsum("kab,ba->k", _PP2, m)).reshape(4, 4)
    return PauliCoeffs2Q(coeffs)


def bloch_to_dense(a: BlochOp) -> DenseHermitian:
    """Dense 2x2 operator (1/2)(a I + b X + c Y + d Z)."""
    m = a.trace_coeff * PAULIS[0]
    for k in range(3):
        m = m + a.bloch[k] * PAULIS[k + 1]
    return DenseHermitian(m / 2.0)


def bloch_from_dense(rho) -> BlochOp:
    """Inverse of bloch_to_dense."""
    m = np.asarray(rho.entries if isinstance(rho, DenseHermitian) else rho, dtype=complex)
    if m.shape != (2, 2):
        raise ValueError("expected a 2x2 matrix")
    tc = np.real(np.trace(m))
    b = np.array([np.real(np.trace(m @ PAULIS[k])) for k in (1, 2, 3)])
    return BlochOp(b, tc)


def born_probability(A: PauliCoeffs2Q, p_axis, s: int, q_axis, t: int) -> float:
    """Probability of outcomes (s, t) when measuring Pauli p (x) q.

    Returns (1/4)(A_00 + s A_p0 + t A_0q + s t A_pq); may be negative for
    operators outside the valid state set (callers check).
    """
    p = axis_index(p_axis)
    q = axis_index(q_axis)
    if s not in (1, -1) or t not in (1, -1):
        raise ValueError("outcomes must be +1 or -1")
    c = A.coeffs
    return 0.25 * (c[0, 0] + s * c[p, 0] + t * c[0, q] + s * t * c[p, q])


def single_born(a: BlochOp, axis, outcome: int) -> float:
    """Probability of `outcome` when measuring the given Pauli on one qubit."""
    k = axis_index(axis)
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    return (a.trace_coeff + outcome * a.bloch[k - 1]) / 2.0


def partial_transpose(A: PauliCoeffs2Q) -> PauliCoeffs2Q:
    """Partial transpose on the second particle: negate the sigma_Y column."""
    c = np.array(A.coeffs)
    c[:, 2] *= -1.0
    return PauliCoeffs2Q(c)


def eigenvalues_hermitian(rho, tol: float = 1e-10) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix.

    Raises on non-Hermitian input (tolerance 1e-10 on the deviation).
    """
    m = np.asarray(rho.entries if isinstance(rho, DenseHermitian) else rho, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ValueError("matrix is not Hermitian")
    return np.linalg.eigvalsh(m)
