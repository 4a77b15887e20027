"""Single-particle state spaces: Bloch cubes, rescaled spheres, and the
operator-compatibility machinery for sets of POVMs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .pauli import BlochOp, DenseHermitian, PauliCoeffs2Q

__all__ = [
    "StateSpaceSpec",
    "PovmSet",
    "CompatibilityResult",
    "cube_vertices",
    "contains",
    "rescale",
    "rescale2",
    "noise_to_R",
    "operator_compatible",
    "qubit_xyz_povms",
    "projective_qubit_povm",
]

MEMBERSHIP_TOL = 1e-12
POVM_TOL = 1e-10
SOLVE_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class StateSpaceSpec:
    """Which single-particle state space is in force: Cube(R) or Sphere(R)."""

    kind: str  # "cube" | "sphere"
    R: float = 1.0

    def __post_init__(self):
        if self.kind not in ("cube", "sphere"):
            raise ValueError(f"unknown state space kind {self.kind!r}")
        if not self.R > 0:
            raise ValueError("rescaling factor R must be positive")

    @classmethod
    def cube(cls, R: float = 1.0) -> "StateSpaceSpec":
        return cls("cube", R)

    @classmethod
    def sphere(cls, R: float = 1.0) -> "StateSpaceSpec":
        return cls("sphere", R)


def cube_vertices() -> tuple[BlochOp, ...]:
    """The eight cube corners, lexicographic with +1 before -1.

    Vertex k has sign pattern given by the binary digits of k (0 -> +1).
    """
    return tuple(
        BlochOp(np.array(s, dtype=float))
        for s in itertools.product((1, -1), repeat=3)
    )


def contains(space: StateSpaceSpec, a: BlochOp) -> bool:
    """Membership of a normalized Bloch operator in the given state space."""
    if not a.is_normalized:
        raise ValueError("membership is defined for normalized operators")
    if space.kind == "cube":
        return bool(np.max(np.abs(a.bloch)) <= space.R + MEMBERSHIP_TOL)
    return bool(np.linalg.norm(a.bloch) <= space.R + MEMBERSHIP_TOL)


def rescale(a: BlochOp, R: float) -> BlochOp:
    """Multiply the Bloch (traceless) part by R; invertible for R > 0."""
    if not R > 0:
        raise ValueError("rescaling factor R must be positive")
    return BlochOp(a.bloch * R, a.trace_coeff)


def rescale2(A: PauliCoeffs2Q, R: float) -> PauliCoeffs2Q:
    """Two-sided rescaling: one-body coefficients scale by R, two-body by R^2."""
    if not R > 0:
        raise ValueError("rescaling factor R must be positive")
    f = np.array([1.0, R, R, R])
    return PauliCoeffs2Q(A.coeffs * np.outer(f, f))


def noise_to_R(kind: str, p: float) -> float:
    """Rescaling factor equivalent to depolarizing noise at rate p.

    Depolarized measurements enlarge the admissible set: R = 1/(1-p) >= 1.
    Depolarized preparations shrink it: R = 1-p <= 1.
    """
    if not 0 <= p < 1:
        raise ValueError("depolarizing rate must lie in [0, 1)")
    if kind == "measurement":
        return 1.0 / (1.0 - p)
    if kind == "preparation":
        return 1.0 - p
    raise ValueError(f"unknown noise placement {kind!r}")


@dataclass(frozen=True)
class PovmSet:
    """A list of POVMs on a d-dimensional system.

    Each POVM is a tuple of positive operators summing to the identity
    (both checked to 1e-10).
    """

    povms: tuple
    dim: int

    def __post_init__(self):
        povms = tuple(tuple(np.asarray(m, dtype=complex) for m in p) for p in self.povms)
        for p in povms:
            total = np.zeros((self.dim, self.dim), dtype=complex)
            for m in p:
                if m.shape != (self.dim, self.dim):
                    raise ValueError("POVM element dimension mismatch")
                if np.min(np.linalg.eigvalsh((m + m.conj().T) / 2)) < -POVM_TOL:
                    raise ValueError("POVM element not positive")
                total += m
            if np.max(np.abs(total - np.eye(self.dim))) > POVM_TOL:
                raise ValueError("POVM elements do not sum to identity")
        object.__setattr__(self, "povms", povms)

    @property
    def outcome_count(self) -> int:
        return sum(len(p) for p in self.povms)


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    corners: tuple | None = None  # DenseHermitian solutions, one per outcome combination
    reason: str | None = None


def projective_qubit_povm(axis_vector) -> tuple[np.ndarray, np.ndarray]:
    """Two-outcome projective qubit measurement along a unit Bloch vector."""
    from .pauli import PAULIS

    n = np.asarray(axis_vector, dtype=float)
    n = n / np.linalg.norm(n)
    obs = sum(n[k] * PAULIS[k + 1] for k in range(3))
    return ((np.eye(2) + obs) / 2, (np.eye(2) - obs) / 2)


def qubit_xyz_povms() -> PovmSet:
    """The X, Y, Z projective measurements of a qubit."""
    return PovmSet(
        tuple(projective_qubit_povm(v) for v in ((1, 0, 0), (0, 1, 0), (0, 0, 1))),
        dim=2,
    )


def _hermitian_basis(d: int) -> list[np.ndarray]:
    """Real basis of d x d Hermitian matrices (d^2 elements)."""
    basis = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1
        basis.append(e)
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = e[j, i] = 1
            basis.append(e)
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = -1j
            e[j, i] = 1j
            basis.append(e)
    return basis


def solve_outcome_system(povms: PovmSet, designated: tuple[int, ...]):
    """Least-squares solve for a trace-one Hermitian operator that assigns
    probability one to each designated outcome and zero to the rest.

    Returns (operator, relative residual).
    """
    d = povms.dim
    basis = _hermitian_basis(d)
    rows, targets = [], []
    for p, pick in zip(povms.povms, designated):
        for k, m in enumerate(p):
            rows.append([np.real(np.trace(m @ b)) for b in basis])
            targets.append(1.0 if k == pick else 0.0)
    rows.append([np.real(np.trace(b)) for b in basis])
    targets.append(1.0)
    M = np.array(rows)
    t = np.array(targets)
    x, *_ = np.linalg.lstsq(M, t, rcond=None)
    resid = np.linalg.norm(M @ x - t) / max(1.0, np.linalg.norm(t))
    op = sum(xi * bi for xi, bi in zip(x, basis))
    return op, resid


def operator_compatible(povms: PovmSet) -> CompatibilityResult:
    """Decide operator compatibility of a POVM set.

    A counting bound rejects immediately when the total number of outcomes
    exceeds d^2 + N - 1; otherwise every combination of one designated
    outcome per POVM must admit a trace-one Hermitian solution (relative
    residual < 1e-8).  Compatible results carry the solutions (the
    generalized corner operators).
    """
    d, N = povms.dim, len(povms.povms)
    if povms.outcome_count > d * d + N - 1:
        return CompatibilityResult(
            False,
            reason=f"outcome count {povms.outcome_count} exceeds d^2+N-1 = {d*d + N - 1}",
        )
    corners = []
    for combo in itertools.product(*(range(len(p)) for p in povms.povms)):
        op, resid = solve_outcome_system(povms, combo)
        if resid >= SOLVE_RESIDUAL_TOL:
            return CompatibilityResult(
                False, reason=f"outcome combination {combo} unreachable (residual {resid:.2e})"
            )
        corners.append(DenseHermitian((op + op.conj().T) / 2))
    return CompatibilityResult(True, corners=tuple(corners))
