"""Bespoke constructions: the magic-basis Choi-Jamiolkowski channel, the
error-per-gate bounds, the Bell-state certificate, the impossibility
arguments for state spaces beyond the Bloch sphere, and a numeric probe of
the separable ball around non-Pauli product states.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .dense import partial_trace, partial_transpose_qubits, permute_qubits
from .gates import csign, pauli_flip
from .pauli import (
    PAULIS,
    BlochOp,
    DenseHermitian,
    PauliCoeffs2Q,
    born_probability,
    eigenvalues_hermitian,
    from_dense,
    partial_transpose,
    product,
    to_dense,
)
from .separability import (
    LhvCertificate,
    cube_separable,
    vertex_pair_index,
)
from .spaces import cube_vertices

__all__ = [
    "MagicBasis",
    "MAGIC",
    "W_MAGIC",
    "CjState",
    "build_cj",
    "cj_apply",
    "Lemma8Report",
    "lemma8_report",
    "find_lemma8_params",
    "EpgBounds",
    "error_per_gate_bounds",
    "bell_cube_certificate",
    "BELL_CONSTRAINTS",
    "Appendix2Report",
    "appendix2_checks",
    "separable_ball_radius",
    "vertex_orbit",
]

W_MAGIC = (math.sqrt(3.0) + 1.0) / 2.0


def _magic_kets():
    n = np.array([1.0, 1.0, 1.0]) / math.sqrt(3.0)
    obs = n[0] * PAULIS[1] + n[1] * PAULIS[2] + n[2] * PAULIS[3]
    vals, vecs = np.linalg.eigh(obs)
    kets = [vecs[:, 0].copy(), vecs[:, 1].copy()]  # ascending: -1 then +1
    for k in kets:
        i = int(np.argmax(np.abs(k)))
        k *= np.exp(-1j * np.angle(k[i]))
    return kets[1], kets[0]  # (|T>, |Tbar>)


@dataclass(frozen=True)
class MagicBasis:
    """The magic qubit along sqrt(1/3)(1,1,1) and its orthogonal partner."""

    t_state: np.ndarray
    t_bar_state: np.ndarray

    @property
    def t_projector(self) -> np.ndarray:
        return np.outer(self.t_state, self.t_state.conj())

    @property
    def t_bar_projector(self) -> np.ndarray:
        return np.outer(self.t_bar_state, self.t_bar_state.conj())


MAGIC = MagicBasis(*_magic_kets())


@dataclass(frozen=True)
class CjState:
    """16x16 Choi state on qubits ordered (A1, B1, A2, B2); inputs first."""

    rho: DenseHermitian
    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float


def build_cj(alpha: float, epsilon: float) -> CjState:
    """Assemble the two-term magic-basis Choi state.

    The amplitudes are real nonnegative with beta, gamma fixed by
    normalization and delta by the trace-preservation constraint
    (1/2+eps) alpha^2 + (1/2-eps) delta^2 = 1/2; parameters that push
    delta^2 outside [0, 1] are rejected.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError("alpha must lie in (0, 1]")
    d2 = (0.5 - (0.5 + epsilon) * alpha * alpha) / (0.5 - epsilon)
    if not -1e-15 <= d2 <= 1.0:
        raise ValueError(f"constraint gives delta^2 = {d2:.3e} outside [0, 1]")
    d2 = max(d2, 0.0)
    beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
    delta = math.sqrt(d2)
    gamma = math.sqrt(1.0 - d2)
    kT, kTb = MAGIC.t_state, MAGIC.t_bar_state
    # pure parts live on (A1, A2, B2)
    psi1 = alpha * np.kron(kT, np.kron(kT, kT)) + beta * np.kron(kTb, np.kron(kTb, kTb))
    psi2 = gamma * np.kron(kTb, np.kron(kT, kTb)) + delta * np.kron(kT, np.kron(kTb, kT))
    mix = (0.5 + epsilon) * np.kron(np.outer(psi1, psi1.conj()), np.eye(2) / 2) \
        + (0.5 - epsilon) * np.kron(np.outer(psi2, psi2.conj()), np.eye(2) / 2)
    # current order (A1, A2, B2, B1) -> (A1, B1, A2, B2)
    rho = permute_qubits(mix, [0, 3, 1, 2])
    return CjState(DenseHermitian(rho), alpha, beta, gamma, delta, epsilon)


def cj_apply(cj: CjState, A: PauliCoeffs2Q) -> PauliCoeffs2Q:
    """Apply the channel to a two-particle coefficient matrix.

    Output = 4 tr_in[(rho_in^T (x) I) CJ] with the transpose on the input
    slots; the convention is pinned by the identity-channel round trip.
    """
    if not A.is_normalized:
        raise ValueError("cj_apply expects a normalized input")
    rho_in = to_dense(A).entries
    op = np.kron(rho_in.T, np.eye(4))
    out = 4.0 * partial_trace(op @ cj.rho.entries, [2, 3], 4)
    return from_dense((out + out.conj().T) / 2)


def _min_pt_eig(A: PauliCoeffs2Q) -> float:
    return float(eigenvalues_hermitian(to_dense(partial_transpose(A)))[0])


@dataclass(frozen=True)
class Lemma8Report:
    alpha: float
    epsilon: float
    marginal_deviation: float       # || tr_out CJ - I/4 ||_max
    vertex_feasible: int            # of 64
    infeasible_inputs: tuple        # (u, v) sign tuples that failed
    output_min_pt: float            # min PT eigenvalue, A in (|T>+|Tbar>)/sqrt2
    a2_bloch_distance: float        # distance of the A2 marginal to the T axis
    cj_min_pt_inout: float          # PT over the (A1,B1):(A2,B2) split
    cj_min_pt_ab: float             # PT over the (A1,A2):(B1,B2) split

    @property
    def all_vertices_feasible(self) -> bool:
        return self.vertex_feasible == 64

    def as_lines(self) -> list[str]:
        return [
            f"alpha: {self.alpha!r}",
            f"epsilon: {self.epsilon!r}",
            f"marginal_deviation: {self.marginal_deviation:.3e}",
            f"vertex_feasible: {self.vertex_feasible}/64",
            f"output_min_pt: {self.output_min_pt:.6e}",
            f"a2_bloch_distance_to_T: {self.a2_bloch_distance:.6e}",
            f"cj_min_pt_inout_split: {self.cj_min_pt_inout:.6e}",
            f"cj_min_pt_ab_split: {self.cj_min_pt_ab:.6e}",
        ]


def lemma8_report(alpha: float, epsilon: float, lp_vertices: bool = True) -> Lemma8Report:
    """Run every check of the magic-basis channel at the given parameters."""
    cj = build_cj(alpha, epsilon)
    rho = cj.rho.entries
    marg = partial_trace(rho, [0, 1], 4)
    marg_dev = float(np.max(np.abs(marg - np.eye(4) / 4)))
    pt_inout = float(eigenvalues_hermitian(
        partial_transpose_qubits(rho, [0, 1], 4))[0])
    pt_ab = float(eigenvalues_hermitian(
        partial_transpose_qubits(rho, [0, 2], 4))[0])

    plus_t = (MAGIC.t_state + MAGIC.t_bar_state) / math.sqrt(2.0)
    worst_pt = math.inf
    for ket_b in (np.array([1, 0], complex), np.array([0, 1], complex),
                  (np.array([1, 1], complex) / math.sqrt(2))):
        rho_in = np.kron(np.outer(plus_t, plus_t.conj()), np.outer(ket_b, ket_b.conj()))
        out = cj_apply(cj, from_dense(rho_in))
        worst_pt = min(worst_pt, _min_pt_eig(out))

    # A2 marginal direction for a generic vertex input
    allones = BlochOp(np.ones(3))
    out = cj_apply(cj, product(allones, allones))
    a2 = out.coeffs[1:, 0]
    t_dir = np.ones(3) / math.sqrt(3.0)
    a2_dist = float(np.linalg.norm(a2 - (a2 @ t_dir) * t_dir))

    feasible, fails = 0, []
    if lp_vertices:
        verts = cube_vertices()
        for u in verts:
            for v in verts:
                if cube_separable(cj_apply(cj, product(u, v))).feasible:
                    feasible += 1
                else:
                    fails.append((tuple(int(x) for x in u.bloch),
                                  tuple(int(x) for x in v.bloch)))
    return Lemma8Report(alpha, epsilon, marg_dev, feasible, tuple(fails),
                        worst_pt, a2_dist, pt_inout, pt_ab)


def find_lemma8_params(alphas=(0.998, 0.995, 0.999, 0.99, 0.9995),
                       epsilons=(1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8),
                       pt_threshold: float = -1e-8):
    """Search the parameter grid for a point passing all Lemma 8 checks.

    Returns (report, searched) where report is the first fully passing
    configuration or, failing that, the one with the most feasible vertex
    outputs among those meeting the PT and marginal requirements.
    """
    best = None
    searched = []
    for alpha in alphas:
        for eps in epsilons:
            try:
                rep = lemma8_report(alpha, eps)
            except ValueError:
                continue
            searched.append(rep)
            full = (rep.all_vertices_feasible and rep.output_min_pt < pt_threshold
                    and rep.marginal_deviation < 1e-10
                    and rep.cj_min_pt_inout < -1e-9 and rep.cj_min_pt_ab < -1e-9)
            if full:
                return rep, searched
            if rep.output_min_pt < pt_threshold and rep.marginal_deviation < 1e-10:
                if best is None or rep.vertex_feasible > best.vertex_feasible:
                    best = rep
    return best, searched


# ---------------------------------------------------------------------------
# Error-per-gate bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EpgBounds:
    lower: float
    upper: float
    w_identity_residual: float
    w_square_identity: float            # w^2 + (w-1)^2 (should be 2)
    upper_feasible_count: int           # of 64 vertex inputs
    upper_certificates: tuple           # LhvCertificate per vertex pair


def error_per_gate_bounds() -> EpgBounds:
    """Both bounds on the adversarial error-per-gate rate.

    Lower bound: the corner operator expands as w T - (w-1) Tbar with
    w = (sqrt(3)+1)/2, any CP image is bounded by w^2 + (w-1)^2 = 2 per
    outcome, and balancing the -1/2 probability of the clean gate gives
    (1-lam)(-1/2) + 2 lam >= 0, i.e. lam >= 1/5.  Upper bound: dephasing
    one arm completely (Z with probability 1/2) commutes through the gate
    and leaves every vertex product cube-separable.
    """
    corner = (PAULIS[0] + PAULIS[1] + PAULIS[2] + PAULIS[3]) / 2.0
    resid = float(np.max(np.abs(
        corner - (W_MAGIC * MAGIC.t_projector - (W_MAGIC - 1.0) * MAGIC.t_bar_projector)
    )))
    wsq = W_MAGIC ** 2 + (W_MAGIC - 1.0) ** 2
    lower = 0.5 / (0.5 + 2.0)

    certs = []
    feasible = 0
    verts = cube_vertices()
    for u in verts:
        for v in verts:
            clean = csign(product(u, v))
            mixed = PauliCoeffs2Q(0.5 * clean.coeffs + 0.5 * pauli_flip(clean, 0, 3).coeffs)
            res = cube_separable(mixed)
            if res.feasible:
                feasible += 1
                certs.append(res.certificate)
    return EpgBounds(lower, 0.5, resid, wsq, feasible, tuple(certs))


# ---------------------------------------------------------------------------
# Bell-state certificates
# ---------------------------------------------------------------------------

# sign constraints (sx, sy, sz) meaning x1 = sx x2, y1 = sy y2, z1 = sz z2
BELL_CONSTRAINTS = {
    "phi+": (1, -1, 1),
    "phi-": (-1, 1, 1),
    "psi+": (1, 1, -1),
    "psi-": (-1, -1, -1),
}


def bell_cube_certificate(which: str = "phi+") -> tuple[PauliCoeffs2Q, LhvCertificate]:
    """Uniform 8-term certificate for a Bell state's coefficient matrix."""
    try:
        sx, sy, sz = BELL_CONSTRAINTS[which]
    except KeyError:
        raise ValueError(f"unknown Bell state {which!r}") from None
    target = np.zeros((4, 4))
    target[0, 0] = 1.0
    target[1, 1], target[2, 2], target[3, 3] = sx, sy, sz
    w = np.zeros(64)
    for signs in itertools.product((1, -1), repeat=3):
        u = signs
        v = (sx * signs[0], sy * signs[1], sz * signs[2])
        w[vertex_pair_index(u, v)] += 1.0 / 8.0
    return PauliCoeffs2Q(target), LhvCertificate(w, 1e-12)


# ---------------------------------------------------------------------------
# Impossibility arguments (state spaces beyond the Bloch sphere)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Appendix2Report:
    stated_probability: float
    over_unit_trials: int
    over_unit_violations: int
    unit_ball_trials: int
    unit_ball_violations: int

    def as_lines(self) -> list[str]:
        return [
            f"stated_vertex_probability: {self.stated_probability!r}",
            f"over_unit_violations: {self.over_unit_violations}/{self.over_unit_trials}",
            f"unit_ball_violations: {self.unit_ball_violations}/{self.unit_ball_trials}",
        ]


def appendix2_checks(n_samples: int = 1000, seed: int = 2024) -> Appendix2Report:
    """Reproduce both impossibility arguments numerically.

    (i) the clean gate on the stated vertex pair yields probability -1/2;
    (ii) for Bloch vectors v outside the unit ball, the direction
    V = -v/|v| witnesses 1 + v.V < 0, while no unit-ball vector admits a
    witness.
    """
    u = BlochOp(np.array([1.0, 1.0, 1.0]))          # (x, y, z)
    v = BlochOp(np.array([1.0, 1.0, -1.0]))         # (A, B, C) with C = -1
    out = csign(product(u, v))
    stated = born_probability(out, "X", 1, "X", -1)

    rng = np.random.default_rng(seed)

    def random_unit(n):
        w = rng.standard_normal((n, 3))
        return w / np.linalg.norm(w, axis=1, keepdims=True)

    over = random_unit(n_samples) * (1.0 + rng.uniform(0.001, 1.0, (n_samples, 1)))
    over_viol = int(np.sum(1.0 - np.linalg.norm(over, axis=1) < 0))
    inside = random_unit(n_samples) * rng.uniform(0.0, 1.0, (n_samples, 1))
    inside_viol = int(np.sum(1.0 - np.linalg.norm(inside, axis=1) < -1e-12))
    return Appendix2Report(stated, n_samples, over_viol, n_samples, inside_viol)


# ---------------------------------------------------------------------------
# Separable ball probe (numeric stand-in for the ball-existence lemma)
# ---------------------------------------------------------------------------


def separable_ball_radius(a: BlochOp, b: BlochOp, n_directions: int = 12,
                          seed: int = 7, step_tol: float = 1e-4,
                          max_step: float = 1.0) -> float:
    """Largest perturbation (min over random directions) keeping the
    product of two states cube-separable.

    Directions are random unit vectors in the 15-dimensional non-identity
    coefficient space; per direction the step is bisected on LP
    feasibility.  Centers on a cube face report radius 0.
    """
    center = product(a, b).coeffs
    rng = np.random.default_rng(seed)
    radius = math.inf
    for _ in range(n_directions):
        d = rng.standard_normal(15)
        d /= np.linalg.norm(d)
        delta = np.zeros(16)
        delta[1:] = d
        delta = delta.reshape(4, 4)

        def sep_at(s):
            return cube_separable(PauliCoeffs2Q(center + s * delta)).feasible

        if not sep_at(step_tol * 0.01):
            return 0.0
        lo, hi = 0.0, max_step
        if sep_at(hi):
            radius = min(radius, hi)
            continue
        while hi - lo > step_tol:
            mid = 0.5 * (lo + hi)
            if sep_at(mid):
                lo = mid
            else:
                hi = mid
        radius = min(radius, lo)
    return radius


def vertex_orbit() -> list[tuple[int, int, int]]:
    """The X/Y/S gate cycle that visits all eight cube corners."""
    from .gates import clifford1

    seq = ["X", "Y", "X", "S", "X", "Y", "X"]
    state = BlochOp(np.ones(3))
    orbit = [tuple(int(x) for x in state.bloch)]
    for g in seq:
        state = clifford1(state, g)
        orbit.append(tuple(int(x) for x in state.bloch))
    return orbit
