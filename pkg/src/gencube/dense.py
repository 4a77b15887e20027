"""Dense multi-qubit helpers shared by the channel constructions and the
reference density-matrix simulator.
"""
from __future__ import annotations

import numpy as np

from .pauli import PAULIS

__all__ = [
    "kron_all",
    "embed_one",
    "embed_two",
    "permute_qubits",
    "partial_trace",
    "partial_transpose_qubits",
    "depolarize_qubit",
    "dephase_qubit",
    "joint_depolarize_pair",
]


def kron_all(mats) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def embed_one(op: np.ndarray, q: int, n: int) -> np.ndarray:
    """Lift a single-qubit operator to n qubits (qubit 0 is the leftmost factor)."""
    return kron_all([op if k == q else np.eye(2) for k in range(n)])


def embed_two(op4: np.ndarray, q1: int, q2: int, n: int) -> np.ndarray:
    """Lift a two-qubit operator acting on (q1, q2) to n qubits."""
    if q1 == q2:
        raise ValueError("two-qubit operator needs distinct qubits")
    big = kron_all([op4] + [np.eye(2)] * (n - 2))
    order = [q1, q2] + [k for k in range(n) if k not in (q1, q2)]
    # big acts on qubit order `order`; permute back to 0..n-1
    inv = [order.index(k) for k in range(n)]
    return permute_qubits(big, inv)


def permute_qubits(rho: np.ndarray, perm) -> np.ndarray:
    """Reorder tensor factors: new qubit k is old qubit perm[k]."""
    n = len(perm)
    t = rho.reshape((2,) * (2 * n))
    axes = list(perm) + [p + n for p in perm]
    return t.transpose(axes).reshape(2 ** n, 2 ** n)


def partial_trace(rho: np.ndarray, keep, n: int) -> np.ndarray:
    """Trace out every qubit not in `keep` (order of `keep` preserved)."""
    keep = list(keep)
    order = keep + [q for q in range(n) if q not in keep]
    r = permute_qubits(rho, order)
    dk = 2 ** len(keep)
    dd = 2 ** (n - len(keep))
    return np.trace(r.reshape(dk, dd, dk, dd), axis1=1, axis2=3)


def partial_transpose_qubits(rho: np.ndarray, qubits, n: int) -> np.ndarray:
    """Transpose the tensor indices of the given qubits."""
    t = rho.reshape((2,) * (2 * n))
    perm = list(range(2 * n))
    for q in qubits:
        perm[q], perm[q + n] = perm[q + n], perm[q]
    return t.transpose(perm).reshape(2 ** n, 2 ** n)


def depolarize_qubit(rho: np.ndarray, q: int, p: float, n: int) -> np.ndarray:
    """rho -> (1-p) rho + p (I/2 (x) tr_q rho) via Pauli conjugations."""
    out = (1.0 - 0.75 * p) * rho
    for k in (1, 2, 3):
        P = embed_one(PAULIS[k], q, n)
        out = out + 0.25 * p * (P @ rho @ P)
    return out


def dephase_qubit(rho: np.ndarray, q: int, p: float, n: int) -> np.ndarray:
    """rho -> (1-p) rho + p Z rho Z on qubit q."""
    Z = embed_one(PAULIS[3], q, n)
    return (1.0 - p) * rho + p * (Z @ rho @ Z)


def joint_depolarize_pair(rho: np.ndarray, q1: int, q2: int, lam: float, n: int) -> np.ndarray:
    """rho -> (1-lam) rho + lam (I/4 (x) tr_{q1,q2} rho)."""
    out = (1.0 - lam) * rho
    acc = np.zeros_like(rho)
    for i in range(4):
        for j in range(4):
            P = embed_one(PAULIS[i], q1, n) @ embed_one(PAULIS[j], q2, n)
            acc = acc + P @ rho @ P
    return out + lam * acc / 16.0
