"""Linear-programming membership in the 64-vertex product polytope.

Two independent solver routes:

* a float route built on scipy's HiGHS interior point / simplex, used for
  every routine query, with an explicit dual-witness LP for infeasibility
  certificates;
* an exact route: a dense phase-1 simplex with Bland's rule over Fraction
  arithmetic, whose Farkas dual is recovered by an exact basis solve.  It
  serves as the certified fallback near degeneracy and as the independent
  oracle in the soundness tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

__all__ = [
    "FEASIBILITY_TOL",
    "DEGENERACY_MARGIN",
    "RATIONALIZE_MAX_DEN",
    "vertex_product_matrix",
    "exact_vertex_columns",
    "rationalize",
    "FloatLpOutcome",
    "solve_membership_float",
    "solve_membership_exact",
]

FEASIBILITY_TOL = 1e-9      # equality residual defining Feasible
DEGENERACY_MARGIN = 1e-7    # float verdicts closer than this fall back to exact
RATIONALIZE_MAX_DEN = 10 ** 6

_SIGNS = tuple(itertools.product((1, -1), repeat=3))


def _product_column(u, v) -> np.ndarray:
    a = np.concatenate(([1.0], u))
    b = np.concatenate(([1.0], v))
    return np.outer(a, b).ravel()


_VMAT_UNIT = np.column_stack(
    [_product_column(np.array(u, float), np.array(v, float)) for u in _SIGNS for v in _SIGNS]
)


def vertex_product_matrix(R: float = 1.0) -> np.ndarray:
    """16 x 64 matrix whose columns are products of R-scaled cube vertices."""
    if R == 1.0:
        return _VMAT_UNIT
    f = np.array([1.0, R, R, R])
    return _VMAT_UNIT * np.outer(f, f).ravel()[:, None]


def exact_vertex_columns(R: Fraction = Fraction(1)) -> list[list[Fraction]]:
    """The same 64 columns with exact rational entries."""
    f = [Fraction(1), R, R, R]
    scale = [f[i] * f[j] for i in range(4) for j in range(4)]
    cols = []
    for u in _SIGNS:
        for v in _SIGNS:
            a = (Fraction(1), Fraction(u[0]), Fraction(u[1]), Fraction(u[2]))
            b = (Fraction(1), Fraction(v[0]), Fraction(v[1]), Fraction(v[2]))
            col = [a[i] * b[j] * scale[4 * i + j] for i in range(4) for j in range(4)]
            cols.append(col)
    return cols


def rationalize(x: float, max_den: int = RATIONALIZE_MAX_DEN) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


@dataclass
class FloatLpOutcome:
    status: str  # "feasible" | "infeasible" | "ambiguous"
    weights: np.ndarray | None = None
    residual: float | None = None
    dual: np.ndarray | None = None       # 16-vector y with y.V_j >= 0 for all columns
    violation: float | None = None       # -y.b > 0
    dual_slack: float | None = None      # min_j y.V_j (should be >= -1e-12)


_HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
}


def polish_weights(V: np.ndarray, b: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, float]:
    """Refine a near-feasible weight vector on its support.

    Solves the equality system restricted to the active columns by least
    squares and clips stray negatives; returns (weights, max residual).
    """
    support = np.nonzero(w > 1e-11)[0]
    if support.size:
        x, *_ = np.linalg.lstsq(V[:, support], b, rcond=None)
        if np.min(x) > -1e-10:
            w2 = np.zeros(64)
            w2[support] = np.clip(x, 0.0, None)
            r2 = float(np.max(np.abs(V @ w2 - b)))
            if r2 < float(np.max(np.abs(V @ w - b))):
                return w2, r2
    return w, float(np.max(np.abs(V @ w - b)))


def solve_membership_float(b: np.ndarray, R: float = 1.0,
                           tol: float = FEASIBILITY_TOL) -> FloatLpOutcome:
    """Classify membership of the coefficient vector b via HiGHS.

    Feasible verdicts carry weights with verified equality residual <= tol
    (after a least-squares polish on the support); infeasible verdicts
    carry a separating functional with a clear margin.  Anything else is
    reported ambiguous (callers fall back to the exact route).
    """
    V = vertex_product_matrix(R)
    res = linprog(np.zeros(64), A_eq=V, b_eq=b, bounds=(0, None), method="highs",
                  options=_HIGHS_OPTIONS)
    if res.status == 0 and res.x is not None:
        w, resid = polish_weights(V, b, np.clip(res.x, 0.0, None))
        if resid <= tol:
            return FloatLpOutcome("feasible", weights=w, residual=resid)
    # dual witness: minimize y.b subject to V^T y >= 0, -1 <= y <= 1;
    # a strictly negative optimum separates b from the polytope
    wit = linprog(b, A_ub=-V.T, b_ub=np.zeros(64), bounds=(-1, 1), method="highs",
                  options=_HIGHS_OPTIONS)
    if wit.status == 0 and wit.x is not None:
        y = wit.x
        slack = float(np.min(V.T @ y))
        value = float(y @ b)
        if value < -DEGENERACY_MARGIN and slack > -1e-12:
            return FloatLpOutcome("infeasible", dual=y, violation=-value, dual_slack=slack)
        if value < -tol and slack > -1e-12:
            # real but thin margin: let the exact route confirm
            return FloatLpOutcome("ambiguous", dual=y, violation=-value, dual_slack=slack)
    return FloatLpOutcome("ambiguous")


def _solve_exact_linear(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan solve of a square exact system."""
    m = len(rhs)
    A = [rows[i][:] + [rhs[i]] for i in range(m)]
    for col in range(m):
        piv = next((r for r in range(col, m) if A[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular basis in exact dual solve")
        A[col], A[piv] = A[piv], A[col]
        pv = A[col][col]
        A[col] = [x / pv for x in A[col]]
        for r in range(m):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [a - f * c for a, c in zip(A[r], A[col])]
    return [A[i][m] for i in range(m)]


def solve_membership_exact(b: list[Fraction], R: Fraction = Fraction(1)):
    """Exact membership test: phase-1 simplex with Bland's rule.

    Returns ("feasible", weights) with exact convex weights, or
    ("infeasible", y) with an exact Farkas functional satisfying
    y . V_j >= 0 for every vertex-product column and y . b < 0.
    """
    cols = exact_vertex_columns(R)
    m, n = 16, 64
    flip = [-1 if b[i] < 0 else 1 for i in range(m)]
    # flipped constraint columns, artificials appended
    fcols = [[flip[i] * col[i] for i in range(m)] for col in cols]
    fcols += [[Fraction(1) if i == k else Fraction(0) for i in range(m)] for k in range(m)]
    T = [[fcols[j][i] for j in range(n + m)] for i in range(m)]
    rhs = [flip[i] * b[i] for i in range(m)]
    basis = list(range(n, n + m))
    # phase-1 reduced costs: artificials cost 1
    r = [-sum(T[i][j] for i in range(m)) for j in range(n)] + [Fraction(0)] * m
    ncols = n + m
    for _ in range(20000):
        enter = next((j for j in range(ncols) if r[j] < 0), None)
        if enter is None:
            break
        leave, best = None, None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = rhs[i] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise ArithmeticError("phase-1 unbounded (cannot happen)")
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        rhs[leave] /= piv
        for i in range(m):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * c for a, c in zip(T[i], T[leave])]
                rhs[i] -= f * rhs[leave]
        f = r[enter]
        r = [a - f * c for a, c in zip(r, T[leave])]
        basis[leave] = enter
    else:
        raise ArithmeticError("simplex iteration limit exceeded")
    artificial_mass = sum(rhs[i] for i in range(m) if basis[i] >= n)
    if artificial_mass == 0:
        w = [Fraction(0)] * n
        for i, bi in enumerate(basis):
            if bi < n:
                w[bi] = rhs[i]
        return "feasible", w
    # Farkas dual from the final basis: solve B^T y = c_B exactly
    bt_rows = [[fcols[basis[j]][i] for i in range(m)] for j in range(m)]
    c_b = [Fraction(1) if basis[j] >= n else Fraction(0) for j in range(m)]
    y = _solve_exact_linear(bt_rows, c_b)
    y_final = [-(y[i] * flip[i]) for i in range(m)]
    return "infeasible", y_final
