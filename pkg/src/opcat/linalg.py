"""Exact-rational and floating linear algebra shared by every backend.

Two parallel regimes, selected by the ``exact`` flag carried on each
category:

* exact  -- numpy object arrays holding ``fractions.Fraction`` entries;
  Gaussian elimination, Bareiss determinants and a phase-1 simplex give
  decisions with no tolerance at all.
* float  -- numpy float64 arrays; rank uses a relative singular-value
  cutoff, span solves use least squares with a residual bound, and cone
  membership uses scipy's NNLS.

All rank/basis selection is leftmost-greedy over the input order so that
results are reproducible run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import nnls


@dataclass(frozen=True)
class Tolerances:
    """Numeric policy for floating backends (ignored on exact ones)."""

    num: float = 1e-9    # pointwise comparison tolerance
    rank: float = 1e-8   # singular-value cutoff, relative to the largest
    feas: float = 1e-7   # residual bound for span / cone-membership solves


DEFAULT_TOLERANCES = Tolerances()

_ZERO = Fraction(0)
_ONE = Fraction(1)


def exact_matrix(rows) -> np.ndarray:
    """Build an object-dtype matrix of Fractions from nested values."""
    rows = list(rows)
    n_rows = len(rows)
    n_cols = len(rows[0]) if n_rows else 0
    out = np.empty((n_rows, n_cols), dtype=object)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            out[i, j] = Fraction(v)
    return out


def zeros(shape, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out[...] = _ZERO
        return out
    return np.zeros(shape, dtype=float)


def is_zero_vector(v: np.ndarray, exact: bool, tol: float) -> bool:
    if v.size == 0:
        return True
    if exact:
        return all(x == 0 for x in v.flat)
    return float(np.max(np.abs(v))) <= tol


def max_abs_diff(a: np.ndarray, b: np.ndarray):
    """Largest entrywise |a-b|; works for object and float arrays."""
    d = a - b
    if d.size == 0:
        return 0
    return max(abs(x) for x in d.flat)


def matmul(a: np.ndarray, b: np.ndarray, exact: bool) -> np.ndarray:
    """a @ b that tolerates zero-size inner dimensions on object arrays."""
    if exact and a.shape[-1] == 0:
        shape = a.shape[:-1] + b.shape[1:]
        return zeros(shape, exact=True)
    return a @ b


def vectors_equal(a: np.ndarray, b: np.ndarray, exact: bool, tol: float) -> bool:
    if a.shape != b.shape:
        return False
    if exact:
        return all(x == y for x, y in zip(a.flat, b.flat))
    if a.size == 0:
        return True
    return float(np.max(np.abs(a - b))) <= tol


# ---------------------------------------------------------------------------
# exact elimination
# ---------------------------------------------------------------------------


class _ExactEliminator:
    """Incremental row reduction over Fractions.

    Rows are offered one at a time; ``offer`` returns True when the row is
    independent of everything accepted so far.  Pivot columns are chosen
    leftmost, so the accepted set is the leftmost-greedy row basis.
    """

    def __init__(self, n_cols: int):
        self.n_cols = n_cols
        self.reduced: list[np.ndarray] = []
        self.pivot_cols: list[int] = []

    def _reduce(self, row: np.ndarray) -> np.ndarray:
        row = row.copy()
        for r, c in zip(self.reduced, self.pivot_cols):
            if row[c] != 0:
                row = row - row[c] * r
        return row

    def offer(self, row: np.ndarray) -> bool:
        row = self._reduce(row)
        for c in range(self.n_cols):
            if row[c] != 0:
                row = row / row[c]
                self.reduced.append(row)
                self.pivot_cols.append(c)
                return True
        return False

    @property
    def rank(self) -> int:
        return len(self.reduced)


def exact_rank(matrix: np.ndarray) -> int:
    elim = _ExactEliminator(matrix.shape[1])
    for row in matrix:
        elim.offer(row)
    return elim.rank


def exact_row_basis(matrix: np.ndarray) -> list[int]:
    """Indices of the leftmost-greedy maximal independent row subset."""
    elim = _ExactEliminator(matrix.shape[1])
    return [i for i, row in enumerate(matrix) if elim.offer(row)]


def exact_solve_rows(basis: np.ndarray, targets: np.ndarray):
    """Solve X @ basis = targets exactly.

    ``basis`` rows may be dependent; coefficients are then supported on
    the leftmost-greedy independent subset.  Returns (X, ok) where ok[i]
    is False when targets[i] is not in the row span (that row of X is
    zero).
    """
    k, m = basis.shape
    t = targets.shape[0]
    X = zeros((t, k), exact=True)
    ok = np.ones(t, dtype=bool)
    if k == 0 or m == 0:
        for i in range(t):
            ok[i] = all(x == 0 for x in targets[i])
        return X, ok
    elim = _ExactEliminator(m)
    ind_rows = [i for i, row in enumerate(basis) if elim.offer(row)]
    cols = elim.pivot_cols
    r = len(ind_rows)
    if r == 0:
        for i in range(t):
            ok[i] = all(x == 0 for x in targets[i])
        return X, ok
    sub = basis[np.ix_(ind_rows, cols)]  # r x r invertible by construction
    inv = exact_inverse(sub)
    ind_basis = basis[ind_rows]
    for i in range(t):
        coeffs = targets[i][cols] @ inv
        if not all(x == y for x, y in zip(coeffs @ ind_basis, targets[i])):
            ok[i] = False
        else:
            for pos, row_idx in enumerate(ind_rows):
                X[i, row_idx] = coeffs[pos]
    return X, ok


def exact_inverse(matrix: np.ndarray) -> np.ndarray:
    k = matrix.shape[0]
    aug = np.empty((k, 2 * k), dtype=object)
    aug[:, :k] = matrix
    aug[:, k:] = zeros((k, k), exact=True)
    for i in range(k):
        aug[i, k + i] = _ONE
    for col in range(k):
        piv = None
        for r in range(col, k):
            if aug[r, col] != 0:
                piv = r
                break
        if piv is None:
            raise np.linalg.LinAlgError("exact matrix is singular")
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = aug[col] / aug[col, col]
        for r in range(k):
            if r != col and aug[r, col] != 0:
                aug[r] = aug[r] - aug[r, col] * aug[col]
    return aug[:, k:]


def exact_null_vector(matrix: np.ndarray):
    """A nonzero v with matrix @ v = 0, or None when columns are independent."""
    n_rows, n_cols = matrix.shape
    elim = _ExactEliminator(n_cols)
    for row in matrix:
        elim.offer(row)
    pivots = set(elim.pivot_cols)
    free = [c for c in range(n_cols) if c not in pivots]
    if not free:
        return None
    c0 = free[0]
    v = zeros((n_cols,), exact=True)
    v[c0] = _ONE
    # back-substitute: reduced rows are in RREF-like form with unit pivots
    for row, c in zip(reversed(elim.reduced), reversed(elim.pivot_cols)):
        v[c] = -sum((row[j] * v[j] for j in range(n_cols) if j != c), _ZERO)
    return v


def bareiss_determinant(matrix: np.ndarray) -> Fraction:
    """Fraction-free determinant (Bareiss) of an exact square matrix."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return _ONE
    sign = 1
    prev = _ONE
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return _ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
            a[i][k] = _ZERO
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# floating routines
# ---------------------------------------------------------------------------


def float_rank(matrix: np.ndarray, tol_rank: float) -> int:
    if matrix.size == 0:
        return 0
    sv = np.linalg.svd(np.asarray(matrix, dtype=float), compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol_rank * sv[0]))


def float_row_basis(matrix: np.ndarray, tol_rank: float) -> list[int]:
    """Leftmost-greedy independent rows, threshold relative to sigma_max."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.size == 0:
        return []
    sv = np.linalg.svd(matrix, compute_uv=False)
    scale = sv[0] if sv.size else 0.0
    if scale == 0.0:
        return []
    cutoff = tol_rank * scale
    picked: list[int] = []
    Q: list[np.ndarray] = []
    for i, row in enumerate(matrix):
        v = row.astype(float)
        for q in Q:
            v = v - np.dot(v, q) * q
        # second orthogonalization pass stabilizes nearly dependent rows
        for q in Q:
            v = v - np.dot(v, q) * q
        nrm = float(np.linalg.norm(v))
        if nrm > cutoff:
            Q.append(v / nrm)
            picked.append(i)
    return picked


def float_solve_rows(basis: np.ndarray, targets: np.ndarray, tol_feas: float):
    """Least-squares X @ basis = targets with per-row residual checks."""
    basis = np.asarray(basis, dtype=float)
    targets = np.asarray(targets, dtype=float)
    t = targets.shape[0]
    k = basis.shape[0]
    if k == 0:
        ok = np.array([float(np.max(np.abs(r), initial=0.0)) <= tol_feas for r in targets])
        return np.zeros((t, k)), ok
    X, _, _, _ = np.linalg.lstsq(basis.T, targets.T, rcond=None)
    X = X.T
    resid = X @ basis - targets
    scale = max(1.0, float(np.max(np.abs(basis))), float(np.max(np.abs(targets), initial=0.0)))
    ok = np.array([float(np.max(np.abs(r), initial=0.0)) <= tol_feas * scale for r in resid])
    return X, ok


def float_null_vector(matrix: np.ndarray, tol_rank: float):
    matrix = np.asarray(matrix, dtype=float)
    n_cols = matrix.shape[1]
    if n_cols == 0:
        return None
    if matrix.shape[0] == 0:
        v = np.zeros(n_cols)
        v[0] = 1.0
        return v
    _, sv, vt = np.linalg.svd(matrix)
    scale = sv[0] if sv.size else 0.0
    rank = int(np.sum(sv > tol_rank * scale)) if scale > 0 else 0
    if rank >= n_cols:
        return None
    return vt[n_cols - 1]


# ---------------------------------------------------------------------------
# regime dispatch
# ---------------------------------------------------------------------------


def rank(matrix: np.ndarray, exact: bool, tols: Tolerances) -> int:
    return exact_rank(matrix) if exact else float_rank(matrix, tols.rank)


def row_basis(matrix: np.ndarray, exact: bool, tols: Tolerances) -> list[int]:
    return exact_row_basis(matrix) if exact else float_row_basis(matrix, tols.rank)


def solve_rows(basis: np.ndarray, targets: np.ndarray, exact: bool, tols: Tolerances):
    if exact:
        return exact_solve_rows(basis, targets)
    return float_solve_rows(basis, targets, tols.feas)


def null_vector(matrix: np.ndarray, exact: bool, tols: Tolerances):
    return exact_null_vector(matrix) if exact else float_null_vector(matrix, tols.rank)


# ---------------------------------------------------------------------------
# nonnegative feasibility (cone membership)
# ---------------------------------------------------------------------------


def _exact_phase1_simplex(A: np.ndarray, b: np.ndarray):
    """Find x >= 0 with A x = b over Fractions, or None.

    Standard phase-1 simplex with artificial variables and Bland's rule
    (smallest index enters/leaves), which guarantees termination.
    """
    m, n = A.shape
    # normalize to b >= 0
    A = A.copy()
    b = b.copy()
    for i in range(m):
        if b[i] < 0:
            A[i] = -A[i]
            b[i] = -b[i]
    # tableau: columns = n real vars + m artificials, rows = m constraints
    T = np.empty((m, n + m + 1), dtype=object)
    T[:, :n] = A
    T[:, n:n + m] = zeros((m, m), exact=True)
    for i in range(m):
        T[i, n + i] = _ONE
    T[:, -1] = b
    basis = [n + i for i in range(m)]
    # reduced-cost row for "minimize sum of artificials": cost vector minus
    # the contribution of the (artificial, cost-1) starting basis
    obj = zeros((n + m + 1,), exact=True)
    for i in range(m):
        obj = obj - T[i]
    for j in range(n, n + m):
        obj[j] = obj[j] + _ONE
    while True:
        enter = None
        for j in range(n + m):
            if obj[j] < 0:
                enter = j
                break
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if T[i, enter] > 0:
                ratio = T[i, -1] / T[i, enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave is None:
            return None  # unbounded; cannot happen for phase 1
        piv = T[leave, enter]
        T[leave] = T[leave] / piv
        for i in range(m):
            if i != leave and T[i, enter] != 0:
                T[i] = T[i] - T[i, enter] * T[leave]
        if obj[enter] != 0:
            obj = obj - obj[enter] * T[leave]
        basis[leave] = enter
    if -obj[-1] != 0:  # optimum of phase-1 objective
        return None
    x = zeros((n,), exact=True)
    for i, v in enumerate(basis):
        if v < n:
            x[v] = T[i, -1]
    return x


def nonneg_combination(generators: np.ndarray, target: np.ndarray,
                       exact: bool, tols: Tolerances):
    """Coefficients c >= 0 with c @ generators = target, or None.

    ``generators`` is (n_gen x dim); this is linear feasibility over the
    finite generator set, i.e. cone membership.
    """
    n_gen, dim = generators.shape
    if n_gen == 0:
        if is_zero_vector(target, exact, tols.num):
            return zeros((0,), exact)
        return None
    if exact:
        return _exact_phase1_simplex(generators.T.copy(), target.copy())
    G = np.asarray(generators, dtype=float).T
    t = np.asarray(target, dtype=float)
    if dim == 0:
        return np.zeros(n_gen)
    coeffs, resid = nnls(G, t)
    scale = max(1.0, float(np.max(np.abs(t), initial=0.0)), float(np.max(np.abs(G))))
    if resid <= tols.feas * scale:
        return coeffs
    return None
