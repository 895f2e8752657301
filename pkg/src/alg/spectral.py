"""Cyclic Jacobi eigensolver, edge-space identities and spectral bounds.

The solver sweeps the strict upper triangle in row-major order, so results
are reproducible bit for bit.  Exact integer routines (rank, Bareiss
determinant) back up the floating-point checks wherever an exact answer
exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import cos, gcd, pi, prod, sqrt
from typing import Sequence

import numpy as np

from .errors import GraphError, NumericError
from .graph import SimpleGraph, incidence_matrix, is_connected, laplacian
from .optimization import maxcut_exact
from .signed import SignedGraph, build_alg, signed_adjacency_matrix

MAX_SWEEPS = 100
ZERO_THRESHOLD = 1e-8
_CONVERGED = 1e-13


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    tolerance: float

    def to_json(self) -> dict:
        return {"eigenvalues": list(self.eigenvalues), "tolerance": self.tolerance}

    @property
    def largest(self) -> float:
        return self.eigenvalues[-1] if self.eigenvalues else 0.0


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int
    uncertain: bool = False

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def jacobi_eigh(M: np.ndarray, max_sweeps: int = MAX_SWEEPS) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of symmetric ``M``."""
    A = np.array(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise GraphError(f"expected a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise GraphError("matrix is not symmetric")
    n = A.shape[0]
    V = np.eye(n)
    scale = float(np.linalg.norm(A)) or 1.0
    for _ in range(max_sweeps + 1):
        if sqrt(2.0) * float(np.linalg.norm(np.triu(A, 1))) <= _CONVERGED * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-18 * scale:
                    A[p, q] = A[q, p] = 0.0
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + sqrt(theta * theta + 1.0))
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * col_p - s * col_q
                A[:, q] = s * col_p + c * col_q
                row_p, row_q = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * row_p - s * row_q
                A[q, :] = s * row_p + c * row_q
                A[p, q] = A[q, p] = 0.0
                v_p, v_q = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * v_p - s * v_q
                V[:, q] = s * v_p + c * v_q
    else:
        raise NumericError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(A).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def symmetric_eigenvalues(M: np.ndarray) -> Spectrum:
    w, _ = jacobi_eigh(M)
    tol = ZERO_THRESHOLD * max(float(np.linalg.norm(np.asarray(M, dtype=float))), 1.0)
    return Spectrum(tuple(float(x) for x in w), tol)


def laplacian_spectrum(g: SimpleGraph) -> Spectrum:
    return symmetric_eigenvalues(laplacian(g))


def integer_rank(M: np.ndarray) -> int:
    """Exact rank of an integer matrix; rows are kept primitive by their gcd."""
    rows = [[int(x) for x in r] for r in np.asarray(M)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col]
            if f:
                row = [p * a - f * b for a, b in zip(rows[r], rows[rank])]
                k = gcd(*row)
                rows[r] = [a // k for a in row] if k > 1 else row
        rank += 1
    return rank


def bareiss_determinant(M: np.ndarray) -> int:
    a = [[int(x) for x in r] for r in np.asarray(M)]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _require_connected(g: SimpleGraph, what: str) -> None:
    if g.n == 0 or not is_connected(g):
        raise GraphError(f"{what} needs a connected graph")


def edge_space_identity_check(g: SimpleGraph, o: Sequence[int] | None = None) -> bool:
    """Nonzero spectra of ``S + 2I`` and ``L`` agree, and ``S + 2I`` has a
    kernel of dimension ``m - n + 1`` (numerically and via the exact rank of D)."""
    _require_connected(g, "edge_space_identity_check")
    S = signed_adjacency_matrix(build_alg(g, o))
    shifted = symmetric_eigenvalues(S + 2 * np.eye(g.m, dtype=np.int64))
    lap = laplacian_spectrum(g)
    tol = max(shifted.tolerance, lap.tolerance)
    nz_s = [x for x in shifted.eigenvalues if x > tol]
    nz_l = [x for x in lap.eigenvalues if x > tol]
    if len(nz_s) != len(nz_l) or any(abs(a - b) > 1e-8 * max(1.0, b) for a, b in zip(nz_s, nz_l)):
        return False
    if min(shifted.eigenvalues, default=0.0) < -tol:
        return False
    cycle_rank = g.m - g.n + 1
    kernel = sum(1 for x in shifted.eigenvalues if abs(x) <= tol)
    return kernel == cycle_rank and g.m - integer_rank(incidence_matrix(g, o)) == cycle_rank


def _clusters(w: np.ndarray, tol: float) -> list[list[int]]:
    groups: list[list[int]] = []
    for i, x in enumerate(w):
        if groups and abs(x - w[groups[-1][-1]]) <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def transported_modes_check(g: SimpleGraph, o: Sequence[int] | None = None,
                            rtol: float = 1e-7) -> bool:
    """Each Laplacian eigenspace with ``lambda > 0``, pushed through ``D^T``,
    is a ``(lambda - 2)``-eigenspace of ``S`` with Gram matrix ``lambda I``.

    Residuals are taken over whole eigenspaces, so repeated eigenvalues do
    not depend on which basis the solver happened to return.
    """
    _require_connected(g, "transported_modes_check")
    D = incidence_matrix(g, o).astype(float)
    S = signed_adjacency_matrix(build_alg(g, o)).astype(float)
    w, V = jacobi_eigh(laplacian(g))
    tol = 1e-7 * max(1.0, float(w[-1]))
    for cluster in _clusters(w, tol):
        lam = float(np.mean(w[cluster]))
        if lam <= tol:
            continue
        W = D.T @ V[:, cluster]
        size = float(np.linalg.norm(W))
        if np.linalg.norm(S @ W - (lam - 2.0) * W) > rtol * size:
            return False
        if np.max(np.abs(W.T @ W - lam * np.eye(len(cluster)))) > rtol * max(1.0, lam):
            return False
    return True


def matrix_tree_values(g: SimpleGraph) -> tuple[float, int]:
    """``(prod of nonzero eigenvalues of S + 2I) / n`` and the exact cofactor count."""
    _require_connected(g, "spanning_tree_count")
    exact = bareiss_determinant(laplacian(g)[1:, 1:])
    if g.m == 0:
        return 1.0, exact
    S = signed_adjacency_matrix(build_alg(g))
    spec = symmetric_eigenvalues(S + 2 * np.eye(g.m, dtype=np.int64))
    nonzero = [x for x in spec.eigenvalues if x > spec.tolerance]
    if len(nonzero) != g.n - 1:
        raise NumericError(f"expected {g.n - 1} nonzero eigenvalues, found {len(nonzero)}")
    return prod(nonzero) / g.n, exact


def spanning_tree_count(g: SimpleGraph) -> int:
    approx, exact = matrix_tree_values(g)
    if abs(approx - exact) > 1e-6 * max(exact, 1):
        raise NumericError(f"eigenvalue product {approx!r} disagrees with cofactor {exact}")
    return exact


def signed_inertia(s: SignedGraph) -> Inertia:
    """Sign counts of the spectrum of ``S`` at threshold ``1e-8 ||S||_F``.

    ``uncertain`` is set when some eigenvalue lies within a factor of 10 of
    the threshold on either side.
    """
    S = signed_adjacency_matrix(s)
    if s.n == 0:
        return Inertia(0, 0, 0)
    w, _ = jacobi_eigh(S)
    thr = ZERO_THRESHOLD * float(np.linalg.norm(S.astype(float)))
    pos = int(np.sum(w > thr))
    neg = int(np.sum(w < -thr))
    shaky = bool(np.any((np.abs(w) > thr / 10) & (np.abs(w) < thr * 10)))
    return Inertia(pos, neg, len(w) - pos - neg, shaky)


def _lambda_max(g: SimpleGraph) -> float:
    return laplacian_spectrum(g).largest if g.n else 0.0


def spectral_lower_bound(g: SimpleGraph) -> float:
    """``(sum d^2 - m lambda_max(L)) / 4``; negative values are returned as is."""
    return (sum(d * d for d in g.degrees) - g.m * _lambda_max(g)) / 4.0


def combined_lower_bound(g: SimpleGraph) -> float:
    return max(float(maxcut_exact(g).defect), spectral_lower_bound(g))


def active_lower_bound(g: SimpleGraph) -> str:
    """Which of the two lower bounds is larger: ``"defect"``, ``"spectral"`` or ``"tie"``."""
    d, s = maxcut_exact(g).defect, spectral_lower_bound(g)
    if abs(d - s) <= 1e-9:
        return "tie"
    return "defect" if d > s else "spectral"


def regular_bound(g: SimpleGraph) -> float:
    if not g.is_regular() or g.n == 0:
        raise GraphError("regular_bound needs a regular graph")
    delta = g.degrees[0]
    return g.n * delta / 4.0 * (delta - _lambda_max(g) / 2.0)


def cubic_oct_spectral_bound(g: SimpleGraph) -> float:
    if g.n == 0 or set(g.degrees) != {3}:
        raise GraphError("cubic_oct_spectral_bound needs a 3-regular graph")
    return 3.0 * g.n * (6.0 - _lambda_max(g)) / 16.0


def odd_cycle_spectral_closed_form(k: int) -> float:
    """Spectral bound of ``C_{2k+1}`` in closed form."""
    if k < 1:
        raise GraphError("k must be >= 1")
    n = 2 * k + 1
    return n / 2.0 * (1.0 - cos(pi / n))


__all__ = [
    "Spectrum", "Inertia", "jacobi_eigh", "symmetric_eigenvalues", "laplacian_spectrum",
    "integer_rank", "bareiss_determinant", "edge_space_identity_check",
    "transported_modes_check", "matrix_tree_values", "spanning_tree_count", "signed_inertia",
    "spectral_lower_bound", "combined_lower_bound", "active_lower_bound", "regular_bound",
    "cubic_oct_spectral_bound", "odd_cycle_spectral_closed_form",
]
