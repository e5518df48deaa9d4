"""Dense symmetric eigensolver and the :class:`Spectrum` it produces.

Householder reduction to tridiagonal form, then implicit QL with Wilkinson
shifts (the classical ``tred2``/``tql2`` pairing).  Eigenvectors of ``A``
are mapped back to eigenfunctions ``f = v / sqrt(m)``, which are orthonormal
in ``l^2(X, m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numba
import numpy as np

from .operator import OperatorMatrix

MAX_QL_ITERATIONS = 30
RESIDUAL_FACTOR = 1e-9
CLUSTER_GAP = 1e-8


class EigensolveError(RuntimeError):
    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True, eq=False)
class Spectrum:
    lambdas: np.ndarray
    vectors: np.ndarray
    """Unit eigenvectors of ``A``; column ``n`` belongs to ``lambdas[n]``."""
    m: np.ndarray
    residuals: np.ndarray

    @property
    def size(self) -> int:
        return self.lambdas.size

    @property
    def eigenfunctions(self) -> np.ndarray:
        """Column ``n`` is ``f_n``, normalized in ``l^2(X, m)``."""
        return self.vectors / np.sqrt(self.m)[:, None]

    @property
    def residual_bound(self) -> float:
        return float(self.residuals.max()) if self.residuals.size else 0.0

    def simple(self, n: int, rel_gap: float = CLUSTER_GAP) -> bool:
        """Whether the 0-based eigenvalue ``n`` is separated from its neighbours."""
        lam = self.lambdas
        tol = rel_gap * (1.0 + abs(lam[n]))
        left = n == 0 or lam[n] - lam[n - 1] >= tol
        right = n == lam.size - 1 or lam[n + 1] - lam[n] >= tol
        return left and right


def tridiagonalize(A: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(d, e, Q)`` with ``A = Q T Q^T``; ``e[k]`` couples ``k`` and ``k+1``."""
    a = np.array(A, dtype=float)
    n = a.shape[0]
    Q = np.eye(n)
    for k in range(n - 2):
        x = a[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        alpha = -math.copysign(math.hypot(x[0], tail), x[0])
        v = x.copy()
        v[0] -= alpha
        v /= np.linalg.norm(v)
        sub = a[k + 1:, k + 1:]
        p = sub @ v
        q = p - (v @ p) * v
        sub -= 2.0 * (np.outer(v, q) + np.outer(q, v))
        a[k + 1:, k] = 0.0
        a[k, k + 1:] = 0.0
        a[k + 1, k] = a[k, k + 1] = alpha
        Qs = Q[:, k + 1:]
        Qs -= 2.0 * np.outer(Qs @ v, v)
    d = np.diag(a).copy()
    e = np.diag(a, 1).copy() if n > 1 else np.zeros(0)
    return d, e, Q


@numba.njit(cache=True)
def _ql_sweeps(d, e, Zt, budget):
    """In-place QL on ``(d, e)``; returns -1, or the index whose budget ran out."""
    n = d.size
    eps = np.finfo(np.float64).eps
    for l in range(n):
        while True:
            m = l
            while m < n - 1:
                if abs(e[m]) <= eps * (abs(d[m]) + abs(d[m + 1])):
                    break
                m += 1
            if m == l:
                break
            if budget == 0:
                return l
            budget -= 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            underflow = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    underflow = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                for k in range(Zt.shape[1]):
                    zi = Zt[i, k]
                    zj = Zt[i + 1, k]
                    Zt[i, k] = c * zi - s * zj
                    Zt[i + 1, k] = s * zi + c * zj
                i -= 1
            if underflow:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def tridiagonal_ql(d: np.ndarray, e: np.ndarray, Z: np.ndarray,
                   max_iter: int = MAX_QL_ITERATIONS) -> tuple[np.ndarray, np.ndarray]:
    """Implicit QL with Wilkinson shifts on the tridiagonal ``(d, e)``.

    Rotations are accumulated into the columns of ``Z``.  Returns unsorted
    eigenvalues and the matching eigenvector matrix.  The sweep budget is
    ``max_iter`` per eigenvalue, pooled over the whole matrix as in LAPACK's
    ``steqr``: graded matrices may spend more than ``max_iter`` on one index.
    """
    n = d.size
    d = np.array(d, dtype=np.float64)
    e = np.append(np.asarray(e, dtype=np.float64), 0.0)
    Zt = np.ascontiguousarray(np.array(Z, dtype=np.float64).T)
    failed = _ql_sweeps(d, e, Zt, max_iter * n)
    if failed >= 0:
        raise EigensolveError(
            f"QL iteration budget ({max_iter * n} sweeps) exhausted at eigenvalue {failed}",
            index=int(failed),
        )
    return d, Zt.T


def _orthonormalize_clusters(lam: np.ndarray, V: np.ndarray) -> None:
    n = lam.size
    start = 0
    while start < n:
        stop = start + 1
        while stop < n and lam[stop] - lam[stop - 1] < CLUSTER_GAP * (1.0 + abs(lam[stop])):
            stop += 1
        if stop - start > 1:
            for j in range(start, stop):
                v = V[:, j]
                for k in range(start, j):
                    v -= (V[:, k] @ v) * V[:, k]
                v /= np.linalg.norm(v)
        start = stop


def _fix_signs(V: np.ndarray) -> None:
    for j in range(V.shape[1]):
        k = int(np.argmax(np.abs(V[:, j])))
        if V[k, j] < 0:
            V[:, j] *= -1.0


def symmetric_eig(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Ascending eigenvalues and orthonormal eigenvectors of a symmetric matrix."""
    A = np.asarray(A, dtype=float)
    if A.shape[0] == 0:
        return np.zeros(0), np.zeros((0, 0))
    d, e, Q = tridiagonalize(A)
    lam, V = tridiagonal_ql(d, e, Q)
    order = np.argsort(lam, kind="stable")
    lam = lam[order]
    V = V[:, order]
    _orthonormalize_clusters(lam, V)
    _fix_signs(V)
    return lam, V


def eigendecompose(op: OperatorMatrix) -> Spectrum:
    A = op.A
    lam, V = symmetric_eig(A)
    residuals = np.linalg.norm(A @ V - V * lam, axis=0)
    bound = RESIDUAL_FACTOR * (1.0 + op.norm_inf())
    bad = np.flatnonzero(residuals > bound)
    if bad.size:
        raise EigensolveError(
            f"residual {residuals[bad[0]]:.3e} exceeds {bound:.3e} for eigenvalue {bad[0]}",
            index=int(bad[0]),
        )
    for arr in (lam, V, residuals):
        arr.setflags(write=False)
    return Spectrum(lambdas=lam, vectors=V, m=op.m, residuals=residuals)


def eigenvalue_counting(spec: Spectrum | np.ndarray, t: float) -> int:
    """``#{n : lambda_n <= t}``."""
    lam = spec.lambdas if isinstance(spec, Spectrum) else np.asarray(spec)
    return int(np.searchsorted(lam, t, side="right"))
