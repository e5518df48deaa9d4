"""Independent eigenvalue oracles used to cross-check the QL solver.

* :func:`jacobi_eigenvalues` -- cyclic Jacobi rotations, practical to N ~ 50.
* :func:`charpoly_eigenvalues` -- exact characteristic polynomial by cofactor
  expansion over rationals, roots isolated with Sturm sequences.  N <= 6.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def jacobi_eigenvalues(A, tol: float = 1e-15, max_sweeps: int = 100) -> np.ndarray:
    a = np.array(A, dtype=float)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= tol * max(np.linalg.norm(a), 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    t = apq / diff  # theta would overflow; this is its limit
                else:
                    theta = diff / (2.0 * apq)
                    t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.hypot(t, 1.0)
                s = t * c
                rp = a[p].copy()
                rq = a[q].copy()
                a[p] = c * rp - s * rq
                a[q] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi sweeps did not converge")
    return np.sort(np.diag(a))


# Polynomials are lists of Fractions, lowest degree first.

def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _add(p, q):
    out = [Fraction(0)] * max(len(p), len(q))
    for i, a in enumerate(p):
        out[i] += a
    for i, a in enumerate(q):
        out[i] += a
    return _trim(out)


def _mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _scale(p, k):
    return _trim([a * k for a in p])


def _divmod(p, q):
    p = list(p)
    dq = len(q) - 1
    quot = [Fraction(0)] * max(len(p) - dq, 1)
    while len(p) - 1 >= dq and any(p):
        k = p[-1] / q[-1]
        shift = len(p) - 1 - dq
        quot[shift] = k
        for i, b in enumerate(q):
            p[shift + i] -= k * b
        p.pop()
        if not p:
            p = [Fraction(0)]
    return _trim(quot), _trim(p)


def _gcd(p, q):
    while any(q):
        _, r = _divmod(p, q)
        p, q = q, r
    return _scale(p, 1 / p[-1])


def _deriv(p):
    return _trim([i * a for i, a in enumerate(p)][1:] or [Fraction(0)])


def _eval(p, x):
    acc = Fraction(0)
    for a in reversed(p):
        acc = acc * x + a
    return acc


def characteristic_polynomial(A) -> list[Fraction]:
    """``det(lambda I - A)`` by cofactor expansion along the first row."""
    n = len(A)
    entries = [[Fraction(float(A[i][j])) for j in range(n)] for i in range(n)]

    def elem(i, j):
        return [-entries[i][j], Fraction(1)] if i == j else [-entries[i][j]]

    def det(rows, cols):
        if len(rows) == 1:
            return elem(rows[0], cols[0])
        total = [Fraction(0)]
        r = rows[0]
        for k, col in enumerate(cols):
            minor = det(rows[1:], cols[:k] + cols[k + 1:])
            term = _mul(elem(r, col), minor)
            total = _add(total, term if k % 2 == 0 else _scale(term, -1))
        return total

    return det(list(range(n)), list(range(n)))


def _squarefree_factors(p):
    """Yun's algorithm: returns ``[(factor, multiplicity), ...]``."""
    out = []
    dp = _deriv(p)
    a = _gcd(p, dp)
    b, _ = _divmod(p, a)
    c, _ = _divmod(dp, a)
    d = _add(c, _scale(_deriv(b), -1))
    i = 1
    while len(b) > 1:
        g = _gcd(b, d)
        if len(g) > 1:
            out.append((g, i))
        b, _ = _divmod(b, g)
        c, _ = _divmod(d, g)
        d = _add(c, _scale(_deriv(b), -1))
        i += 1
    return out


def _sturm_chain(p):
    chain = [p, _deriv(p)]
    while len(chain[-1]) > 1 or chain[-1][0] != 0:
        _, r = _divmod(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(_scale(r, -1))
    return chain


def _sign_changes(chain, x):
    signs = [s for s in (_eval(q, x) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def charpoly_eigenvalues(A, tol: float = 1e-13) -> np.ndarray:
    """All eigenvalues with multiplicity, located by exact Sturm bisection."""
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    if n > 8:
        raise ValueError("cofactor expansion oracle is limited to small matrices")
    p = characteristic_polynomial(A)
    radius = float(np.abs(A).sum(axis=1).max()) + 1.0
    roots = []
    for factor, mult in _squarefree_factors(p):
        chain = _sturm_chain(factor)
        lo0, hi0 = Fraction(-radius), Fraction(radius)
        count = lambda a, b: _sign_changes(chain, a) - _sign_changes(chain, b)
        stack = [(lo0, hi0)]
        while stack:
            lo, hi = stack.pop()
            k = count(lo, hi)
            if k == 0:
                continue
            if k == 1 and hi - lo <= Fraction(tol) * (1 + abs(lo)):
                roots.extend([float((lo + hi) / 2)] * mult)
                continue
            mid = Fraction((float(lo) + float(hi)) / 2)
            if not lo < mid < hi:
                roots.extend([float((lo + hi) / 2)] * (k * mult))
                continue
            if _eval(factor, mid) == 0:
                roots.extend([float(mid)] * mult)
                eps = (hi - lo) / 2**20
                # shrink the excluded window until it isolates this root alone
                while (_eval(factor, mid - eps) == 0 or _eval(factor, mid + eps) == 0
                       or count(mid - eps, mid + eps) != 1):
                    eps /= 2
                stack.append((lo, mid - eps))
                stack.append((mid + eps, hi))
                continue
            stack.append((lo, mid))
            stack.append((mid, hi))
    return np.sort(np.array(roots))
