"""Reference (uncompiled) implementations of the hot kernels.

The compiled module ``_ckernels`` mirrors these two functions exactly; the
test-suite runs both against each other.
"""
import numpy as np

OPTIMAL, INFEASIBLE, UNBOUNDED, ITERATION_LIMIT = 0, 1, 2, 3


def rq_positive(g):
    """Factor a square complex matrix as ``g = R @ Q``.

    ``R`` is upper triangular with a strictly positive real diagonal and ``Q``
    is unitary. Householder based (via QR of the flipped adjoint), so the
    condition number of ``g`` is not squared.

    Raises
    ------
    ZeroDivisionError
        If ``g`` is numerically singular.
    """
    g = np.asarray(g, dtype=np.complex128)
    n = g.shape[0]
    flip = g[::-1, :].conj().T
    q1, r1 = np.linalg.qr(flip)
    r = r1.conj().T[::-1, ::-1]
    q = q1.conj().T[::-1, :]
    d = np.diagonal(r).copy()
    mags = np.abs(d)
    if not np.all(mags > 0.0):
        raise ZeroDivisionError("singular matrix in rq_positive")
    phase = d / mags
    r = r / phase[np.newaxis, :]
    q = phase[:, np.newaxis] * q
    # exact triangularity
    r[np.tril_indices(n, -1)] = 0.0
    return r, q


def simplex_solve(A, b, c, tol=1e-10, max_iter=5000):
    """Dense two-phase tableau simplex with Bland's rule.

    Solves ``min c.x  s.t.  A x = b, x >= 0``.

    Returns ``(status, x, y, obj)`` where ``y`` are the equality duals
    (``A.T y <= c`` at optimality) and ``status`` is one of ``OPTIMAL``,
    ``INFEASIBLE``, ``UNBOUNDED``, ``ITERATION_LIMIT``. For infeasible
    problems ``obj`` carries the phase-one residual.
    """
    A = np.array(A, dtype=np.float64, ndmin=2)
    b = np.array(b, dtype=np.float64).ravel()
    c = np.array(c, dtype=np.float64).ravel()
    m, N = A.shape
    sign = np.where(b < 0.0, -1.0, 1.0)
    A = A * sign[:, None]
    b = b * sign

    ncol = N + m
    T = np.zeros((m + 1, ncol + 1))
    T[:m, :N] = A
    T[:m, N:ncol] = np.eye(m)
    T[:m, ncol] = b
    T[m, :N] = -A.sum(axis=0)
    T[m, ncol] = -b.sum()
    basis = np.arange(N, ncol)
    allowed = np.ones(ncol, dtype=bool)
    x = np.zeros(N)
    y = np.zeros(m)

    it = _run(T, basis, allowed, m, ncol, tol, max_iter)
    if it < 0:
        return ITERATION_LIMIT, x, y, np.nan
    feas_tol = tol * max(1.0, float(np.abs(b).max(initial=0.0)))
    if -T[m, ncol] > feas_tol * 10:
        return INFEASIBLE, x, y, -T[m, ncol]

    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= N:
            for j in range(N):
                if abs(T[i, j]) > tol:
                    _pivot(T, basis, i, j)
                    break
    allowed[N:] = False

    cost = np.zeros(ncol)
    cost[:N] = c
    cb = cost[basis]
    T[m, :ncol] = cost - cb @ T[:m, :ncol]
    T[m, ncol] = -(cb @ T[:m, ncol])

    it2 = _run(T, basis, allowed, m, ncol, tol, max_iter - it)
    if it2 == -2:
        return UNBOUNDED, x, y, -np.inf
    if it2 < 0:
        return ITERATION_LIMIT, x, y, np.nan

    for i in range(m):
        if basis[i] < N:
            x[basis[i]] = T[i, ncol]
    cb = cost[basis]
    y = (cb @ T[:m, N:ncol]) * sign
    return OPTIMAL, x, y, float(c @ x)


def _pivot(T, basis, r, j):
    T[r] /= T[r, j]
    col = T[:, j].copy()
    col[r] = 0.0
    T -= np.outer(col, T[r])
    basis[r] = j


def _run(T, basis, allowed, m, ncol, tol, max_iter):
    """Bland-rule pivoting; returns iterations used, -1 on cap, -2 if unbounded."""
    for it in range(max_iter):
        d = T[m, :ncol]
        cand = np.flatnonzero((d < -tol) & allowed)
        if cand.size == 0:
            return it
        j = cand[0]
        colj = T[:m, j]
        pos = colj > tol
        if not pos.any():
            return -2
        ratios = np.full(m, np.inf)
        ratios[pos] = T[:m, ncol][pos] / colj[pos]
        best = ratios.min()
        ties = np.flatnonzero(ratios <= best + tol * max(1.0, abs(best)))
        r = ties[np.argmin(basis[ties])]
        _pivot(T, basis, r, j)
    return -1
