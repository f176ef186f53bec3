# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of ``rq_positive`` and ``simplex_solve``.

Same contracts as ``_pykernels``; loops are written out over typed
memoryviews because the problems are tiny (n <= 8, a few dozen LP columns)
and per-call numpy overhead dominates.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt, INFINITY, NAN

cdef extern from "complex.h" nogil:
    double cabs(double complex)
    double complex conj(double complex)

cnp.import_array()

DEF OPTIMAL = 0
DEF INFEASIBLE = 1
DEF UNBOUNDED = 2
DEF ITERATION_LIMIT = 3


def rq_positive(g):
    cdef double complex[:, ::1] a = np.array(g, dtype=np.complex128, order="C")
    cdef Py_ssize_t n = a.shape[0]
    cdef double complex[:, ::1] q = np.eye(n, dtype=np.complex128)
    cdef double complex[::1] u = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] w = np.empty(n, dtype=np.complex128)
    cdef Py_ssize_t k, i, j, m
    cdef double nrm, uu, ym
    cdef double complex gamma, phase, s

    for k in range(n - 1, -1, -1):
        m = k + 1
        # y = conj(row k, cols 0..k); reflector P maps y to gamma * e_k
        nrm = 0.0
        for j in range(m):
            u[j] = conj(a[k, j])
            nrm += u[j].real * u[j].real + u[j].imag * u[j].imag
        nrm = sqrt(nrm)
        if nrm == 0.0:
            raise ZeroDivisionError("singular matrix in rq_positive")
        ym = cabs(u[k])
        if ym > 0.0:
            phase = u[k] / ym
        else:
            phase = 1.0
        gamma = -phase * nrm
        u[k] = u[k] - gamma
        uu = 0.0
        for j in range(m):
            uu += u[j].real * u[j].real + u[j].imag * u[j].imag
        if uu == 0.0:
            continue
        # a[0:m, 0:m] <- a P,  P = I - 2 u u^* / uu
        for i in range(m):
            s = 0.0
            for j in range(m):
                s = s + a[i, j] * u[j]
            s = 2.0 * s / uu
            for j in range(m):
                a[i, j] = a[i, j] - s * conj(u[j])
        # q[0:m, :] <- P q
        for j in range(n):
            s = 0.0
            for i in range(m):
                s = s + conj(u[i]) * q[i, j]
            w[j] = 2.0 * s / uu
        for i in range(m):
            for j in range(n):
                q[i, j] = q[i, j] - u[i] * w[j]

    r = np.zeros((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] rv = r
    cdef double complex d
    cdef double dm
    for j in range(n):
        d = a[j, j]
        dm = cabs(d)
        if dm == 0.0:
            raise ZeroDivisionError("singular matrix in rq_positive")
        phase = d / dm
        for i in range(j + 1):
            rv[i, j] = a[i, j] / phase
        rv[j, j] = dm
        for i in range(n):
            q[j, i] = phase * q[j, i]
    return r, np.asarray(q)


cdef void _pivot(double[:, ::1] T, Py_ssize_t[::1] basis, Py_ssize_t r,
                 Py_ssize_t j) nogil:
    cdef Py_ssize_t rows = T.shape[0], cols = T.shape[1], i, k
    cdef double piv = T[r, j], f
    for k in range(cols):
        T[r, k] /= piv
    for i in range(rows):
        if i != r:
            f = T[i, j]
            if f != 0.0:
                for k in range(cols):
                    T[i, k] -= f * T[r, k]
    basis[r] = j


cdef Py_ssize_t _run(double[:, ::1] T, Py_ssize_t[::1] basis,
                     unsigned char[::1] allowed, Py_ssize_t m, Py_ssize_t ncol,
                     double tol, Py_ssize_t max_iter) nogil:
    cdef Py_ssize_t it, j, i, r, jj
    cdef double best, ratio, lim
    for it in range(max_iter):
        j = -1
        for jj in range(ncol):
            if allowed[jj] and T[m, jj] < -tol:
                j = jj
                break
        if j < 0:
            return it
        best = INFINITY
        for i in range(m):
            if T[i, j] > tol:
                ratio = T[i, ncol] / T[i, j]
                if ratio < best:
                    best = ratio
        if best == INFINITY:
            return -2
        lim = best + tol * (fabs(best) if fabs(best) > 1.0 else 1.0)
        r = -1
        for i in range(m):
            if T[i, j] > tol and T[i, ncol] / T[i, j] <= lim:
                if r < 0 or basis[i] < basis[r]:
                    r = i
        _pivot(T, basis, r, j)
    return -1


def simplex_solve(A, b, c, double tol=1e-10, Py_ssize_t max_iter=5000):
    A_ = np.array(A, dtype=np.float64, ndmin=2, order="C")
    b_ = np.array(b, dtype=np.float64, order="C").ravel()
    c_ = np.array(c, dtype=np.float64, order="C").ravel()
    cdef Py_ssize_t m = A_.shape[0], N = A_.shape[1]
    cdef Py_ssize_t ncol = N + m, i, j, it, it2
    sign_ = np.where(b_ < 0.0, -1.0, 1.0)
    cdef double[::1] sign = sign_
    T_ = np.zeros((m + 1, ncol + 1))
    cdef double[:, ::1] T = T_
    cdef double[:, ::1] Av = A_
    cdef double[::1] bv = b_
    cdef double[::1] cv = c_
    cdef double bmax = 0.0, s
    for i in range(m):
        for j in range(N):
            T[i, j] = Av[i, j] * sign[i]
            T[m, j] -= T[i, j]
        T[i, N + i] = 1.0
        T[i, ncol] = bv[i] * sign[i]
        T[m, ncol] -= T[i, ncol]
        if fabs(bv[i]) > bmax:
            bmax = fabs(bv[i])
    basis_ = np.arange(N, ncol, dtype=np.intp)
    cdef Py_ssize_t[::1] basis = basis_
    allowed_ = np.ones(ncol, dtype=np.uint8)
    cdef unsigned char[::1] allowed = allowed_
    x_ = np.zeros(N)
    y_ = np.zeros(m)

    it = _run(T, basis, allowed, m, ncol, tol, max_iter)
    if it < 0:
        return ITERATION_LIMIT, x_, y_, NAN
    if -T[m, ncol] > tol * (bmax if bmax > 1.0 else 1.0) * 10:
        return INFEASIBLE, x_, y_, -T[m, ncol]

    for i in range(m):
        if basis[i] >= N:
            for j in range(N):
                if fabs(T[i, j]) > tol:
                    _pivot(T, basis, i, j)
                    break
    for j in range(N, ncol):
        allowed[j] = 0

    cost_ = np.zeros(ncol)
    cost_[:N] = c_
    cdef double[::1] cost = cost_
    for j in range(ncol + 1):
        s = cost[j] if j < ncol else 0.0
        for i in range(m):
            s -= cost[basis[i]] * T[i, j]
        T[m, j] = s

    it2 = _run(T, basis, allowed, m, ncol, tol, max_iter - it)
    if it2 == -2:
        return UNBOUNDED, x_, y_, -INFINITY
    if it2 < 0:
        return ITERATION_LIMIT, x_, y_, NAN

    cdef double[::1] x = x_
    cdef double[::1] y = y_
    cdef double obj = 0.0
    for i in range(m):
        if basis[i] < N:
            x[basis[i]] = T[i, ncol]
    for j in range(m):
        s = 0.0
        for i in range(m):
            s += cost[basis[i]] * T[i, N + j]
        y[j] = s * sign[j]
    for j in range(N):
        obj += cv[j] * x[j]
    return OPTIMAL, x_, y_, obj
