# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the dense complex kernels.

Mirrors _pykernel exactly (same algorithms, same constants) but runs on
C buffers; selected at import by kwayrelay.kernel when available.
"""

from libc.stdlib cimport malloc, free
from libc.math cimport sqrt

cimport cython

from ..errors import NoConvergence, SingularMatrix

cdef double PIVOT_RTOL = 1e-14
cdef int POWER_ITER_CAP = 10000
cdef double POWER_ITER_TOL = 1e-12
cdef int JACOBI_SWEEP_CAP = 60


cdef inline double cabs2(double complex z) nogil:
    return z.real * z.real + z.imag * z.imag


def lu_invert(double complex[:, ::1] a_in, double complex[:, ::1] out):
    """Invert a_in (n x n) into out via LU with partial pivoting."""
    cdef Py_ssize_t n = a_in.shape[0]
    cdef Py_ssize_t i, j, k, p, col
    cdef double amax = 0.0, v, threshold, best
    cdef double complex piv, m, s
    cdef double complex *a = <double complex *> malloc(n * n * sizeof(double complex))
    cdef double complex *y = <double complex *> malloc(n * sizeof(double complex))
    cdef double complex *x = <double complex *> malloc(n * sizeof(double complex))
    cdef Py_ssize_t *perm = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
    if a == NULL or y == NULL or x == NULL or perm == NULL:
        free(a); free(y); free(x); free(perm)
        raise MemoryError()
    try:
        for i in range(n):
            perm[i] = i
            for j in range(n):
                a[i * n + j] = a_in[i, j]
                v = abs(a_in[i, j])
                if v > amax:
                    amax = v
        if amax == 0.0:
            raise SingularMatrix("zero matrix")
        threshold = PIVOT_RTOL * amax
        for k in range(n):
            p = k
            best = abs(a[k * n + k])
            for i in range(k + 1, n):
                v = abs(a[i * n + k])
                if v > best:
                    best = v
                    p = i
            if best <= threshold:
                raise SingularMatrix("no usable pivot at column %d" % k)
            if p != k:
                for j in range(n):
                    m = a[k * n + j]
                    a[k * n + j] = a[p * n + j]
                    a[p * n + j] = m
                i = perm[k]; perm[k] = perm[p]; perm[p] = i
            piv = a[k * n + k]
            for i in range(k + 1, n):
                m = a[i * n + k] / piv
                a[i * n + k] = m
                for j in range(k + 1, n):
                    a[i * n + j] = a[i * n + j] - m * a[k * n + j]
        for col in range(n):
            for i in range(n):
                s = 1.0 if perm[i] == col else 0.0
                for j in range(i):
                    s = s - a[i * n + j] * y[j]
                y[i] = s
            for i in range(n - 1, -1, -1):
                s = y[i]
                for j in range(i + 1, n):
                    s = s - a[i * n + j] * x[j]
                x[i] = s / a[i * n + i]
            for i in range(n):
                out[i, col] = x[i]
    finally:
        free(a); free(y); free(x); free(perm)


def dominant_eigenpair(double complex[:, ::1] a, double complex[::1] f_out):
    """Power iteration with phase-fixed iterates; returns the eigenvalue."""
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i, j, pk
    cdef int it
    cdef double norm, delta, d, best
    cdef double complex lam, phase, s
    cdef double complex *f = <double complex *> malloc(n * sizeof(double complex))
    cdef double complex *w = <double complex *> malloc(n * sizeof(double complex))
    if f == NULL or w == NULL:
        free(f); free(w)
        raise MemoryError()
    try:
        for i in range(n):
            f[i] = 1.0 / sqrt(<double> n)
        for it in range(POWER_ITER_CAP):
            for i in range(n):
                s = 0.0
                for j in range(n):
                    s = s + a[i, j] * f[j]
                w[i] = s
            norm = 0.0
            for i in range(n):
                norm += cabs2(w[i])
            norm = sqrt(norm)
            if norm == 0.0:
                raise SingularMatrix("matrix annihilates the start vector")
            pk = 0
            best = 0.0
            for i in range(n):
                w[i] = w[i] / norm
                d = cabs2(w[i])
                if d > best:
                    best = d
                    pk = i
            phase = w[pk] / abs(w[pk])
            delta = 0.0
            for i in range(n):
                w[i] = w[i] / phase
                d = abs(w[i] - f[i])
                if d > delta:
                    delta = d
                f[i] = w[i]
            if delta < POWER_ITER_TOL:
                lam = 0.0
                for i in range(n):
                    s = 0.0
                    for j in range(n):
                        s = s + a[i, j] * f[j]
                    lam = lam + f[i].conjugate() * s
                for i in range(n):
                    f_out[i] = f[i]
                return lam
        raise NoConvergence("power iteration cap reached")
    finally:
        free(f); free(w)


def min_singular(double complex[:, ::1] a):
    """Smallest singular value via Hermitian Jacobi on the Gram matrix."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t ncols = a.shape[1]
    cdef Py_ssize_t n, i, j, k, p, q
    cdef int sweep
    cdef double scale, tol, off, h, app, aqq, tau, t, c, sv, v, emin
    cdef double complex z, phi, bkp, bkq, s
    if m == 0 or ncols == 0:
        return 0.0
    n = ncols if m >= ncols else m
    cdef double complex *b = <double complex *> malloc(n * n * sizeof(double complex))
    if b == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            for j in range(n):
                s = 0.0
                if m >= ncols:
                    for k in range(m):
                        s = s + a[k, i].conjugate() * a[k, j]
                else:
                    for k in range(ncols):
                        s = s + a[i, k] * a[j, k].conjugate()
                b[i * n + j] = s
        if n == 1:
            v = b[0].real
            return sqrt(v) if v > 0.0 else 0.0
        scale = 0.0
        for i in range(n * n):
            v = abs(b[i])
            if v > scale:
                scale = v
        if scale == 0.0:
            return 0.0
        tol = 1e-30 * scale
        for sweep in range(JACOBI_SWEEP_CAP):
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    v = abs(b[p * n + q])
                    if v > off:
                        off = v
            if off <= tol:
                break
            for p in range(n):
                for q in range(p + 1, n):
                    z = b[p * n + q]
                    h = abs(z)
                    if h <= tol:
                        continue
                    phi = z / h
                    app = b[p * n + p].real
                    aqq = b[q * n + q].real
                    tau = (aqq - app) / (2.0 * h)
                    if tau >= 0.0:
                        t = 1.0 / (tau + sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + sqrt(1.0 + tau * tau))
                    c = 1.0 / sqrt(1.0 + t * t)
                    sv = t * c
                    for k in range(n):
                        if k == p or k == q:
                            continue
                        bkp = b[k * n + p]
                        bkq = b[k * n + q]
                        b[k * n + p] = c * bkp - sv * phi.conjugate() * bkq
                        b[k * n + q] = sv * bkp + c * phi.conjugate() * bkq
                        b[p * n + k] = b[k * n + p].conjugate()
                        b[q * n + k] = b[k * n + q].conjugate()
                    b[p * n + p] = c * c * app - 2.0 * c * sv * h + sv * sv * aqq
                    b[q * n + q] = sv * sv * app + 2.0 * c * sv * h + c * c * aqq
                    b[p * n + q] = 0.0
                    b[q * n + p] = 0.0
        emin = b[0].real
        for i in range(1, n):
            v = b[i * n + i].real
            if v < emin:
                emin = v
        return sqrt(emin) if emin > 0.0 else 0.0
    finally:
        free(b)
