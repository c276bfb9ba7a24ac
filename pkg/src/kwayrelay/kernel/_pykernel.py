"""Pure-Python reference implementation of the dense complex kernels.

Used when the compiled extension is unavailable (or forced via the
KWAYRELAY_PURE environment variable).  Operates on nested lists of Python
complex numbers; the package-level wrappers in ``kernel/__init__`` handle
numpy conversion.

Algorithms: LU with partial pivoting for inversion, phase-fixed power
iteration for the dominant eigenpair, and cyclic Hermitian Jacobi on A^H A
for the smallest singular value.
"""

import cmath
import math

from ..errors import NoConvergence, SingularMatrix

PIVOT_RTOL = 1e-14
POWER_ITER_CAP = 10_000
POWER_ITER_TOL = 1e-12
JACOBI_SWEEP_CAP = 60


def lu_invert(rows):
    """Invert a square matrix given as a list of row lists."""
    n = len(rows)
    a = [list(r) for r in rows]
    amax = max((abs(x) for r in rows for x in r), default=0.0)
    if amax == 0.0:
        raise SingularMatrix("zero matrix")
    threshold = PIVOT_RTOL * amax
    perm = list(range(n))
    # Doolittle LU with partial pivoting, factors stored in place.
    for k in range(n):
        p = max(range(k, n), key=lambda i: abs(a[i][k]))
        if abs(a[p][k]) <= threshold:
            raise SingularMatrix("no usable pivot at column %d" % k)
        if p != k:
            a[k], a[p] = a[p], a[k]
            perm[k], perm[p] = perm[p], perm[k]
        piv = a[k][k]
        for i in range(k + 1, n):
            m = a[i][k] / piv
            a[i][k] = m
            for j in range(k + 1, n):
                a[i][j] -= m * a[k][j]
    inv = [[0j] * n for _ in range(n)]
    for col in range(n):
        # Solve A x = e_col via permuted forward/back substitution.
        y = [0j] * n
        for i in range(n):
            s = 1.0 + 0j if perm[i] == col else 0j
            for j in range(i):
                s -= a[i][j] * y[j]
            y[i] = s
        x = [0j] * n
        for i in range(n - 1, -1, -1):
            s = y[i]
            for j in range(i + 1, n):
                s -= a[i][j] * x[j]
            x[i] = s / a[i][i]
        for i in range(n):
            inv[i][col] = x[i]
    return inv


def _matvec(rows, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in rows]


def dominant_eigenpair(rows):
    """Dominant eigenpair by power iteration with a deterministic start.

    The iterate is unit-normalized and phase-fixed (largest-modulus entry
    made real positive) so that complex dominant eigenvalues still give a
    convergent vector sequence.
    """
    n = len(rows)
    f = [1.0 / math.sqrt(n) + 0j] * n
    lam = 0j
    for _ in range(POWER_ITER_CAP):
        w = _matvec(rows, f)
        lam = sum(f[i].conjugate() * w[i] for i in range(n))
        norm = math.sqrt(sum(abs(x) ** 2 for x in w))
        if norm == 0.0:
            raise SingularMatrix("matrix annihilates the start vector")
        w = [x / norm for x in w]
        pk = max(range(n), key=lambda i: abs(w[i]))
        phase = w[pk] / abs(w[pk])
        w = [x / phase for x in w]
        delta = max(abs(w[i] - f[i]) for i in range(n))
        f = w
        if delta < POWER_ITER_TOL:
            w2 = _matvec(rows, f)
            lam = sum(f[i].conjugate() * w2[i] for i in range(n))
            return lam, f
    raise NoConvergence("power iteration cap reached")


def min_singular(rows):
    """Smallest singular value via Hermitian Jacobi on the Gram matrix."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    if m == 0 or n == 0:
        return 0.0
    if m >= n:
        # B = A^H A, n x n
        b = [[sum(rows[k][i].conjugate() * rows[k][j] for k in range(m))
              for j in range(n)] for i in range(n)]
    else:
        # B = A A^H, m x m (same nonzero spectrum, smaller problem)
        b = [[sum(rows[i][k] * rows[j][k].conjugate() for k in range(n))
              for j in range(m)] for i in range(m)]
        n = m
    eigs = _jacobi_eigenvalues(b, n)
    return math.sqrt(max(0.0, min(eigs)))


def _jacobi_eigenvalues(b, n):
    if n == 1:
        return [b[0][0].real]
    scale = max(abs(b[i][j]) for i in range(n) for j in range(n))
    if scale == 0.0:
        return [0.0] * n
    tol = 1e-30 * scale
    for _ in range(JACOBI_SWEEP_CAP):
        off = max(abs(b[p][q]) for p in range(n) for q in range(p + 1, n))
        if off <= tol:
            break
        for p in range(n):
            for q in range(p + 1, n):
                z = b[p][q]
                h = abs(z)
                if h <= tol:
                    continue
                phi = z / h
                app = b[p][p].real
                aqq = b[q][q].real
                tau = (aqq - app) / (2.0 * h)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                # Unitary J: J[p][p]=c, J[p][q]=s, J[q][p]=-s*conj(phi),
                # J[q][q]=c*conj(phi); update B <- J^H B J.
                for k in range(n):
                    if k == p or k == q:
                        continue
                    bkp = b[k][p]
                    bkq = b[k][q]
                    b[k][p] = c * bkp - s * phi.conjugate() * bkq
                    b[k][q] = s * bkp + c * phi.conjugate() * bkq
                    b[p][k] = b[k][p].conjugate()
                    b[q][k] = b[k][q].conjugate()
                b[p][p] = complex(c * c * app - 2.0 * c * s * h + s * s * aqq)
                b[q][q] = complex(s * s * app + 2.0 * c * s * h + c * c * aqq)
                b[p][q] = 0j
                b[q][p] = 0j
    return [b[i][i].real for i in range(n)]
