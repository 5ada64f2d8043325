"""Pure-Python numeric kernels.

All kernels operate on flat row-major lists (``float`` for the ``r``-prefixed
functions, ``complex`` for the ``c``-prefixed ones).  ``nrloop._kernels_cy``
is a compiled twin with identical semantics and operation order;
``nrloop.backend`` selects one of the two at import time.
"""

import cmath
import math

from .errors import ConvergenceError, SingularMatrixError
from .tolerances import EXPM_RELTOL, SINGULAR_PIVOT_REL

_JACOBI_MAX_SWEEPS = 60
_QR_MAX_ITER_PER_EIG = 60
_EXPM_MAX_TERMS = 64


def rmul(a, b, n, m, p):
    """Product of an n x m and an m x p real matrix."""
    out = [0.0] * (n * p)
    for i in range(n):
        ia = i * m
        io = i * p
        for k in range(m):
            aik = a[ia + k]
            if aik == 0.0:
                continue
            kb = k * p
            for j in range(p):
                out[io + j] += aik * b[kb + j]
    return out


def cmul(a, b, n, m, p):
    """Product of an n x m and an m x p complex matrix."""
    out = [0j] * (n * p)
    for i in range(n):
        ia = i * m
        io = i * p
        for k in range(m):
            aik = a[ia + k]
            if aik == 0:
                continue
            kb = k * p
            for j in range(p):
                out[io + j] += aik * b[kb + j]
    return out


def rsolve(a, b, n, p):
    """Solve A X = B (A real n x n, B real n x p) via partial-pivot Gaussian
    elimination.  Raises :class:`SingularMatrixError` when a pivot falls at or
    below ``SINGULAR_PIVOT_REL`` times the largest input magnitude."""
    w = n + p
    aug = [0.0] * (n * w)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            v = a[i * n + j]
            av = v if v >= 0.0 else -v
            if av > scale:
                scale = av
            aug[i * w + j] = v
        for j in range(p):
            aug[i * w + n + j] = b[i * p + j]
    thresh = SINGULAR_PIVOT_REL * scale

    for col in range(n):
        piv_row = col
        piv_mag = abs(aug[col * w + col])
        for r in range(col + 1, n):
            mag = abs(aug[r * w + col])
            if mag > piv_mag:
                piv_mag = mag
                piv_row = r
        if piv_mag <= thresh:
            raise SingularMatrixError(piv_mag)
        if piv_row != col:
            rc = col * w
            rp = piv_row * w
            for j in range(col, w):
                aug[rc + j], aug[rp + j] = aug[rp + j], aug[rc + j]
        piv = aug[col * w + col]
        for r in range(col + 1, n):
            f = aug[r * w + col] / piv
            if f == 0.0:
                continue
            aug[r * w + col] = 0.0
            for j in range(col + 1, w):
                aug[r * w + j] -= f * aug[col * w + j]

    x = [0.0] * (n * p)
    for col in range(n - 1, -1, -1):
        inv_piv = 1.0 / aug[col * w + col]
        for j in range(p):
            s = aug[col * w + n + j]
            for k in range(col + 1, n):
                s -= aug[col * w + k] * x[k * p + j]
            x[col * p + j] = s * inv_piv
    return x


def csolve(a, b, n, p):
    """Complex counterpart of :func:`rsolve`."""
    w = n + p
    aug = [0j] * (n * w)
    scale = 0.0
    for i in range(n):
        for j in range(n):
            v = a[i * n + j]
            av = abs(v)
            if av > scale:
                scale = av
            aug[i * w + j] = v
        for j in range(p):
            aug[i * w + n + j] = b[i * p + j]
    thresh = SINGULAR_PIVOT_REL * scale

    for col in range(n):
        piv_row = col
        piv_mag = abs(aug[col * w + col])
        for r in range(col + 1, n):
            mag = abs(aug[r * w + col])
            if mag > piv_mag:
                piv_mag = mag
                piv_row = r
        if piv_mag <= thresh:
            raise SingularMatrixError(piv_mag)
        if piv_row != col:
            rc = col * w
            rp = piv_row * w
            for j in range(col, w):
                aug[rc + j], aug[rp + j] = aug[rp + j], aug[rc + j]
        piv = aug[col * w + col]
        for r in range(col + 1, n):
            f = aug[r * w + col] / piv
            if f == 0:
                continue
            aug[r * w + col] = 0j
            for j in range(col + 1, w):
                aug[r * w + j] -= f * aug[col * w + j]

    x = [0j] * (n * p)
    for col in range(n - 1, -1, -1):
        inv_piv = 1.0 / aug[col * w + col]
        for j in range(p):
            s = aug[col * w + n + j]
            for k in range(col + 1, n):
                s -= aug[col * w + k] * x[k * p + j]
            x[col * p + j] = s * inv_piv
    return x


def rinv(a, n):
    eye = [0.0] * (n * n)
    for i in range(n):
        eye[i * n + i] = 1.0
    return rsolve(a, eye, n, n)


def cinv(a, n):
    eye = [0j] * (n * n)
    for i in range(n):
        eye[i * n + i] = 1.0 + 0j
    return csolve(a, eye, n, n)


def rdet(a, n):
    """Determinant via partial-pivot LU.  Returns 0.0 for singular input."""
    lu = list(a)
    det = 1.0
    for col in range(n):
        piv_row = col
        piv_mag = abs(lu[col * n + col])
        for r in range(col + 1, n):
            mag = abs(lu[r * n + col])
            if mag > piv_mag:
                piv_mag = mag
                piv_row = r
        if piv_mag == 0.0:
            return 0.0
        if piv_row != col:
            det = -det
            rc = col * n
            rp = piv_row * n
            for j in range(col, n):
                lu[rc + j], lu[rp + j] = lu[rp + j], lu[rc + j]
        piv = lu[col * n + col]
        det *= piv
        for r in range(col + 1, n):
            f = lu[r * n + col] / piv
            if f == 0.0:
                continue
            for j in range(col + 1, n):
                lu[r * n + j] -= f * lu[col * n + j]
    return det


def jacobi_eig(a, n):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with eigenvalues ascending and the flat
    row-major ``vectors`` holding the k-th orthonormal eigenvector in column
    k.  The caller is responsible for (near-)symmetry; the kernel works on
    the symmetrized part.
    """
    w = [0.0] * (n * n)
    anorm = 0.0
    for i in range(n):
        for j in range(n):
            v = 0.5 * (a[i * n + j] + a[j * n + i])
            w[i * n + j] = v
            av = v if v >= 0.0 else -v
            if av > anorm:
                anorm = av
    v = [0.0] * (n * n)
    for i in range(n):
        v[i * n + i] = 1.0
    if anorm == 0.0 or n == 1:
        vals = [w[i * n + i] for i in range(n)]
        return vals, v

    stop = 1e-15 * anorm
    for _ in range(_JACOBI_MAX_SWEEPS):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                av = abs(w[i * n + j])
                if av > off:
                    off = av
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p * n + q]
                if abs(apq) <= stop * 1e-2:
                    continue
                app = w[p * n + p]
                aqq = w[q * n + q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                for k in range(n):
                    akp = w[k * n + p]
                    akq = w[k * n + q]
                    w[k * n + p] = c * akp - s * akq
                    w[k * n + q] = s * akp + c * akq
                for k in range(n):
                    akp = w[p * n + k]
                    akq = w[q * n + k]
                    w[p * n + k] = c * akp - s * akq
                    w[q * n + k] = s * akp + c * akq
                for k in range(n):
                    vkp = v[k * n + p]
                    vkq = v[k * n + q]
                    v[k * n + p] = c * vkp - s * vkq
                    v[k * n + q] = s * vkp + c * vkq
    else:
        raise ConvergenceError(f"Jacobi eigensolver did not converge in {_JACOBI_MAX_SWEEPS} sweeps")

    order = sorted(range(n), key=lambda k: w[k * n + k])
    vals = [w[k * n + k] for k in order]
    vec = [0.0] * (n * n)
    for newcol, oldcol in enumerate(order):
        for i in range(n):
            vec[i * n + newcol] = v[i * n + oldcol]
    return vals, vec


def rexpm(a, n):
    """Matrix exponential by scaling-and-squaring around a truncated Taylor
    core with relative tolerance ``EXPM_RELTOL``."""
    norm = 0.0
    for i in range(n):
        row = 0.0
        for j in range(n):
            v = a[i * n + j]
            row += v if v >= 0.0 else -v
        if row > norm:
            norm = row
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log(norm / 0.5, 2.0)))
    scale = 1.0 / (2.0 ** s)
    b = [v * scale for v in a]

    result = [0.0] * (n * n)
    for i in range(n):
        result[i * n + i] = 1.0
    term = list(b)
    for i in range(n * n):
        result[i] += term[i]
    k = 2
    while True:
        term = rmul(term, b, n, n, n)
        inv_k = 1.0 / k
        term = [t * inv_k for t in term]
        tmax = 0.0
        rmax = 0.0
        for i in range(n * n):
            result[i] += term[i]
            tv = term[i]
            if tv < 0.0:
                tv = -tv
            if tv > tmax:
                tmax = tv
            rv = result[i]
            if rv < 0.0:
                rv = -rv
            if rv > rmax:
                rmax = rv
        if tmax <= EXPM_RELTOL * rmax:
            break
        k += 1
        if k > _EXPM_MAX_TERMS:
            raise ConvergenceError("matrix exponential Taylor core did not converge")

    for _ in range(s):
        result = rmul(result, result, n, n, n)
    return result


def _hessenberg(a, n):
    h = list(a)
    for k in range(n - 2):
        # Householder reflector zeroing column k below the subdiagonal.
        sigma = 0.0
        for i in range(k + 1, n):
            sigma += h[i * n + k] * h[i * n + k]
        if sigma == 0.0:
            continue
        norm = math.sqrt(sigma)
        x0 = h[(k + 1) * n + k]
        alpha = -norm if x0 >= 0.0 else norm
        v = [0.0] * n
        v[k + 1] = x0 - alpha
        for i in range(k + 2, n):
            v[i] = h[i * n + k]
        vnorm2 = sigma - x0 * x0 + v[k + 1] * v[k + 1]
        if vnorm2 == 0.0:
            continue
        beta = 2.0 / vnorm2
        # H <- P H with P = I - beta v v^T
        for j in range(n):
            dot = 0.0
            for i in range(k + 1, n):
                dot += v[i] * h[i * n + j]
            dot *= beta
            for i in range(k + 1, n):
                h[i * n + j] -= dot * v[i]
        # H <- H P
        for i in range(n):
            dot = 0.0
            for j in range(k + 1, n):
                dot += h[i * n + j] * v[j]
            dot *= beta
            for j in range(k + 1, n):
                h[i * n + j] -= dot * v[j]
        for i in range(k + 2, n):
            h[i * n + k] = 0.0
    return h


def _cgivens(f, g):
    if g == 0:
        return 1.0, 0j
    if f == 0:
        return 0.0, g.conjugate() / abs(g)
    af = abs(f)
    d = math.hypot(af, abs(g))
    c = af / d
    s = (f / af) * g.conjugate() / d
    return c, s


def _wilkinson_shift(a, b, c, d):
    # Eigenvalue of [[a, b], [c, d]] closest to d.
    tr = a + d
    disc = cmath.sqrt((a - d) * (a - d) + 4.0 * b * c)
    l1 = 0.5 * (tr + disc)
    l2 = 0.5 * (tr - disc)
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def eig_general(a, n):
    """Eigenvalues of a general real matrix: Householder reduction to
    Hessenberg form followed by complex Wilkinson-shifted QR with deflation.
    Returned sorted by (real, imag)."""
    if n == 1:
        return [complex(a[0])]
    anorm = max(abs(v) for v in a)
    if anorm == 0.0:
        return [0j] * n
    hr = _hessenberg(a, n)
    h = [complex(v) for v in hr]

    eigs = []
    hi = n - 1
    while hi >= 0:
        if hi == 0:
            eigs.append(h[0])
            break
        iterations = 0
        while True:
            # Deflate negligible subdiagonals in the active trailing block.
            for m in range(hi, 0, -1):
                small = 1e-15 * (abs(h[(m - 1) * n + (m - 1)]) + abs(h[m * n + m]))
                if small == 0.0:
                    small = 1e-15 * anorm
                if abs(h[m * n + (m - 1)]) <= small:
                    h[m * n + (m - 1)] = 0j
            if h[hi * n + (hi - 1)] == 0:
                eigs.append(h[hi * n + hi])
                hi -= 1
                break
            lo = hi
            while lo > 0 and h[lo * n + (lo - 1)] != 0:
                lo -= 1
            if hi - lo == 1:
                # Closed-form 2 x 2 block.
                aa = h[lo * n + lo]
                bb = h[lo * n + hi]
                cc = h[hi * n + lo]
                dd = h[hi * n + hi]
                tr = aa + dd
                disc = cmath.sqrt((aa - dd) * (aa - dd) + 4.0 * bb * cc)
                eigs.append(0.5 * (tr + disc))
                eigs.append(0.5 * (tr - disc))
                hi -= 2
                break
            iterations += 1
            if iterations > _QR_MAX_ITER_PER_EIG:
                raise ConvergenceError("QR eigenvalue iteration did not converge")
            if iterations % 12 == 0:
                # Exceptional shift to break rare stagnation cycles.
                mu = h[hi * n + hi] + 1.5 * abs(h[hi * n + (hi - 1)])
            else:
                mu = _wilkinson_shift(
                    h[(hi - 1) * n + (hi - 1)],
                    h[(hi - 1) * n + hi],
                    h[hi * n + (hi - 1)],
                    h[hi * n + hi],
                )
            for i in range(lo, hi + 1):
                h[i * n + i] -= mu
            rots = []
            for j in range(lo, hi):
                c, s = _cgivens(h[j * n + j], h[(j + 1) * n + j])
                rots.append((c, s))
                sc = s.conjugate()
                for k in range(j, hi + 1):
                    t1 = h[j * n + k]
                    t2 = h[(j + 1) * n + k]
                    h[j * n + k] = c * t1 + s * t2
                    h[(j + 1) * n + k] = -sc * t1 + c * t2
            for j in range(lo, hi):
                c, s = rots[j - lo]
                sc = s.conjugate()
                for i in range(lo, j + 2):
                    t1 = h[i * n + j]
                    t2 = h[i * n + (j + 1)]
                    h[i * n + j] = c * t1 + sc * t2
                    h[i * n + (j + 1)] = -s * t1 + c * t2
            for i in range(lo, hi + 1):
                h[i * n + i] += mu

    eigs.sort(key=lambda z: (z.real, z.imag))
    return eigs
