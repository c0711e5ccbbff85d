# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Same signatures, same predicates; loops replace the numpy broadcasting and
exit early where the pure version has to scan everything.
"""

import numpy as np
from libc.math cimport atan2, fabs


def _join(re_, im_):
    out = np.empty(re_.shape[0], dtype=np.complex128)
    out.real = re_
    out.imag = im_
    return out


def horner(coeffs, z):
    # complex products are spelled out in reals (C99 complex multiplication
    # adds slow inf/nan recovery); the point loop is innermost so the
    # compiler can vectorise it
    cdef const double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128).view(np.float64).reshape(-1, 2)
    shape = np.shape(z)
    zz = np.ascontiguousarray(z, dtype=np.complex128).reshape(-1)
    cdef const double[::1] xr = np.ascontiguousarray(zz.real)
    cdef const double[::1] xi = np.ascontiguousarray(zz.imag)
    cdef Py_ssize_t m = xr.shape[0], n = c.shape[0], i, k
    re_ = np.full(m, c[n - 1, 0])
    im_ = np.full(m, c[n - 1, 1])
    cdef double[::1] ar = re_
    cdef double[::1] ai = im_
    cdef double t, cr, ci
    for k in range(n - 2, -1, -1):
        cr = c[k, 0]
        ci = c[k, 1]
        for i in range(m):
            t = ar[i] * xr[i] - ai[i] * xi[i] + cr
            ai[i] = ar[i] * xi[i] + ai[i] * xr[i] + ci
            ar[i] = t
    return _join(re_, im_).reshape(shape)


def horner_deriv(coeffs, z):
    cdef const double[:, ::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128).view(np.float64).reshape(-1, 2)
    shape = np.shape(z)
    zz = np.ascontiguousarray(z, dtype=np.complex128).reshape(-1)
    cdef const double[::1] xr = np.ascontiguousarray(zz.real)
    cdef const double[::1] xi = np.ascontiguousarray(zz.imag)
    cdef Py_ssize_t m = xr.shape[0], n = c.shape[0], i, k
    pre = np.full(m, c[n - 1, 0])
    pim = np.full(m, c[n - 1, 1])
    dre = np.zeros(m)
    dim = np.zeros(m)
    cdef double[::1] pr = pre
    cdef double[::1] pi_ = pim
    cdef double[::1] dr = dre
    cdef double[::1] di = dim
    cdef double t, cr, ci
    for k in range(n - 2, -1, -1):
        cr = c[k, 0]
        ci = c[k, 1]
        for i in range(m):
            t = dr[i] * xr[i] - di[i] * xi[i] + pr[i]
            di[i] = dr[i] * xi[i] + di[i] * xr[i] + pi_[i]
            dr[i] = t
            t = pr[i] * xr[i] - pi_[i] * xi[i] + cr
            pi_[i] = pr[i] * xi[i] + pi_[i] * xr[i] + ci
            pr[i] = t
    return _join(pre, pim).reshape(shape), _join(dre, dim).reshape(shape)


def winding_sum(points, w0):
    cdef const double[:, ::1] p = np.ascontiguousarray(points, dtype=np.complex128).view(np.float64).reshape(-1, 2)
    cdef double complex w = w0
    cdef Py_ssize_t n = p.shape[0], k
    cdef double ar, ai, br, bi, inc, total = 0.0, mx = 0.0
    br = p[0, 0] - w.real
    bi = p[0, 1] - w.imag
    for k in range(n):
        ar = br
        ai = bi
        if k + 1 < n:
            br = p[k + 1, 0] - w.real
            bi = p[k + 1, 1] - w.imag
        else:
            br = p[0, 0] - w.real
            bi = p[0, 1] - w.imag
        inc = atan2(bi * ar - br * ai, br * ar + bi * ai)
        total += inc
        if fabs(inc) > mx:
            mx = fabs(inc)
    return total, mx


cdef inline double _orient(double px, double py, double qx, double qy,
                           double rx, double ry) nogil:
    return (qx - px) * (ry - py) - (qy - py) * (rx - px)


cdef inline bint _on_box(double ax, double ay, double bx, double by,
                         double cx, double cy) nogil:
    return (min(ax, bx) <= cx <= max(ax, bx)) and (min(ay, by) <= cy <= max(ay, by))


cdef bint _intersect(double complex a1, double complex b1,
                     double complex a2, double complex b2) nogil:
    cdef double p1x = a1.real, p1y = a1.imag, q1x = b1.real, q1y = b1.imag
    cdef double p2x = a2.real, p2y = a2.imag, q2x = b2.real, q2y = b2.imag
    cdef double d1 = _orient(p2x, p2y, q2x, q2y, p1x, p1y)
    cdef double d2 = _orient(p2x, p2y, q2x, q2y, q1x, q1y)
    cdef double d3 = _orient(p1x, p1y, q1x, q1y, p2x, p2y)
    cdef double d4 = _orient(p1x, p1y, q1x, q1y, q2x, q2y)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
            ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and _on_box(p2x, p2y, q2x, q2y, p1x, p1y):
        return True
    if d2 == 0 and _on_box(p2x, p2y, q2x, q2y, q1x, q1y):
        return True
    if d3 == 0 and _on_box(p1x, p1y, q1x, q1y, p2x, p2y):
        return True
    if d4 == 0 and _on_box(p1x, p1y, q1x, q1y, q2x, q2y):
        return True
    return False


cdef inline bint _boxes_overlap(double complex a1, double complex b1,
                                double complex a2, double complex b2) nogil:
    if max(a1.real, b1.real) < min(a2.real, b2.real):
        return False
    if max(a2.real, b2.real) < min(a1.real, b1.real):
        return False
    if max(a1.imag, b1.imag) < min(a2.imag, b2.imag):
        return False
    if max(a2.imag, b2.imag) < min(a1.imag, b1.imag):
        return False
    return True


cdef _sweep_first(const double complex[::1] a, const double complex[::1] b,
                  Py_ssize_t na, bint closed_self):
    """Sort-and-sweep over segment x-extents.

    Segments ``0..na-1`` belong to the first polygon, the rest to the
    second; ``na == n`` means a self test. Returns the lexicographically
    first crossing pair, matching the numpy backend.
    """
    cdef Py_ssize_t n = a.shape[0], u, v, i, j, bi = -1, bj = -1, idx
    cdef bint self_test = na == n
    xmin = np.minimum(np.asarray(a).real, np.asarray(b).real)
    xmax = np.maximum(np.asarray(a).real, np.asarray(b).real)
    order_arr = np.argsort(xmin, kind="stable")
    cdef const Py_ssize_t[::1] order = order_arr.astype(np.intp)
    cdef const double[::1] xs = np.ascontiguousarray(xmin[order_arr])
    cdef const double[::1] xm = np.ascontiguousarray(xmax[order_arr])
    for u in range(n):
        idx = order[u]
        v = u + 1
        while v < n and xs[v] <= xm[u]:
            i = idx
            j = order[v]
            v += 1
            if i > j:
                i, j = j, i
            if self_test:
                if j <= i + 1 or (closed_self and i == 0 and j == n - 1):
                    continue
            else:
                if i >= na or j < na:
                    continue
            if bi >= 0 and (i > bi or (i == bi and (j - (0 if self_test else na)) >= bj)):
                continue
            if not _boxes_overlap(a[i], b[i], a[j], b[j]):
                continue
            if _intersect(a[i], b[i], a[j], b[j]):
                bi = i
                bj = j if self_test else j - na
    return int(bi), int(bj)


def first_self_crossing(points, bint closed):
    p = np.ascontiguousarray(points, dtype=np.complex128)
    if closed:
        a, b = p, np.roll(p, -1)
    else:
        a, b = p[:-1], p[1:]
    if len(a) < 3:
        return -1, -1
    return _sweep_first(np.ascontiguousarray(a), np.ascontiguousarray(b), len(a), closed)


def first_crossing_between(pa, bint a_closed, pb, bint b_closed):
    p = np.ascontiguousarray(pa, dtype=np.complex128)
    q = np.ascontiguousarray(pb, dtype=np.complex128)
    a1, b1 = (p, np.roll(p, -1)) if a_closed else (p[:-1], p[1:])
    a2, b2 = (q, np.roll(q, -1)) if b_closed else (q[:-1], q[1:])
    a = np.ascontiguousarray(np.concatenate([a1, a2]))
    b = np.ascontiguousarray(np.concatenate([b1, b2]))
    return _sweep_first(a, b, len(a1), False)


def ray_fan_escape(points, int n_dirs):
    cdef const double complex[::1] p = np.ascontiguousarray(points, dtype=np.complex128)
    cdef Py_ssize_t n = p.shape[0], k, m, s
    out = np.zeros(n, dtype=np.uint8)
    cdef unsigned char[::1] ov = out
    dirs = np.exp(2j * np.pi * (np.arange(n_dirs) + 0.5) / n_dirs)
    cdef const double complex[::1] dv = dirs
    cdef double dx, dy, ex, ey, wx, wy, denom, t, u
    cdef bint blocked
    for k in range(n):
        for m in range(n_dirs):
            dx = dv[m].real
            dy = dv[m].imag
            blocked = False
            for s in range(n):
                if s == k or s == (k - 1 + n) % n:
                    continue
                ex = p[(s + 1) % n].real - p[s].real
                ey = p[(s + 1) % n].imag - p[s].imag
                wx = p[s].real - p[k].real
                wy = p[s].imag - p[k].imag
                denom = dx * ey - dy * ex
                if denom == 0:
                    continue
                t = (wx * ey - wy * ex) / denom
                u = (wx * dy - wy * dx) / denom
                if t > 0 and u >= 0 and u <= 1:
                    blocked = True
                    break
            if not blocked:
                ov[k] = 1
                break
    return out
