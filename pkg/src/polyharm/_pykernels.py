"""Pure numpy implementations of the numerical kernels.

Every function here has a twin in ``_ckernels.pyx`` with the same
signature and the same results; ``polyharm.kernels`` picks one at import.
Geometric predicates use exact sign tests on float64 orientation values so
both backends agree bit for bit on which pairs cross.
"""

import numpy as np

_PAIR_CHUNK = 1 << 21


def horner(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    out = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    for c in coeffs[-2::-1]:
        out = out * z + c
    return out


def horner_deriv(coeffs, z):
    coeffs = np.asarray(coeffs, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    p = np.full(z.shape, coeffs[-1], dtype=np.complex128)
    dp = np.zeros(z.shape, dtype=np.complex128)
    for c in coeffs[-2::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def winding_sum(points, w0):
    """Total signed angle swept by ``points - w0`` around the closed polygon.

    Returns ``(total, max_abs_increment)``.
    """
    d = np.asarray(points, dtype=np.complex128) - complex(w0)
    inc = np.angle(np.roll(d, -1) * np.conj(d))
    return float(inc.sum()), float(np.abs(inc).max())


def _segments(points, closed):
    p = np.asarray(points, dtype=np.complex128)
    if closed:
        return p, np.roll(p, -1)
    return p[:-1], p[1:]


def _orient(px, py, qx, qy, rx, ry):
    return (qx - px) * (ry - py) - (qy - py) * (rx - px)


def _on_box(ax, ay, bx, by, cx, cy):
    return ((np.minimum(ax, bx) <= cx) & (cx <= np.maximum(ax, bx))
            & (np.minimum(ay, by) <= cy) & (cy <= np.maximum(ay, by)))


def segments_intersect(a1, b1, a2, b2):
    """Vectorised closed-segment intersection test for segments a1b1, a2b2."""
    p1x, p1y, q1x, q1y = a1.real, a1.imag, b1.real, b1.imag
    p2x, p2y, q2x, q2y = a2.real, a2.imag, b2.real, b2.imag
    d1 = _orient(p2x, p2y, q2x, q2y, p1x, p1y)
    d2 = _orient(p2x, p2y, q2x, q2y, q1x, q1y)
    d3 = _orient(p1x, p1y, q1x, q1y, p2x, p2y)
    d4 = _orient(p1x, p1y, q1x, q1y, q2x, q2y)
    proper = (((d1 > 0) & (d2 < 0)) | ((d1 < 0) & (d2 > 0))) & \
             (((d3 > 0) & (d4 < 0)) | ((d3 < 0) & (d4 > 0)))
    touch = ((d1 == 0) & _on_box(p2x, p2y, q2x, q2y, p1x, p1y)) \
        | ((d2 == 0) & _on_box(p2x, p2y, q2x, q2y, q1x, q1y)) \
        | ((d3 == 0) & _on_box(p1x, p1y, q1x, q1y, p2x, p2y)) \
        | ((d4 == 0) & _on_box(p1x, p1y, q1x, q1y, q2x, q2y))
    return proper | touch


def _overlap_pairs(xmin, xmax):
    """Yield chunks of index pairs whose x-extents overlap (sort and sweep)."""
    order = np.argsort(xmin, kind="stable")
    xs = xmin[order]
    hi = np.searchsorted(xs, xmax[order], side="right")
    pos = np.arange(len(xs))
    counts = np.maximum(hi - pos - 1, 0)
    ends = np.cumsum(counts)
    start = 0
    while start < len(xs):
        base = ends[start - 1] if start else 0
        stop = int(np.searchsorted(ends, base + _PAIR_CHUNK, side="right"))
        stop = max(stop, start + 1)
        c = counts[start:stop]
        total = int(c.sum())
        if total:
            left = np.repeat(pos[start:stop], c)
            offs = np.arange(total) - np.repeat(np.cumsum(c) - c, c)
            right = left + 1 + offs
            yield order[left], order[right]
        start = stop


def _first_hit(a1, b1, a2, b2, pairs_iter, keep):
    best = None
    for i, j in pairs_iter:
        m = keep(i, j)
        i, j = i[m], j[m]
        if not len(i):
            continue
        ylo = np.maximum(np.minimum(a1[i].imag, b1[i].imag), np.minimum(a2[j].imag, b2[j].imag))
        yhi = np.minimum(np.maximum(a1[i].imag, b1[i].imag), np.maximum(a2[j].imag, b2[j].imag))
        m = ylo <= yhi
        i, j = i[m], j[m]
        hit = segments_intersect(a1[i], b1[i], a2[j], b2[j])
        if hit.any():
            i, j = i[hit], j[hit]
            k = np.lexsort((j, i))[0]
            cand = (int(i[k]), int(j[k]))
            if best is None or cand < best:
                best = cand
    return best if best is not None else (-1, -1)


def first_self_crossing(points, closed):
    """Lexicographically first pair ``(i, j)``, ``i < j``, of crossing
    non-adjacent segments, or ``(-1, -1)``."""
    a, b = _segments(points, closed)
    n = len(a)
    if n < 3:
        return -1, -1
    xmin = np.minimum(a.real, b.real)
    xmax = np.maximum(a.real, b.real)

    def keep(i, j):
        m = j > i + 1
        if closed:
            m &= ~((i == 0) & (j == n - 1))
        return m

    ordered = ((np.minimum(i, j), np.maximum(i, j)) for i, j in _overlap_pairs(xmin, xmax))
    return _first_hit(a, b, a, b, ordered, keep)


def first_crossing_between(pa, a_closed, pb, b_closed):
    """Lexicographically first pair ``(i, j)`` with segment i of the first
    polygon crossing segment j of the second, or ``(-1, -1)``."""
    a1, b1 = _segments(pa, a_closed)
    a2, b2 = _segments(pb, b_closed)
    na = len(a1)
    s_a = np.concatenate([a1, a2])
    s_b = np.concatenate([b1, b2])
    xmin = np.minimum(s_a.real, s_b.real)
    xmax = np.maximum(s_a.real, s_b.real)

    def pairs():
        for i, j in _overlap_pairs(xmin, xmax):
            lo, hi = np.minimum(i, j), np.maximum(i, j)
            m = (lo < na) & (hi >= na)
            yield lo[m], hi[m] - na

    return _first_hit(a1, b1, a2, b2, pairs(), lambda i, j: np.ones(len(i), bool))


def ray_fan_escape(points, n_dirs):
    """For each vertex of a closed polygon, whether at least one of
    ``n_dirs`` rays leaves it without meeting a non-adjacent edge."""
    p = np.asarray(points, dtype=np.complex128)
    n = len(p)
    a, b = p, np.roll(p, -1)
    e = b - a
    dirs = np.exp(2j * np.pi * (np.arange(n_dirs) + 0.5) / n_dirs)
    dx, dy = dirs.real[:, None], dirs.imag[:, None]
    out = np.zeros(n, dtype=np.uint8)
    idx = np.arange(n)
    for k in range(n):
        m = (idx != k) & (idx != (k - 1) % n)
        ex, ey = e[m].real[None, :], e[m].imag[None, :]
        wx = (a[m].real - p[k].real)[None, :]
        wy = (a[m].imag - p[k].imag)[None, :]
        denom = dx * ey - dy * ex
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (wx * ey - wy * ex) / denom
            s = (wx * dy - wy * dx) / denom
        hit = (denom != 0) & (t > 0) & (s >= 0) & (s <= 1)
        out[k] = bool((~hit.any(axis=1)).any())
    return out
