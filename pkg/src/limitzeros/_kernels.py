"""Compiled inner loops for the convex-hull orbit iteration.

Polygons are passed around as two float64 arrays of vertex coordinates in
counterclockwise order.  Degenerate polygons (one point, or a segment stored
as its two endpoints) are valid everywhere.
"""
import math

import numpy as np
from numba import njit


@njit(cache=True)
def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


@njit(cache=True)
def _lex_less(ax, ay, bx, by):
    return ax < bx or (ax == bx and ay < by)


@njit(cache=True)
def monotone_chain(xs, ys, flags):
    """Convex hull of lexicographically sorted points.

    Collinear and duplicate points are dropped.  ``flags`` rides along with
    each point so the caller can tell where a hull vertex came from.
    """
    n = xs.size
    if n == 1:
        return xs.copy(), ys.copy(), flags.copy()
    hx = np.empty(2 * n)
    hy = np.empty(2 * n)
    hf = np.empty(2 * n, dtype=np.bool_)
    k = 0
    for i in range(n):
        while k >= 2 and _cross(hx[k - 2], hy[k - 2], hx[k - 1], hy[k - 1], xs[i], ys[i]) <= 0.0:
            k -= 1
        hx[k] = xs[i]
        hy[k] = ys[i]
        hf[k] = flags[i]
        k += 1
    lower = k + 1
    for i in range(n - 2, -1, -1):
        while k >= lower and _cross(hx[k - 2], hy[k - 2], hx[k - 1], hy[k - 1], xs[i], ys[i]) <= 0.0:
            k -= 1
        hx[k] = xs[i]
        hy[k] = ys[i]
        hf[k] = flags[i]
        k += 1
    k -= 1  # last point repeats the first
    if k == 2 and hx[0] == hx[1] and hy[0] == hy[1]:
        k = 1
    return hx[:k].copy(), hy[:k].copy(), hf[:k].copy()


@njit(cache=True)
def lexsort_xy(xs, ys):
    order = np.argsort(xs)
    # argsort is not stable on ties in x; repair runs of equal x by y
    n = order.size
    i = 0
    while i < n:
        j = i + 1
        while j < n and xs[order[j]] == xs[order[i]]:
            j += 1
        if j - i > 1:
            for a in range(i + 1, j):
                key = order[a]
                b = a - 1
                while b >= i and ys[order[b]] > ys[key]:
                    order[b + 1] = order[b]
                    b -= 1
                order[b + 1] = key
        i = j
    return order


@njit(cache=True)
def convex_hull(xs, ys):
    order = lexsort_xy(xs, ys)
    flags = np.zeros(xs.size, dtype=np.bool_)
    hx, hy, _ = monotone_chain(xs[order], ys[order], flags)
    return hx, hy


@njit(cache=True)
def inside_strict(vx, vy, qx, qy):
    """True when q lies in the open interior of the convex CCW polygon."""
    n = vx.size
    if n < 3:
        return False
    # fan from vertex 0
    if _cross(vx[0], vy[0], vx[1], vy[1], qx, qy) <= 0.0:
        return False
    if _cross(vx[0], vy[0], vx[n - 1], vy[n - 1], qx, qy) >= 0.0:
        return False
    lo = 1
    hi = n - 1
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _cross(vx[0], vy[0], vx[mid], vy[mid], qx, qy) > 0.0:
            lo = mid
        else:
            hi = mid
    return _cross(vx[lo], vy[lo], vx[hi], vy[hi], qx, qy) > 0.0


@njit(cache=True)
def boundary_samples(vx, vy, n_samples):
    """Arclength-uniform points on the closed boundary, starting at vertex 0."""
    n = vx.size
    seg = np.empty(n)
    total = 0.0
    for i in range(n):
        j = (i + 1) % n
        seg[i] = math.hypot(vx[j] - vx[i], vy[j] - vy[i])
        total += seg[i]
    sx = np.empty(n_samples)
    sy = np.empty(n_samples)
    if total == 0.0:
        sx[:] = vx[0]
        sy[:] = vy[0]
        return sx, sy
    step = total / n_samples
    i = 0
    start = 0.0
    for k in range(n_samples):
        s = k * step
        while i < n - 1 and start + seg[i] <= s:
            start += seg[i]
            i += 1
        j = (i + 1) % n
        t = (s - start) / seg[i] if seg[i] > 0.0 else 0.0
        if t > 1.0:
            t = 1.0
        sx[k] = vx[i] + t * (vx[j] - vx[i])
        sy[k] = vy[i] + t * (vy[j] - vy[i])
    return sx, sy


@njit(cache=True)
def run_merge_order(xs, ys):
    """Lexicographic sort order for points that arrive as a few monotone runs.

    Mapped boundary curves consist of a handful of x-monotone pieces, so
    merging natural runs is close to linear.
    """
    n = xs.size
    idx = np.arange(n)
    starts = np.empty(n + 1, dtype=np.int64)
    nr = 0
    i = 0
    while i < n:
        j = i + 1
        if j < n and _lex_less(xs[j], ys[j], xs[j - 1], ys[j - 1]):
            while j < n and _lex_less(xs[j], ys[j], xs[j - 1], ys[j - 1]):
                j += 1
            a = i
            b = j - 1
            while a < b:
                t = idx[a]
                idx[a] = idx[b]
                idx[b] = t
                a += 1
                b -= 1
        else:
            while j < n and not _lex_less(xs[j], ys[j], xs[j - 1], ys[j - 1]):
                j += 1
        starts[nr] = i
        nr += 1
        i = j
    starts[nr] = n
    buf = np.empty(n, dtype=np.int64)
    nxt = np.empty(n + 1, dtype=np.int64)
    while nr > 1:
        k = 0
        r = 0
        while r < nr:
            lo = starts[r]
            if r + 1 >= nr:
                hi = starts[r + 1]
                buf[lo:hi] = idx[lo:hi]
                nxt[k] = lo
                k += 1
                r += 1
                continue
            mid = starts[r + 1]
            hi = starts[r + 2]
            a = lo
            b = mid
            o = lo
            while a < mid and b < hi:
                ia = idx[a]
                ib = idx[b]
                if _lex_less(xs[ib], ys[ib], xs[ia], ys[ia]):
                    buf[o] = ib
                    b += 1
                else:
                    buf[o] = ia
                    a += 1
                o += 1
            while a < mid:
                buf[o] = idx[a]
                a += 1
                o += 1
            while b < hi:
                buf[o] = idx[b]
                b += 1
                o += 1
            nxt[k] = lo
            k += 1
            r += 2
        nxt[k] = n
        idx, buf = buf, idx
        starts[: k + 1] = nxt[: k + 1]
        nr = k
    return idx


@njit(cache=True)
def expand(vx, vy, fresh, lam_re, lam_im, n_samples):
    """One step K -> hull(K u E(samples of dK)) with E(Z) = lam * exp(-Z).

    ``fresh[i]`` marks vertices whose image has not been added yet; images of
    older vertices are already inside K, so only fresh ones are mapped.
    Returns the new polygon and its fresh flags.
    """
    n = vx.size
    sx, sy = boundary_samples(vx, vy, n_samples)
    n_fresh = 0
    for i in range(n):
        if fresh[i]:
            n_fresh += 1
    total = n + n_fresh + n_samples
    mx = np.empty(total)
    my = np.empty(total)
    mf = np.zeros(total, dtype=np.bool_)
    # old polygon first, rotated to start at its lexicographic minimum so it
    # contributes exactly two monotone runs
    lo = 0
    for i in range(1, n):
        if _lex_less(vx[i], vy[i], vx[lo], vy[lo]):
            lo = i
    for i in range(n):
        j = (lo + i) % n
        mx[i] = vx[j]
        my[i] = vy[j]
    c = n
    for i in range(n):
        if fresh[i]:
            r = math.exp(-vx[i])
            er = r * math.cos(vy[i])
            ei = -r * math.sin(vy[i])
            mx[c] = lam_re * er - lam_im * ei
            my[c] = lam_re * ei + lam_im * er
            mf[c] = True
            c += 1
    for i in range(n_samples):
        r = math.exp(-sx[i])
        er = r * math.cos(sy[i])
        ei = -r * math.sin(sy[i])
        mx[c] = lam_re * er - lam_im * ei
        my[c] = lam_re * ei + lam_im * er
        mf[c] = True
        c += 1
    order = run_merge_order(mx, my)
    return monotone_chain(mx[order], my[order], mf[order])


@njit(cache=True)
def support(vx, vy, cos_t, sin_t):
    """Support function h_k = max Re(z e^{-i phi_k}) on the direction grid.

    ``cos_t``/``sin_t`` hold cos and sin of phi_k = 2 pi k / M, k = 0..M-1.
    As phi turns counterclockwise the supporting vertex of a CCW convex
    polygon only moves forward, so one rotating pointer does the job.
    """
    n = vx.size
    n_dirs = cos_t.size
    h = np.empty(n_dirs)
    v = 0
    best = vx[0] * cos_t[0] + vy[0] * sin_t[0]
    for i in range(1, n):
        d = vx[i] * cos_t[0] + vy[i] * sin_t[0]
        if d > best:
            best = d
            v = i
    for k in range(n_dirs):
        c = cos_t[k]
        s = sin_t[k]
        cur = vx[v] * c + vy[v] * s
        for _ in range(n):
            w = v + 1 if v + 1 < n else 0
            nxt = vx[w] * c + vy[w] * s
            if nxt > cur:
                v = w
                cur = nxt
            else:
                break
        h[k] = cur
    return h


@njit(cache=True)
def origin_clearance(vx, vy):
    """Signed distance from 0 to the boundary: min over edges of the edge line offset.

    Positive when 0 is interior, zero when 0 is on the boundary.  Polygons with
    fewer than three vertices have empty interior and report 0 or less.
    """
    n = vx.size
    if n < 3:
        if n == 1:
            return -math.hypot(vx[0], vy[0])
        # distance to the segment, negated unless 0 lies on it
        dx = vx[1] - vx[0]
        dy = vy[1] - vy[0]
        ll = dx * dx + dy * dy
        t = 0.0 if ll == 0.0 else max(0.0, min(1.0, -(vx[0] * dx + vy[0] * dy) / ll))
        return -math.hypot(vx[0] + t * dx, vy[0] + t * dy)
    best = math.inf
    for i in range(n):
        j = (i + 1) % n
        ex = vx[j] - vx[i]
        ey = vy[j] - vy[i]
        ln = math.hypot(ex, ey)
        if ln == 0.0:
            continue
        # outward unit normal (ey, -ex)/ln; offset of the edge line from 0
        off = (vx[i] * ey - vy[i] * ex) / ln
        if off < best:
            best = off
    return best


@njit(cache=True)
def imaginary_axis_reach(vx, vy):
    """Largest |Im z| over points z of the polygon lying on the imaginary axis (-1 if none)."""
    n = vx.size
    reach = -1.0
    for i in range(n):
        if vx[i] == 0.0 and abs(vy[i]) > reach:
            reach = abs(vy[i])
        j = (i + 1) % n
        a = vx[i]
        b = vx[j]
        if (a < 0.0 < b) or (b < 0.0 < a):
            t = a / (a - b)
            y = vy[i] + t * (vy[j] - vy[i])
            if abs(y) > reach:
                reach = abs(y)
    return reach


@njit(cache=True)
def point_distance(vx, vy, qx, qy):
    """Euclidean distance from q to the polygon (0 when q is inside or on it)."""
    n = vx.size
    if n >= 3:
        inside = True
        for i in range(n):
            j = (i + 1) % n
            if _cross(vx[i], vy[i], vx[j], vy[j], qx, qy) < 0.0:
                inside = False
                break
        if inside:
            return 0.0
    best = math.inf
    for i in range(n):
        j = (i + 1) % n if n > 1 else 0
        dx = vx[j] - vx[i]
        dy = vy[j] - vy[i]
        ll = dx * dx + dy * dy
        t = 0.0 if ll == 0.0 else max(0.0, min(1.0, ((qx - vx[i]) * dx + (qy - vy[i]) * dy) / ll))
        d = math.hypot(vx[i] + t * dx - qx, vy[i] + t * dy - qy)
        if d < best:
            best = d
    return best


# status codes shared with the Python wrapper
RUNNING = 0
CONVERGED = 1
ESCAPED = 2
ORIGIN_INTERIOR = 3


@njit(cache=True)
def width_max(h):
    half = h.size // 2
    best = -math.inf
    for k in range(half):
        w = h[k] + h[k + half]
        if w > best:
            best = w
    return best


@njit(cache=True)
def iterate(vx, vy, fresh, h, lam_re, lam_im, n_samples, n_steps,
            escape, imag_escape, stab_tol, interior_tol, early_exit, cos_t, sin_t):
    """Up to ``n_steps`` hull expansions with the stopping tests after each.

    Returns (vx, vy, fresh, h, status, steps_taken).
    """
    status = RUNNING
    steps = 0
    while steps < n_steps:
        steps += 1
        vx, vy, fresh = expand(vx, vy, fresh, lam_re, lam_im, n_samples)
        h_new = support(vx, vy, cos_t, sin_t)
        diam = width_max(h_new)
        if not (diam <= escape):  # also catches nan from overflow
            status = ESCAPED
        elif imaginary_axis_reach(vx, vy) >= imag_escape:
            status = ESCAPED
        elif early_exit and origin_clearance(vx, vy) > interior_tol * diam:
            status = ORIGIN_INTERIOR
        else:
            # nested convex sets: Hausdorff distance = max support increase
            gap = -math.inf
            for k in range(h.size):
                d = h_new[k] - h[k]
                if d > gap:
                    gap = d
            if gap < stab_tol:
                status = CONVERGED
        h = h_new
        if status != RUNNING:
            break
    return vx, vy, fresh, h, status, steps
