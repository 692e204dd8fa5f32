"""Brute-force reference computations, written independently of the package.

They work from raw grid data (x_marks, o_marks) and plain front geometry, never
from the package's kernels, so agreement is evidence rather than tautology.
"""

from fractions import Fraction
from itertools import product


def components(xs, os_):
    """Rows of each component in traversal order, keyed by the first row met."""
    n = len(xs)
    x_row = {c: r for r, c in enumerate(xs)}
    seen, out = set(), []
    for start in range(n):
        if start in seen:
            continue
        rows, r = [], start
        while r not in seen:
            seen.add(r)
            rows.append(r)
            r = x_row[os_[r]]
        out.append(rows)
    return out


def loop(xs, os_, rows):
    """Closed polygon (grid points) of one component, X then O in each row."""
    pts = []
    for r in rows:
        pts.append((xs[r], r))
        pts.append((os_[r], r))
    return pts


def front(p):
    u, v = p
    return (u - v, u + v)


def edges(pts):
    return [(pts[k], pts[(k + 1) % len(pts)]) for k in range(len(pts))]


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def crossings_between(loop_a, loop_b, shift=(0, 0)):
    """Signed crossings of two front polygons (second one shifted in the front).

    The strand of smaller front slope passes in front; the sign is the
    orientation of (over tangent, under tangent) in the (y, z) plane.
    Returns a list of signs.
    """
    out = []
    fa = [tuple(map(Fraction, front(p))) for p in loop_a]
    fb = [tuple(Fraction(c) + s for c, s in zip(front(p), shift)) for p in loop_b]
    for p0, p1 in edges(fa):
        for q0, q1 in edges(fb):
            d1, d2 = _sub(p1, p0), _sub(q1, q0)
            den = _cross(d1, d2)
            if den == 0:
                continue
            t = _cross(_sub(q0, p0), d2) / den
            s = _cross(_sub(q0, p0), d1) / den
            if not (0 < t < 1 and 0 < s < 1):
                continue
            slope1 = d1[1] / d1[0]
            slope2 = d2[1] / d2[0]
            over, under = (d1, d2) if slope1 < slope2 else (d2, d1)
            out.append(1 if _cross(over, under) > 0 else -1)
    return out


def self_crossings(pts):
    out = []
    fp = [front(p) for p in pts]
    es = edges(fp)
    for a in range(len(es)):
        for b in range(a + 1, len(es)):
            p0, p1 = es[a]
            q0, q1 = es[b]
            d1, d2 = _sub(p1, p0), _sub(q1, q0)
            den = _cross(d1, d2)
            if den == 0:
                continue
            t = Fraction(_cross(_sub(q0, p0), d2), den)
            s = Fraction(_cross(_sub(q0, p0), d1), den)
            if 0 < t < 1 and 0 < s < 1:
                slope1 = Fraction(d1[1], d1[0])
                slope2 = Fraction(d2[1], d2[0])
                over, under = (d1, d2) if slope1 < slope2 else (d2, d1)
                out.append(1 if _cross(over, under) > 0 else -1)
    return out


def cusp_count(pts):
    """Vertices where both incident edges leave in the same front-y direction."""
    n = len(pts)
    count = 0
    for k in range(n):
        here = front(pts[k])
        prev = front(pts[k - 1])
        nxt = front(pts[(k + 1) % n])
        if (prev[0] - here[0]) * (nxt[0] - here[0]) > 0:
            count += 1
    return count


def tb_oracle(xs, os_, rows):
    pts = loop(xs, os_, rows)
    return sum(self_crossings(pts)) - cusp_count(pts) // 2


def lk_oracle(xs, os_, rows_a, rows_b):
    signs = crossings_between(loop(xs, os_, rows_a), loop(xs, os_, rows_b))
    assert sum(signs) % 2 == 0
    return sum(signs) // 2


def cell_loop(i, j):
    return [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]


def cell_seifert_oracle(c1, c2, eps=Fraction(1, 7)):
    """lk of the boundary of cell c1 with the upward (Reeb) pushoff of cell c2."""
    signs = crossings_between(cell_loop(*c1), cell_loop(*c2), shift=(0, eps))
    assert sum(signs) % 2 == 0
    return sum(signs) // 2


def interior_oracle(xs, os_):
    """Cells of the grid not connected to the outside without crossing the front."""
    n = len(xs)
    m = n - 1
    hwall = set()  # horizontal unit edges on the front: (col, row)
    vwall = set()
    for r in range(n):
        lo, hi = sorted((xs[r], os_[r]))
        for c in range(lo, hi):
            hwall.add((c, r))
    x_row = {c: r for r, c in enumerate(xs)}
    o_row = {c: r for r, c in enumerate(os_)}
    for c in range(n):
        lo, hi = sorted((x_row[c], o_row[c]))
        for r in range(lo, hi):
            vwall.add((c, r))
    # cells -1..m in both directions; outside ring is open
    outside = {(-1, -1)}
    stack = [(-1, -1)]
    while stack:
        i, j = stack.pop()
        for (ni, nj), edge_wall in (
            ((i + 1, j), (i + 1, j) in vwall),
            ((i - 1, j), (i, j) in vwall),
            ((i, j + 1), (i, j + 1) in hwall),
            ((i, j - 1), (i, j) in hwall),
        ):
            if not (-1 <= ni <= m and -1 <= nj <= m):
                continue
            if edge_wall or (ni, nj) in outside:
                continue
            outside.add((ni, nj))
            stack.append((ni, nj))
    return {(i, j) for i in range(m) for j in range(m) if (i, j) not in outside}


def fox_colorings(xs, os_, p=3):
    """Number of Fox p-colorings of a knot grid diagram (verticals pass over)."""
    comps = components(xs, os_)
    assert len(comps) == 1
    pts = loop(xs, os_, comps[0])
    n = len(xs)
    x_row = {c: r for r, c in enumerate(xs)}
    o_row = {c: r for r, c in enumerate(os_)}

    def vertical_at(c, r):
        lo, hi = sorted((x_row[c], o_row[c]))
        return lo < r < hi

    arc = 0
    arc_of_vertical = {}
    unders = []  # (arc before, arc after, column of the over strand)
    for k in range(0, len(pts), 2):
        (x, r), (o, _) = pts[k], pts[k + 1]
        step = 1 if o > x else -1
        for c in range(x + step, o, step):
            if vertical_at(c, r):
                unders.append((arc, arc + 1, c))
                arc += 1
        # vertical from the O of this row to the X of the next row
        arc_of_vertical[o] = arc
    total = arc + 1
    # the last arc closes up with the first
    def norm(a):
        return 0 if a == total - 1 else a

    arcs = max(total - 1, 1)
    count = 0
    for colors in product(range(p), repeat=arcs):
        ok = True
        for a, b, c in unders:
            over = colors[norm(arc_of_vertical[c])]
            if (2 * over - colors[norm(a)] - colors[norm(b)]) % p:
                ok = False
                break
        if ok:
            count += 1
    return count
