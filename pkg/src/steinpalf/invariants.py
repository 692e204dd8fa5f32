"""Homological invariants of a fibration, computed two independent ways.

The fibration path reads everything from the page: the twist curves, their
Seifert pairings and their passages through the core bands.  The Kirby path
reads the handle diagram directly: linking numbers from crossing signs and
Thurston-Bennequin framings.  A third check, used in tests, presents the
boundary homology by the variation of the homological monodromy.

Finitely generated abelian groups are reported by their invariant factors
in divisibility order, with ``0`` standing for a free summand ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import convert_std_to_dotted, kirby_matrix
from .errors import CrossCheckFailure


# -- Smith normal form -------------------------------------------------------


def smith_diagonal(matrix):
    """Diagonal of the Smith normal form of an integer matrix (list of rows).

    Uses exact integer arithmetic; returns the nonzero invariant factors
    ``d1 | d2 | ...`` (positive), one per unit of rank.
    """
    a = [list(row) for row in matrix if any(row)]
    if not a:
        return []
    nr, nc = len(a), len(a[0])
    diag = []
    t = 0
    while t < min(nr, nc):
        # smallest nonzero pivot in the remaining block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v and (best is None or abs(v) < abs(a[best[0]][best[1]])):
                    best = (i, j)
                    if abs(v) == 1:
                        break
            if best and abs(a[best[0]][best[1]]) == 1:
                break
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        done = False
            if done:
                # divisibility: fold any entry not divisible by the pivot into row t
                bad = None
                for i in range(t + 1, nr):
                    for j in range(t + 1, nc):
                        if a[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                a[t] = [x + y for x, y in zip(a[t], a[bad])]
                continue
            # move the smallest nonzero entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def cokernel(columns, nrows):
    """Invariant factors of ``Z^nrows`` modulo the span of sparse ``columns``.

    Columns are dicts ``{row: value}``.  Unit pivots are eliminated sparsely
    first; the remaining block goes through a dense Smith normal form.
    """
    cols = [dict((r, v) for r, v in c.items() if v) for c in columns]
    cols = [c for c in cols if c]
    alive_rows = set(range(nrows))
    where = {}
    for k, c in enumerate(cols):
        for r in c:
            where.setdefault(r, set()).add(k)
    alive = set(range(len(cols)))
    while True:
        best = None
        for k in alive:
            for r, v in cols[k].items():
                if v in (1, -1):
                    cost = len(where[r])
                    if best is None or cost < best[0]:
                        best = (cost, k, r)
                        if cost == 1:
                            break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, k, r = best
        piv = cols[k]
        sign = piv[r]
        for other in list(where[r]):
            if other == k:
                continue
            oc = cols[other]
            f = oc[r] * sign
            for rr, v in piv.items():
                nv = oc.get(rr, 0) - f * v
                if nv:
                    if rr not in oc:
                        where.setdefault(rr, set()).add(other)
                    oc[rr] = nv
                else:
                    if rr in oc:
                        del oc[rr]
                        where[rr].discard(other)
            if not oc:
                alive.discard(other)
        for rr in piv:
            where[rr].discard(k)
        alive.discard(k)
        alive_rows.discard(r)
    rows = sorted(alive_rows)
    index = {r: i for i, r in enumerate(rows)}
    dense = []
    for k in sorted(alive):
        col = [0] * len(rows)
        for r, v in cols[k].items():
            col[index[r]] = v
        dense.append(col)
    # rows of ``dense`` are relations; the Smith form is transpose invariant
    diag = smith_diagonal(dense) if dense and rows else []
    torsion = sorted(d for d in diag if d > 1)
    free = len(rows) - len(diag)
    return tuple(torsion) + (0,) * free


def cokernel_dense(matrix):
    """Invariant factors of the cokernel of a dense matrix acting on column vectors."""
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    cols = [{i: matrix[i][j] for i in range(nrows) if matrix[i][j]} for j in range(ncols)]
    return cokernel(cols, nrows)


def describe(group):
    """Human-readable form such as ``Z/2 + Z``; the trivial group is ``0``."""
    parts = [f"Z/{d}" if d else "Z" for d in group]
    return " + ".join(parts) if parts else "0"


# -- fibration path ----------------------------------------------------------


def euler_char_W(p):
    return p.surface.euler_char + len(p.word)


def h1_W(p):
    """First homology of the total space: page homology modulo the twist curves."""
    return cokernel([cv.homology for cv in p.twisted()], p.surface.n_bands)


def _links(p):
    return [cv for cv in p.twisted() if cv.kind == "link"]


def boundary_matrix_palf(p):
    """Presentation matrix of boundary homology rebuilt from the page.

    Rows and columns list the core bands, then the link curves.  Link-link
    entries are Seifert pairings (page framing minus one on the diagonal),
    core-link entries count passages through the core band and core-core
    entries vanish.
    """
    f = p.surface
    links = _links(p)
    r = p.n_cores
    size = r + len(links)
    mat = [[0] * size for _ in range(size)]
    for a, la in enumerate(links):
        ha = la.homology
        for j in range(r):
            mat[j][r + a] = mat[r + a][j] = ha.get(j, 0)
        for b, lb in enumerate(links):
            hb = lb.homology
            if a == b:
                mat[r + a][r + a] = f.seifert(ha, ha) - 1
            else:
                mat[r + a][r + b] = f.seifert(ha, hb)
    return mat


def h1_boundary_palf(p):
    return cokernel_dense(boundary_matrix_palf(p))


# -- Kirby path ----------------------------------------------------------------


def h1_W_kirby(d):
    """Cokernel of the passage matrix: dotted circles modulo the attaching circles."""
    km = kirby_matrix(d)
    r = sum(km.dotted)
    m = len(km.labels) - r
    mat = [[km.entries[j][r + i] for i in range(m)] for j in range(r)]
    if r == 0:
        return ()
    if m == 0:
        return (0,) * r
    return cokernel_dense(mat)


def euler_char_kirby(d):
    d = convert_std_to_dotted(d)
    return 1 - len(d.dotted) + len(d.two_handles)


def h1_boundary_kirby(d):
    km = kirby_matrix(d)
    return cokernel_dense([list(row) for row in km.entries])


# -- monodromy ---------------------------------------------------------------


def _skew(f):
    v = f.matrix()
    n = f.n_bands
    return [[v[a][b] - v[b][a] for b in range(n)] for a in range(n)]


def homological_monodromy(p):
    """Matrix of the composed twists on page homology (columns are images of bands).

    The twist along ``c`` sends ``x`` to ``x + <c, x> c`` with
    ``<c, x> = V(c, x) - V(x, c)``; the word is composed left to right as
    matrices, ``T_1 T_2 ... T_k``.
    """
    f = p.surface
    n = f.n_bands
    j = _skew(f)
    m = [[int(a == b) for b in range(n)] for a in range(n)]
    for cv in p.twisted():
        h = cv.homology
        row = [sum(v * j[a][b] for a, v in h.items()) for b in range(n)]
        mc = [sum(m[a][b] * v for b, v in h.items()) for a in range(n)]
        for a in range(n):
            if mc[a]:
                ra = m[a]
                for b in range(n):
                    if row[b]:
                        ra[b] += mc[a] * row[b]
    return m


def variation(p):
    """Variation matrix ``Var`` with monodromy ``I + Var J`` for the skew form ``J``."""
    f = p.surface
    n = f.n_bands
    j = _skew(f)
    var = [[0] * n for _ in range(n)]
    for cv in p.twisted():
        h = cv.homology
        # Var <- Var + c c^T + Var J c c^T
        jc = [sum(j[a][b] * v for b, v in h.items()) for a in range(n)]
        vjc = [sum(var[a][b] * jc[b] for b in range(n) if jc[b]) for a in range(n)]
        for a in range(n):
            coef = h.get(a, 0) + vjc[a]
            if coef:
                ra = var[a]
                for b, v in h.items():
                    ra[b] += coef * v
    return var


def h1_boundary_variation(p):
    return cokernel_dense(variation(p))


# -- reports -------------------------------------------------------------------


@dataclass(frozen=True)
class HomologyReport:
    path: str
    euler_char: int
    h1_W: tuple[int, ...]
    h1_boundary: tuple[int, ...]

    def as_dict(self):
        return {
            "path": self.path,
            "euler_char": self.euler_char,
            "h1_W": describe(self.h1_W),
            "h1_boundary": describe(self.h1_boundary),
        }


def report_palf(p):
    return HomologyReport("PALF", euler_char_W(p), h1_W(p), h1_boundary_palf(p))


def report_kirby(d):
    return HomologyReport("KIRBY", euler_char_kirby(d), h1_W_kirby(d), h1_boundary_kirby(d))


def cross_check(p, d):
    a, b = report_palf(p), report_kirby(d)
    for field in ("euler_char", "h1_W", "h1_boundary"):
        if getattr(a, field) != getattr(b, field):
            raise CrossCheckFailure(f"{field}: fibration gives {getattr(a, field)}, diagram gives {getattr(b, field)}")
    return a, b
