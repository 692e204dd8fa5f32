"""Pure-Python versions of the grid kernels.

Segments are plain tuples ``(pos, lo, hi, direction, component)``.  For a
horizontal segment ``pos`` is its row and ``lo, hi`` the column span; for a
vertical one ``pos`` is the column and ``lo, hi`` the row span.  ``direction``
is +1 when the segment is traversed towards increasing coordinates.

Cells are the unit squares of the lattice of grid points; cell ``(i, j)``
has lower-left corner ``(i, j)`` and is stored at flat index ``j * (n - 1) + i``.
"""

from collections import deque


def crossings(hsegs, vsegs):
    """Return ``(col, row, over, under, sign)`` for every crossing.

    Vertical strands always pass over horizontal ones.
    """
    out = []
    for c, vlo, vhi, vdir, vcomp in vsegs:
        for r, hlo, hhi, hdir, hcomp in hsegs:
            if vlo < r < vhi and hlo < c < hhi:
                out.append((c, r, vcomp, hcomp, -vdir * hdir))
    return out


def winding_numbers(vsegs, n):
    """Winding number of the closed curve made of ``vsegs`` around each cell."""
    m = n - 1
    w = [0] * (m * m)
    for c, lo, hi, d, _ in vsegs:
        # a rightward ray from the centre of (i, j) meets columns c > i
        for j in range(lo, hi):
            base = j * m
            for i in range(min(c, m)):
                w[base + i] += d
    return w


def interior_mask(hsegs, vsegs, n):
    """1 for cells in a bounded complementary region of the front, else 0."""
    m = n - 1
    # padded board: cells -1..m in both directions
    size = m + 2
    block_v = [[False] * (size + 1) for _ in range(size)]  # wall left of cell
    block_h = [[False] * size for _ in range(size + 1)]  # wall below cell
    for c, lo, hi, _, _ in vsegs:
        for j in range(lo, hi):
            block_v[j + 1][c + 1] = True
    for r, lo, hi, _, _ in hsegs:
        for i in range(lo, hi):
            block_h[r + 1][i + 1] = True
    seen = [[False] * size for _ in range(size)]
    seen[0][0] = True
    todo = deque([(0, 0)])
    while todo:
        y, x = todo.popleft()
        if x + 1 < size and not seen[y][x + 1] and not block_v[y][x + 1]:
            seen[y][x + 1] = True
            todo.append((y, x + 1))
        if x > 0 and not seen[y][x - 1] and not block_v[y][x]:
            seen[y][x - 1] = True
            todo.append((y, x - 1))
        if y + 1 < size and not seen[y + 1][x] and not block_h[y + 1][x]:
            seen[y + 1][x] = True
            todo.append((y + 1, x))
        if y > 0 and not seen[y - 1][x] and not block_h[y][x]:
            seen[y - 1][x] = True
            todo.append((y - 1, x))
    return [0 if seen[j + 1][i + 1] else 1 for j in range(m) for i in range(m)]


def rank_mod_p(rows, p):
    """Rank of an integer matrix over GF(p)."""
    a = [[v % p for v in row] for row in rows]
    if not a:
        return 0
    ncols = len(a[0])
    rank = 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(a)):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][col], p - 2, p)
        prow = [v * inv % p for v in a[rank]]
        a[rank] = prow
        for r in range(len(a)):
            if r != rank and a[r][col]:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], prow)]
        rank += 1
        if rank == len(a):
            break
    return rank
