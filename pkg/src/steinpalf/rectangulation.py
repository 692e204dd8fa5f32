"""Decomposition of the front interior into ordered rectangles.

Rectangles are runs of lattice cells inside one row strip of the grid, i.e.
pieces of the strips cut out by the slope +1 lines of the front.  The order in
which they are glued matters: a rectangle may be added only if the part of its
boundary already covered (by earlier rectangles, or by the bold arcs of the
trivial fiber) is a single arc that is not the whole boundary.  The shape of
that arc decides how the new Hopf band is plumbed.

Cell ``(i, j)`` spans columns ``i..i+1`` and rows ``j..j+1`` of the grid.  In
the front its grid corners ``(i, j)``, ``(i+1, j)``, ``(i+1, j+1)``, ``(i, j+1)``
are the bottom, right, top and left vertices.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from enum import Enum

from .diagram import convert_std_to_dotted
from .errors import OrderViolation, ValidationError


class Attachment(str, Enum):
    CASE1_BASIC = "CASE1_BASIC"
    LEMMA_I = "LEMMA_I"
    LEMMA_II = "LEMMA_II"
    LEMMA_III = "LEMMA_III"
    LEMMA_IV = "LEMMA_IV"
    LEMMA_V = "LEMMA_V"
    NO_MATCH = "NO_MATCH"


BOLD = "BOLD_CONCENTRIC"
REGION = "REGION"
FREE = "FREE"


@dataclass(frozen=True)
class Rect:
    row: int
    start: int
    stop: int
    role: str = FREE
    region: int = 0

    @property
    def cells(self):
        return [(i, self.row) for i in range(self.start, self.stop)]

    @property
    def bottom(self):
        """Front coordinates ``(y, z)`` of the lowest corner."""
        return (self.start - self.row, self.start + self.row)

    @property
    def top(self):
        """Front coordinates ``(y, z)`` of the highest corner."""
        return (self.stop - self.row - 1, self.stop + self.row + 1)

    @property
    def height_key(self):
        return (self.row, self.start)


@dataclass(frozen=True)
class RectComplex:
    """Ordered rectangles plus the data needed to re-check the gluing order."""

    size: int
    rects: tuple[Rect, ...]
    kinds: tuple[Attachment, ...]
    interior: frozenset
    bold_v: frozenset = frozenset()
    bold_h: frozenset = frozenset()
    notes: tuple[str, ...] = ()

    def __len__(self):
        return len(self.rects)

    def cell_owner(self):
        return {c: k for k, r in enumerate(self.rects) for c in r.cells}

    def histogram(self):
        out = {}
        for k in self.kinds:
            out[k.value] = out.get(k.value, 0) + 1
        return dict(sorted(out.items()))


# -- attaching locus -------------------------------------------------------


def _slots(rect, present, bold_v, bold_h):
    """Cyclic slot list around the boundary plus indices of the left/right vertices.

    Each slot is ``(kind, present)``; kinds are ``"v"`` for vertices and
    ``"e"`` for unit edges.  The walk starts at the bottom vertex and runs
    counterclockwise in the grid.  Only shared edges count as contact: cells
    meeting at a single corner are not glued there.
    """
    j, a, b = rect.row, rect.start, rect.stop
    slots = []
    # south side, west to east
    south = [(i, j - 1) in present or (i, j) in bold_h for i in range(a, b)]
    west = (a - 1, j) in present or (a, j) in bold_v
    east = (b, j) in present or (b, j) in bold_v
    north = [(i, j + 1) in present or (i, j + 1) in bold_h for i in range(a, b)]
    slots.append(("v", south[0] or west))
    for k in range(b - a):
        slots.append(("e", south[k]))
        if k < b - a - 1:
            slots.append(("v", south[k] or south[k + 1]))
    right = len(slots)
    slots.append(("v", south[-1] or east))
    slots.append(("e", east))
    slots.append(("v", east or north[-1]))
    for k in range(b - a - 1, -1, -1):
        slots.append(("e", north[k]))
        if k > 0:
            slots.append(("v", north[k] or north[k - 1]))
    left = len(slots)
    slots.append(("v", north[0] or west))
    slots.append(("e", west))
    return [p for _, p in slots], right, left


def _runs(flags):
    n = len(flags)
    if all(flags):
        return -1
    return sum(1 for k in range(n) if flags[k] and not flags[k - 1])


def classify_locus(flags, right, left):
    """Attachment pattern of a covered boundary arc."""
    runs = _runs(flags)
    if runs == -1 or runs > 1:
        return Attachment.NO_MATCH
    if runs == 0:
        return Attachment.CASE1_BASIC
    n = len(flags)
    lower = set(range(left, n)) | set(range(0, right + 1))
    upper = set(range(right, left + 1))
    on = {k for k in range(n) if flags[k]}
    if on <= lower:
        return Attachment.CASE1_BASIC
    if on <= upper:
        return Attachment.LEMMA_I
    has_l, has_r = left in on, right in on
    if has_l and not has_r:
        return Attachment.LEMMA_II
    if has_r and not has_l:
        return Attachment.LEMMA_III
    off = set(range(n)) - on
    if off <= upper:
        return Attachment.LEMMA_IV
    return Attachment.LEMMA_V


def attachment(rect, present, bold_v=frozenset(), bold_h=frozenset()):
    flags, right, left = _slots(rect, present, bold_v, bold_h)
    return classify_locus(flags, right, left)


def classify_attachment(c: RectComplex, i: int) -> Attachment:
    """Pattern by which rectangle ``i`` attaches to the union of rectangles ``0..i-1``."""
    present = {cell for r in c.rects[:i] for cell in r.cells}
    return attachment(c.rects[i], present, c.bold_v, c.bold_h)


def check_order(c: RectComplex, order=None):
    """Kinds for the rectangles glued in ``order``; raises on the first inadmissible step."""
    order = list(range(len(c.rects))) if order is None else list(order)
    if sorted(order) != list(range(len(c.rects))):
        raise ValueError("order must be a permutation of the rectangles")
    present, kinds = set(), []
    comp = _components(c.interior)
    touched = _touched_by_bold(comp, c.bold_v, c.bold_h)
    for pos, k in enumerate(order):
        rect = c.rects[k]
        kind = attachment(rect, present, c.bold_v, c.bold_h)
        flags, _, _ = _slots(rect, present, c.bold_v, c.bold_h)
        cid = comp[rect.cells[0]]
        if kind is Attachment.NO_MATCH or (not any(flags) and cid in touched):
            raise OrderViolation(f"rectangle {k} (step {pos + 1}) cannot be attached by a single plumbing")
        touched.add(cid)
        present.update(rect.cells)
        kinds.append(kind)
    return kinds


# -- geometry helpers -------------------------------------------------------


def _cells_of(front):
    m = front.size - 1
    return frozenset((k % m, k // m) for k, v in enumerate(front.interior) if v)


def _walls(front):
    """Vertical unit edges ``(col, row)`` lying on the front."""
    out = set()
    for c, lo, hi, _, _ in front.vsegs:
        for j in range(lo, hi):
            out.add((c, j))
    return out


def _components(cells):
    """Edge-connected pieces of a cell set."""
    comp, k = {}, 0
    for start in sorted(cells, key=lambda c: (c[1], c[0])):
        if start in comp:
            continue
        comp[start] = k
        stack = [start]
        while stack:
            i, j = stack.pop()
            for d in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                nb = (i + d[0], j + d[1])
                if nb in cells and nb not in comp:
                    comp[nb] = k
                    stack.append(nb)
        k += 1
    return comp


def _touched_by_bold(comp, bold_v, bold_h):
    touched = set()
    for i, j in bold_v:
        for nb in ((i - 1, j), (i, j)):
            if nb in comp:
                touched.add(comp[nb])
    for i, j in bold_h:
        for nb in ((i, j - 1), (i, j)):
            if nb in comp:
                touched.add(comp[nb])
    return touched


def _box(front, label):
    pts = front.polygon(label)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return min(xs), max(xs), min(ys), max(ys)


# -- ordering ----------------------------------------------------------------


def _cell_flags(cell, present, bold_v, bold_h):
    return _slots(Rect(cell[1], cell[0], cell[0] + 1), present, bold_v, bold_h)


def _shell(cells, blocks, bold_v, bold_h):
    """Greedy gluing order of cells.

    ``blocks`` is a list of ``(cells, key)`` processed in order; inside a block
    the admissible cell with the smallest key is glued next.  A cell touching
    nothing is admissible only when its connected piece of the interior is
    still untouched, so every piece grows from a single seed.
    """
    comp = _components(cells)
    touched = _touched_by_bold(comp, bold_v, bold_h)
    present = set()
    order, demoted = [], []
    blocks = [(list(cs), key) for cs, key in blocks]
    for bi, (block, key) in enumerate(blocks):
        remaining = set(block)
        heap = [(key(c), c) for c in remaining]
        heapq.heapify(heap)
        parked = set()
        while remaining:
            chosen = None
            while heap:
                _, cell = heapq.heappop(heap)
                if cell not in remaining or cell in parked:
                    continue
                flags, right, left = _cell_flags(cell, present, bold_v, bold_h)
                kind = classify_locus(flags, right, left)
                if kind is not Attachment.NO_MATCH and (any(flags) or comp[cell] not in touched):
                    chosen = cell
                    break
                parked.add(cell)
            if chosen is None:
                if bi + 1 < len(blocks):
                    # stuck: the rest of this block joins the free sweep at the end
                    blocks[-1] = (blocks[-1][0] + sorted(remaining), blocks[-1][1])
                    demoted.extend(sorted(remaining))
                    break
                raise ValidationError(
                    "front too degenerate: no admissible gluing order for cells "
                    f"{sorted(remaining, key=_sweep)[:6]}"
                )
            remaining.discard(chosen)
            present.add(chosen)
            touched.add(comp[chosen])
            order.append(chosen)
            i, j = chosen
            for di in (-1, 0, 1):
                for dj in (-1, 0, 1):
                    nb = (i + di, j + dj)
                    if nb in parked:
                        parked.discard(nb)
                        heapq.heappush(heap, (key(nb), nb))
    return order, demoted


def _merge(order, walls, role_of, bold_v, bold_h, comp):
    """Fuse consecutive cells of one row strip into rectangles where admissible."""
    rects = []
    present = set()
    touched = _touched_by_bold(comp, bold_v, bold_h)
    run = None
    for cell in order:
        i, j = cell
        if (
            run is not None
            and run.row == j
            and run.stop == i
            and (i, j) not in walls
            and (i, j) not in bold_v
            and role_of[cell] == (run.role, run.region)
        ):
            grown = Rect(j, run.start, i + 1, run.role, run.region)
            flags, right, left = _slots(grown, present, bold_v, bold_h)
            ok = classify_locus(flags, right, left) is not Attachment.NO_MATCH
            if ok and (any(flags) or comp[cell] not in touched):
                run = grown
                continue
        if run is not None:
            rects.append(run)
            present.update(run.cells)
            touched.add(comp[run.cells[0]])
        role, region = role_of[cell]
        run = Rect(j, i, i + 1, role, region)
    if run is not None:
        rects.append(run)
    return rects


_FALLBACK_KEYS = (
    lambda c: (c[1], c[0]),
    lambda c: (-c[1], c[0]),
    lambda c: (c[0], c[1]),
    lambda c: (-c[0], c[1]),
)


def _finish(front, cells, blocks, role_of, bold_v, bold_h, notes):
    try:
        order, demoted = _shell(cells, blocks, bold_v, bold_h)
    except ValidationError as first:
        # the block order painted itself into a corner: retry as single sweeps
        for n, key in enumerate(_FALLBACK_KEYS):
            try:
                order, demoted = _shell(cells, [(sorted(cells, key=key), key)], bold_v, bold_h)
            except ValidationError:
                continue
            notes.append(f"block order failed; single sweep number {n} used")
            break
        else:
            raise first
    for cell in demoted:
        role_of[cell] = (FREE, 0)
    if demoted:
        notes.append(f"{len(demoted)} cells moved to the free region to keep the order admissible")
    rects = _merge(order, _walls(front), role_of, bold_v, bold_h, _components(cells))
    present, kinds = set(), []
    for r in rects:
        kinds.append(attachment(r, present, bold_v, bold_h))
        present.update(r.cells)
    return RectComplex(
        size=front.size,
        rects=tuple(rects),
        kinds=tuple(kinds),
        interior=cells,
        bold_v=frozenset(bold_v),
        bold_h=frozenset(bold_h),
        notes=tuple(notes),
    )


def _sweep(cell):
    return (cell[1], cell[0])


def decompose_case1(front) -> RectComplex:
    """Rectangles of a front glued bottom-up along the row strips.

    The sweep visits strips from the bottom of the grid up (up and to the
    left in the front) and each strip from its lower-left end.  A piece is
    postponed only when gluing it would touch the current surface in two
    separate arcs.
    """
    cells = _cells_of(front)
    role_of = {c: (FREE, 0) for c in cells}
    return _finish(front, cells, [(sorted(cells, key=_sweep), _sweep)], role_of, set(), set(), [])


def decompose_case2(d) -> RectComplex:
    """Rectangles for a diagram with dotted circles.

    The bold arcs of the trivial fiber run along the left edge of the column
    band holding the dotted circles.  Cells inside each circle's bounding box
    come first, then the gaps between consecutive boxes (lower halves bottom
    up, upper halves from the box above downwards), then everything else by
    the bottom-up sweep.
    """
    d = convert_std_to_dotted(d)
    front = d.front
    if not d.dotted:
        return decompose_case1(front)
    cells = _cells_of(front)
    boxes = sorted((_box(front, lab) for lab in d.dotted), key=lambda b: b[2])
    x0 = min(b[0] for b in boxes)
    x1 = max(b[1] for b in boxes)
    y0, y1 = boxes[0][2], boxes[-1][3]
    # the arc only meets the interior along its boundary
    bold_v = {(x0, j) for j in range(y0, y1) if ((x0 - 1, j) in cells) != ((x0, j) in cells)}
    role_of = {}
    blocks = []
    for k, (c0, c1, r0, r1) in enumerate(boxes, start=1):
        inside = [c for c in cells if c0 <= c[0] < c1 and r0 <= c[1] < r1 and c not in role_of]
        for c in inside:
            role_of[c] = (BOLD, k)
        blocks.append((inside, _sweep))
    r = len(boxes)
    lower_blocks, upper_blocks = [], []
    for k in range(1, r):
        top_k, bottom_next = boxes[k - 1][3], boxes[k][2]
        mid = (top_k + bottom_next) / 2
        gap = [c for c in cells if x0 <= c[0] < x1 and top_k <= c[1] < bottom_next and c not in role_of]
        low = [c for c in gap if c[1] + 0.5 < mid]
        high = [c for c in gap if c[1] + 0.5 >= mid]
        for c in low:
            role_of[c] = (REGION, k)
        for c in high:
            role_of[c] = (REGION, r - 1 + k)
        lower_blocks.append((low, _sweep))
        upper_blocks.append((high, lambda c: (-c[1], c[0])))
    rest = [c for c in cells if c not in role_of]
    for c in rest:
        role_of[c] = (FREE, 0)
    blocks += lower_blocks + upper_blocks + [(rest, _sweep)]
    notes = [f"bold arc along column {x0}, rows {y0}..{y1}"]
    return _finish(front, cells, blocks, role_of, bold_v, set(), notes)


def decompose(d) -> RectComplex:
    d = convert_std_to_dotted(d)
    if d.dotted:
        return decompose_case2(d)
    return decompose_case1(d.front)
