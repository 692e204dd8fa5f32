"""Positive allowable Lefschetz fibrations assembled from handle diagrams.

A fibration is a ribbon surface (the page), a registry of named curves on it
and the ordered list of curve names along which positive Dehn twists are
composed.  Building from a diagram runs four stages:

1. the trivial fibration on the 1-handlebody (a disk with one untwisted band
   per dotted circle),
2. one positive Hopf stabilization per rectangle of the front, in gluing order,
3. every 2-handle attaching circle drawn on the page,
4. those circles appended to the twist word.
"""

from __future__ import annotations

import hashlib
import heapq
import json
from dataclasses import dataclass, replace

from .diagram import HandleDiagram, convert_std_to_dotted, tb
from .errors import CrossCheckFailure, FramingMismatch, OrderViolation, ParseError
from .rectangulation import (
    Attachment,
    RectComplex,
    _components,
    _slots,
    _touched_by_bold,
    classify_locus,
    decompose,
)
from .surface import (
    RibbonSurface,
    SurfaceCurve,
    add_core_band,
    disk,
    framing,
    linking,
    make_curve,
    plumb_positive_hopf,
)

SCHEMA = "steinpalf/palf-1"


@dataclass(frozen=True)
class Palf:
    surface: RibbonSurface
    curves: tuple[SurfaceCurve, ...] = ()
    word: tuple[str, ...] = ()
    tag: str = "D4"
    steps: tuple[str, ...] = ()
    n_cores: int = 0

    def curve(self, name):
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def twisted(self):
        """Curves of the twist word, in order."""
        index = {c.name: c for c in self.curves}
        return [index[w] for w in self.word]

    @property
    def n_rects(self):
        return sum(1 for cv in self.curves if cv.kind == "vanishing")


def trivial_disk_palf():
    return Palf(disk())


def trivial_handlebody_palf(r):
    """Disk with ``r`` untwisted bands; the fibration of the 1-handlebody."""
    if r < 0:
        raise ValueError("number of 1-handles must be non-negative")
    f, curves = disk(), []
    for j in range(r):
        f = add_core_band(f, f"c{j + 1}")
        curves.append(make_curve(f"c{j + 1}", "core", {j: 1}))
    return Palf(f, tuple(curves), (), f"HANDLEBODY({r})" if r else "D4", (), r)


# -- rectangle Seifert form ------------------------------------------------


@dataclass(frozen=True)
class RectForm:
    """Seifert form between rectangle bands: ``up[k][l] = V(k, l)`` for ``l != k``."""

    up: tuple[dict, ...]
    down: tuple[dict, ...]


def rect_form(c: RectComplex) -> RectForm:
    owner = c.cell_owner()
    n = len(c.rects)
    up = [dict() for _ in range(n)]
    for k, r in enumerate(c.rects):
        for i, j in r.cells:
            # cell form: +1 towards the east and north neighbours, -1 to the north-east one
            for di, dj, v in ((1, 0, 1), (0, 1, 1), (1, 1, -1)):
                l = owner.get((i + di, j + dj))
                if l is not None and l != k:
                    up[k][l] = up[k].get(l, 0) + v
    up = [{l: v for l, v in row.items() if v} for row in up]
    down = [dict() for _ in range(n)]
    for k, row in enumerate(up):
        for l, v in row.items():
            down[l][k] = v
    return RectForm(tuple(up), tuple(down))


def _vanishing_coeffs(k, form, rects, glued):
    """Coefficients on earlier bands making the new cycle Seifert-orthogonal to them.

    Solves ``V(x, b_f) = 0`` for every glued rectangle ``f``, where
    ``x = b_k + sum a_f b_f``.  The system is triangular for the height order
    of rectangles, so it is swept bottom-up from the glued rectangles above
    ``k``.
    """
    a = {}
    heap = [(rects[f].height_key, f) for f in form.up[k] if f in glued]
    heapq.heapify(heap)
    done = set()
    while heap:
        _, f = heapq.heappop(heap)
        if f in done:
            continue
        done.add(f)
        val = form.up[k].get(f, 0) + sum(a.get(e, 0) * v for e, v in form.down[f].items())
        if val:
            a[f] = val
            for g in form.up[f]:
                if g in glued and g not in done:
                    heapq.heappush(heap, (rects[g].height_key, g))
    return a


def stabilize_step(p: Palf, c: RectComplex, i: int, form: RectForm | None = None, _state=None) -> Palf:
    """Glue rectangle ``i`` of ``c``: plumb a positive Hopf band and twist along its cycle.

    Rectangles ``0..i-1`` must already be glued.  Raises ``OrderViolation``
    when the rectangle meets the page in anything but a single arc.
    """
    if p.n_rects != i:
        raise OrderViolation(f"rectangle {i} glued after {p.n_rects} rectangles")
    form = form or rect_form(c)
    state = _state if _state is not None else _GlueState(c, i)
    rect = c.rects[i]
    flags, right, left = _slots(rect, state.present, c.bold_v, c.bold_h)
    kind = classify_locus(flags, right, left)
    cid = state.comp[rect.cells[0]]
    if kind is Attachment.NO_MATCH or (not any(flags) and cid in state.touched):
        raise OrderViolation(f"rectangle {i} cannot be attached by a single plumbing")
    base = p.n_cores
    glued = state.glued
    below = {base + l: v for l, v in form.down[i].items() if l in glued}
    above = {base + l: v for l, v in form.up[i].items() if l in glued}
    f, _core = plumb_positive_hopf(p.surface, f"b{i + 1}", below=below, above=above)
    coeffs = {base + l: v for l, v in _vanishing_coeffs(i, form, c.rects, glued).items()}
    coeffs[base + i] = 1
    name = f"t{i + 1}"
    cyc = make_curve(name, "vanishing", coeffs)
    fr = framing(f, cyc)
    if fr != -1:
        raise FramingMismatch(f"vanishing cycle {name} has page framing {fr}, expected -1")
    state.present.update(rect.cells)
    state.touched.add(cid)
    glued.add(i)
    return Palf(f, p.curves + (cyc,), p.word + (name,), p.tag, p.steps + (kind.value,), p.n_cores)


class _GlueState:
    """Cells and rectangles glued so far."""

    def __init__(self, c, upto=0):
        self.comp = _components(c.interior)
        self.touched = _touched_by_bold(self.comp, c.bold_v, c.bold_h)
        self.present = {cell for r in c.rects[:upto] for cell in r.cells}
        self.touched |= {self.comp[cell] for cell in self.present}
        self.glued = set(range(upto))


# -- links on the page -------------------------------------------------------


def cell_pairing(front, wa, wb):
    """Symmetrized cell Seifert form of two winding vectors (twice a linking number)."""
    m = front.size - 1
    total = 0
    for idx in range(m * m):
        x = wa[idx]
        y = wb[idx]
        if not x and not y:
            continue
        i, j = idx % m, idx // m
        total -= 2 * x * y
        for di, dj, v in ((1, 0, 1), (0, 1, 1), (1, 1, -1)):
            ii, jj = i + di, j + dj
            if ii < m and jj < m:
                k = jj * m + ii
                total += v * (x * wb[k] + wa[k] * y)
    return total


def embed_link(p: Palf, d: HandleDiagram, c: RectComplex) -> Palf:
    """Register every 2-handle attaching circle as a curve on the page.

    The class of a circle is its winding number on each rectangle plus, for
    each dotted circle, its linking number with it times the matching core
    band.  The page framing of each circle is checked against its
    Thurston-Bennequin number.
    """
    d = convert_std_to_dotted(d)
    front = d.front
    m = front.size - 1
    owner = c.cell_owner()
    base = p.n_cores
    record = {(a, b): v for a, b, v in d.passage_record}
    dotted_w = {lab: front.winding_vector(lab) for lab in d.dotted}
    curves = list(p.curves)
    for pos, lab in enumerate(d.link_labels):
        w = front.winding_vector(lab)
        coeffs = {}
        for idx, val in enumerate(w):
            if not val:
                continue
            cell = (idx % m, idx // m)
            k = owner.get(cell)
            if k is None:
                raise CrossCheckFailure(f"{lab} winds around cell {cell} outside every rectangle")
            band = base + k
            if band in coeffs and coeffs[band] != val:
                raise CrossCheckFailure(f"winding of {lab} not constant on rectangle {k}")
            coeffs[band] = val
        for j, dl in enumerate(d.dotted):
            twice = cell_pairing(front, w, dotted_w[dl])
            if twice % 2:
                raise CrossCheckFailure(f"odd pairing between {lab} and {dl}")
            lam = twice // 2
            if d.passage_record and record.get((lab, dl), 0) != lam:
                raise CrossCheckFailure(
                    f"{lab} passes {record.get((lab, dl), 0)} times through {dl} but links it {lam} times"
                )
            if lam:
                coeffs[j] = lam
        curve = make_curve(f"s{pos + 1}", "link", coeffs, label=lab)
        fr = framing(p.surface, curve)
        t = tb(front, lab)
        if fr != t:
            raise FramingMismatch(f"page framing of {lab} is {fr} but tb is {t}")
        curves.append(curve)
    return replace(p, curves=tuple(curves), tag="LINK_EMBEDDED")


def attach_two_handles(p: Palf) -> Palf:
    links = tuple(cv.name for cv in p.curves if cv.kind == "link")
    return replace(p, word=p.word + links, tag="FINAL")


def stabilize_palf(p: Palf, k: int = 1) -> Palf:
    """Apply ``k`` positive stabilizations along boundary-parallel arcs."""
    for _ in range(k):
        count = sum(1 for cv in p.curves if cv.kind == "stabilization") + 1
        name = f"h{count}"
        f, core = plumb_positive_hopf(p.surface, name)
        cyc = make_curve(name, "stabilization", core.homology)
        p = Palf(f, p.curves + (cyc,), p.word + (name,), p.tag, p.steps + ("STABILIZATION",), p.n_cores)
    return p


@dataclass(frozen=True)
class BuildResult:
    palf: Palf
    complex: RectComplex
    diagram: HandleDiagram


def build(d: HandleDiagram) -> BuildResult:
    d = convert_std_to_dotted(d)
    c = decompose(d)
    form = rect_form(c)
    p = trivial_handlebody_palf(len(d.dotted))
    state = _GlueState(c, 0)
    for i in range(len(c.rects)):
        p = stabilize_step(p, c, i, form, state)
    p = embed_link(p, d, c)
    p = attach_two_handles(p)
    return BuildResult(p, c, d)


def cancellation_diagram(p: Palf):
    """Handle decomposition read off the fibration, after cancelling Hopf pairs.

    Every band is a 1-handle and every twist curve a 2-handle with framing
    one less than its page framing.  Each Hopf band cancels against its own
    vanishing cycle, leaving the core bands as 1-handles and the link curves
    as 2-handles; the remaining framing matrix is reported.
    """
    f = p.surface
    twisted = p.twisted()
    pairs = sum(1 for cv in twisted if cv.kind in ("vanishing", "stabilization"))
    links = [cv for cv in twisted if cv.kind == "link"]
    cores = list(range(p.n_cores))
    mat = []
    for a in links:
        row = []
        for b in links:
            if a is b:
                row.append(framing(f, a) - 1)
            else:
                row.append(linking(f, a, b))
        mat.append(row)
    passes = [[a.homology.get(j, 0) for j in cores] for a in links]
    return {
        "one_handles": f.n_bands,
        "two_handles": len(twisted),
        "cancelled_pairs": pairs,
        "remaining_one_handles": [f.bands[j] for j in cores],
        "remaining_two_handles": [cv.label or cv.name for cv in links],
        "framing_matrix": mat,
        "passes": passes,
    }


# -- serialization -----------------------------------------------------------


def palf_to_dict(p: Palf):
    f = p.surface
    seif = []
    for a in range(f.n_bands):
        for b, v in sorted(f.upper[a].items()):
            seif.append([a, b, v])
    return {
        "schema": SCHEMA,
        "tag": p.tag,
        "bands": [{"name": n, "kind": k, "framing": f.diag[i]} for i, (n, k) in enumerate(zip(f.bands, f.kinds))],
        "seifert": seif,
        "curves": [
            {
                "name": cv.name,
                "kind": cv.kind,
                "label": cv.label,
                "vector": [list(t) for t in cv.vector],
                "word": list(cv.word),
            }
            for cv in p.curves
        ],
        "word": list(p.word),
        "steps": list(p.steps),
        "n_cores": p.n_cores,
    }


def palf_from_dict(data) -> Palf:
    if not isinstance(data, dict) or data.get("schema") != SCHEMA:
        raise ParseError(f"not a {SCHEMA} document")
    try:
        bands = data["bands"]
        n = len(bands)
        upper = [dict() for _ in range(n)]
        lower = [dict() for _ in range(n)]
        for a, b, v in data["seifert"]:
            upper[a][b] = v
            lower[b][a] = v
        f = RibbonSurface(
            tuple(x["name"] for x in bands),
            tuple(x["kind"] for x in bands),
            tuple(upper),
            tuple(lower),
            tuple(x["framing"] for x in bands),
        )
        curves = tuple(
            SurfaceCurve(
                x["name"], x["kind"], tuple(tuple(t) for t in x["vector"]), tuple(x["word"]), x.get("label", "")
            )
            for x in data["curves"]
        )
        return Palf(f, curves, tuple(data["word"]), data["tag"], tuple(data["steps"]), data["n_cores"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed fibration document: {exc}") from exc


def dumps(p: Palf) -> str:
    return json.dumps(palf_to_dict(p), sort_keys=True, indent=2) + "\n"


def loads(text: str) -> Palf:
    try:
        return palf_from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
