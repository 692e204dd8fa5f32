"""Grid-encoded Legendrian fronts and Stein handle diagrams.

A front is stored as a grid diagram: row ``r`` carries one X mark at column
``x_marks[r]`` and one O mark at column ``o_marks[r]``.  Horizontal segments
run X -> O, vertical segments run O -> X.  The front is the grid turned 45
degrees counterclockwise (front coordinates ``y = u - v``, ``z = u + v``), so
vertical grid segments have slope -1 in the front and pass over horizontal
ones, and a grid corner whose two edges leave towards {E, S} or {W, N} is a
cusp.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path

from . import kernels
from .errors import CrossCheckFailure, ParseError, ValidationError


@dataclass(frozen=True)
class GridFront:
    """Grid diagram with a component name attached to every row."""

    size: int
    x_marks: tuple[int, ...]
    o_marks: tuple[int, ...]
    row_labels: tuple[str, ...]

    def __post_init__(self):
        n = self.size
        for name, marks in (("x_marks", self.x_marks), ("o_marks", self.o_marks)):
            if len(marks) != n:
                raise ParseError(f"{name} has {len(marks)} entries, expected {n}")
            if sorted(marks) != list(range(n)):
                raise ParseError(f"{name} must place exactly one mark in each column")
        for r in range(n):
            if self.x_marks[r] == self.o_marks[r]:
                raise ParseError(f"row {r} has X and O in the same cell")
        if len(self.row_labels) != n:
            raise ParseError("every row needs a component label")
        for label, rows in self._traced().items():
            names = {self.row_labels[r] for r in rows}
            if len(names) != 1:
                raise ParseError(f"rows {sorted(rows)} form one component but carry labels {sorted(names)}")
        if len(set(self.labels)) != len(self._traced()):
            raise ParseError("two components share a label")

    def _traced(self):
        """Map first row of each traced component to its rows."""
        x_row = {c: r for r, c in enumerate(self.x_marks)}
        seen, comps = set(), {}
        for start in range(self.size):
            if start in seen:
                continue
            rows, r = [], start
            while r not in seen:
                seen.add(r)
                rows.append(r)
                r = x_row[self.o_marks[r]]
            comps[start] = rows
        return comps

    @cached_property
    def labels(self) -> tuple[str, ...]:
        """Component names ordered by lowest row."""
        return tuple(self.row_labels[start] for start in sorted(self._traced()))

    def rows_of(self, label):
        return [r for r in range(self.size) if self.row_labels[r] == label]

    def polygon(self, label):
        """Vertices of a component in traversal order, starting with the X of its lowest row."""
        x_row = {c: r for r, c in enumerate(self.x_marks)}
        start = min(self.rows_of(label))
        pts, r = [], start
        while True:
            pts.append((self.x_marks[r], r))
            pts.append((self.o_marks[r], r))
            r = x_row[self.o_marks[r]]
            if r == start:
                return pts

    @cached_property
    def _comp_index(self):
        return {lab: k for k, lab in enumerate(self.labels)}

    @cached_property
    def hsegs(self):
        idx = self._comp_index
        out = []
        for r in range(self.size):
            x, o = self.x_marks[r], self.o_marks[r]
            out.append((r, min(x, o), max(x, o), 1 if o > x else -1, idx[self.row_labels[r]]))
        return out

    @cached_property
    def vsegs(self):
        idx = self._comp_index
        x_row = {c: r for r, c in enumerate(self.x_marks)}
        o_row = {c: r for r, c in enumerate(self.o_marks)}
        out = []
        for c in range(self.size):
            lo, hi = o_row[c], x_row[c]
            out.append((c, min(lo, hi), max(lo, hi), 1 if hi > lo else -1, idx[self.row_labels[lo]]))
        return out

    @cached_property
    def crossings(self):
        """List of ``(col, row, over_label, under_label, sign)``."""
        labs = self.labels
        return [(c, r, labs[a], labs[b], s) for c, r, a, b, s in kernels.crossings(self.hsegs, self.vsegs)]

    def cusps(self, label):
        """Number of cusps of one component."""
        x_row = {c: r for r, c in enumerate(self.x_marks)}
        o_row = {c: r for r, c in enumerate(self.o_marks)}
        count = 0
        for r in self.rows_of(label):
            x, o = self.x_marks[r], self.o_marks[r]
            # at the X mark the vertical edge leaves towards the O of that column
            if (o - x) * (o_row[x] - r) < 0:
                count += 1
            if (x - o) * (x_row[o] - r) < 0:
                count += 1
        return count

    def winding_vector(self, label):
        """Winding numbers of one component around every cell (flat, row-major)."""
        k = self._comp_index[label]
        return tuple(kernels.winding_numbers([s for s in self.vsegs if s[4] == k], self.size))

    @cached_property
    def interior(self):
        """Flat 0/1 mask of cells bounded by the whole front."""
        return tuple(kernels.interior_mask(self.hsegs, self.vsegs, self.size))


def writhe(front, label=None):
    """Sum of crossing signs; self-crossings of ``label`` if given, else all crossings."""
    total = 0
    for _, _, a, b, s in front.crossings:
        if label is None or (a == label and b == label):
            total += s
    return total


def tb(front, label):
    """Thurston-Bennequin number: writhe minus half the cusp count."""
    cusps = front.cusps(label)
    if cusps % 2:
        raise CrossCheckFailure(f"odd cusp count on {label}")
    return writhe(front, label) - cusps // 2


def linking_number(front, a, b):
    """Linking number from signed crossings between two components."""
    total = sum(s for _, _, p, q, s in front.crossings if {p, q} == {a, b} and p != q)
    if total % 2:
        raise CrossCheckFailure(f"odd crossing sum between {a} and {b}")
    return total // 2


def linking_matrix(front, labels):
    """Symmetric matrix with ``tb`` on the diagonal and linking numbers off it."""
    return [[tb(front, a) if a == b else linking_number(front, a, b) for b in labels] for a in labels]


@dataclass(frozen=True)
class TwoHandle:
    component: str
    framing_rel_tb: int = -1


@dataclass(frozen=True)
class OneHandle:
    """A 1-handle in standard form, given by the rows whose segments pass through it."""

    passages: tuple[int, ...]


@dataclass(frozen=True)
class HandleDiagram:
    front: GridFront
    two_handles: tuple[TwoHandle, ...]
    one_handles: tuple[OneHandle, ...] = ()
    dotted: tuple[str, ...] = ()
    form: str = "dotted"
    passage_record: tuple[tuple[str, str, int], ...] = ()
    expected: tuple[tuple[str, int], ...] = ()

    @property
    def r(self):
        return len(self.one_handles) if self.form == "std" else len(self.dotted)

    @property
    def m(self):
        return len(self.two_handles)

    @property
    def link_labels(self):
        return tuple(h.component for h in self.two_handles)

    def framing(self, label):
        for h in self.two_handles:
            if h.component == label:
                return tb(self.front, label) + h.framing_rel_tb
        raise KeyError(label)


@dataclass(frozen=True)
class KirbyMatrix:
    """Linking matrix of a dotted diagram: 1-handles first, dotted diagonal 0."""

    labels: tuple[str, ...]
    dotted: tuple[bool, ...]
    entries: tuple[tuple[int, ...], ...]


def kirby_matrix(d):
    d = convert_std_to_dotted(d)
    f = d.front
    labels = tuple(d.dotted) + d.link_labels
    rows = []
    for a in labels:
        row = []
        for b in labels:
            if a != b:
                row.append(linking_number(f, a, b))
            else:
                row.append(0 if a in d.dotted else d.framing(a))
        rows.append(tuple(row))
    return KirbyMatrix(labels, tuple(a in d.dotted for a in labels), tuple(rows))


# -- parsing ----------------------------------------------------------------


def _load(source):
    if isinstance(source, dict):
        return source
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read {source}: {exc}") from exc
    else:
        text = source
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("diagram must be a JSON object")
    return data


def _int_list(data, key, required=True):
    val = data.get(key)
    if val is None and not required:
        return None
    if not isinstance(val, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in val):
        raise ParseError(f"{key} must be a list of integers")
    return val


def _front_from(data):
    n = data.get("grid_size")
    if not isinstance(n, int) or n < 2:
        raise ParseError("grid_size must be an integer >= 2")
    xs, os_ = _int_list(data, "x_marks"), _int_list(data, "o_marks")
    labels = [None] * n
    comps = data.get("components")
    if comps is None:
        labels = _auto_labels(n, xs, os_)
    else:
        if not isinstance(comps, dict):
            raise ParseError("components must map names to row lists")
        for name, rows in comps.items():
            if not isinstance(rows, list):
                raise ParseError(f"rows of {name} must be a list")
            for r in rows:
                if not isinstance(r, int) or not 0 <= r < n:
                    raise ParseError(f"component {name} lists invalid row {r!r}")
                if labels[r] is not None:
                    raise ParseError(f"row {r} assigned to two components")
                labels[r] = name
        if None in labels:
            raise ParseError(f"rows {[r for r in range(n) if labels[r] is None]} have no component")
    return GridFront(n, tuple(xs), tuple(os_), tuple(labels))


def _auto_labels(n, xs, os_):
    if len(xs) != n or len(os_) != n or sorted(xs) != list(range(n)) or sorted(os_) != list(range(n)):
        raise ParseError("x_marks and o_marks must be permutations of the columns")
    x_row = {c: r for r, c in enumerate(xs)}
    labels, k = [None] * n, 0
    for start in range(n):
        if labels[start] is not None:
            continue
        k += 1
        r = start
        while labels[r] is None:
            labels[r] = f"K{k}"
            r = x_row[os_[r]]
    return labels


def parse_diagram(source) -> HandleDiagram:
    """Parse and validate a handle diagram from a path, JSON text or dict."""
    data = _load(source)
    front = _front_from(data)
    dotted = data.get("dotted", [])
    one = data.get("one_handles", [])
    if dotted and one:
        raise ParseError("give either dotted circles or one_handles, not both")
    if not isinstance(dotted, list) or not all(isinstance(x, str) for x in dotted):
        raise ParseError("dotted must be a list of component names")
    handles = []
    for h in one:
        if not isinstance(h, dict):
            raise ParseError("each one_handle must be an object")
        handles.append(OneHandle(tuple(_int_list(h, "passages"))))
    twos = []
    raw_twos = data.get("two_handles")
    if not isinstance(raw_twos, list):
        raise ParseError("two_handles must be a list")
    for h in raw_twos:
        if not isinstance(h, dict) or not isinstance(h.get("component"), str):
            raise ParseError("each two_handle needs a component name")
        rel = h.get("framing_rel_tb")
        if rel is None:
            if "framing" not in h:
                raise ParseError(f"two_handle {h['component']} needs framing or framing_rel_tb")
            if h["component"] not in front.labels:
                raise ValidationError(f"unknown component {h['component']}")
            rel = h["framing"] - tb(front, h["component"])
        twos.append(TwoHandle(h["component"], rel))
    expected = data.get("expected", {})
    if not isinstance(expected, dict):
        raise ParseError("expected must be an object")
    d = HandleDiagram(
        front=front,
        two_handles=tuple(twos),
        one_handles=tuple(handles),
        dotted=tuple(dotted),
        form="std" if handles else "dotted",
        expected=tuple(sorted(expected.items())),
    )
    validate(d)
    return d


def validate(d):
    f = d.front
    labels = set(f.labels)
    used = [h.component for h in d.two_handles] + list(d.dotted)
    for name in used:
        if name not in labels:
            raise ValidationError(f"unknown component {name}")
    if len(set(used)) != len(used):
        raise ValidationError("a component is used twice")
    if set(used) != labels:
        raise ValidationError(f"components {sorted(labels - set(used))} are neither 2-handles nor dotted")
    for h in d.two_handles:
        if h.framing_rel_tb != -1:
            t = tb(f, h.component)
            raise ValidationError(
                f"2-handle {h.component} has framing {t + h.framing_rel_tb} but tb - 1 = {t - 1}; "
                "only Stein framings are accepted"
            )
    for name in d.dotted:
        if any(a == name and b == name for _, _, a, b, _ in f.crossings):
            raise ValidationError(f"dotted circle {name} has self-crossings")
    for i, a in enumerate(d.dotted):
        for b in d.dotted[i + 1:]:
            if linking_number(f, a, b):
                raise ValidationError(f"dotted circles {a} and {b} are linked")
    seen = set()
    for h in d.one_handles:
        if not h.passages:
            raise ValidationError("a 1-handle needs at least one passage")
        for r in h.passages:
            if not 0 <= r < f.size:
                raise ValidationError(f"passage row {r} out of range")
            if r in seen:
                raise ValidationError(f"row {r} passes through two 1-handles")
            seen.add(r)


def diagram_to_dict(d):
    f = d.front
    out = {
        "grid_size": f.size,
        "x_marks": list(f.x_marks),
        "o_marks": list(f.o_marks),
        "components": {lab: f.rows_of(lab) for lab in f.labels},
        "two_handles": [{"component": h.component, "framing_rel_tb": h.framing_rel_tb} for h in d.two_handles],
    }
    if d.form == "std":
        out["one_handles"] = [{"passages": list(h.passages)} for h in d.one_handles]
    elif d.dotted:
        out["dotted"] = list(d.dotted)
    if d.expected:
        out["expected"] = dict(d.expected)
    return out


# -- standard form to dotted circles -----------------------------------------


def _common_gap(f, rows):
    for c in range(f.size - 1):
        if all(min(f.x_marks[r], f.o_marks[r]) <= c and max(f.x_marks[r], f.o_marks[r]) >= c + 1 for r in rows):
            return c
    return None


def _normalize(polys):
    """Turn fractional rectilinear polygons back into a grid front."""
    hs, vs = [], []
    for label, pts in polys.items():
        for k in range(0, len(pts), 2):
            (x0, y0), (x1, y1) = pts[k], pts[k + 1]
            nx, _ = pts[(k + 2) % len(pts)]
            hs.append((y0, x0, x1, label))
            vs.append(x1)
            assert y0 == y1 and nx == x1
    ys = sorted(h[0] for h in hs)
    xs = sorted(vs)
    if len(set(ys)) != len(ys) or len(set(xs)) != len(xs):
        raise CrossCheckFailure("coordinate collision while normalizing a converted front")
    yrank = {y: k for k, y in enumerate(ys)}
    xrank = {x: k for k, x in enumerate(xs)}
    n = len(ys)
    xm, om, lab = [0] * n, [0] * n, [""] * n
    for y, x0, x1, label in hs:
        r = yrank[y]
        xm[r], om[r], lab[r] = xrank[x0], xrank[x1], label
    return GridFront(n, tuple(xm), tuple(om), tuple(lab))


def convert_std_to_dotted(d: HandleDiagram) -> HandleDiagram:
    """Replace each standard-form 1-handle by a dotted staircase circle.

    All passages must cross one common column gap.  Inside that gap every
    passing strand takes a short downward step and a staircase unknot is
    threaded through the steps, so that each strand meets the circle in two
    crossings of the same sign.  Thurston-Bennequin numbers of the 2-handles
    are unchanged and each passage contributes its direction (+1 eastward)
    to the linking number with the circle.
    """
    if d.form != "std":
        return d
    f = d.front
    all_rows = [r for h in d.one_handles for r in h.passages]
    c = _common_gap(f, all_rows)
    if c is None:
        raise ValidationError("1-handle passages do not share a column gap; cannot place dotted circles")
    handles = sorted(d.one_handles, key=lambda h: min(h.passages))
    for a, b in zip(handles, handles[1:]):
        if max(a.passages) > min(b.passages):
            raise ValidationError("passages of different 1-handles interleave")
    polys = {lab: [(Fraction(x), Fraction(y)) for x, y in f.polygon(lab)] for lab in f.labels}
    taken = set(f.labels)
    names, record = [], {}
    rr = len(handles)
    width = 2 * max(len(h.passages) for h in handles) + 2
    third, sixth = Fraction(1, 3), Fraction(1, 6)
    for j, h in enumerate(handles):
        name, k = f"D{j + 1}", 1
        while name in taken:
            k += 1
            name = f"D{j + 1}_{k}"
        taken.add(name)
        names.append(name)
        ys = sorted(h.passages)
        kk = len(ys)

        def slot(s, j=j):
            return c + (Fraction(s + 1) + Fraction(j, rr + 1)) / width

        q = [slot(2 * t) for t in range(kk + 1)]
        steps = []
        for i, y in enumerate(ys, start=1):
            p = slot(2 * i - 1)
            label = f.row_labels[y]
            pts = polys[label]
            for at in range(0, len(pts), 2):
                if pts[at][1] == y and pts[at + 1][1] == y:
                    break
            else:  # pragma: no cover
                raise CrossCheckFailure(f"lost segment of row {y}")
            (x0, _), (x1, _) = pts[at], pts[at + 1]
            direction = 1 if x1 > x0 else -1
            # the strand always sits higher left of the step, which keeps both new corners smooth
            shift = -third if direction > 0 else third
            pts[at + 1:at + 2] = [(p, Fraction(y)), (p, y + shift), (x1, y + shift)]
            steps.append(y - direction * sixth)
            record[(label, name)] = record.get((label, name), 0) + direction
        top = Fraction(ys[-1]) + Fraction(1, 2)
        circle = []
        for t in range(kk):
            circle += [(q[t], steps[t]), (q[t + 1], steps[t])]
        circle += [(q[kk], top), (q[0], top)]
        # starts with a horizontal step and alternates; runs counterclockwise
        polys[name] = circle
    front = _normalize(polys)
    out = HandleDiagram(
        front=front,
        two_handles=d.two_handles,
        dotted=tuple(names),
        form="dotted",
        passage_record=tuple(sorted((a, b, v) for (a, b), v in record.items())),
        expected=d.expected,
    )
    validate(out)
    return out
