"""Deterministic corpus of random handle diagrams and a checker that runs them.

Diagrams are random grid fronts with up to four components, each carrying a
2-handle, and up to three 1-handles whose passages share one column gap.  The
same seed always yields the same corpus.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .diagram import GridFront, _auto_labels, parse_diagram, tb
from .errors import SteinPalfError
from .invariants import cross_check
from .palf import build
from .surface import framing


def random_diagram_data(rng, max_grid=12, max_links=4, max_handles=3):
    """One random diagram as a JSON-ready dict, or ``None`` if the draw is rejected."""
    n = rng.randint(2, max_grid)
    xs = list(range(n))
    os_ = list(range(n))
    rng.shuffle(xs)
    rng.shuffle(os_)
    if any(a == b for a, b in zip(xs, os_)):
        return None
    labels = _auto_labels(n, xs, os_)
    names = sorted(set(labels), key=labels.index)
    if len(names) > max_links:
        return None
    data = {
        "grid_size": n,
        "x_marks": xs,
        "o_marks": os_,
        "two_handles": [{"component": name, "framing_rel_tb": -1} for name in names],
    }
    if max_handles and n > 2 and rng.random() < 0.6:
        gap = rng.randint(0, n - 2)
        rows = [r for r in range(n) if min(xs[r], os_[r]) <= gap < max(xs[r], os_[r])]
        if rows:
            k = rng.randint(1, min(4, len(rows)))
            rows = sorted(rng.sample(rows, k))
            r = rng.randint(1, min(max_handles, k))
            cuts = sorted(rng.sample(range(1, k), r - 1))
            groups, prev = [], 0
            for cut in cuts + [k]:
                groups.append(rows[prev:cut])
                prev = cut
            data["one_handles"] = [{"passages": g} for g in groups]
    return data


def corpus(seed=0, count=1000, max_grid=12):
    """Yield ``count`` valid diagrams (parsed) with their source dicts."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        data = random_diagram_data(rng, max_grid)
        if data is None:
            continue
        try:
            d = parse_diagram(data)
        except SteinPalfError:
            continue
        made += 1
        yield data, d


@dataclass
class FuzzResult:
    cases: int = 0
    failures: list = field(default_factory=list)
    by_handles: Counter = field(default_factory=Counter)
    rectangles: int = 0

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        return {
            "cases": self.cases,
            "failures": self.failures,
            "by_one_handles": {str(k): v for k, v in sorted(self.by_handles.items())},
            "rectangles": self.rectangles,
        }


def check_diagram(d):
    """Build and verify one diagram; returns the build result or raises."""
    res = build(d)
    p = res.palf
    front = res.diagram.front
    for cv in p.twisted():
        fr = framing(p.surface, cv)
        if cv.kind == "link":
            want = tb(front, cv.label)
        else:
            want = -1
        if fr != want:
            from .errors import FramingMismatch

            raise FramingMismatch(f"{cv.name} has page framing {fr}, expected {want}")
    cross_check(p, d)
    return res


def run(seed=0, count=1000, max_grid=12, stop_early=False):
    out = FuzzResult()
    for index, (data, d) in enumerate(corpus(seed, count, max_grid)):
        out.cases += 1
        out.by_handles[d.r] += 1
        try:
            res = check_diagram(d)
        except SteinPalfError as exc:
            out.failures.append({"index": index, "error": type(exc).__name__, "message": str(exc), "input": data})
            if stop_early:
                break
            continue
        out.rectangles += res.palf.n_rects
    return out
