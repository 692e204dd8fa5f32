"""Static SVG drawings of fronts, rectangle decompositions and fiber surfaces.

Grid point ``(u, v)`` is drawn at front position ``y = u - v``, ``z = u + v``
(``z`` pointing up).  Output is deterministic: elements are emitted in a fixed
order and coordinates are rounded.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22")
KIND_FILL = {
    "CASE1_BASIC": "#dde8f5",
    "LEMMA_I": "#f7d9c4",
    "LEMMA_II": "#f3c6d3",
    "LEMMA_III": "#d8f0c8",
    "LEMMA_IV": "#e9dcf4",
    "LEMMA_V": "#fbeeb5",
}
SCALE = 24
PAD = 30


def _num(x):
    return f"{x:.2f}".rstrip("0").rstrip(".")


class _Canvas:
    def __init__(self, size):
        self.size = size
        self.items = []

    def pt(self, u, v):
        # grid -> front -> screen
        n = self.size
        x = (u - v + n) * SCALE + PAD
        y = (2 * n - (u + v)) * SCALE + PAD
        return _num(x), _num(y)

    def poly(self, pts, closed=True, **attrs):
        coords = " ".join(",".join(self.pt(u, v)) for u, v in pts)
        tag = "polygon" if closed else "polyline"
        self.items.append(f"<{tag} points=\"{coords}\"{_attrs(attrs)}/>")

    def line(self, a, b, **attrs):
        (x1, y1), (x2, y2) = self.pt(*a), self.pt(*b)
        self.items.append(f"<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"{_attrs(attrs)}/>")

    def text(self, u, v, s, **attrs):
        x, y = self.pt(u, v)
        self.items.append(f"<text x=\"{x}\" y=\"{y}\"{_attrs(attrs)}>{escape(s)}</text>")

    def render(self, title):
        w = h = 2 * self.size * SCALE + 2 * PAD
        head = (
            f"<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" "
            f"viewBox=\"0 0 {w} {h}\">\n<title>{escape(title)}</title>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def _attrs(attrs):
    return "".join(f" {k.replace('_', '-')}=\"{v}\"" for k, v in attrs.items())


def _front_layer(c, front, dotted=()):
    labels = front.labels
    color = {lab: PALETTE[k % len(PALETTE)] for k, lab in enumerate(labels)}
    # horizontal grid segments lie under the vertical ones
    for r, lo, hi, _, k in front.hsegs:
        c.line((lo, r), (hi, r), stroke=color[labels[k]], stroke_width=2, fill="none")
    for col, lo, hi, _, k in front.vsegs:
        lab = labels[k]
        c.line((col, lo), (col, hi), stroke="white", stroke_width=6)
        dash = {"stroke_dasharray": "4,3"} if lab in dotted else {}
        c.line((col, lo), (col, hi), stroke=color[lab], stroke_width=2, **dash)
    for lab in labels:
        u, v = front.polygon(lab)[0]
        c.text(u, v, lab, font_size=11, fill=color[lab])


def front_svg(front, dotted=(), title="front"):
    c = _Canvas(front.size)
    _front_layer(c, front, dotted)
    return c.render(title)


def rects_svg(complex_, front, dotted=(), title="rectangles"):
    c = _Canvas(front.size)
    for k, (r, kind) in enumerate(zip(complex_.rects, complex_.kinds)):
        pts = [(r.start, r.row), (r.stop, r.row), (r.stop, r.row + 1), (r.start, r.row + 1)]
        c.poly(pts, fill=KIND_FILL.get(kind.value, "#eeeeee"), stroke="#888888", stroke_width=0.5)
        mid = ((r.start + r.stop) / 2, r.row + 0.5)
        c.text(mid[0], mid[1], str(k + 1), font_size=8, text_anchor="middle")
    for i, j in sorted(complex_.bold_v):
        c.line((i, j), (i, j + 1), stroke="black", stroke_width=4)
    for i, j in sorted(complex_.bold_h):
        c.line((i, j), (i + 1, j), stroke="black", stroke_width=4)
    _front_layer(c, front, dotted)
    return c.render(title)


def fiber_svg(palf, title="fiber"):
    """Disk drawn as a horizontal bar with one arch per band.

    Bands are spread left to right in band order; the arch of band ``k`` has
    its feet at ``2k`` and ``2k + 1`` and is labelled with the band name and
    its page framing.
    """
    f = palf.surface
    n = max(f.n_bands, 1)
    unit = 28
    w = (2 * n + 2) * unit + 2 * PAD
    h = 220
    base = h - 60
    out = [
        f"<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        f"<title>{escape(title)}</title>",
        f"<rect x=\"{PAD}\" y=\"{base}\" width=\"{w - 2 * PAD}\" height=\"24\" fill=\"#dde8f5\" stroke=\"black\"/>",
    ]
    for k in range(f.n_bands):
        x0 = PAD + (2 * k + 1) * unit
        x1 = x0 + unit
        top = base - 40 - 8 * (k % 4)
        stroke = "#d62728" if f.kinds[k] == "core" else "#1f77b4"
        out.append(
            f"<path d=\"M {x0} {base} C {x0} {top}, {x1} {top}, {x1} {base}\" "
            f"fill=\"none\" stroke=\"{stroke}\" stroke-width=\"6\" stroke-opacity=\"0.7\"/>"
        )
        out.append(
            f"<text x=\"{x0 + unit // 2}\" y=\"{top - 6}\" font-size=\"9\" text-anchor=\"middle\">"
            f"{escape(f.bands[k])}:{f.diag[k]}</text>"
        )
    word = " ".join(palf.word)
    out.append(f"<text x=\"{PAD}\" y=\"{h - 12}\" font-size=\"10\">{escape(word)}</text>")
    return "\n".join(out) + "\n</svg>\n"


def render(which, diagram, result=None):
    """Dispatch on ``which`` in ``front``, ``rects`` or ``fiber``."""
    if which == "front":
        return front_svg(diagram.front, diagram.dotted)
    if result is None:
        raise ValueError(f"{which} needs a built fibration")
    if which == "rects":
        return rects_svg(result.complex, result.diagram.front, result.diagram.dotted)
    if which == "fiber":
        return fiber_svg(result.palf)
    raise ValueError(f"unknown drawing {which!r}; choose front, rects or fiber")
