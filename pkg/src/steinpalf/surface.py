"""Ribbon surfaces: a disk with bands, tracked through their Seifert form.

A surface is stored by its bands and the sparse Seifert form ``V`` on the band
basis of first homology, ``V(x, y) = lk(x+, y)`` with ``x+`` pushed off the
page in the positive normal (Reeb) direction.  ``V(x, x)`` is the page
framing of a curve, ``V(x, y)`` the linking number of two disjoint curves and
``V(x, y) - V(y, x)`` their algebraic intersection; every curve on the
surface is recorded as an integer combination of band cores.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import ValidationError


@dataclass(frozen=True)
class SurfaceCurve:
    """A named simple closed curve on a ribbon surface.

    ``vector`` holds the nonzero coefficients ``(band, coeff)`` of its class in
    the band basis, ``word`` the signed band traversals it was assembled from.
    """

    name: str
    kind: str
    vector: tuple[tuple[int, int], ...]
    word: tuple[int, ...] = ()
    label: str = ""

    @property
    def homology(self):
        return dict(self.vector)


def make_curve(name, kind, coeffs, word=None, label=""):
    vec = tuple(sorted((b, c) for b, c in coeffs.items() if c))
    if word is None:
        word = tuple(b if c > 0 else -b - 1 for b, c in vec for _ in range(abs(c)))
    return SurfaceCurve(name, kind, vec, tuple(word), label)


@dataclass(frozen=True)
class RibbonSurface:
    bands: tuple[str, ...] = ()
    kinds: tuple[str, ...] = ()
    # upper[a] maps b -> V(a, b) for b != a; lower mirrors it as lower[b][a]
    upper: tuple[dict, ...] = ()
    lower: tuple[dict, ...] = ()
    diag: tuple[int, ...] = ()

    @property
    def n_bands(self):
        return len(self.bands)

    @property
    def euler_char(self):
        return 1 - self.n_bands

    def seifert(self, x, y):
        """Bilinear Seifert pairing of two coefficient dicts."""
        total = 0
        for a, ca in x.items():
            if not ca:
                continue
            if a in y:
                total += ca * y[a] * self.diag[a]
            row = self.upper[a]
            if len(row) < len(y):
                for b, v in row.items():
                    cb = y.get(b)
                    if cb:
                        total += ca * cb * v
            else:
                for b, cb in y.items():
                    v = row.get(b)
                    if v:
                        total += ca * cb * v
        return total

    def matrix(self):
        n = self.n_bands
        m = [[0] * n for _ in range(n)]
        for a in range(n):
            m[a][a] = self.diag[a]
            for b, v in self.upper[a].items():
                m[a][b] = v
        return m

    def boundary_components(self):
        """Boundary count from the rank of the intersection form."""
        n = self.n_bands
        if n == 0:
            return 1
        v = self.matrix()
        skew = [[v[a][b] - v[b][a] for b in range(n)] for a in range(n)]
        return n - kernels.rank_q(skew) + 1


def disk():
    return RibbonSurface()


def _extend(f, name, kind, diag, entries_up, entries_down):
    k = f.n_bands
    upper = list(f.upper)
    lower = list(f.lower)
    new_up, new_low = dict(entries_up), dict(entries_down)
    for e, v in entries_down.items():  # V(e, new)
        upper[e] = {**upper[e], k: v}
    for e, v in entries_up.items():  # V(new, e)
        lower[e] = {**lower[e], k: v}
    upper.append(new_up)
    lower.append(new_low)
    return RibbonSurface(
        f.bands + (name,), f.kinds + (kind,), tuple(upper), tuple(lower), f.diag + (diag,)
    )


def add_core_band(f, name):
    """Add an untwisted band, unlinked from everything (a 1-handle core)."""
    return _extend(f, name, "core", 0, {}, {})


def plumb_positive_hopf(f, name, below=None, above=None):
    """Plumb a positive Hopf band onto ``f``.

    ``below`` maps existing bands ``e`` to ``V(e, new)`` and ``above`` maps them
    to ``V(new, e)``; entries lie in {-1, 0, 1} and at most one of the two is
    nonzero for any band.  Returns the new surface and the core of the new
    band, whose page framing is -1.
    """
    below = {e: v for e, v in (below or {}).items() if v}
    above = {e: v for e, v in (above or {}).items() if v}
    for e, v in list(below.items()) + list(above.items()):
        if v not in (-1, 1) or not 0 <= e < f.n_bands:
            raise ValidationError(f"bad plumbing incidence {v} with band {e}")
    if set(below) & set(above):
        raise ValidationError("a band cannot meet the new core from both sides")
    g = _extend(f, name, "hopf", -1, above, below)
    k = g.n_bands - 1
    return g, make_curve(name, "core", {k: 1})


def framing(f, curve):
    h = curve.homology
    return f.seifert(h, h)


def linking(f, c1, c2):
    """Linking number of two disjoint curves on the page, ``V(c1, c2)``.

    For disjoint curves the pairing is symmetric, which is checked.
    """
    x, y = c1.homology, c2.homology
    v = f.seifert(x, y)
    if v != f.seifert(y, x):
        raise ValidationError(f"{c1.name} and {c2.name} intersect algebraically; linking is undefined")
    return v


def intersection(f, c1, c2):
    """Algebraic intersection number of two curves on the surface."""
    x, y = c1.homology, c2.homology
    return f.seifert(x, y) - f.seifert(y, x)


def twist_homology(f, c, x):
    """Image of the class ``x`` (a dict) under the positive Dehn twist along ``c``."""
    k = f.seifert(c.homology, x) - f.seifert(x, c.homology)
    out = dict(x)
    if k:
        for b, v in c.homology.items():
            out[b] = out.get(b, 0) + k * v
    return {b: v for b, v in out.items() if v}
