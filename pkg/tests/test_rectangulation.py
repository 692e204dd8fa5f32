import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import diagram_dicts, grids
from steinpalf import _pykernels
from steinpalf import kernels
from steinpalf.diagram import GridFront, _auto_labels, parse_diagram
from steinpalf.errors import OrderViolation, SteinPalfError
from steinpalf.rectangulation import (
    Attachment,
    Rect,
    attachment,
    check_order,
    classify_locus,
    decompose,
    decompose_case1,
)


def cell(i, j):
    return Rect(j, i, i + 1)


# loci of a single cell; slot order: bottom, S, right, E, top, N, left, W


@pytest.mark.parametrize(
    "present, kind",
    [
        (set(), Attachment.CASE1_BASIC),
        ({(1, 0)}, Attachment.CASE1_BASIC),  # south
        ({(0, 1)}, Attachment.CASE1_BASIC),  # west
        ({(1, 0), (0, 1)}, Attachment.CASE1_BASIC),  # whole lower half
        ({(2, 1)}, Attachment.LEMMA_I),  # east
        ({(1, 2)}, Attachment.LEMMA_I),  # north
        ({(0, 1), (1, 2)}, Attachment.LEMMA_II),  # west and north meet at the left vertex
        ({(1, 0), (2, 1)}, Attachment.LEMMA_III),  # south and east meet at the right vertex
        ({(1, 0), (2, 1), (0, 1)}, Attachment.LEMMA_IV),  # all but the north
        ({(0, 1), (1, 2), (2, 1)}, Attachment.LEMMA_V),  # all but the south
        ({(1, 0), (1, 2)}, Attachment.NO_MATCH),  # two separate arcs
        ({(1, 0), (1, 2), (0, 1), (2, 1)}, Attachment.NO_MATCH),  # whole boundary
    ],
)
def test_single_cell_patterns(present, kind):
    assert attachment(cell(1, 1), present) is kind


def test_corner_contact_is_not_gluing():
    assert attachment(cell(1, 1), {(0, 0)}) is Attachment.CASE1_BASIC


def test_locus_runs():
    assert classify_locus([False] * 8, 2, 6) is Attachment.CASE1_BASIC
    assert classify_locus([True] * 8, 2, 6) is Attachment.NO_MATCH


def _front(xs, os_):
    return GridFront(len(xs), tuple(xs), tuple(os_), tuple(_auto_labels(len(xs), xs, os_)))


@given(grids(max_size=9))
def test_case1_canonical_order_admissible(g):
    c = decompose_case1(_front(*g))
    assert len(check_order(c)) == len(c.rects)
    cells = [x for r in c.rects for x in r.cells]
    assert len(cells) == len(set(cells)) == len(c.interior)


@given(diagram_dicts(max_grid=8))
def test_canonical_order_admissible(data):
    try:
        d = parse_diagram(data)
    except SteinPalfError:
        return
    c = decompose(d)
    kinds = check_order(c)
    assert list(kinds) == list(c.kinds)


def test_some_permutation_rejected(golden):
    c = decompose(golden["trefoil"])
    rng = random.Random(1)
    rejected = 0
    for _ in range(50):
        order = list(range(len(c.rects)))
        rng.shuffle(order)
        try:
            check_order(c, order)
        except OrderViolation:
            rejected += 1
    assert rejected > 0


def test_rect_geometry():
    r = Rect(2, 1, 4)
    assert r.cells == [(1, 2), (2, 2), (3, 2)]
    assert r.bottom == (-1, 3)
    assert r.top == (1, 7)


# compiled and pure kernels agree -----------------------------------------


@given(grids(max_size=10))
def test_kernels_agree(g):
    f = _front(*g)
    for name in ("crossings", "interior_mask"):
        a = getattr(kernels, name)(f.hsegs, f.vsegs) if name == "crossings" else kernels.interior_mask(
            f.hsegs, f.vsegs, f.size
        )
        b = getattr(_pykernels, name)(f.hsegs, f.vsegs) if name == "crossings" else _pykernels.interior_mask(
            f.hsegs, f.vsegs, f.size
        )
        assert list(a) == list(b)
    assert list(kernels.winding_numbers(f.vsegs, f.size)) == list(_pykernels.winding_numbers(f.vsegs, f.size))


def test_rank_kernels_agree():
    rng = random.Random(3)
    for _ in range(30):
        rows = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(5)]
        for p in kernels.RANK_PRIMES:
            assert kernels.rank_mod_p(rows, p) == _pykernels.rank_mod_p(rows, p)


@given(st.data())
def test_prefix_permutations_of_example(golden, data):
    c = decompose(golden["example_s3"])
    n = len(c.rects)
    k = data.draw(st.integers(2, min(n, 12)))
    head = data.draw(st.permutations(range(k)))
    order = list(head) + list(range(k, n))
    try:
        kinds = check_order(c, order)
    except OrderViolation:
        return
    assert len(kinds) == n
    if list(head) == sorted(head):
        assert list(kinds) == list(c.kinds)
