# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the grid kernels; same API as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


cdef i64[:, ::1] _seg_array(segs):
    if not segs:
        return np.zeros((0, 5), dtype=np.int64)
    return np.ascontiguousarray(np.asarray(segs, dtype=np.int64).reshape(-1, 5))


def crossings(hsegs, vsegs):
    cdef i64[:, ::1] h = _seg_array(hsegs)
    cdef i64[:, ::1] v = _seg_array(vsegs)
    cdef Py_ssize_t a, b
    cdef i64 c, r
    out = []
    for a in range(v.shape[0]):
        c = v[a, 0]
        for b in range(h.shape[0]):
            r = h[b, 0]
            if v[a, 1] < r < v[a, 2] and h[b, 1] < c < h[b, 2]:
                out.append((c, r, v[a, 4], h[b, 4], -v[a, 3] * h[b, 3]))
    return out


def winding_numbers(vsegs, Py_ssize_t n):
    cdef Py_ssize_t m = n - 1
    cdef i64[:, ::1] v = _seg_array(vsegs)
    cdef cnp.ndarray[i64, ndim=1] w = np.zeros(m * m, dtype=np.int64)
    cdef Py_ssize_t a, i, j, top
    for a in range(v.shape[0]):
        top = v[a, 0] if v[a, 0] < m else m
        for j in range(v[a, 1], v[a, 2]):
            for i in range(top):
                w[j * m + i] += v[a, 3]
    return w.tolist()


def interior_mask(hsegs, vsegs, Py_ssize_t n):
    cdef Py_ssize_t m = n - 1
    cdef Py_ssize_t size = m + 2
    cdef i64[:, ::1] h = _seg_array(hsegs)
    cdef i64[:, ::1] v = _seg_array(vsegs)
    cdef cnp.uint8_t[:, ::1] bv = np.zeros((size, size + 1), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] bh = np.zeros((size + 1, size), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] seen = np.zeros((size, size), dtype=np.uint8)
    cdef i64[::1] stack = np.zeros(size * size + 1, dtype=np.int64)
    cdef Py_ssize_t a, i, j, x, y, top = 0
    for a in range(v.shape[0]):
        for j in range(v[a, 1], v[a, 2]):
            bv[j + 1, v[a, 0] + 1] = 1
    for a in range(h.shape[0]):
        for i in range(h[a, 1], h[a, 2]):
            bh[h[a, 0] + 1, i + 1] = 1
    seen[0, 0] = 1
    stack[0] = 0
    top = 1
    while top:
        top -= 1
        y = stack[top] // size
        x = stack[top] % size
        if x + 1 < size and not seen[y, x + 1] and not bv[y, x + 1]:
            seen[y, x + 1] = 1
            stack[top] = y * size + x + 1
            top += 1
        if x > 0 and not seen[y, x - 1] and not bv[y, x]:
            seen[y, x - 1] = 1
            stack[top] = y * size + x - 1
            top += 1
        if y + 1 < size and not seen[y + 1, x] and not bh[y + 1, x]:
            seen[y + 1, x] = 1
            stack[top] = (y + 1) * size + x
            top += 1
        if y > 0 and not seen[y - 1, x] and not bh[y, x]:
            seen[y - 1, x] = 1
            stack[top] = (y - 1) * size + x
            top += 1
    return [0 if seen[j + 1, i + 1] else 1 for j in range(m) for i in range(m)]


def rank_mod_p(rows, i64 p):
    """Rank over GF(p); ``p`` must be below 2**31 so products fit in int64."""
    if not rows:
        return 0
    cdef cnp.ndarray[i64, ndim=2] arr = np.array(
        [[x % p for x in row] for row in rows], dtype=np.int64).reshape(len(rows), -1)
    cdef i64[:, ::1] a = arr
    cdef Py_ssize_t nr = a.shape[0], nc = a.shape[1]
    cdef Py_ssize_t rank = 0, col, r, k, piv
    cdef i64 inv, f, t, e, base
    for col in range(nc):
        piv = -1
        for r in range(rank, nr):
            if a[r, col]:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nc):
                t = a[rank, k]
                a[rank, k] = a[piv, k]
                a[piv, k] = t
        # modular inverse by exponentiation
        inv = 1
        base = a[rank, col]
        e = p - 2
        while e:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for k in range(nc):
            a[rank, k] = a[rank, k] * inv % p
        for r in range(nr):
            if r != rank and a[r, col]:
                f = a[r, col]
                for k in range(nc):
                    a[r, k] = ((a[r, k] - f * a[rank, k]) % p + p) % p
        rank += 1
        if rank == nr:
            break
    return rank
