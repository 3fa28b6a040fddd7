# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled canonicalization kernels for small integer matrices.

Mirrors ijobstruct._canon_py.  Matrices are tuples of equal-length integer
rows with at most 16 rows and 8 columns (the enumeration family is 5x5);
larger inputs are delegated to the pure-Python fallback.
"""

from itertools import permutations as _permutations

import array as _array

from cpython cimport array

BACKEND = "cython"

_PERM_CACHE = {}


def _perms_for(int size):
    arr = _PERM_CACHE.get(size)
    if arr is None:
        flat = []
        for p in _permutations(range(size)):
            flat.extend(p)
        arr = _array.array("i", flat)
        _PERM_CACHE[size] = arr
    return arr


cdef inline int _row_less(int* a, int* b, int size) noexcept:
    cdef int j
    for j in range(size):
        if a[j] != b[j]:
            return a[j] < b[j]
    return 0


cdef void _sort_rows(int* mat, int m, int size) noexcept:
    # insertion sort; m is tiny
    cdef int i, k, j
    cdef int tmp[8]
    for i in range(1, m):
        for j in range(size):
            tmp[j] = mat[i * size + j]
        k = i
        while k > 0 and _row_less(tmp, mat + (k - 1) * size, size):
            for j in range(size):
                mat[k * size + j] = mat[(k - 1) * size + j]
            k -= 1
        for j in range(size):
            mat[k * size + j] = tmp[j]


cdef int _load(rows, int* mat, int* m_out, int* size_out) except -1:
    cdef int m = len(rows)
    cdef int size = len(rows[0])
    cdef int i, j
    if m > 16 or size > 8:
        return 0
    for i in range(m):
        row = rows[i]
        for j in range(size):
            mat[i * size + j] = row[j]
    m_out[0] = m
    size_out[0] = size
    return 1


def canonical_form(rows):
    """Lexicographically smallest row-sorted matrix over column permutations."""
    cdef int mat[128]
    cdef int cand[128]
    cdef int best[128]
    cdef int m, size
    if not _load(rows, mat, &m, &size):
        from ijobstruct._canon_py import canonical_form as pure
        return pure(rows)
    perms = _perms_for(size)
    cdef int[:] pv = perms
    cdef Py_ssize_t nperm = pv.shape[0] // size
    cdef Py_ssize_t p
    cdef int i, j, cell
    cdef bint have_best = 0, smaller
    for p in range(nperm):
        for i in range(m):
            for j in range(size):
                cand[i * size + j] = mat[i * size + pv[p * size + j]]
        _sort_rows(cand, m, size)
        if not have_best:
            for cell in range(m * size):
                best[cell] = cand[cell]
            have_best = 1
            continue
        smaller = 0
        for cell in range(m * size):
            if cand[cell] != best[cell]:
                smaller = cand[cell] < best[cell]
                break
        if smaller:
            for cell in range(m * size):
                best[cell] = cand[cell]
    return tuple(
        tuple(best[i * size + j] for j in range(size)) for i in range(m)
    )


def row_set_symmetries(rows):
    """All column permutations mapping the row set onto itself."""
    cdef int mat[128]
    cdef int base[128]
    cdef int cand[128]
    cdef int m, size
    if not _load(rows, mat, &m, &size):
        from ijobstruct._canon_py import row_set_symmetries as pure
        return pure(rows)
    cdef int cell
    for cell in range(m * size):
        base[cell] = mat[cell]
    _sort_rows(base, m, size)
    perms = _perms_for(size)
    cdef int[:] pv = perms
    cdef Py_ssize_t nperm = pv.shape[0] // size
    cdef Py_ssize_t p
    cdef int i, j
    cdef bint match
    out = []
    for p in range(nperm):
        for i in range(m):
            for j in range(size):
                cand[i * size + j] = mat[i * size + pv[p * size + j]]
        _sort_rows(cand, m, size)
        match = 1
        for cell in range(m * size):
            if cand[cell] != base[cell]:
                match = 0
                break
        if match:
            out.append(tuple(pv[p * size + j] for j in range(size)))
    return out
