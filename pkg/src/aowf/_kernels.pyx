# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled table kernels.  Same contracts as ``_kernels_py``.

Tables are C-contiguous int64 arrays of element indices; -1 stands for the
undefined value.  ``left[i, c]`` is f(E_i, U_c) for every tabulated element
E_i, ``right[a, j]`` is f(U_a, E_j); the universe U occupies indices
0..n-1 of E.
"""

from libc.stdint cimport int64_t


def assoc_violations(const int64_t[:, ::1] left, const int64_t[:, ::1] right,
                     Py_ssize_t limit=-1):
    cdef Py_ssize_t n = left.shape[1]
    cdef Py_ssize_t a, b, c, count = 0
    cdef int64_t ab, bc, lhs, rhs
    found = []
    for a in range(n):
        for b in range(n):
            ab = left[a, b]
            for c in range(n):
                lhs = left[ab, c] if ab >= 0 else -1
                bc = left[b, c]
                rhs = right[a, bc] if bc >= 0 else -1
                if lhs != rhs:
                    count += 1
                    if limit < 0 or count <= limit:
                        found.append((a, b, c))
    return count, found


def weak_assoc_violations(const int64_t[:, ::1] left, const int64_t[:, ::1] right,
                          Py_ssize_t limit=-1):
    cdef Py_ssize_t n = left.shape[1]
    cdef Py_ssize_t a, b, c, count = 0, considered = 0
    cdef int64_t ab, bc, lhs, rhs
    found = []
    for a in range(n):
        for b in range(n):
            ab = left[a, b]
            if ab < 0:
                continue
            for c in range(n):
                bc = left[b, c]
                if bc < 0:
                    continue
                lhs = left[ab, c]
                rhs = right[a, bc]
                if lhs < 0 or rhs < 0:
                    continue
                considered += 1
                if lhs != rhs:
                    count += 1
                    if limit < 0 or count <= limit:
                        found.append((a, b, c))
    return count, considered, found


def comm_violations(const int64_t[:, ::1] table, Py_ssize_t limit=-1):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, count = 0
    found = []
    for a in range(n):
        for b in range(a + 1, n):
            if table[a, b] != table[b, a]:
                count += 1
                if limit < 0 or count <= limit:
                    found.append((a, b))
    return count, found


def first_collision(const int64_t[:, ::1] table):
    """Two distinct cells with the same defined value, in row-major order, or None."""
    cdef Py_ssize_t n = table.shape[0], m = table.shape[1]
    cdef Py_ssize_t i, j, cell, prev
    cdef int64_t v, top = -1
    for i in range(n):
        for j in range(m):
            if table[i, j] > top:
                top = table[i, j]
    if top < 0:
        return None
    seen = [-1] * (top + 1)
    for i in range(n):
        for j in range(m):
            v = table[i, j]
            if v < 0:
                continue
            cell = i * m + j
            prev = seen[v]
            if prev >= 0:
                return (prev // m, prev % m), (i, j)
            seen[v] = cell
    return None
