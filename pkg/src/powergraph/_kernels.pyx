# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled loops over Cayley tables. Mirrors ``_kernels_py`` exactly."""
import numpy as np

cimport numpy as cnp

cnp.import_array()


def element_orders(const int[:, ::1] table):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x, t
    cdef int y
    out = np.zeros(n, dtype=np.int64)
    cdef long long[::1] orders = out
    for x in range(n):
        y = <int>x
        t = 1
        while y != 0:
            y = table[y, x]
            t += 1
            if t > n + 1:
                raise ValueError(f"element {x} has no finite order within {n} steps")
        orders[x] = t
    return out


def power_arcs(const int[:, ::1] table):
    """Boolean matrix with arcs[x, y] true iff y is a power of x and y != x."""
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x
    cdef int y
    out = np.zeros((n, n), dtype=np.bool_)
    cdef cnp.npy_bool[:, ::1] arcs = out
    for x in range(n):
        y = table[x, x]
        while y != x:
            arcs[x, y] = 1
            y = table[y, x]
    return out


def associativity_witness(const int[:, ::1] table, Py_ssize_t limit=-1):
    """First triple (a, b, c) with (ab)c != a(bc), scanning a < limit; None if associative."""
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int ab
    if limit < 0 or limit > n:
        limit = n
    for a in range(limit):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return (int(a), int(b), int(c))
    return None
