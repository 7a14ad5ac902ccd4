# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled inner loops over uint16 Cayley tables.

Every function here has a numpy twin in ``_pykernels`` with the same
signature and results.
"""
import numpy as np

from libc.stdint cimport int64_t


def closure(const unsigned short[:, ::1] table not None, const int64_t[::1] seed not None,
            const int64_t[::1] gens not None):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t ng = gens.shape[0]
    cdef Py_ssize_t head = 0, tail = 0, i, k
    cdef int64_t x, y
    mask = np.zeros(n, dtype=np.uint8)
    queue = np.empty(n, dtype=np.int64)
    cdef unsigned char[::1] m = mask
    cdef int64_t[::1] q = queue

    m[0] = 1
    q[tail] = 0
    tail += 1
    for i in range(seed.shape[0]):
        x = seed[i]
        if not m[x]:
            m[x] = 1
            q[tail] = x
            tail += 1
    while head < tail:
        x = q[head]
        head += 1
        for k in range(ng):
            y = table[x, gens[k]]
            if not m[y]:
                m[y] = 1
                q[tail] = y
                tail += 1
    return mask.view(np.bool_)


def extend_hom(const unsigned short[:, ::1] src not None, const unsigned short[:, ::1] tgt not None,
               const int64_t[::1] gens not None, const int64_t[::1] imgs not None):
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t ng = gens.shape[0]
    cdef Py_ssize_t head = 0, tail = 1, k
    cdef int64_t x, y, v, fx
    out = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    cdef int64_t[::1] q = queue

    o[0] = 0
    q[0] = 0
    while head < tail:
        x = q[head]
        head += 1
        fx = o[x]
        for k in range(ng):
            y = src[x, gens[k]]
            v = tgt[fx, imgs[k]]
            if o[y] < 0:
                o[y] = v
                q[tail] = y
                tail += 1
            elif o[y] != v:
                return None
    if tail < n:
        return None
    return out


def element_orders(const unsigned short[:, ::1] table not None):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x
    cdef int64_t y, k
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    for x in range(n):
        y = x
        k = 1
        while y != 0:
            y = table[y, x]
            k += 1
        o[x] = k
    return out


def find_nonassociative(const unsigned short[:, ::1] table not None):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int64_t ab
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    return (a, b, c)
    return None


def conjugacy_class_ids(const unsigned short[:, ::1] table not None, const int64_t[::1] inv not None):
    cdef Py_ssize_t n = table.shape[0]
    cdef Py_ssize_t x, g
    cdef int64_t y
    out = np.full(n, -1, dtype=np.int64)
    cdef int64_t[::1] o = out
    for x in range(n):
        if o[x] >= 0:
            continue
        for g in range(n):
            y = table[table[inv[g], x], g]
            o[y] = x
    return out
