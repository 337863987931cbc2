# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled union-find scan and T_l edge generation."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t a) nogil:
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


def union_find_scan(Py_ssize_t n, cnp.int64_t[::1] us, cnp.int64_t[::1] vs):
    cdef Py_ssize_t[::1] parent = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t k, a, b, m = us.shape[0]
    cdef Py_ssize_t first = -1, comps = n
    with nogil:
        for k in range(m):
            a = _find(parent, us[k])
            b = _find(parent, vs[k])
            if a == b:
                if first < 0:
                    first = k
            else:
                parent[a] = b
                comps -= 1
    return first, comps


def t_level_arrays(int l):
    cdef Py_ssize_t total = (1 << l) - 1 if l > 0 else 0
    out_u = np.empty(total, dtype=np.int64)
    out_v = np.empty(total, dtype=np.int64)
    cdef cnp.int64_t[::1] us = out_u
    cdef cnp.int64_t[::1] vs = out_v
    cdef Py_ssize_t k = 0, w
    cdef int n, tail
    cdef cnp.int64_t base, bit, snv
    for n in range(l):
        tail = l - n - 1
        word = bin(n + 1)[3:]
        snv = (int(word, 2) if word else 0) << (n - len(word))
        base = snv << (tail + 1)
        bit = (<cnp.int64_t>1) << tail
        for w in range((<Py_ssize_t>1) << tail):
            us[k] = base | w
            vs[k] = base | bit | w
            k += 1
    return out_u, out_v
