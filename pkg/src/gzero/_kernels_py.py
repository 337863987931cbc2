"""Pure-Python versions of the hot loops in ``_kernels.pyx``."""

import numpy as np


def union_find_scan(n, us, vs):
    """Scan undirected edges with union-find.

    Loops must already be removed and each undirected edge listed once.
    Returns ``(first_cycle_edge, components)`` where ``first_cycle_edge`` is
    the index of the first edge closing a cycle, or -1.
    """
    parent = list(range(n))
    first = -1
    comps = n
    for k, (a, b) in enumerate(zip(us.tolist(), vs.tolist())):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a == b:
            if first < 0:
                first = k
        else:
            parent[a] = b
            comps -= 1
    return first, comps


def t_level_arrays(l):
    """Edges of T_l as integer arrays (word read as a big-endian integer)."""
    total = (1 << l) - 1 if l > 0 else 0
    us = np.empty(total, dtype=np.int64)
    vs = np.empty(total, dtype=np.int64)
    k = 0
    for n in range(l):
        tail = l - n - 1
        word = bin(n + 1)[3:]
        snv = (int(word, 2) if word else 0) << (n - len(word))
        base = snv << (tail + 1)
        bit = 1 << tail
        for w in range(1 << tail):
            us[k] = base | w
            vs[k] = base | bit | w
            k += 1
    return us, vs
