# cython: language_level=3
"""Compiled kernels for the hot inner loops.

Semantic twin of ``superbracket._speedups_py``; see that module for the
contracts.  Keys stay generic Python objects (nested tuples), the counting
and bookkeeping run as C integers.
"""

IMPLEMENTATION = "cython"


def merge_factors(tuple fa, tuple fb):
    cdef Py_ssize_t la = len(fa)
    cdef Py_ssize_t lb = len(fb)
    if la == 0:
        return 1, fb
    if lb == 0:
        return 1, fa
    cdef Py_ssize_t i = 0, j = 0
    cdef int ra = 0, sign = 0
    cdef int pa, ea, pb, eb
    cdef tuple ta, tb
    for ta in fa:
        pa = ta[1]
        ea = ta[2]
        ra += pa & ea & 1
    out = []
    while i < la and j < lb:
        ta = fa[i]
        tb = fb[j]
        ka = ta[0]
        kb = tb[0]
        pa = ta[1]
        ea = ta[2]
        pb = tb[1]
        eb = tb[2]
        if ka < kb:
            out.append(ta)
            ra -= pa & ea & 1
            i += 1
        elif kb < ka:
            if pb & eb & 1:
                sign ^= ra & 1
            out.append(tb)
            j += 1
        else:
            if pa:
                return 0, ()
            out.append((ka, pa, ea + eb))
            i += 1
            j += 1
    while i < la:
        out.append(fa[i])
        i += 1
    while j < lb:
        out.append(fb[j])
        j += 1
    return (-1 if sign & 1 else 1), tuple(out)


def odd_inversion_sign(sources, parities):
    cdef Py_ssize_t n = len(sources)
    cdef Py_ssize_t t, u
    cdef long count = 0, st
    cdef list src = [int(x) for x in sources]
    cdef list par = [int(x) for x in parities]
    for t in range(n):
        if not par[t]:
            continue
        st = src[t]
        for u in range(t + 1, n):
            if par[u] and src[u] < st:
                count += 1
    return -1 if count & 1 else 1


def rank_mod_p(rows, Py_ssize_t ncols, long p):
    cdef list pivots = []
    cdef Py_ssize_t rank = 0, col, c
    cdef long f, inv
    cdef list row, piv
    for raw in rows:
        row = [x % p for x in raw]
        for col, piv in pivots:
            f = row[col]
            if f:
                for c in range(ncols):
                    row[c] = (row[c] - f * (<long> piv[c])) % p
        col = -1
        for c in range(ncols):
            if row[c]:
                col = c
                break
        if col < 0:
            continue
        inv = pow(row[col], p - 2, p)
        for c in range(ncols):
            row[c] = (row[c] * inv) % p
        pivots.append((col, row))
        rank += 1
    return rank
