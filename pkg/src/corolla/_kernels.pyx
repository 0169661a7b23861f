# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled selection scan; same contract as ``corolla._scan_py.scan``.

Masks are 64-bit, so every half-edge id must be below 64.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef inline int _find(int* parent, int x) nogil:
    while parent[x] != x:
        x = parent[x]
    return x


def scan(list options, list closing, bint acyclic_only):
    cdef int n = len(options)
    cdef int i, j, t, a, b, lvl
    cdef int n_opts = 0, n_edges = 0
    for i in range(n):
        n_opts += len(options[i])
        n_edges += len(closing[i])

    cdef int* opt_start = <int*>malloc((n + 1) * sizeof(int))
    cdef uint64_t* opt_mask = <uint64_t*>malloc((n_opts + 1) * sizeof(uint64_t))
    cdef int* e_start = <int*>malloc((n + 1) * sizeof(int))
    cdef uint64_t* e_h = <uint64_t*>malloc((n_edges + 1) * sizeof(uint64_t))
    cdef uint64_t* e_k = <uint64_t*>malloc((n_edges + 1) * sizeof(uint64_t))
    cdef int* e_u = <int*>malloc((n_edges + 1) * sizeof(int))
    cdef int* e_w = <int*>malloc((n_edges + 1) * sizeof(int))
    cdef int* parent = <int*>malloc((n + 1) * sizeof(int))
    cdef int* size = <int*>malloc((n + 1) * sizeof(int))
    # undo log: one entry per successful union, at most n_edges live
    cdef int* log_a = <int*>malloc((n_edges + 1) * sizeof(int))
    cdef int* log_b = <int*>malloc((n_edges + 1) * sizeof(int))
    cdef int* log_start = <int*>malloc((n + 1) * sizeof(int))
    cdef int* choice = <int*>malloc((n + 1) * sizeof(int))
    cdef uint64_t* removed = <uint64_t*>malloc((n + 1) * sizeof(uint64_t))
    cdef int* ell = <int*>malloc((n + 1) * sizeof(int))
    cdef int* unions = <int*>malloc((n + 1) * sizeof(int))
    cdef int* both = <int*>malloc((n + 1) * sizeof(int))

    out = []
    cdef int log_top = 0
    cdef uint64_t m, hb, kb, hit
    cdef int c_ell, c_un, c_both
    try:
        t = 0
        for i in range(n):
            opt_start[i] = t
            for x in options[i]:
                opt_mask[t] = <uint64_t>x
                t += 1
        opt_start[n] = t
        t = 0
        for i in range(n):
            e_start[i] = t
            for hbit, kbit, u, w in closing[i]:
                e_h[t] = <uint64_t>hbit
                e_k[t] = <uint64_t>kbit
                e_u[t] = u
                e_w[t] = w
                t += 1
        e_start[n] = t
        for i in range(n):
            parent[i] = i
            size[i] = 1

        removed[0] = 0
        ell[0] = 0
        unions[0] = 0
        both[0] = 0
        lvl = 0
        choice[0] = -1
        log_start[0] = 0
        while lvl >= 0:
            if lvl == n:
                out.append((removed[n], ell[n], n - unions[n], both[n]))
                lvl -= 1
                continue
            # undo the unions made by the previous choice at this level
            while log_top > log_start[lvl]:
                log_top -= 1
                a = log_a[log_top]
                b = log_b[log_top]
                parent[b] = b
                size[a] -= size[b]
            choice[lvl] += 1
            j = opt_start[lvl] + choice[lvl]
            if j >= opt_start[lvl + 1]:
                lvl -= 1
                continue
            m = removed[lvl] | opt_mask[j]
            c_ell = ell[lvl]
            c_un = unions[lvl]
            c_both = both[lvl]
            for t in range(e_start[lvl], e_start[lvl + 1]):
                hb = e_h[t]
                kb = e_k[t]
                hit = m & (hb | kb)
                if hit == 0:
                    a = _find(parent, e_u[t])
                    b = _find(parent, e_w[t])
                    if a == b:
                        c_ell += 1
                    else:
                        if size[a] < size[b]:
                            a, b = b, a
                        parent[b] = a
                        size[a] += size[b]
                        log_a[log_top] = a
                        log_b[log_top] = b
                        log_top += 1
                        c_un += 1
                elif hit == (hb | kb):
                    c_both += 1
            if acyclic_only and c_ell > 0:
                continue
            removed[lvl + 1] = m
            ell[lvl + 1] = c_ell
            unions[lvl + 1] = c_un
            both[lvl + 1] = c_both
            lvl += 1
            choice[lvl] = -1
            log_start[lvl] = log_top
    finally:
        free(opt_start); free(opt_mask); free(e_start); free(e_h); free(e_k)
        free(e_u); free(e_w); free(parent); free(size); free(log_a); free(log_b)
        free(log_start); free(choice); free(removed); free(ell); free(unions); free(both)
    return out
