# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; same signatures and encodings as _kernels_py."""

import numpy as np

from libc.stdint cimport uint64_t, int64_t, int32_t
from libc.math cimport INFINITY

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND = "cython"


def _u64(seq):
    return np.ascontiguousarray(np.asarray(seq, dtype=np.uint64).reshape(-1))


def _i64(seq):
    return np.ascontiguousarray(np.asarray(seq, dtype=np.int64).reshape(-1))


cdef inline int _count(uint64_t code, const uint64_t[::1] pos, const uint64_t[::1] neg,
                       Py_ssize_t m, bint nae) nogil:
    cdef Py_ssize_t j
    cdef int total = 0
    cdef uint64_t notc = ~code, t, f
    for j in range(m):
        t = (code & pos[j]) | (notc & neg[j])
        if nae:
            f = (notc & pos[j]) | (code & neg[j])
            if t != 0 and f != 0:
                total += 1
        elif t != 0:
            total += 1
    return total


def sat_values(pos, neg, int nbits, bint nae=False):
    cdef const uint64_t[::1] p = _u64(pos)
    cdef const uint64_t[::1] q = _u64(neg)
    cdef Py_ssize_t m = p.shape[0]
    cdef uint64_t total = (<uint64_t>1) << nbits, code
    out = np.empty(total, dtype=np.int32)
    cdef int32_t[::1] o = out
    with nogil:
        for code in range(total):
            o[code] = _count(code, p, q, m, nae)
    return out


def sat_best(pos, neg, int nbits, bint nae=False):
    cdef const uint64_t[::1] p = _u64(pos)
    cdef const uint64_t[::1] q = _u64(neg)
    cdef Py_ssize_t m = p.shape[0]
    cdef uint64_t total = (<uint64_t>1) << nbits, code, best_code = 0
    cdef int best = -1, c
    with nogil:
        for code in range(total):
            c = _count(code, p, q, m, nae)
            if c > best:
                best = c
                best_code = code
                if best == m:
                    break
    return best, best_code


cdef inline int64_t _cut(uint64_t code, const int64_t[::1] us, const int64_t[::1] vs,
                         const int64_t[::1] ws, Py_ssize_t m, int nverts) nogil:
    cdef Py_ssize_t j
    cdef int64_t total = 0
    for j in range(m):
        if ((code >> (nverts - 1 - us[j])) ^ (code >> (nverts - 1 - vs[j]))) & 1:
            total += ws[j]
    return total


def cut_values(us, vs, ws, int nverts):
    cdef const int64_t[::1] u = _i64(us)
    cdef const int64_t[::1] v = _i64(vs)
    cdef const int64_t[::1] w = _i64(ws)
    cdef Py_ssize_t m = u.shape[0]
    cdef uint64_t total = (<uint64_t>1) << nverts, code
    out = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for code in range(total):
            o[code] = _cut(code, u, v, w, m, nverts)
    return out


def cut_best(us, vs, ws, int nverts):
    if nverts <= 1:
        return 0, 0
    cdef const int64_t[::1] u = _i64(us)
    cdef const int64_t[::1] v = _i64(vs)
    cdef const int64_t[::1] w = _i64(ws)
    cdef Py_ssize_t m = u.shape[0]
    cdef uint64_t total = (<uint64_t>1) << (nverts - 1), code, best_code = 0
    cdef int64_t best = -1, c
    with nogil:
        for code in range(total):
            c = _cut(code, u, v, w, m, nverts)
            if c > best:
                best = c
                best_code = code
    return best, best_code


def vc_best(us, vs, int nverts):
    masks = sorted({(1 << (nverts - 1 - a)) | (1 << (nverts - 1 - b)) for a, b in zip(us, vs)})
    cdef const uint64_t[::1] em = _u64(masks)
    cdef Py_ssize_t m = em.shape[0], j
    cdef uint64_t total = (<uint64_t>1) << nverts, code, best_code = 0
    cdef int best = nverts + 1, size
    cdef bint ok
    with nogil:
        for code in range(total):
            size = __builtin_popcountll(code)
            if size >= best:
                continue
            ok = True
            for j in range(m):
                if code & em[j] == 0:
                    ok = False
                    break
            if ok:
                best = size
                best_code = code
    return best, best_code


def setcover_best(masks, costs, full_mask):
    cdef const uint64_t[::1] sm = _u64(masks)
    cdef const int64_t[::1] sc = _i64(costs)
    cdef Py_ssize_t k = sm.shape[0], j
    cdef uint64_t full = <uint64_t>full_mask
    cdef uint64_t total = (<uint64_t>1) << k, code, union, best_code = 0
    cdef int64_t cost, best = -1
    with nogil:
        for code in range(total):
            union = 0
            cost = 0
            for j in range(k):
                if (code >> (k - 1 - j)) & 1:
                    union |= sm[j]
                    cost += sc[j]
            if union == full and (best < 0 or cost < best):
                best = cost
                best_code = code
    return (best if best >= 0 else None), best_code


def held_karp(dist):
    d_arr = np.ascontiguousarray(np.asarray(dist, dtype=np.float64))
    cdef const double[:, ::1] d = d_arr
    cdef int n = d.shape[0]
    if n == 1:
        return 0.0, [0]
    cdef int r = n - 1
    cdef Py_ssize_t full = (<Py_ssize_t>1) << r, mask, nm
    dp_arr = np.full((full, r), INFINITY, dtype=np.float64)
    par_arr = np.full((full, r), -1, dtype=np.int32)
    cdef double[:, ::1] dp = dp_arr
    cdef int32_t[:, ::1] par = par_arr
    cdef int j, k
    cdef double cur, cand
    for j in range(r):
        dp[(<Py_ssize_t>1) << j, j] = d[0, j + 1]
    with nogil:
        for mask in range(1, full):
            for j in range(r):
                cur = dp[mask, j]
                if cur == INFINITY or not (mask >> j) & 1:
                    continue
                for k in range(r):
                    if (mask >> k) & 1:
                        continue
                    nm = mask | ((<Py_ssize_t>1) << k)
                    cand = cur + d[j + 1, k + 1]
                    if cand < dp[nm, k]:
                        dp[nm, k] = cand
                        par[nm, k] = j
    cdef double best = INFINITY
    cdef int last = -1, prev
    for j in range(r):
        cand = dp[full - 1, j] + d[j + 1, 0]
        if cand < best:
            best = cand
            last = j
    tour = []
    mask = full - 1
    while last != -1:
        tour.append(last + 1)
        prev = par[mask, last]
        mask ^= (<Py_ssize_t>1) << last
        last = prev
    tour.append(0)
    tour.reverse()
    return best, tour


def min_matching(dist):
    d_arr = np.ascontiguousarray(np.asarray(dist, dtype=np.float64))
    cdef const double[:, ::1] d = d_arr
    cdef int n = d.shape[0]
    if n % 2:
        raise ValueError("perfect matching needs an even number of vertices")
    cdef Py_ssize_t full = ((<Py_ssize_t>1) << n) - 1, mask
    dp_arr = np.full(full + 1, INFINITY, dtype=np.float64)
    ch_arr = np.full(full + 1, -1, dtype=np.int32)
    cdef double[::1] dp = dp_arr
    cdef int32_t[::1] choice = ch_arr
    cdef int i, j, arg
    cdef double best, cand
    dp[full] = 0.0
    with nogil:
        mask = full
        while mask > 0:
            mask -= 1
            if __builtin_popcountll(mask) % 2:
                continue
            i = 0
            while (mask >> i) & 1:
                i += 1
            best = INFINITY
            arg = -1
            for j in range(i + 1, n):
                if (mask >> j) & 1:
                    continue
                cand = d[i, j] + dp[mask | ((<Py_ssize_t>1) << i) | ((<Py_ssize_t>1) << j)]
                if cand < best:
                    best = cand
                    arg = j
            dp[mask] = best
            choice[mask] = arg
    pairs = []
    mask = 0
    while mask != full:
        i = 0
        while (mask >> i) & 1:
            i += 1
        j = choice[mask]
        pairs.append((i, j))
        mask |= ((<Py_ssize_t>1) << i) | ((<Py_ssize_t>1) << j)
    return dp[0], pairs


def congestion_best(incidence, offsets, weights):
    inc_arr = np.ascontiguousarray(np.asarray(incidence, dtype=np.int64))
    cdef const int64_t[:, ::1] inc = inc_arr
    cdef const int64_t[::1] off = _i64(offsets)
    cdef const int64_t[::1] w = _i64(weights)
    cdef Py_ssize_t k = off.shape[0] - 1, m = w.shape[0], i, e, old, new
    choice_arr = np.zeros(k, dtype=np.int64)
    best_arr = np.zeros(k, dtype=np.int64)
    load_arr = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] choice = choice_arr
    cdef int64_t[::1] best_choice = best_arr
    cdef int64_t[::1] load = load_arr
    cdef int64_t best = -1, val
    for i in range(k):
        for e in range(m):
            load[e] += inc[off[i], e]
    with nogil:
        while True:
            val = 0
            for e in range(m):
                if load[e] * w[e] > val:
                    val = load[e] * w[e]
            if best < 0 or val < best:
                best = val
                for i in range(k):
                    best_choice[i] = choice[i]
            i = k - 1
            while i >= 0:
                old = off[i] + choice[i]
                choice[i] += 1
                if choice[i] == off[i + 1] - off[i]:
                    choice[i] = 0
                new = off[i] + choice[i]
                for e in range(m):
                    load[e] += inc[new, e] - inc[old, e]
                if choice[i] != 0:
                    break
                i -= 1
            if i < 0:
                break
    return best, [int(x) for x in best_arr]
