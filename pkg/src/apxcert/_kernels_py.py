"""Reference (pure Python + numpy) implementations of the enumeration kernels.

Encoding shared with the compiled module: a solution over ``nbits`` binary
choices is an integer whose bit ``nbits - 1 - i`` holds choice ``i``.  Integer
order is therefore lexicographic order of the bit vector, and "first optimum
in increasing code order" is the lexicographically smallest optimum.
"""

from __future__ import annotations

import math

import numpy as np

CHUNK = 1 << 16
BACKEND = "python"


def _chunks(total: int):
    for start in range(0, total, CHUNK):
        yield np.arange(start, min(total, start + CHUNK), dtype=np.uint64)


def _sat_counts(codes, pos, neg, nae):
    counts = np.zeros(codes.shape, dtype=np.int32)
    notc = ~codes
    for p, q in zip(pos, neg):
        p, q = np.uint64(p), np.uint64(q)
        true_lits = (codes & p) | (notc & q)
        if nae:
            false_lits = (notc & p) | (codes & q)
            counts += (true_lits != 0) & (false_lits != 0)
        else:
            counts += true_lits != 0
    return counts


def sat_values(pos, neg, nbits: int, nae: bool = False) -> np.ndarray:
    """Clause counts for every assignment code in ``range(2**nbits)``."""
    out = np.empty(1 << nbits, dtype=np.int32)
    for codes in _chunks(1 << nbits):
        out[int(codes[0]):int(codes[-1]) + 1] = _sat_counts(codes, pos, neg, nae)
    return out


def sat_best(pos, neg, nbits: int, nae: bool = False) -> tuple[int, int]:
    best, best_code = -1, 0
    for codes in _chunks(1 << nbits):
        counts = _sat_counts(codes, pos, neg, nae)
        i = int(np.argmax(counts))
        if counts[i] > best:
            best, best_code = int(counts[i]), int(codes[i])
    return best, best_code


def _cut_chunk(codes, us, vs, ws, nverts):
    vals = np.zeros(codes.shape, dtype=np.int64)
    for u, v, w in zip(us, vs, ws):
        bu, bv = np.uint64(nverts - 1 - u), np.uint64(nverts - 1 - v)
        vals += (((codes >> bu) ^ (codes >> bv)) & np.uint64(1)).astype(np.int64) * int(w)
    return vals


def cut_values(us, vs, ws, nverts: int) -> np.ndarray:
    out = np.empty(1 << nverts, dtype=np.int64)
    for codes in _chunks(1 << nverts):
        out[int(codes[0]):int(codes[-1]) + 1] = _cut_chunk(codes, us, vs, ws, nverts)
    return out


def cut_best(us, vs, ws, nverts: int) -> tuple[int, int]:
    """Maximum cut with vertex 0 pinned to side 0 (codes below 2**(nverts-1))."""
    if nverts <= 1:
        return 0, 0
    best, best_code = -1, 0
    for codes in _chunks(1 << (nverts - 1)):
        vals = _cut_chunk(codes, us, vs, ws, nverts)
        i = int(np.argmax(vals))
        if vals[i] > best:
            best, best_code = int(vals[i]), int(codes[i])
    return best, best_code


def vc_best(us, vs, nverts: int) -> tuple[int, int]:
    """Minimum vertex cover, ties to the smallest code."""
    edge_masks = sorted({(1 << (nverts - 1 - u)) | (1 << (nverts - 1 - v)) for u, v in zip(us, vs)})
    best = (nverts + 1, 0)
    for codes in _chunks(1 << nverts):
        ok = np.ones(codes.shape, dtype=bool)
        for em in edge_masks:
            ok &= (codes & np.uint64(em)) != 0
        if not ok.any():
            continue
        sizes = np.bitwise_count(codes[ok]).astype(np.int64)
        j = int(np.argmin(sizes))  # codes ascend, so argmin picks the smallest code
        cand = (int(sizes[j]), int(codes[ok][j]))
        if cand < best:
            best = cand
    return best


def setcover_best(masks, costs, full_mask: int) -> tuple[int, int]:
    """Minimum-cost covering subfamily; set j is bit ``k - 1 - j`` of the code."""
    k = len(masks)
    best = (None, 0)
    for codes in _chunks(1 << k):
        union = np.zeros(codes.shape, dtype=np.uint64)
        cost = np.zeros(codes.shape, dtype=np.int64)
        for j, (m, c) in enumerate(zip(masks, costs)):
            sel = ((codes >> np.uint64(k - 1 - j)) & np.uint64(1)).astype(bool)
            union[sel] |= np.uint64(m)
            cost[sel] += int(c)
        ok = union == np.uint64(full_mask)
        if not ok.any():
            continue
        cand_costs = cost[ok]
        j = int(np.argmin(cand_costs))
        cand = (int(cand_costs[j]), int(codes[ok][j]))
        if best[0] is None or cand < best:
            best = cand
    return best


def held_karp(dist) -> tuple[float, list[int]]:
    """Shortest closed tour through all points, starting at point 0."""
    d = [list(map(float, row)) for row in dist]
    n = len(d)
    if n == 1:
        return 0.0, [0]
    full = 1 << (n - 1)
    inf = math.inf
    # dp[mask][j]: shortest path from 0 through mask (over points 1..n-1) ending at j+1
    dp = [[inf] * (n - 1) for _ in range(full)]
    parent = [[-1] * (n - 1) for _ in range(full)]
    for j in range(n - 1):
        dp[1 << j][j] = d[0][j + 1]
    for mask in range(1, full):
        row = dp[mask]
        for j in range(n - 1):
            cur = row[j]
            if cur == inf or not mask >> j & 1:
                continue
            for k in range(n - 1):
                if mask >> k & 1:
                    continue
                nm = mask | 1 << k
                cand = cur + d[j + 1][k + 1]
                if cand < dp[nm][k]:
                    dp[nm][k] = cand
                    parent[nm][k] = j
    best, last = inf, -1
    for j in range(n - 1):
        cand = dp[full - 1][j] + d[j + 1][0]
        if cand < best:
            best, last = cand, j
    tour, mask = [], full - 1
    while last != -1:
        tour.append(last + 1)
        prev = parent[mask][last]
        mask ^= 1 << last
        last = prev
    tour.append(0)
    tour.reverse()
    return best, tour


def min_matching(dist) -> tuple[float, list[tuple[int, int]]]:
    """Minimum-weight perfect matching on an even number of points by subset DP.

    The lowest unmatched index is always paired first.
    """
    d = [list(map(float, row)) for row in dist]
    n = len(d)
    if n % 2:
        raise ValueError("perfect matching needs an even number of vertices")
    full = (1 << n) - 1
    dp = [math.inf] * (1 << n)
    choice = [-1] * (1 << n)
    dp[full] = 0.0
    for mask in range(full - 1, -1, -1):
        if bin(mask).count("1") % 2:
            continue
        i = 0
        while mask >> i & 1:
            i += 1
        best, arg = math.inf, -1
        for j in range(i + 1, n):
            if mask >> j & 1:
                continue
            cand = d[i][j] + dp[mask | 1 << i | 1 << j]
            if cand < best:
                best, arg = cand, j
        dp[mask], choice[mask] = best, arg
    pairs, mask = [], 0
    while mask != full:
        i = 0
        while mask >> i & 1:
            i += 1
        j = choice[mask]
        pairs.append((i, j))
        mask |= 1 << i | 1 << j
    return dp[0], pairs


def congestion_best(incidence, offsets, weights) -> tuple[int, list[int]]:
    """Minimise max_e load_e * weights[e] over one path per commodity.

    ``incidence`` is a (total_paths, m) 0/1 array; commodity i owns rows
    ``offsets[i]:offsets[i+1]``.  Path tuples are visited in lexicographic
    order (last commodity fastest) and the first optimum is kept.
    """
    inc = [list(map(int, row)) for row in np.asarray(incidence)]
    w = [int(x) for x in weights]
    offsets = [int(o) for o in offsets]
    k, m = len(offsets) - 1, len(w)
    counts = [offsets[i + 1] - offsets[i] for i in range(k)]
    choice = [0] * k
    load = [0] * m
    for i in range(k):
        for e, x in enumerate(inc[offsets[i]]):
            load[e] += x
    best, best_choice = None, None
    while True:
        val = max((load[e] * w[e] for e in range(m)), default=0)
        if best is None or val < best:
            best, best_choice = val, list(choice)
        i = k - 1
        while i >= 0:
            old = offsets[i] + choice[i]
            choice[i] += 1
            if choice[i] == counts[i]:
                choice[i] = 0
            new = offsets[i] + choice[i]
            for e in range(m):
                load[e] += inc[new][e] - inc[old][e]
            if choice[i] != 0:
                break
            i -= 1
        if i < 0:
            return best, best_choice
