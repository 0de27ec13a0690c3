# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled chain complex reduction kernel.

Same algorithm and log format as ``_kernel_py``. Coefficients stay Python
integers (arbitrary precision); the speedup comes from typed indices and
direct dict access.
"""

from heapq import heapify, heappop, heappush


def reduce_complex(list boundaries):
    cdef Py_ssize_t n = len(boundaries)
    cdef list bnd = [dict(col0) for col0 in boundaries]
    cdef list cob = [{} for _k in range(n)]
    cdef list alive = [True] * n
    cdef list log = []
    cdef list heap
    cdef dict row, col_b, col_y, cob_x, bnd_b, cob_a, col
    cdef Py_ssize_t a, b, best, lb, best_len, size, x, y, z, w
    cdef object c, u, factor, new, cx, cy

    for b in range(n):
        col = <dict>bnd[b]
        for a, c in col.items():
            (<dict>cob[a])[b] = c

    heap = [(len(<dict>cob[a0]), a0) for a0 in range(n) if cob[a0]]
    heapify(heap)
    while heap:
        size, a = heappop(heap)
        row = <dict>cob[a]
        if not alive[a] or len(row) != size or not row:
            continue
        best = -1
        best_len = 0
        for b, c in row.items():
            if c == 1 or c == -1:
                lb = len(<dict>bnd[b])
                if best < 0 or lb < best_len:
                    best = b
                    best_len = lb
                    if lb == 1:
                        break
        if best < 0:
            continue
        b = best
        u = row[b]
        col_b = <dict>bnd[b]
        bnd_b = {k: v for k, v in col_b.items() if k != a}
        cob_a = {k: v for k, v in row.items() if k != b}

        for y, cy in cob_a.items():
            factor = cy * u
            col_y = <dict>bnd[y]
            del col_y[a]
            for x, cx in bnd_b.items():
                new = col_y.get(x, 0) - factor * cx
                cob_x = <dict>cob[x]
                if new:
                    col_y[x] = new
                    cob_x[y] = new
                else:
                    col_y.pop(x, None)
                    cob_x.pop(y, None)

        for x in col_b:
            (<dict>cob[x]).pop(b, None)
        for z in <dict>cob[b]:
            (<dict>bnd[z]).pop(b, None)
        for w in <dict>bnd[a]:
            (<dict>cob[w]).pop(a, None)
            heappush(heap, (len(<dict>cob[w]), w))
        for x in bnd_b:
            heappush(heap, (len(<dict>cob[x]), x))

        alive[a] = False
        alive[b] = False
        bnd[a] = {}
        bnd[b] = {}
        cob[a] = {}
        cob[b] = {}
        log.append((a, b, u, bnd_b, cob_a))

    return alive, bnd, log


def project_chain(dict chain, list log, list elim_at):
    cdef dict x = dict(chain)
    cdef list heap = []
    cdef Py_ssize_t t, last = -1, p, a, b, c
    cdef dict bnd_b
    cdef object coef, u, v, old, new, entry
    for c in x:
        p = elim_at[c]
        if p >= 0:
            heap.append(p)
    heapify(heap)
    while heap:
        t = heappop(heap)
        if t == last:
            continue
        last = t
        entry = log[t]
        a = entry[0]
        b = entry[1]
        if b in x:
            del x[b]
        elif a in x:
            u = entry[2]
            bnd_b = <dict>entry[3]
            coef = x.pop(a) * u
            for c, v in bnd_b.items():
                old = x.get(c, 0)
                new = old - coef * v
                if new:
                    if not old:
                        p = elim_at[c]
                        if p >= 0:
                            heappush(heap, p)
                    x[c] = new
                elif old:
                    del x[c]
    return x


def lift_chain(dict chain, list log, dict lift_index):
    cdef dict y = dict(chain)
    cdef list heap = []
    cdef Py_ssize_t t, last = -1, b, c
    cdef dict cob_a
    cdef object s, v, yc, u, entry, t2
    for c in y:
        for t2 in lift_index.get(c, ()):
            heap.append(-t2)
    heapify(heap)
    while heap:
        t = -heappop(heap)
        if t == last:
            continue
        last = t
        entry = log[t]
        b = entry[1]
        u = entry[2]
        cob_a = <dict>entry[4]
        s = 0
        for c, v in cob_a.items():
            yc = y.get(c)
            if yc:
                s += v * yc
        if s:
            y[b] = -u * s
            for t2 in lift_index.get(b, ()):
                heappush(heap, -t2)
    return y
