"""Pure-Python chain complex reduction kernel.

A cell pair (a, b) with ``<db, a> = u`` a unit is cancelled: every other
cell y in the coboundary of a gets ``dy -= (<dy, a> / u) db``. The result is
a chain-homotopy-equivalent complex on the surviving cells. Each
cancellation is logged so that chains can be carried between the original
and the reduced complex afterwards.

Log entry ``t`` is ``(a, b, u, bnd_b, cob_a)`` where ``bnd_b`` is the
boundary of b at time t without a, and ``cob_a`` the coboundary of a at
time t without b.

This module and the compiled ``_kernel`` extension expose identical
functions; ``permhom.kernels`` picks one at import.
"""

from heapq import heapify, heappop, heappush


def reduce_complex(boundaries):
    """Cancel unit pairs until none remain.

    ``boundaries[c]`` maps face ids to coefficients for cell ``c``.
    Returns ``(alive, bnd, log)``; ``bnd[c]`` is the reduced boundary of a
    surviving cell.
    """
    n = len(boundaries)
    bnd = [dict(b) for b in boundaries]
    cob = [{} for _ in range(n)]
    for b, col in enumerate(bnd):
        for a, c in col.items():
            cob[a][b] = c
    alive = [True] * n
    log = []

    heap = [(len(cob[a]), a) for a in range(n) if cob[a]]
    heapify(heap)
    while heap:
        size, a = heappop(heap)
        row = cob[a]
        if not alive[a] or len(row) != size or not row:
            continue
        best = -1
        best_len = 0
        for b, c in row.items():
            if c == 1 or c == -1:
                lb = len(bnd[b])
                if best < 0 or lb < best_len:
                    best = b
                    best_len = lb
                    if lb == 1:
                        break
        if best < 0:
            continue
        b = best
        u = row[b]
        col_b = bnd[b]
        bnd_b = {x: v for x, v in col_b.items() if x != a}
        cob_a = {y: v for y, v in row.items() if y != b}

        for y, cy in cob_a.items():
            factor = cy * u
            col_y = bnd[y]
            del col_y[a]
            for x, cx in bnd_b.items():
                new = col_y.get(x, 0) - factor * cx
                cob_x = cob[x]
                if new:
                    col_y[x] = new
                    cob_x[y] = new
                else:
                    col_y.pop(x, None)
                    cob_x.pop(y, None)

        for x in col_b:
            cob[x].pop(b, None)
        for z in cob[b]:
            bnd[z].pop(b, None)
        for w in bnd[a]:
            cob[w].pop(a, None)
            heappush(heap, (len(cob[w]), w))
        for x in bnd_b:
            heappush(heap, (len(cob[x]), x))

        alive[a] = alive[b] = False
        bnd[a] = {}
        bnd[b] = {}
        cob[a] = {}
        cob[b] = {}
        log.append((a, b, u, bnd_b, cob_a))

    return alive, bnd, log


def project_chain(chain, log, elim_at):
    """Image of an original chain in the reduced complex.

    ``elim_at[c]`` is the log position at which cell c was cancelled, or -1.
    """
    x = dict(chain)
    heap = [elim_at[c] for c in x if elim_at[c] >= 0]
    heapify(heap)
    last = -1
    while heap:
        t = heappop(heap)
        if t == last:
            continue
        last = t
        a, b, u, bnd_b, _ = log[t]
        if b in x:
            del x[b]
        elif a in x:
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


def lift_chain(chain, log, lift_index):
    """Image of a reduced chain in the original complex.

    ``lift_index[c]`` lists log positions t where c occurs in ``cob_a``.
    """
    y = dict(chain)
    heap = [-t for c in y for t in lift_index.get(c, ())]
    heapify(heap)
    last = -1
    while heap:
        t = -heappop(heap)
        if t == last:
            continue
        last = t
        _, b, u, _, cob_a = log[t]
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
