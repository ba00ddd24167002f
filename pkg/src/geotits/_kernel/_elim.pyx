# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of elim_py.eliminate.

Same algorithm and same deterministic pivot choices; Python ints are kept
for entries (arbitrary precision is required), the win comes from typed
index loops and avoiding interpreter overhead in the axpy kernels.
"""


def eliminate(list rows, Py_ssize_t m, Py_ssize_t n, bint want_transforms):
    cdef list cols = [set() for _ in range(n)]
    cdef Py_ssize_t i, j
    cdef dict ri
    for i in range(m):
        ri = rows[i]
        for j in ri:
            (<set>cols[j]).add(i)

    cdef list urows = None
    cdef list vcols = None
    if want_transforms:
        urows = [{i: 1} for i in range(m)]
        vcols = [{j: 1} for j in range(n)]

    active_rows = set()
    for i in range(m):
        if rows[i]:
            active_rows.add(i)
    cdef list pivots = []
    cdef list pivot_rows = []
    cdef list pivot_cols = []

    def row_axpy(Py_ssize_t ti, Py_ssize_t ip, q):
        cdef dict target = rows[ti]
        cdef dict tu
        if q == 0:
            return
        for jj, v in (<dict>rows[ip]).items():
            w = target.get(jj, 0) - q * v
            if w:
                target[jj] = w
                (<set>cols[jj]).add(ti)
            elif jj in target:
                del target[jj]
                (<set>cols[jj]).discard(ti)
        if urows is not None:
            tu = urows[ti]
            for jj, v in (<dict>urows[ip]).items():
                w = tu.get(jj, 0) - q * v
                if w:
                    tu[jj] = w
                elif jj in tu:
                    del tu[jj]

    def col_axpy(Py_ssize_t tj, Py_ssize_t jp, q):
        cdef dict tv
        if q == 0:
            return
        for ii in list(<set>cols[jp]):
            v = (<dict>rows[ii])[jp]
            w = (<dict>rows[ii]).get(tj, 0) - q * v
            if w:
                (<dict>rows[ii])[tj] = w
                (<set>cols[tj]).add(ii)
            elif tj in (<dict>rows[ii]):
                del (<dict>rows[ii])[tj]
                (<set>cols[tj]).discard(ii)
        if vcols is not None:
            tv = vcols[tj]
            for ii, v in (<dict>vcols[jp]).items():
                w = tv.get(ii, 0) - q * v
                if w:
                    tv[ii] = w
                elif ii in tv:
                    del tv[ii]

    def negate_row(Py_ssize_t ti):
        cdef dict r = rows[ti]
        for jj in r:
            r[jj] = -r[jj]
        if urows is not None:
            for jj in (<dict>urows[ti]):
                (<dict>urows[ti])[jj] = -(<dict>urows[ti])[jj]

    def retire(Py_ssize_t pi, Py_ssize_t pj):
        d = (<dict>rows[pi])[pj]
        if d < 0:
            negate_row(pi)
            d = -d
        pivots.append(d)
        pivot_rows.append(pi)
        pivot_cols.append(pj)
        del (<dict>rows[pi])[pj]
        (<set>cols[pj]).discard(pi)
        active_rows.discard(pi)

    cdef Py_ssize_t i0, j0, rlen
    # Phase A: +-1 pivots, cheapest fill first.
    while True:
        best = None
        for i in sorted(active_rows):
            ri = rows[i]
            rlen = len(ri)
            for j in sorted(ri):
                v = ri[j]
                if v == 1 or v == -1:
                    cost = (rlen - 1) * (len(<set>cols[j]) - 1)
                    key = (cost, i, j)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        i0 = best[1]
        j0 = best[2]
        p = (<dict>rows[i0])[j0]
        for ii in list(<set>cols[j0]):
            if ii != i0:
                row_axpy(ii, i0, (<dict>rows[ii])[j0] * p)
        for jj in list(<dict>rows[i0]):
            if jj != j0:
                col_axpy(jj, j0, (<dict>rows[i0])[jj] * p)
        retire(i0, j0)

    # Phase B: general pivots with divisibility enforcement.
    while True:
        best = None
        for i in sorted(active_rows):
            ri = rows[i]
            for j in sorted(ri):
                key = (abs(ri[j]), i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        i0 = best[1]
        j0 = best[2]
        while True:
            p = (<dict>rows[i0])[j0]
            for ii in list(<set>cols[j0]):
                if ii != i0:
                    row_axpy(ii, i0, (<dict>rows[ii])[j0] // p)
            for jj in list(<dict>rows[i0]):
                if jj != j0:
                    col_axpy(jj, j0, (<dict>rows[i0])[jj] // p)
            dirty = False
            for ii in (<set>cols[j0]):
                if ii != i0:
                    dirty = True
                    break
            if not dirty:
                for jj in (<dict>rows[i0]):
                    if jj != j0:
                        dirty = True
                        break
            if dirty:
                p_abs = abs((<dict>rows[i0])[j0])
                cand = None
                for i in sorted(active_rows):
                    for j in sorted(rows[i]):
                        if abs((<dict>rows[i])[j]) < p_abs:
                            cand = (i, j)
                            p_abs = abs((<dict>rows[i])[j])
                if cand is not None:
                    i0 = cand[0]
                    j0 = cand[1]
                continue
            p = (<dict>rows[i0])[j0]
            offender = -1
            for i in sorted(active_rows):
                if i == i0:
                    continue
                for j in sorted(rows[i]):
                    if (<dict>rows[i])[j] % p:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            row_axpy(i0, offender, -1)
        retire(i0, j0)

    return pivots, pivot_rows, pivot_cols, urows, vcols
