"""Pure-Python fraction-free Gauss-Jordan elimination over the integers."""


def rref_int(rows, ncols):
    """Reduce an integer matrix in place to scaled reduced row echelon form.

    Integer-preserving Gauss-Jordan (Bareiss division at every step).  On
    return, for ``i < len(pivots)`` row ``i`` divided by ``scale`` is row ``i``
    of the reduced row echelon form; rows past the rank are zero.

    Returns ``(pivots, scale)``.
    """
    nrows = len(rows)
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and rows[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = rows[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    for j in range(ncols):
                        if row[j]:
                            row[j] = (piv * row[j]) // prev
                continue
            for j in range(ncols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, prev
