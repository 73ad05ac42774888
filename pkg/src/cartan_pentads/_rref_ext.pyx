# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_rref_py.rref_int``; same contract, same results."""


def rref_int(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t r = 0, c, p, i, j
    cdef list pivots = []
    cdef list prow, row
    cdef object prev = 1
    cdef object piv, f, x
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and (<list>rows[p])[c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
        prow = <list>rows[r]
        piv = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>rows[i]
            f = row[c]
            if f == 0:
                if piv != prev:
                    for j in range(ncols):
                        x = row[j]
                        if x:
                            row[j] = (piv * x) // prev
                continue
            for j in range(ncols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, prev
