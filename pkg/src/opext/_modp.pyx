# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination over prime fields."""

from libc.stdlib cimport malloc, free


cdef long long _inv(long long a, long long p):
    cdef long long t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_modp(rows, Py_ssize_t ncols, long long p):
    """Reduced row echelon form of ``rows`` modulo ``p``.

    Returns ``(pivot_rows, pivots)`` where ``pivot_rows`` holds only the
    nonzero rows of the reduced matrix.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, r, c, rank = 0, piv
    cdef long long f, v, inv
    cdef long long *a
    if nrows == 0 or ncols == 0:
        return [], []
    a = <long long *> malloc(nrows * ncols * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                v = (<long long> row[j]) % p
                if v < 0:
                    v += p
                a[i * ncols + j] = v
        pivots = []
        for c in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for r in range(rank, nrows):
                if a[r * ncols + c] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(ncols):
                    v = a[piv * ncols + j]
                    a[piv * ncols + j] = a[rank * ncols + j]
                    a[rank * ncols + j] = v
            inv = _inv(a[rank * ncols + c], p)
            if inv != 1:
                for j in range(c, ncols):
                    a[rank * ncols + j] = (a[rank * ncols + j] * inv) % p
            for r in range(nrows):
                if r == rank:
                    continue
                f = a[r * ncols + c]
                if f == 0:
                    continue
                for j in range(c, ncols):
                    v = a[rank * ncols + j]
                    if v != 0:
                        a[r * ncols + j] = (a[r * ncols + j] - f * v) % p
                        if a[r * ncols + j] < 0:
                            a[r * ncols + j] += p
            pivots.append(c)
            rank += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        return out, pivots
    finally:
        free(a)
