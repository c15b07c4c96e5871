"""Pure-Python Gauss-Jordan elimination over prime fields.

Drop-in replacement for the compiled ``_modp`` extension.
"""

from __future__ import annotations


def rref_modp(rows, ncols, p):
    a = [[x % p for x in row] for row in rows]
    nrows = len(a)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = next((r for r in range(rank, nrows) if a[r][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        inv = pow(prow[c], p - 2, p)
        if inv != 1:
            prow = a[rank] = [(x * inv) % p for x in prow]
        for r in range(nrows):
            if r != rank:
                f = a[r][c]
                if f:
                    row = a[r]
                    a[r] = [(x - f * y) % p for x, y in zip(row, prow)]
        pivots.append(c)
        rank += 1
    return a[:rank], pivots
