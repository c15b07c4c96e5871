"""Exact scalars over Q and F_p, and the dense linear algebra built on them.

Matrices are small (dimensions well below 100) so everything is dense and
row-major.  Rational elimination runs fraction-free on integer rows; prime
field elimination goes through the compiled kernel when it is built.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ._backend import rref_modp


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: the rationals (``p == 0``) or the prime field F_p."""

    p: int = 0

    def __post_init__(self):
        if self.p != 0 and not _is_prime(self.p):
            raise ValueError(f"field characteristic {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "Rationals" if self.p == 0 else "PrimeField"

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, x):
        """Canonical form of ``x`` in this field."""
        if self.p == 0:
            return x if type(x) is Fraction else Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return Fraction(0) if self.p == 0 else 0

    @property
    def one(self):
        return Fraction(1) if self.p == 0 else 1

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p == 0:
            return 1 / x
        return pow(x, -1, self.p)

    def parse(self, text: str):
        return self(Fraction(text.strip()))

    def format(self, x) -> str:
        if self.p == 0:
            return str(x)
        return str(int(x))

    def elements(self):
        if self.p == 0:
            raise ValueError("cannot enumerate the rationals")
        return range(self.p)

    def __str__(self):
        return "Q" if self.p == 0 else f"F{self.p}"


QQ = FieldSpec(0)


def GF(p: int) -> FieldSpec:
    return FieldSpec(p)


class Matrix:
    """Immutable dense matrix over a :class:`FieldSpec`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FieldSpec, rows: Iterable[Sequence], ncols: Optional[int] = None):
        conv = field
        data = [[conv(x) for x in row] for row in rows]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for row in data:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        self.field = field
        self.nrows = len(data)
        self.ncols = ncols
        self.rows = data

    @classmethod
    def _raw(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m.rows = rows
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns, nrows):
        cols = list(columns)
        return cls._raw(field, [[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j):
        return [row[j] for row in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self.rows)))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(self.field.format(x) for x in r) + "]" for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}, [{body}])"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        p = self.field.p
        n = other.ncols
        if n == 0 or self.nrows == 0:
            return Matrix.zeros(self.field, self.nrows, n)
        ocols = list(zip(*other.rows)) if other.nrows else [()] * n
        zero = self.field.zero
        out = []
        for row in self.rows:
            nz = [(k, a) for k, a in enumerate(row) if a]
            if not nz:
                out.append([zero] * n)
                continue
            if p:
                out.append([sum(a * col[k] for k, a in nz) % p for col in ocols])
            else:
                out.append([sum((a * col[k] for k, a in nz), zero) for col in ocols])
        return Matrix._raw(self.field, out, n)

    def __add__(self, other):
        self._check_same(other)
        p = self.field.p
        if p:
            rows = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            rows = [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __sub__(self, other):
        self._check_same(other)
        p = self.field.p
        if p:
            rows = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        else:
            rows = [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        return Matrix._raw(self.field, rows, self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        p = self.field.p
        if p:
            rows = [[(c * a) % p for a in r] for r in self.rows]
        else:
            rows = [[c * a for a in r] for r in self.rows]
        return Matrix._raw(self.field, rows, self.ncols)

    def _check_same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    @property
    def T(self) -> "Matrix":
        if self.nrows == 0:
            return Matrix.zeros(self.field, self.ncols, 0)
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)], self.nrows)

    def submatrix(self, row_idx, col_idx) -> "Matrix":
        col_idx = list(col_idx)
        return Matrix._raw(self.field, [[self.rows[i][j] for j in col_idx] for i in row_idx], len(col_idx))

    def flatten(self) -> list:
        return [x for r in self.rows for x in r]

    def trace(self):
        if self.nrows != self.ncols:
            raise ValueError("trace of a non-square matrix")
        t = sum((self.rows[i][i] for i in range(self.nrows)), self.field.zero)
        return t % self.field.p if self.field.p else t

    def power(self, k: int) -> "Matrix":
        result = Matrix.identity(self.field, self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def rank(self) -> int:
        return rank(self)


def hstack(field, blocks: Sequence[Matrix], nrows: Optional[int] = None) -> Matrix:
    blocks = list(blocks)
    if nrows is None:
        if not blocks:
            raise ValueError("hstack of nothing needs nrows")
        nrows = blocks[0].nrows
    rows = [[] for _ in range(nrows)]
    ncols = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack row mismatch")
        for r, br in zip(rows, b.rows):
            r.extend(br)
        ncols += b.ncols
    return Matrix._raw(field, rows, ncols)


def vstack(field, blocks: Sequence[Matrix], ncols: Optional[int] = None) -> Matrix:
    blocks = list(blocks)
    if ncols is None:
        if not blocks:
            raise ValueError("vstack of nothing needs ncols")
        ncols = blocks[0].ncols
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack column mismatch")
        rows.extend(list(r) for r in b.rows)
    return Matrix._raw(field, rows, ncols)


def block_diag(field, blocks: Sequence[Matrix]) -> Matrix:
    nrows = sum(b.nrows for b in blocks)
    ncols = sum(b.ncols for b in blocks)
    out = Matrix.zeros(field, nrows, ncols).rows
    r0 = c0 = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            out[r0 + i][c0:c0 + b.ncols] = row
        r0 += b.nrows
        c0 += b.ncols
    return Matrix._raw(field, out, ncols)


# -- elimination ------------------------------------------------------------

def _rref_rational(rows, ncols):
    # Fraction-free Gauss-Jordan on integer rows, normalised by row gcd.
    work = []
    for row in rows:
        den = 1
        for x in row:
            if x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        irow = [int(x * den) for x in row]
        if any(irow):
            work.append(irow)
    nrows = len(work)
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        piv = None
        best = None
        for r in range(rank, nrows):
            v = work[r][c]
            if v and (best is None or abs(v) < best):
                piv, best = r, abs(v)
                if best == 1:
                    break
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        a = prow[c]
        for r in range(nrows):
            if r == rank:
                continue
            b = work[r][c]
            if b:
                g = math.gcd(a, b)
                fa, fb = a // g, b // g
                new = [fa * x - fb * y for x, y in zip(work[r], prow)]
                g2 = 0
                for x in new:
                    if x:
                        g2 = math.gcd(g2, x)
                        if g2 == 1:
                            break
                if g2 > 1:
                    new = [x // g2 for x in new]
                work[r] = new
        pivots.append(c)
        rank += 1
    out = []
    for i, c in enumerate(pivots):
        row = work[i]
        a = row[c]
        out.append([Fraction(x, a) for x in row])
    return out, pivots


def rref(m: Matrix):
    """Reduced row echelon form: ``(nonzero_rows, pivot_columns)``."""
    if m.nrows == 0 or m.ncols == 0:
        return [], []
    if m.field.p:
        return rref_modp(m.rows, m.ncols, m.field.p)
    return _rref_rational(m.rows, m.ncols)


def rank(m: Matrix) -> int:
    """Rank over the matrix's field."""
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Matrix whose columns form a basis of the right kernel of ``m``."""
    f = m.field
    rows, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivset]
    cols = []
    zero, one = f.zero, f.one
    p = f.p
    for j in free:
        v = [zero] * m.ncols
        v[j] = one
        for row, c in zip(rows, pivots):
            x = row[j]
            if x:
                v[c] = (-x) % p if p else -x
        cols.append(v)
    return Matrix.from_columns(f, cols, m.ncols)


def column_basis(m: Matrix) -> Matrix:
    """Independent columns of ``m`` spanning its column space."""
    _, piv = rref(m)
    return m.submatrix(range(m.nrows), piv)


def row_space_basis(m: Matrix) -> Matrix:
    rows, _ = rref(m)
    return Matrix._raw(m.field, [list(r) for r in rows], m.ncols)


def solve_right(m: Matrix, b: Matrix) -> Optional[Matrix]:
    """A matrix ``x`` with ``m @ x == b``, or ``None`` when no solution exists."""
    if m.nrows != b.nrows:
        raise ValueError("row counts of m and b differ")
    f = m.field
    n = m.ncols
    aug = Matrix._raw(f, [list(r) + list(s) for r, s in zip(m.rows, b.rows)], n + b.ncols)
    rows, pivots = rref(aug)
    if pivots and pivots[-1] >= n:
        return None
    zero = f.zero
    x = [[zero] * b.ncols for _ in range(n)]
    for row, c in zip(rows, pivots):
        x[c] = list(row[n:])
    return Matrix._raw(f, x, b.ncols)


def subspace_contains(span: Matrix, v: Matrix) -> bool:
    """True iff every column of ``v`` lies in the column span of ``span``."""
    if span.nrows != v.nrows:
        raise ValueError("row counts differ")
    if v.ncols == 0:
        return True
    if span.ncols == 0:
        return v.is_zero()
    return solve_right(span, v) is not None


def inverse(m: Matrix) -> Optional[Matrix]:
    if m.nrows != m.ncols:
        return None
    return solve_right(m, Matrix.identity(m.field, m.nrows)) if rank(m) == m.nrows else None


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def complement_columns(span: Matrix) -> list:
    """Standard basis indices completing the columns of ``span`` to a basis."""
    n = span.nrows
    if span.ncols == 0:
        return list(range(n))
    # pivot-free coordinates of the row-reduced transpose complete the span
    _, piv = rref(span.T)
    used = set(piv)
    return [j for j in range(n) if j not in used]
