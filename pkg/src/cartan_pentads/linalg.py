"""Exact rational matrices and the elimination routines built on them.

All scalars are :class:`fractions.Fraction`.  Matrices are immutable; every
operation returns a new :class:`QMatrix`.
"""

from fractions import Fraction
from math import lcm
import re

from ._kernel import rref_int
from .errors import DimensionMismatch, NotAPermutation, SingularMatrix, SpecParseError

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(value):
    """Parse ``"p/q"``, ``"p"``, an int or a Fraction into a Fraction.

    Floats and decimal strings are rejected: nothing inexact gets in.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise SpecParseError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL_RE.match(value)
        if m:
            num = int(m.group(1))
            den = int(m.group(2)) if m.group(2) is not None else 1
            if den == 0:
                raise SpecParseError(f"zero denominator in {value!r}")
            return Fraction(num, den)
    raise SpecParseError(f"not a rational: {value!r}")


def format_rational(q):
    """Serialize a rational as ``"p/q"``, or ``"p"`` for integers."""
    return str(Fraction(q))


class QMatrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data, rows=None, cols=None):
        if rows is not None:
            entries = tuple(parse_rational(x) for x in data)
            if cols is None or len(entries) != rows * cols:
                raise DimensionMismatch(
                    f"expected {rows}x{cols} entries, got {len(entries)}")
        else:
            data = [list(r) for r in data]
            rows = len(data)
            cols = len(data[0]) if rows else 0
            if cols is None:
                cols = 0
            if any(len(r) != cols for r in data):
                raise DimensionMismatch("ragged matrix rows")
            entries = tuple(parse_rational(x) for r in data for x in r)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("QMatrix is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, rows, cols):
        return cls([Fraction(0)] * (rows * cols), rows, cols)

    @classmethod
    def identity(cls, n):
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values):
        values = [parse_rational(v) for v in values]
        n = len(values)
        entries = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            entries[i * n + i] = v
        return cls(entries, n, n)

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [list(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        nrows = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))]
                    for i in range(nrows)]) if nrows else cls.zeros(0, len(columns))

    # -- access -----------------------------------------------------------
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self.entries[j::self.cols] if self.cols else ()

    def to_lists(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def to_strings(self):
        return [[format_rational(x) for x in self.row(i)] for i in range(self.rows)]

    def diagonal(self):
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))

    # -- predicates -------------------------------------------------------
    def is_square(self):
        return self.rows == self.cols

    def is_diagonal(self):
        return all(self[i, j] == 0 for i in range(self.rows)
                   for j in range(self.cols) if i != j)

    def is_symmetric(self):
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i))

    def is_zero(self):
        return not any(self.entries)

    # -- arithmetic -------------------------------------------------------
    @property
    def T(self):
        return QMatrix([self[i, j] for j in range(self.cols) for i in range(self.rows)],
                       self.cols, self.rows)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, m, p = self.rows, self.cols, other.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(p):
                s = Fraction(0)
                for k in range(m):
                    x = arow[k]
                    if x:
                        s += x * b[k * p + j]
                out.append(s)
        return QMatrix(out, n, p)

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} != {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return QMatrix([x + y for x, y in zip(self.entries, other.entries)],
                       self.rows, self.cols)

    def __sub__(self, other):
        self._same_shape(other)
        return QMatrix([x - y for x, y in zip(self.entries, other.entries)],
                       self.rows, self.cols)

    def __neg__(self):
        return QMatrix([-x for x in self.entries], self.rows, self.cols)

    def scale(self, c):
        c = parse_rational(c)
        return QMatrix([c * x for x in self.entries], self.rows, self.cols)

    def apply(self, vector):
        """Matrix times a column vector given as a sequence."""
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return tuple(sum((self[i, k] * vector[k] for k in range(self.cols)), Fraction(0))
                     for i in range(self.rows))

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in self.row(i))
                         for i in range(self.rows))
        return f"QMatrix({self.rows}x{self.cols}: [{body}])"


# -- elimination ---------------------------------------------------------

def _integer_rows(rows):
    out = []
    for r in rows:
        den = 1
        for x in r:
            if x.denominator != 1:
                den = lcm(den, x.denominator)
        out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def rref_rows(rows, ncols):
    """Reduced row echelon form of a list of Fraction rows.

    Returns ``(pivots, reduced)`` where ``reduced`` holds only the
    ``len(pivots)`` nonzero rows.
    """
    if not rows or ncols == 0:
        return [], []
    work = _integer_rows(rows)
    pivots, scale = rref_int(work, ncols)
    reduced = [[Fraction(x, scale) if x else Fraction(0) for x in work[i]]
               for i in range(len(pivots))]
    return pivots, reduced


def rref(m):
    """Return ``(R, pivots)``: the reduced row echelon form of ``m`` and its pivot columns."""
    pivots, reduced = rref_rows(m.to_lists(), m.cols)
    full = reduced + [[Fraction(0)] * m.cols for _ in range(m.rows - len(reduced))]
    return (QMatrix(full) if m.rows else QMatrix.zeros(0, m.cols)), pivots


def rank(m):
    return len(rref_rows(m.to_lists(), m.cols)[0])


def kernel_basis(m):
    """Basis of the right null space, normalized to reduced echelon form.

    Each vector is a tuple of Fractions; the list, read as the rows of a
    matrix, is itself in reduced row echelon form.
    """
    n = m.cols
    pivots, reduced = rref_rows(m.to_lists(), n)
    pivot_set = set(pivots)
    raw = []
    for f in range(n):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -reduced[i][f]
        raw.append(v)
    if not raw:
        return []
    _, basis = rref_rows(raw, n)
    return [tuple(v) for v in basis]


def image_basis(m):
    """Column-space basis, echelon-normalized like :func:`kernel_basis`."""
    _, basis = rref_rows(m.T.to_lists(), m.rows)
    return [tuple(v) for v in basis]


def det(m):
    if not m.is_square():
        raise DimensionMismatch("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a = [list(r) for r in m.to_lists()]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[p], a[c] = a[c], a[p]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            f = a[i][c]
            if f:
                f = f / piv
                ai, ac = a[i], a[c]
                for j in range(c, n):
                    ai[j] -= f * ac[j]
    return sign * result


def inverse(m):
    if not m.is_square():
        raise DimensionMismatch("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    pivots, reduced = rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    return QMatrix([row[n:] for row in reduced])


def solve(m, rhs):
    """One solution ``x`` of ``m x = rhs`` or ``None`` if inconsistent."""
    n = m.cols
    aug = [list(m.row(i)) + [parse_rational(rhs[i])] for i in range(m.rows)]
    pivots, reduced = rref_rows(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = reduced[i][n]
    return tuple(x)


def block_compose(blocks):
    """Assemble a block matrix from a rectangular grid of QMatrix blocks."""
    grid = [list(r) for r in blocks]
    if not grid or not grid[0]:
        raise DimensionMismatch("empty block grid")
    if any(len(r) != len(grid[0]) for r in grid):
        raise DimensionMismatch("ragged block grid")
    heights = [r[0].rows for r in grid]
    widths = [b.cols for b in grid[0]]
    for bi, r in enumerate(grid):
        for bj, b in enumerate(r):
            if b.rows != heights[bi] or b.cols != widths[bj]:
                raise DimensionMismatch(
                    f"block ({bi},{bj}) is {b.shape}, expected ({heights[bi]}, {widths[bj]})")
    out = []
    for bi, r in enumerate(grid):
        for i in range(heights[bi]):
            line = []
            for b in r:
                line.extend(b.row(i))
            out.extend(line)
    return QMatrix(out, sum(heights), sum(widths))


def block_diag(*mats):
    n = len(mats)
    grid = [[mats[i] if i == j else QMatrix.zeros(mats[i].rows, mats[j].cols)
             for j in range(n)] for i in range(n)]
    return block_compose(grid)


def permutation_matrix(pi):
    """0/1 matrix with entry ``(i, pi[i]) = 1``.

    ``pi`` is a sequence of images of ``1..n`` (one-based, as in the usual
    notation) or of ``0..n-1``; the base is detected from the values.
    """
    pi = list(pi)
    n = len(pi)
    base = 1 if n and min(pi) == 1 and max(pi) == n else 0
    images = [p - base for p in pi]
    if sorted(images) != list(range(n)):
        raise NotAPermutation(f"{pi!r} is not a permutation")
    entries = [Fraction(0)] * (n * n)
    for i, p in enumerate(images):
        entries[i * n + p] = Fraction(1)
    return QMatrix(entries, n, n)
