"""Exact linear algebra over the rationals.

Everything downstream (path algebras, representations, relative homology)
reduces to exact rank / kernel / solve computations, so this module is the
single arithmetic substrate.  Entries are exact rationals; no floats anywhere.

Elimination runs fraction-free (rows are scaled to integers, the forward pass
is one-step Bareiss with exact divisions) and the result is normalized to the
unique reduced row echelon form at the end.
"""

from __future__ import annotations

from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

_ZERO = QQ(0)
_ONE = QQ(1)
_QQ_TYPE = type(_ZERO)


def rational(value) -> QQ:
    """Coerce ints, strings like '2/3', Fractions or QQ values to QQ."""
    if type(value) is _QQ_TYPE:
        return value
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass int, str or Fraction")
    return QQ(value)


class Matrix:
    """A dense exact matrix, row-major, immutable by convention.

    Mutating helpers are private and only used before the instance escapes.
    """

    __slots__ = ("rows", "cols", "_data", "_rref")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence]) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(entries) != rows:
            raise ValueError(f"expected {rows} rows, got {len(entries)}")
        data = []
        for row in entries:
            if len(row) != cols:
                raise ValueError(f"expected {cols} columns, got {len(row)}")
            data.append([rational(x) for x in row])
        self.rows = rows
        self.cols = cols
        self._data = data
        self._rref = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[_ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m._data[i][i] = _ONE
        return m

    @classmethod
    def from_rows(cls, entries: Sequence[Sequence]) -> "Matrix":
        rows = len(entries)
        cols = len(entries[0]) if rows else 0
        return cls(rows, cols, entries)

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls(len(values), 1, [[v] for v in values])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        cols = len(columns)
        rows = len(columns[0]) if cols else 0
        return cls(rows, cols, [[columns[j][i] for j in range(cols)] for i in range(rows)])

    # -- basic access ------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> list:
        return list(self._data[i])

    def column_vector(self, j: int) -> "Matrix":
        return Matrix(self.rows, 1, [[self._data[i][j]] for i in range(self.rows)])

    def to_lists(self) -> list:
        return [list(r) for r in self._data]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._data == other._data
        )

    __hash__ = None  # mutable-ish container; never used as a dict key

    def __repr__(self) -> str:
        if self.rows * self.cols > 64:
            return f"Matrix({self.rows}x{self.cols})"
        body = "; ".join(" ".join(str(x) for x in row) for row in self._data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ],
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        return Matrix(
            self.rows,
            self.cols,
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ],
        )

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, [[-a for a in row] for row in self._data])

    def scale(self, c) -> "Matrix":
        c = rational(c)
        return Matrix(self.rows, self.cols, [[c * a for a in row] for row in self._data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch for product: {self.rows}x{self.cols} @ {other.rows}x{other.cols}"
            )
        out = [[_ZERO] * other.cols for _ in range(self.rows)]
        bdata = other._data
        for i, arow in enumerate(self._data):
            orow = out[i]
            for k, a in enumerate(arow):
                if a == 0:
                    continue
                brow = bdata[k]
                for j, b in enumerate(brow):
                    if b != 0:
                        orow[j] += a * b
        return Matrix(self.rows, other.cols, out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.cols,
            self.rows,
            [[self._data[i][j] for i in range(self.rows)] for j in range(self.cols)],
        )

    def _check_same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and the tuple of pivot column indices.

        Forward pass is fraction-free Bareiss on integer-scaled rows; the
        normalization pass divides pivot rows and clears above the pivots,
        producing the unique RREF.
        """
        if self._rref is not None:
            return self._rref
        w = [list(row) for row in self._data]
        # scale each row to integer entries (a legal row operation)
        for row in w:
            scale = 1
            for x in row:
                d = x.denominator
                if d != 1:
                    g = _gcd(scale, d)
                    scale = scale // g * d
            if scale != 1:
                s = QQ(scale)
                for j in range(len(row)):
                    row[j] = row[j] * s
        m, n = self.rows, self.cols
        pivots = []
        prev = _ONE
        r = 0
        for c in range(n):
            pivot_row = None
            for i in range(r, m):
                if w[i][c] != 0:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            if pivot_row != r:
                w[r], w[pivot_row] = w[pivot_row], w[r]
            piv = w[r][c]
            for i in range(r + 1, m):
                row_i = w[i]
                factor = row_i[c]
                if factor == 0:
                    # Bareiss still rescales untouched rows to keep divisions exact
                    for j in range(c + 1, n):
                        if row_i[j] != 0:
                            row_i[j] = row_i[j] * piv / prev
                else:
                    row_r = w[r]
                    for j in range(c + 1, n):
                        row_i[j] = (row_i[j] * piv - factor * row_r[j]) / prev
                row_i[c] = _ZERO
            pivots.append(c)
            prev = piv
            r += 1
            if r == m:
                break
        # normalization: unit pivots, zeros above
        for k in range(len(pivots) - 1, -1, -1):
            c = pivots[k]
            row_k = w[k]
            piv = row_k[c]
            if piv != 1:
                inv = _ONE / piv
                for j in range(c, n):
                    if row_k[j] != 0:
                        row_k[j] = row_k[j] * inv
            for i in range(k):
                factor = w[i][c]
                if factor != 0:
                    row_i = w[i]
                    for j in range(c, n):
                        if row_k[j] != 0:
                            row_i[j] = row_i[j] - factor * row_k[j]
        result = (Matrix(m, n, w), tuple(pivots))
        self._rref = result
        return result

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Matrix":
        """Matrix whose columns form a basis of the right kernel.

        Basis vectors are ordered by ascending free-column index; entries
        are read off the RREF, so the result is deterministic.
        """
        red, pivots = self.rref()
        n = self.cols
        pivot_set = set(pivots)
        free = [j for j in range(n) if j not in pivot_set]
        cols = []
        for f in free:
            v = [_ZERO] * n
            v[f] = _ONE
            for k, p in enumerate(pivots):
                coeff = red._data[k][f]
                if coeff != 0:
                    v[p] = -coeff
            cols.append(v)
        return Matrix.from_columns(cols) if cols else Matrix(n, 0, [[] for _ in range(n)])

    def solve_right(self, rhs: "Matrix") -> "Matrix | None":
        """One exact solution X of self @ X = rhs, or None if inconsistent.

        Free variables are set to zero, so the solution is deterministic.
        """
        if rhs.rows != self.rows:
            raise ValueError("rhs row count mismatch")
        aug = hstack([self, rhs])
        red, pivots = aug.rref()
        n = self.cols
        for p in pivots:
            if p >= n:
                return None
        out = [[_ZERO] * rhs.cols for _ in range(n)]
        for k, p in enumerate(pivots):
            row = red._data[k]
            for j in range(rhs.cols):
                out[p][j] = row[n + j]
        return Matrix(n, rhs.cols, out)

    def left_inverse(self) -> "Matrix":
        """An exact L with L @ self = identity; needs full column rank.

        Computed once from the RREF of [self | I]; callers that repeatedly
        solve against the same full-rank matrix should prefer this over
        solve_right, which re-eliminates for every right-hand side.
        """
        n = self.cols
        aug, pivots = hstack([self, Matrix.identity(self.rows)]).rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ValueError("matrix does not have full column rank")
        return Matrix(
            n, self.rows, [aug._data[i][self.cols :] for i in range(n)]
        )

    def column_space_basis(self) -> "Matrix":
        """Columns of self at the pivot positions of its RREF: an image basis."""
        _, pivots = self.rref()
        return self.take_columns(pivots)

    def in_column_span(self, v: "Matrix") -> bool:
        return self.solve_right(v) is not None

    def take_columns(self, indices: Iterable[int]) -> "Matrix":
        idx = list(indices)
        return Matrix(
            self.rows, len(idx), [[row[j] for j in idx] for row in self._data]
        )

    def take_rows(self, indices: Iterable[int]) -> "Matrix":
        idx = list(indices)
        return Matrix(len(idx), self.cols, [list(self._data[i]) for i in idx])

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("only square matrices invert")
        sol = self.solve_right(Matrix.identity(self.rows))
        if sol is None or not (self @ sol == Matrix.identity(self.rows)):
            raise ValueError("matrix is singular")
        return sol

    def trace(self) -> QQ:
        if self.rows != self.cols:
            raise ValueError("trace needs a square matrix")
        t = _ZERO
        for i in range(self.rows):
            t += self._data[i][i]
        return t

    def flatten(self) -> list:
        """Row-major flat list of entries."""
        return [x for row in self._data for x in row]


def _gcd(a: int, b: int) -> int:
    a, b = int(a), int(b)
    while b:
        a, b = b, a % b
    return abs(a)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ValueError("row count mismatch in hstack")
    data = [[] for _ in range(rows)]
    for m in mats:
        for i in range(rows):
            data[i].extend(m._data[i])
    return Matrix(rows, sum(m.cols for m in mats), data)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ValueError("column count mismatch in vstack")
    data = []
    for m in mats:
        data.extend(m.to_lists())
    return Matrix(sum(m.rows for m in mats), cols, data)


def block_diag(mats: Sequence[Matrix]) -> Matrix:
    mats = list(mats)
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zeros(rows, cols)
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            out._data[r + i][c : c + m.cols] = m.row(i)
        r += m.rows
        c += m.cols
    return out


def from_blocks(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a matrix from a 2d grid of consistent blocks."""
    return vstack([hstack(list(row)) for row in blocks])


def subspace_basis(vectors: Sequence[Matrix]) -> Matrix:
    """Column basis of the span of the given column vectors (deterministic)."""
    if not vectors:
        raise ValueError("need the ambient dimension; pass at least one vector")
    joined = hstack(list(vectors))
    return joined.column_space_basis()


def subspace_contains(basis: Matrix, v: Matrix) -> bool:
    if basis.cols == 0:
        return v.is_zero()
    return basis.in_column_span(v)


def subspace_sum(ambient_dim: int, parts: Sequence[Matrix]) -> Matrix:
    """Basis of the sum of column-span subspaces of a common ambient space."""
    cols = [m for m in parts if m.cols]
    if not cols:
        return Matrix(ambient_dim, 0, [[] for _ in range(ambient_dim)])
    return hstack(cols).column_space_basis()


def intersect_kernels(mats: Sequence[Matrix]) -> Matrix:
    """Basis of the intersection of right kernels of same-width matrices.

    Zero-row matrices impose no constraints but still fix the ambient width.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix to know the ambient width")
    return vstack(mats).kernel_basis()
