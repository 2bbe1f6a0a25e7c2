"""Dense exact matrices over Q(sqrt d)."""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, Singular
from .scalars import DEFAULT_D, Scalar, as_scalar, format_scalar


class Matrix:
    """Immutable rows x cols grid of :class:`Scalar` entries."""

    __slots__ = ("rows", "cols", "entries", "d")

    def __init__(self, entries: Iterable[Iterable], d: int = DEFAULT_D):
        grid = tuple(tuple(as_scalar(x, d) for x in row) for row in entries)
        if not grid or not grid[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        width = len(grid[0])
        if any(len(r) != width for r in grid):
            raise DimensionMismatch("ragged matrix rows")
        self.entries = grid
        self.rows = len(grid)
        self.cols = width
        self.d = d

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, d: int = DEFAULT_D) -> Matrix:
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)], d)

    @classmethod
    def identity(cls, n: int, d: int = DEFAULT_D) -> Matrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], d)

    @classmethod
    def from_strings(cls, rows: Sequence[Sequence[str]], d: int = DEFAULT_D) -> Matrix:
        return cls(rows, d)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        out = []
        for brow in blocks:
            for r in range(brow[0].rows):
                out.append([x for b in brow for x in b.entries[r]])
        return cls(out, blocks[0][0].d)

    # access ---------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self):
        return self.rows, self.cols

    def is_square(self) -> bool:
        return self.rows == self.cols

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> Matrix:
        return Matrix([row[c0:c1] for row in self.entries[r0:r1]], self.d)

    def column(self, j: int) -> list[Scalar]:
        return [row[j] for row in self.entries]

    # arithmetic -----------------------------------------------------------

    def _check_same(self, other: Matrix):
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.d
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same(other)
        return Matrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.d
        )

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self.entries], self.d)

    def scale(self, c) -> Matrix:
        c = as_scalar(c, self.d)
        return Matrix([[c * a for a in r] for r in self.entries], self.d)

    def __rmul__(self, c) -> Matrix:
        return self.scale(c)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other.entries))
        zero = Scalar(0, 0, self.d)
        out = []
        for row in self.entries:
            new_row = []
            for col in cols:
                acc = zero
                for a, b in zip(row, col):
                    if a and b:
                        acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return Matrix(out, self.d)

    def apply(self, vec: Sequence) -> list[Scalar]:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise DimensionMismatch("vector length does not match matrix")
        zero = Scalar(0, 0, self.d)
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def transpose(self) -> Matrix:
        return Matrix(list(zip(*self.entries)), self.d)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def __pow__(self, k: int) -> Matrix:
        if not self.is_square():
            raise DimensionMismatch("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Matrix.identity(self.rows, self.d), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(x for r in self.entries for x in r)

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.rows, self.d)

    def is_antisymmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == -self.entries[j][i]
            for i in range(self.rows)
            for j in range(i, self.rows)
        )

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.transpose()

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    # elimination ----------------------------------------------------------

    def inverse(self) -> Matrix:
        """Gauss-Jordan inverse; raises :class:`Singular` with a kernel vector."""
        if not self.is_square():
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        one = Scalar(1, 0, self.d)
        zero = Scalar(0, 0, self.d)
        aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(self.entries)]
        for c in range(n):
            pivot = next((r for r in range(c, n) if aug[r][c]), None)
            if pivot is None:
                raise Singular("matrix is singular", kernel=self.kernel_vector())
            aug[c], aug[pivot] = aug[pivot], aug[c]
            inv_p = aug[c][c].inv()
            aug[c] = [x * inv_p for x in aug[c]]
            for r in range(n):
                if r != c and aug[r][c]:
                    f = aug[r][c]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
        return Matrix([row[n:] for row in aug], self.d)

    def rank(self) -> int:
        return len(self._rref()[1])

    def _rref(self):
        m = [list(r) for r in self.entries]
        pivots = []
        row = 0
        for c in range(self.cols):
            p = next((r for r in range(row, self.rows) if m[r][c]), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            inv_p = m[row][c].inv()
            m[row] = [x * inv_p for x in m[row]]
            for r in range(self.rows):
                if r != row and m[r][c]:
                    f = m[r][c]
                    m[r] = [x - f * y for x, y in zip(m[r], m[row])]
            pivots.append(c)
            row += 1
            if row == self.rows:
                break
        return m, pivots

    def kernel_vector(self) -> list[Scalar] | None:
        """A nonzero vector v with M v = 0, or None if M has trivial kernel."""
        m, pivots = self._rref()
        free = [c for c in range(self.cols) if c not in pivots]
        if not free:
            return None
        f = free[0]
        v = [Scalar(0, 0, self.d)] * self.cols
        v[f] = Scalar(1, 0, self.d)
        for r, c in enumerate(pivots):
            v[c] = -m[r][f]
        return v

    # text -----------------------------------------------------------------

    def to_strings(self) -> list[list[str]]:
        return [[format_scalar(x) for x in r] for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.to_strings())
        return f"Matrix([{body}])"


def mat_inverse(m: Matrix) -> Matrix:
    return m.inverse()
