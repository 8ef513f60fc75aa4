"""Dense exact matrices over a field, with Gauss-Jordan rank and kernels."""

from __future__ import annotations

from ..errors import ShapeMismatch
from .fields import current_field


class ExactMatrix:
    __slots__ = ("rows", "nrows", "ncols", "field")

    def __init__(self, rows, ncols: int | None = None, field=None):
        field = field or current_field()
        rows = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise ValueError("column count needed for a matrix without rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ShapeMismatch("ragged matrix")
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = ncols
        self.field = field

    @classmethod
    def zeros(cls, nrows, ncols, field=None):
        field = field or current_field()
        z = field.zero
        return cls([[z] * ncols for _ in range(nrows)], ncols, field)

    @classmethod
    def identity(cls, n, field=None):
        field = field or current_field()
        return cls(
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)], n, field
        )

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return [r[j] for r in self.rows]

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def transpose(self):
        return ExactMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
            self.field,
        )

    T = property(transpose)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        zero = self.field.zero
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a != 0]
            row = []
            for col in cols:
                s = zero
                for k, a in nz:
                    b = col[k]
                    if b != 0:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return ExactMatrix(out, other.ncols, self.field)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return ExactMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
            self.field,
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in subtraction")
        return ExactMatrix(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
            self.ncols,
            self.field,
        )

    def scale(self, c):
        c = self.field(c)
        return ExactMatrix([[a * c for a in r] for r in self.rows], self.ncols, self.field)

    def rref(self):
        """Reduced row echelon form and the pivot columns."""
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            piv = next((i for i in range(row, len(m)) if m[i][col] != 0), None)
            if piv is None:
                continue
            m[row], m[piv] = m[piv], m[row]
            inv = 1 / m[row][col]
            m[row] = [x * inv for x in m[row]]
            for i in range(len(m)):
                if i != row and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
            if row == len(m):
                break
        return m, pivots

    def is_zero(self):
        return all(x == 0 for r in self.rows for x in r)

    def inverse(self):
        if self.nrows != self.ncols:
            raise ShapeMismatch("only square matrices are invertible")
        n = self.nrows
        aug = ExactMatrix(
            [list(r) + [self.field.one if i == j else self.field.zero for j in range(n)]
             for i, r in enumerate(self.rows)],
            2 * n,
            self.field,
        )
        m, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return ExactMatrix([r[n:] for r in m], n, self.field)

    def to_json(self):
        return [[self.field.format(x) for x in r] for r in self.rows]

    def __repr__(self):
        return "ExactMatrix(%r)" % (self.to_json(),)


def rank(M: ExactMatrix) -> int:
    return len(M.rref()[1])


def kernel_basis(M: ExactMatrix):
    """Basis of the right kernel {x : M x = 0}, one list per vector."""
    m, pivots = M.rref()
    free = [j for j in range(M.ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [M.field.zero] * M.ncols
        v[f] = M.field.one
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    return basis
