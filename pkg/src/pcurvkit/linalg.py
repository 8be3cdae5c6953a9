"""Dense exact matrices over a pluggable coefficient ring.

The ring object only has to provide ``zero``, ``one``, ``__call__`` for
coercion, and ``characteristic()``; entries must support field arithmetic.
That covers Fractions, prime fields, number fields, rational function
towers, and truncated series alike.  Elimination is plain Gauss-Jordan
with exact division, which is the right trade at the matrix sizes this
package sees (ranks up to a dozen or so).
"""

from __future__ import annotations

from fractions import Fraction


class Matrix:
    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        for r in rows:
            if len(r) != width:
                raise ValueError("ragged rows")
        self.ring = ring
        self.nrows = len(rows)
        self.ncols = width
        self.rows = tuple(
            tuple(ring(e) if isinstance(e, (int, str, Fraction)) else e for e in r)
            for r in rows
        )

    @classmethod
    def identity(cls, ring, n: int):
        z, o = ring.zero, ring.one
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring, nrows: int, ncols: int | None = None):
        ncols = nrows if ncols is None else ncols
        z = ring.zero
        return cls(ring, [[z] * ncols for _ in range(nrows)])

    @classmethod
    def column(cls, ring, entries):
        return cls(ring, [[e] for e in entries])

    def shape(self):
        return (self.nrows, self.ncols)

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def entry(self, i: int, j: int):
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(not e for r in self.rows for e in r)

    # -- arithmetic --------------------------------------------------------

    def _check_shape(self, other, same=True):
        if same and self.shape() != other.shape():
            raise ValueError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def __add__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_shape(other)
        return Matrix(self.ring, [
            [a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __sub__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_shape(other)
        return Matrix(self.ring, [
            [a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.rows, other.rows)
        ])

    def __neg__(self):
        return Matrix(self.ring, [[-e for e in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape()} by {other.shape()}")
            cols = list(zip(*other.rows))
            return Matrix(self.ring, [
                [_dot(self.ring, r, c) for c in cols] for r in self.rows
            ])
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        c = self.ring(c) if isinstance(c, (int, str)) else c
        return Matrix(self.ring, [[c * e for e in r] for r in self.rows])

    def __pow__(self, n: int):
        if not self.is_square():
            raise ValueError("power of a nonsquare matrix")
        if n < 0:
            return self.inverse() ** (-n)
        acc = Matrix.identity(self.ring, self.nrows)
        base = self
        while n:
            if n & 1:
                acc = acc * base
            base = base * base if n > 1 else base
            n >>= 1
        return acc

    def transpose(self):
        return Matrix(self.ring, [list(c) for c in zip(*self.rows)])

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a nonsquare matrix")
        t = self.ring.zero
        for i in range(self.nrows):
            t = t + self.rows[i][i]
        return t

    def map_entries(self, fn, new_ring=None):
        return Matrix(new_ring or self.ring, [[fn(e) for e in r] for r in self.rows])

    # -- elimination ---------------------------------------------------------

    def rref(self):
        """Reduced row echelon form; returns (matrix, pivot column list)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        rank = 0
        for col in range(self.ncols):
            sel = None
            for i in range(rank, self.nrows):
                if rows[i][col]:
                    sel = i
                    break
            if sel is None:
                continue
            rows[rank], rows[sel] = rows[sel], rows[rank]
            inv = self.ring.one / rows[rank][col]
            rows[rank] = [inv * e for e in rows[rank]]
            for i in range(self.nrows):
                if i != rank and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
            pivots.append(col)
            rank += 1
            if rank == self.nrows:
                break
        return Matrix(self.ring, rows), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self):
        if not self.is_square():
            raise ValueError("determinant of a nonsquare matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        det = self.ring.one
        for col in range(n):
            sel = None
            for i in range(col, n):
                if rows[i][col]:
                    sel = i
                    break
            if sel is None:
                return self.ring.zero
            if sel != col:
                rows[col], rows[sel] = rows[sel], rows[col]
                det = -det
            pivot = rows[col][col]
            det = det * pivot
            inv = self.ring.one / pivot
            for i in range(col + 1, n):
                if rows[i][col]:
                    f = rows[i][col] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
        return det

    def inverse(self):
        if not self.is_square():
            raise ValueError("inverse of a nonsquare matrix")
        n = self.nrows
        ident = Matrix.identity(self.ring, n)
        aug = Matrix(self.ring, [
            list(r) + list(ir) for r, ir in zip(self.rows, ident.rows)
        ])
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix(self.ring, [list(r[n:]) for r in red.rows])

    def solve(self, rhs: "Matrix"):
        """One solution of self * x = rhs (column rhs), or None."""
        if rhs.nrows != self.nrows:
            raise ValueError("rhs height mismatch")
        aug = Matrix(self.ring, [
            list(r) + list(br) for r, br in zip(self.rows, rhs.rows)
        ])
        red, pivots = aug.rref()
        rhs_cols = range(self.ncols, self.ncols + rhs.ncols)
        for p in pivots:
            if p in rhs_cols:
                return None
        z = self.ring.zero
        sol = [[z] * rhs.ncols for _ in range(self.ncols)]
        for row_idx, col in enumerate(pivots):
            for k, rc in enumerate(rhs_cols):
                sol[col][k] = red.rows[row_idx][rc]
        return Matrix(self.ring, sol)

    def kernel_basis(self) -> list["Matrix"]:
        """Column vectors spanning the right kernel."""
        red, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        z, o = self.ring.zero, self.ring.one
        for fcol in free:
            vec = [z] * self.ncols
            vec[fcol] = o
            for row_idx, pcol in enumerate(pivots):
                vec[pcol] = -red.rows[row_idx][fcol]
            basis.append(Matrix.column(self.ring, vec))
        return basis

    # -- comparison / display ------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape() == other.shape() and all(
            a == b for r1, r2 in zip(self.rows, other.rows) for a, b in zip(r1, r2)
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"[{body}]"


def _dot(ring, row, col):
    acc = ring.zero
    for a, b in zip(row, col):
        acc = acc + a * b
    return acc
