"""Exact integer matrices: fraction-free determinants, characteristic
polynomials and exterior powers.

Matrices here are tiny (exponent matrices of monomial maps, companion
matrices, their minor matrices), so everything favours exactness over
asymptotic speed.  The characteristic polynomial runs Bareiss
elimination over Z[x] on xI - M; divisions are exact by construction.
"""

from __future__ import annotations

from itertools import combinations

from .errors import DimensionError
from .intpoly import IntPoly


class IntMatrix:
    """Immutable row-major matrix of arbitrary-size integers."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise DimensionError("matrix must have at least one row and column")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError("ragged rows")
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0])

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, r, c):
        return cls(tuple((0,) * c for _ in range(r)))

    @classmethod
    def companion(cls, p):
        """Companion matrix of a monic IntPoly."""
        n = p.degree
        if n < 1 or p.leading != 1:
            raise DimensionError("companion matrix needs a monic polynomial of degree >= 1")
        rows = [[0] * n for _ in range(n)]
        for i in range(n - 1):
            rows[i][i + 1] = 1
        for j in range(n):
            rows[n - 1][j] = -p.coeffs[j]
        return cls(rows)

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    @property
    def is_square(self):
        return self.rows == self.cols

    def require_square(self):
        if not self.is_square:
            raise DimensionError(f"expected a square matrix, got {self.rows}x{self.cols}")

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("shape mismatch in addition")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(ra, rb))
                               for ra, rb in zip(self.entries, other.entries)))

    def __mul__(self, scalar):
        return IntMatrix(tuple(tuple(a * scalar for a in row) for row in self.entries))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionError("shape mismatch in product")
        bt = tuple(zip(*other.entries))
        return IntMatrix(tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                               for row in self.entries))

    def __pow__(self, n):
        self.require_square()
        if n < 0:
            raise DimensionError("negative matrix powers not supported")
        acc = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                acc = acc @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return acc

    def transpose(self):
        return IntMatrix(tuple(zip(*self.entries)))

    def apply(self, vec):
        """Matrix-vector product; accepts any numeric sequence."""
        if len(vec) != self.cols:
            raise DimensionError("vector length mismatch")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.entries)

    def row_sums(self):
        return tuple(sum(row) for row in self.entries)

    def max_abs(self):
        return max(abs(a) for row in self.entries for a in row)

    def is_nonnegative(self):
        return all(a >= 0 for row in self.entries for a in row)

    def __repr__(self):
        return "IntMatrix(" + "; ".join(" ".join(str(a) for a in r) for r in self.entries) + ")"


def det(m):
    """Exact determinant by fraction-free Bareiss elimination."""
    m.require_square()
    n = m.rows
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def char_poly(m):
    """det(xI - M) with exact integer coefficients.

    Bareiss elimination over Z[x].  Pivots are the characteristic
    polynomials of leading principal submatrices, which are monic and
    hence never zero, so no pivoting is required.
    """
    m.require_square()
    n = m.rows
    x = IntPoly.x()
    a = [[(x if i == j else IntPoly.zero()) - IntPoly([m.entries[i][j]])
          for j in range(n)] for i in range(n)]
    prev = IntPoly([1])
    for k in range(n - 1):
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.exact_div(prev)
        prev = a[k][k]
    return a[n - 1][n - 1]


def exterior_power(m, k):
    """Matrix of k x k minors on lexicographically ordered k-subsets.

    Row subsets select rows of `m`, column subsets select columns; the
    (R, C) entry is det of the corresponding submatrix.  k = 0 gives the
    1x1 matrix [1].
    """
    m.require_square()
    d = m.rows
    if not 0 <= k <= d:
        raise DimensionError(f"exterior power index {k} out of range 0..{d}")
    if k == 0:
        return IntMatrix(((1,),))
    subsets = list(combinations(range(d), k))
    out = []
    for rs in subsets:
        row = []
        for cs in subsets:
            sub = IntMatrix(tuple(tuple(m.entries[i][j] for j in cs) for i in rs))
            row.append(det(sub))
        out.append(tuple(row))
    return IntMatrix(tuple(out))


def eval_poly_at_matrix(p, m):
    """p(M) by Horner; used for Cayley-Hamilton style checks."""
    m.require_square()
    acc = IntMatrix.zero(m.rows, m.cols)
    for c in reversed(p.coeffs):
        acc = acc @ m + IntMatrix.identity(m.rows) * c
    return acc
