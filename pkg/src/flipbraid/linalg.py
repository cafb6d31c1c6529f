"""Dense exact linear algebra over the rationals.

Scalars are ``fractions.Fraction`` throughout: always reduced, denominator
positive, so equality is plain structural equality and no rounding ever
occurs.  Matrices are immutable; all operations return new values and are
safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(value) -> Fraction:
    """Coerce ints / 'p/q' strings / Fractions to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render as 'p/q', or bare 'p' when the denominator is 1."""
    return str(value)


class DimensionError(ValueError):
    """Matrix dimensions do not admit the requested operation."""


class SingularMatrixError(ValueError):
    """Inverse requested for a singular matrix."""


class Matrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, entries: Iterable[Iterable]):
        grid = tuple(tuple(as_rational(e) for e in row) for row in entries)
        if not grid or not grid[0]:
            raise DimensionError("matrix must have at least one row and column")
        width = len(grid[0])
        if any(len(row) != width for row in grid):
            raise DimensionError("ragged rows")
        self.rows = len(grid)
        self.cols = width
        self._entries = grid

    @staticmethod
    def identity(n: int) -> "Matrix":
        one, zero = Fraction(1), Fraction(0)
        return Matrix([[one if i == j else zero for j in range(n)]
                       for i in range(n)])

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return Matrix([[z] * cols for _ in range(rows)])

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._entries[i][j]

    def row(self, i: int) -> tuple:
        return self._entries[i]

    def entries(self) -> tuple:
        return self._entries

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix)
                and self._entries == other._entries)

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(format_rational(e) for e in row)
            for row in self._entries)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __mul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def is_identity(self) -> bool:
        return (self.rows == self.cols
                and all(self._entries[i][j] == (1 if i == j else 0)
                        for i in range(self.rows) for j in range(self.cols)))

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self._entries))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise DimensionError(f"trace of {self.rows}x{self.cols} matrix")
        return sum((self._entries[i][i] for i in range(self.rows)),
                   Fraction(0))

    def scaled(self, factor) -> "Matrix":
        f = as_rational(factor)
        return Matrix([[e * f for e in row] for row in self._entries])

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(
                f"cannot add {self.rows}x{self.cols} and "
                f"{other.rows}x{other.cols}")
        return Matrix([[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self._entries, other._entries)])

    def column_sums(self) -> list:
        return [sum((row[j] for row in self._entries), Fraction(0))
                for j in range(self.cols)]

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[format_rational(e) for e in row]
                        for row in self._entries],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "Matrix":
        m = Matrix(data["entries"])
        if (m.rows, m.cols) != (data["rows"], data["cols"]):
            raise DimensionError("declared shape does not match entries")
        return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact matrix product."""
    if a.cols != b.rows:
        raise DimensionError(
            f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = tuple(zip(*b.entries()))
    return Matrix([[sum(x * y for x, y in zip(row, col))
                    for col in bt] for row in a.entries()])


def mat_inverse(a: Matrix) -> Matrix:
    """Inverse by exact Gauss-Jordan elimination, first-nonzero pivoting."""
    if a.rows != a.cols:
        raise DimensionError(f"inverse of {a.rows}x{a.cols} matrix")
    n = a.rows
    work = [list(a.row(i)) + [Fraction(i == j) for j in range(n)]
            for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            raise SingularMatrixError("singular matrix")
        work[col], work[pivot] = work[pivot], work[col]
        inv = 1 / work[col][col]
        work[col] = [e * inv for e in work[col]]
        prow = work[col]
        for r in range(n):
            if r != col and work[r][col] != 0:
                f = work[r][col]
                work[r] = [e - f * p for e, p in zip(work[r], prow)]
    return Matrix([row[n:] for row in work])


def char_poly(a: Matrix) -> list:
    """Monic characteristic polynomial coefficients, highest degree first.

    Faddeev-LeVerrier recurrence in exact arithmetic; for an n x n matrix
    returns [1, c_{n-1}, ..., c_0] with trace(a) == -c_{n-1}.
    """
    if a.rows != a.cols:
        raise DimensionError(f"char_poly of {a.rows}x{a.cols} matrix")
    n = a.rows
    coeffs = [Fraction(1)]
    m = a
    for step in range(1, n + 1):
        c = -m.trace() / step
        coeffs.append(c)
        if step < n:
            m = mat_mul(a, m + Matrix.identity(n).scaled(c))
    return coeffs


def poly_eval_matrix(coeffs: Sequence, m: Matrix) -> Matrix:
    """Evaluate a polynomial (highest degree first) at a square matrix."""
    acc = Matrix.zero(m.rows, m.cols)
    for c in coeffs:
        acc = mat_mul(acc, m) + Matrix.identity(m.rows).scaled(c)
    return acc
