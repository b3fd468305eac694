"""Dense exact matrices over the integers and the rationals."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Callable, Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _normalize(value: Scalar) -> Scalar:
    if isinstance(value, bool):
        return int(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return _normalize(Fraction(value.numerator, value.denominator))
    raise TypeError(f"inexact matrix entry {value!r}")


class Matrix:
    """Immutable row-major matrix with ``int`` or ``Fraction`` entries.

    Fractions with denominator one are stored as plain ``int`` so that
    integer matrices stay integral through ring operations, and equality
    is exact.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Iterable[Iterable[Scalar]], cols: int | None = None):
        data = tuple(tuple(_normalize(x) for x in row) for row in rows)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(data)
        self.cols = cols
        self._data = data

    # construction -----------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls(((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(((1 if i == j else 0) for j in range(n)) for i in range(n))

    @classmethod
    def from_function(cls, rows: int, cols: int, fn: Callable[[int, int], Scalar]) -> Matrix:
        return cls(((fn(i, j) for j in range(cols)) for i in range(rows)), cols)

    @classmethod
    def diagonal(cls, entries: Sequence[Scalar]) -> Matrix:
        n = len(entries)
        return cls.from_function(n, n, lambda i, j: entries[i] if i == j else 0)

    @classmethod
    def block(cls, blocks: Sequence[Sequence[Matrix]]) -> Matrix:
        out = []
        for brow in blocks:
            height = brow[0].rows
            for i in range(height):
                out.append([x for b in brow for x in b._data[i]])
        return cls(out)

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self._data[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    def is_integral(self) -> bool:
        return all(isinstance(x, int) for r in self._data for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.shape, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.tolist()!r})"

    # arithmetic -------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            (a + b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        )

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix(
            (a - b for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)
        )

    def __neg__(self) -> Matrix:
        return Matrix((-a for a in r) for r in self._data)

    def scale(self, c: Scalar) -> Matrix:
        return Matrix((c * a for a in r) for r in self._data)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._data)) if other.rows else [()] * other.cols
        return Matrix(
            (
                (sum(a * b for a, b in zip(r, c) if a and b) for c in cols)
                for r in self._data
            ),
            other.cols,
        )

    def apply(self, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_normalize(sum(a * b for a, b in zip(r, vec))) for r in self._data)

    def transpose(self) -> Matrix:
        return Matrix(zip(*self._data), self.rows) if self.rows else Matrix.zeros(0, 0)

    T = property(transpose)

    def trace(self) -> Scalar:
        self._require_square()
        return sum(self._data[i][i] for i in range(self.rows))

    def __pow__(self, k: int) -> Matrix:
        self._require_square()
        result = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def mod(self, p: int) -> Matrix:
        if not self.is_integral():
            raise ValueError("reduction mod p needs an integer matrix")
        return Matrix((a % p for a in r) for r in self._data)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix(((self._data[i][j] for j in cols) for i in rows), len(cols))

    def det(self) -> Scalar:
        """Determinant by Bareiss fraction-free elimination."""
        self._require_square()
        n = self.rows
        if n == 0:
            return 1
        if self.is_integral():
            a = [list(r) for r in self._data]
            denom = 1
        else:
            # scale each row to integers, undo at the end
            a, denom = [], 1
            for r in self._data:
                lcm = 1
                for x in r:
                    if isinstance(x, Fraction):
                        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
                a.append([int(x * lcm) for x in r])
                denom *= lcm
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            akk = a[k][k]
            for i in range(k + 1, n):
                aik = a[i][k]
                row_i, row_k = a[i], a[k]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            prev = akk
        return _normalize(Fraction(sign * a[n - 1][n - 1], denom))

    # helpers ------------------------------------------------------------

    def _require_square(self) -> None:
        if not self.is_square:
            raise ValueError(f"square matrix required, got {self.shape}")

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)

