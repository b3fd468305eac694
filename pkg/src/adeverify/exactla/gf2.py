"""Linear algebra over GF(2) with rows packed into Python ints.

Bit ``j`` of a row integer is the entry in column ``j``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .matrix import Matrix


class F2Matrix:
    __slots__ = ("rows", "cols", "bits")

    def __init__(self, bits: Sequence[int], cols: int):
        mask = (1 << cols) - 1
        self.bits: tuple[int, ...] = tuple(b & mask for b in bits)
        self.rows = len(self.bits)
        self.cols = cols

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> F2Matrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls([pack(r) for r in rows], cols)

    @classmethod
    def from_matrix(cls, m: Matrix) -> F2Matrix:
        return cls.from_rows((x % 2 for x in r) for r in m.mod(2)) if m.rows else cls([], m.cols)

    @classmethod
    def identity(cls, n: int) -> F2Matrix:
        return cls([1 << i for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> F2Matrix:
        return cls([0] * rows, cols)

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> F2Matrix:
        """Build from packed column vectors (bit i = row i)."""
        return cls(
            [sum(((c >> i) & 1) << j for j, c in enumerate(columns)) for i in range(rows)],
            len(columns),
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return (self.bits[i] >> j) & 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, F2Matrix):
            return NotImplemented
        return self.shape == other.shape and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.cols, self.bits))

    def __repr__(self) -> str:
        return f"F2Matrix({self.tolist()!r})"

    def tolist(self) -> list[list[int]]:
        return [unpack(b, self.cols) for b in self.bits]

    def column(self, j: int) -> int:
        return sum(((b >> j) & 1) << i for i, b in enumerate(self.bits))

    def columns(self) -> list[int]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> F2Matrix:
        return F2Matrix(self.columns(), self.rows)

    T = property(transpose)

    def __add__(self, other: F2Matrix) -> F2Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return F2Matrix([a ^ b for a, b in zip(self.bits, other.bits)], self.cols)

    __sub__ = __add__

    def apply(self, vec: int) -> int:
        """Matrix times packed column vector."""
        return sum((parity(b & vec)) << i for i, b in enumerate(self.bits))

    def __matmul__(self, other: F2Matrix) -> F2Matrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for b in self.bits:
            acc = 0
            j = 0
            while b:
                if b & 1:
                    acc ^= other.bits[j]
                b >>= 1
                j += 1
            out.append(acc)
        return F2Matrix(out, other.cols)

    def is_zero(self) -> bool:
        return not any(self.bits)

    def rank(self) -> int:
        return f2_rank(self)

    def nullspace(self) -> list[int]:
        return f2_nullspace(self)


def pack(entries: Iterable[int]) -> int:
    return sum((int(x) & 1) << j for j, x in enumerate(entries))


def unpack(bits: int, length: int) -> list[int]:
    return [(bits >> j) & 1 for j in range(length)]


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def echelon(bits: Sequence[int], cols: int) -> tuple[list[int], list[int]]:
    """Reduced echelon rows and pivot columns, scanning columns left to right."""
    work = [b for b in bits if b]
    pivots: list[int] = []
    r = 0
    for col in range(cols):
        bit = 1 << col
        piv = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        pivots.append(col)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def f2_rank(m: F2Matrix) -> int:
    return len(echelon(m.bits, m.cols)[1])


def f2_nullspace(m: F2Matrix) -> list[int]:
    """Basis of {x : m x = 0} as packed column vectors, one per free column."""
    red, pivots = echelon(m.bits, m.cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, pc in zip(red, pivots):
            if (row >> f) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def span_rank(vectors: Iterable[int], length: int) -> int:
    return len(echelon(list(vectors), length)[1])


class F2Span:
    """Incrementally grown subspace of GF(2)^length with coordinate solving."""

    def __init__(self, length: int):
        self.length = length
        self.basis: list[int] = []
        # reduced rows keyed by pivot bit, each tagged with its combination of basis indices
        self._rows: dict[int, tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self.basis)

    def _reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        for pivot, (row, tag) in self._rows.items():
            if v & pivot:
                v ^= row
                combo ^= tag
        return v, combo

    def add(self, v: int) -> bool:
        """Insert v; return True when it enlarged the span."""
        red, combo = self._reduce(v)
        if not red:
            return False
        idx = len(self.basis)
        self.basis.append(v)
        tag = combo ^ (1 << idx)
        pivot = red & -red
        # keep rows fully reduced against the new pivot
        for p, (row, t) in list(self._rows.items()):
            if row & pivot:
                self._rows[p] = (row ^ red, t ^ tag)
        self._rows[pivot] = (red, tag)
        return True

    def __contains__(self, v: int) -> bool:
        return self._reduce(v)[0] == 0

    def coords(self, v: int) -> int:
        """Coordinates of v in ``basis`` (bit k = coefficient of basis[k])."""
        red, combo = self._reduce(v)
        if red:
            raise ValueError("vector not in span")
        return combo
