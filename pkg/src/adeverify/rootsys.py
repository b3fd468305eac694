"""Simply laced root systems in simple-root coordinates.

Roots are integer tuples giving coefficients over the simple roots, so the
i-th simple root is the i-th unit vector. The root set is produced by
closing the simple roots under the simple reflections; nothing is looked up
from per-type tables except the Dynkin diagram.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .exactla import Matrix

Root = tuple[int, ...]

_LABEL = re.compile(r"^\s*([ADE])\s*_?\s*(\d+)\s*$", re.IGNORECASE)


def parse_label(label: str) -> tuple[str, int]:
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"unrecognised Dynkin label {label!r}")
    family, rank = m.group(1).upper(), int(m.group(2))
    if family == "A" and rank >= 1:
        return family, rank
    if family == "D" and rank >= 4:
        return family, rank
    if family == "E" and rank in (6, 7, 8):
        return family, rank
    raise ValueError(f"unsupported type {family}{rank}")


def _edges(family: str, rank: int) -> list[tuple[int, int]]:
    """Dynkin diagram edges, Bourbaki numbering, 0-based."""
    if family == "A":
        return [(i, i + 1) for i in range(rank - 1)]
    if family == "D":
        return [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    # E_n: chain 1-3-4-5-...-n with node 2 attached to node 4
    chain = [0, 2] + list(range(3, rank))
    return list(zip(chain, chain[1:])) + [(1, 3)]


def cartan_matrix(family: str, rank: int) -> Matrix:
    adj = set()
    for i, j in _edges(family, rank):
        adj |= {(i, j), (j, i)}
    return Matrix.from_function(
        rank, rank, lambda i, j: 2 if i == j else (-1 if (i, j) in adj else 0)
    )


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    cartan: Matrix
    roots: tuple[Root, ...]
    weyl_gens: tuple[Matrix, ...] = field(repr=False)

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank))

    def pairing(self, a: Root, b: Root) -> int:
        c = self.cartan
        return sum(a[i] * c[i, j] * b[j] for i in range(self.rank) for j in range(self.rank)
                   if a[i] and b[j])

    def reflect(self, i: int, v: Root) -> Root:
        """s_i(v) = v - <v, alpha_i> alpha_i."""
        c = self.cartan
        k = sum(v[j] * c[j, i] for j in range(self.rank))
        return tuple(x - k if j == i else x for j, x in enumerate(v))

    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        return tuple(r for r in self.roots if all(x >= 0 for x in r))

    @cached_property
    def highest_root(self) -> Root:
        pos = self.positive_roots
        top = [r for r in pos if all(all(x >= y for x, y in zip(r, s)) for s in pos)]
        if len(top) != 1:
            raise AssertionError(f"{self.label}: no unique maximal root")
        return top[0]

    @cached_property
    def heights(self) -> "HeightTable":
        return HeightTable.of(self)

    @property
    def coxeter_number(self) -> int:
        return self.heights.max_height + 1


@dataclass(frozen=True)
class HeightTable:
    height: dict[Root, int]
    counts: tuple[int, ...]  # counts[k-1] = number of positive roots of height k

    @classmethod
    def of(cls, rs: RootSystem) -> HeightTable:
        ht = {r: sum(r) for r in rs.roots}
        tally = Counter(sum(r) for r in rs.positive_roots)
        top = max(tally)
        return cls(ht, tuple(tally[k] for k in range(1, top + 1)))

    @property
    def max_height(self) -> int:
        return len(self.counts)


@lru_cache(maxsize=None)
def build(label: str) -> RootSystem:
    family, rank = parse_label(label)
    cartan = cartan_matrix(family, rank)
    gens = tuple(
        Matrix.from_function(
            rank, rank,
            lambda r, c, i=i: int(r == c) - (cartan[c, i] if r == i else 0),
        )
        for i in range(rank)
    )
    # closure of the simple roots under simple reflections
    found: set[Root] = set()
    frontier = [tuple(int(i == j) for j in range(rank)) for i in range(rank)]
    found.update(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = g.apply(v)
                if w not in found:
                    found.add(w)
                    nxt.append(w)
        frontier = nxt
    roots = tuple(sorted(found, key=lambda r: (-sum(r), tuple(-x for x in r))))
    return RootSystem(family, rank, cartan, roots, gens)


def positive_roots(rs: RootSystem) -> tuple[Root, ...]:
    return rs.positive_roots


def highest_root(rs: RootSystem) -> Root:
    return rs.highest_root


def exponents(rs: RootSystem) -> tuple[int, ...]:
    """Exponents as the conjugate of the partition of positive roots by height."""
    counts = rs.heights.counts
    conj = [sum(1 for c in counts if c >= j) for j in range(1, counts[0] + 1)]
    return tuple(sorted(conj))


def invariant_degrees(rs: RootSystem) -> tuple[int, ...]:
    return tuple(e + 1 for e in exponents(rs))


def dim_v(rs: RootSystem) -> int:
    return len(rs.roots) // 2 + rs.rank


def classical_root_count(family: str, rank: int) -> int:
    if family == "A":
        return rank * (rank + 1)
    if family == "D":
        return 2 * rank * (rank - 1)
    return {6: 72, 7: 126, 8: 240}[rank]


def longest_element_word(rs: RootSystem) -> list[int]:
    """Reduced word for w0, found by walking -2rho into the dominant chamber."""
    two_rho = [sum(r[i] for r in rs.positive_roots) for i in range(rs.rank)]
    v = tuple(-x for x in two_rho)
    word = []
    c = rs.cartan
    while True:
        i = next(
            (i for i in range(rs.rank) if sum(v[j] * c[j, i] for j in range(rs.rank)) < 0),
            None,
        )
        if i is None:
            break
        v = rs.reflect(i, v)
        word.append(i)
    assert list(v) == two_rho
    return word


def word_matrix(rs: RootSystem, word: list[int]) -> Matrix:
    """Matrix of s_{w[0]} s_{w[1]} ... acting on root coordinates."""
    m = Matrix.identity(rs.rank)
    for i in word:
        m = m @ rs.weyl_gens[i]
    return m


def minus_one_in_weyl(rs: RootSystem) -> bool:
    w0 = word_matrix(rs, longest_element_word(rs))
    return w0 == -Matrix.identity(rs.rank)
