"""The F2[W]-module N_L = image(L/2L -> L^v/2L^v) and component groups.

L is the root lattice in simple-root coordinates and L^v is identified with
Z^r via the dual (fundamental coweight) basis, so the map L -> L^v is the
Cartan matrix. A simple reflection acts on L^v/2L^v by the transpose of its
matrix on L (mod 2 the inverse transpose equals the transpose).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .exactla import F2Matrix, F2Span, f2_nullspace, f2_rank, smith_normal_form
from .exactla.gf2 import pack
from .rootsys import RootSystem, build


class UnsupportedType(ValueError):
    pass


@dataclass(frozen=True)
class Mod2Module:
    """N_L with coordinates taken in ``basis`` (packed vectors of L^v/2L^v).

    ``gens[i]`` is the action of the i-th simple reflection on N_L,
    ``pairing`` the Gram matrix of the induced form on the basis, and
    ``proj`` the dim x rank matrix of L/2L -> N_L.
    """

    rs: RootSystem
    basis: tuple[int, ...]
    basis_roots: tuple[int, ...]
    gens: tuple[F2Matrix, ...]
    pairing: F2Matrix
    proj: F2Matrix

    @property
    def ambient_dim(self) -> int:
        return self.rs.rank

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 2 ** self.dim

    @cached_property
    def ambient_gens(self) -> tuple[F2Matrix, ...]:
        """Simple reflections on L^v/2L^v (transposed reflection matrices mod 2)."""
        return tuple(F2Matrix.from_matrix(g).T for g in self.rs.weyl_gens)

    def project(self, root) -> int:
        """Coordinates in N_L of a lattice vector given in simple-root coordinates."""
        return self.proj.apply(pack(x % 2 for x in root))


def cartan_mod2(rs: RootSystem) -> F2Matrix:
    return F2Matrix.from_matrix(rs.cartan)


def n_lattice(rs: RootSystem, *, allow_a1: bool = False) -> Mod2Module:
    if rs.label == "A1" and not allow_a1:
        raise UnsupportedType("N_L is not considered for type A1")
    r = rs.rank
    c2 = cartan_mod2(rs)
    columns = c2.columns()  # images of the simple roots
    span = F2Span(r)
    picked = []
    for i, col in enumerate(columns):
        if span.add(col):
            picked.append(i)
    basis = tuple(span.basis)
    dim = len(basis)

    def in_coords(v: int) -> int:
        return span.coords(v)

    ambient = tuple(F2Matrix.from_matrix(g).T for g in rs.weyl_gens)
    gens = tuple(
        F2Matrix.from_columns([in_coords(g.apply(b)) for b in basis], dim) for g in ambient
    )
    # <C u, C v> = u^T C v; on the basis (images of picked simple roots) this is C[picked, picked]
    pairing = F2Matrix.from_rows(
        [[rs.cartan[i, j] % 2 for j in picked] for i in picked], dim
    )
    proj = F2Matrix.from_columns([in_coords(col) for col in columns], dim)
    return Mod2Module(rs, basis, tuple(picked), gens, pairing, proj)


def check_no_invariants(mod: Mod2Module) -> bool:
    """True iff no nonzero vector of L^v/2L^v is fixed by every simple reflection."""
    r = mod.ambient_dim
    stacked = []
    for g in mod.ambient_gens:
        stacked.extend((g + F2Matrix.identity(r)).bits)
    return not f2_nullspace(F2Matrix(stacked, r))


def orbit_span_dim(mod: Mod2Module, v: int) -> int:
    span = F2Span(mod.dim)
    span.add(v)
    frontier = [v]
    while frontier:
        nxt = []
        for u in frontier:
            for g in mod.gens:
                w = g.apply(u)
                if span.add(w):
                    nxt.append(w)
        frontier = nxt
    return len(span)


def commutant_dim(mod: Mod2Module) -> int:
    """dim over F2 of {X : X g = g X for every generator g}."""
    d = mod.dim
    # unknown X flattened row-major: bit (a*d + b) is X[a, b]
    columns = []
    for a in range(d):
        for b in range(d):
            e = F2Matrix([(1 << b) if i == a else 0 for i in range(d)], d)
            image = []
            for g in mod.gens:
                comm = e @ g + g @ e
                image.extend(comm.bits)
            columns.append(sum(bits << (k * d) for k, bits in enumerate(image)))
    rows_total = len(mod.gens) * d * d
    system = F2Matrix.from_columns(columns, rows_total)
    return len(f2_nullspace(system))


def check_absolutely_irreducible(mod: Mod2Module) -> bool:
    """Every nonzero vector generates N_L, and the commutant is F2 (Schur)."""
    if mod.dim == 0:
        return False
    for v in range(1, 2 ** mod.dim):
        if orbit_span_dim(mod, v) != mod.dim:
            return False
    return commutant_dim(mod) == 1


@dataclass(frozen=True)
class AnisotropicElement:
    word: tuple[int, ...]
    matrix: F2Matrix
    rank_w_minus_1: int


def anisotropic_element(mod: Mod2Module) -> AnisotropicElement:
    """Product of the reflections in a greedy simple-root set S_M spanning N_L."""
    word = mod.basis_roots
    if len(word) != mod.dim:
        raise AssertionError("simple roots failed to span N_L")
    w = F2Matrix.identity(mod.dim)
    for i in word:
        w = w @ mod.gens[i]
    rk = f2_rank(w + F2Matrix.identity(mod.dim))
    if rk != mod.dim:
        raise AssertionError(f"{mod.rs.label}: Coxeter element of S_M has fixed points on N_L")
    return AnisotropicElement(word, w, rk)


@dataclass(frozen=True)
class ComponentGroup:
    divisors: tuple[int, ...]  # elementary divisors of pi_1(H) = coker(Cartan), all > 1
    two_rank: int

    @property
    def order(self) -> int:
        return 2 ** self.two_rank

    @property
    def marked_points(self) -> int:
        return self.two_rank + 1

    @property
    def pi1_order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def describe(self) -> str:
        if self.two_rank == 0:
            return "1"
        return " x ".join(["Z/2"] * self.two_rank)


def component_group(rs: RootSystem) -> ComponentGroup:
    snf = smith_normal_form(rs.cartan)
    torsion = tuple(d for d in snf.divisors if d > 1)
    return ComponentGroup(torsion, sum(1 for d in torsion if d % 2 == 0))


def genus(rs: RootSystem) -> int:
    d = f2_rank(cartan_mod2(rs))
    if d % 2:
        raise AssertionError(f"{rs.label}: N_L has odd dimension {d}")
    return d // 2


def roots_nonzero_in_n(rs: RootSystem) -> bool:
    c2 = cartan_mod2(rs)
    return all(c2.apply(pack(x % 2 for x in root)) for root in rs.roots)


@dataclass(frozen=True)
class DerivedConstants:
    tamagawa: int        # 2^m
    selmer_bound: int    # 3 * 2^(m-1)
    pi1_g_order: int     # 2 * #pi_0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.tamagawa, self.selmer_bound, self.pi1_g_order


def derived_constants(rs: RootSystem) -> DerivedConstants:
    cg = component_group(rs)
    m = cg.marked_points
    return DerivedConstants(2 ** m, 3 * 2 ** (m - 1), 2 * cg.order)


@dataclass(frozen=True)
class MonodromyReport:
    label: str
    dim: int
    no_invariants: bool
    absolutely_irreducible: bool
    anisotropic_word: tuple[int, ...]
    anisotropic_rank: int
    pairing_nondegenerate: bool
    roots_nonzero: bool

    @property
    def passed(self) -> bool:
        return (self.no_invariants and self.absolutely_irreducible and self.pairing_nondegenerate
                and self.roots_nonzero and self.anisotropic_rank == self.dim)


def monodromy_report(label: str) -> MonodromyReport:
    rs = build(label)
    mod = n_lattice(rs)
    aniso = anisotropic_element(mod)
    return MonodromyReport(
        rs.label,
        mod.dim,
        check_no_invariants(mod),
        check_absolutely_irreducible(mod),
        aniso.word,
        aniso.rank_w_minus_1,
        f2_rank(mod.pairing) == mod.dim,
        roots_nonzero_in_n(rs),
    )
