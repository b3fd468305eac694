"""Univariate polynomials with exact integer or rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .matrix import Matrix, Scalar, _normalize


class Poly:
    """Polynomial stored as ascending coefficients, trailing zeros stripped.

    ``Poly([c0, c1, c2])`` is ``c0 + c1*x + c2*x**2``. The zero polynomial
    has an empty coefficient tuple and degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [_normalize(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Scalar, ...] = tuple(c)

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def constant(cls, c: Scalar) -> Poly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar]) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Scalar:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c == 1:
                terms.append(f"+ {mono}")
            elif mono and c == -1:
                terms.append(f"- {mono}")
            else:
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign} {abs(c)}{'*' + mono if mono else ''}")
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # ring operations ----------------------------------------------------

    def __add__(self, other: Poly | Scalar) -> Poly:
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other: Poly | Scalar) -> Poly:
        return self + (-_as_poly(other))

    def __rsub__(self, other: Scalar) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other: Poly | Scalar) -> Poly:
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        """Euclidean division over the rationals."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        quo = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lc = Fraction(other.lc)
        for k in range(len(rem) - 1, other.degree - 1, -1):
            c = rem[k] / lc
            if c:
                shift = k - other.degree
                quo[shift] = c
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] -= c * b
        return Poly(quo), Poly(rem[: other.degree] if other.degree > 0 else [])

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    # evaluation ---------------------------------------------------------

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def eval_matrix(self, m: Matrix) -> Matrix:
        """Substitute a square matrix for x (Horner's rule)."""
        n = m.rows
        acc = Matrix.zeros(n)
        ident = Matrix.identity(n)
        for c in reversed(self.coeffs):
            acc = acc @ m + ident.scale(c)
        return acc

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k)

    def compose_square(self) -> Poly:
        """Return p(x**2)."""
        out = [0] * (2 * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return Poly(out)

    def monic(self) -> Poly:
        lc = Fraction(self.lc)
        return Poly(Fraction(c) / lc for c in self.coeffs)

    def primitive(self) -> Poly:
        """Scale to an integer polynomial with content 1 and positive leading term."""
        if self.is_zero():
            return self
        den = 1
        for c in self.coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // _igcd(den, c.denominator)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for c in ints:
            g = _igcd(g, c)
        sign = 1 if ints[-1] > 0 else -1
        return Poly(sign * c // g for c in ints)

    def mod_p(self, p: int) -> list[int]:
        if not self.is_integral():
            raise ValueError("reduction mod p needs integer coefficients")
        return [c % p for c in self.coeffs]


def _as_poly(value: Poly | Scalar) -> Poly:
    return value if isinstance(value, Poly) else Poly([value])


def _igcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd over the rationals (zero if both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def charpoly(m: Matrix) -> Poly:
    """Characteristic polynomial det(xI - m) via Faddeev-LeVerrier.

    Every division ``tr(...)/k`` is exact for integer input, so integer
    matrices never leave the integers.
    """
    if not m.is_square:
        raise ValueError(f"charpoly needs a square matrix, got {m.shape}")
    n = m.rows
    coeffs: list[Scalar] = [0] * (n + 1)
    coeffs[n] = 1
    integral = m.is_integral()
    ident = Matrix.identity(n)
    mk = Matrix.zeros(n)
    c_prev: Scalar = 1
    for k in range(1, n + 1):
        mk = m @ (mk + ident.scale(c_prev))
        tr = mk.trace()
        if integral:
            q, r = divmod(-tr, k)
            assert r == 0, "Faddeev-LeVerrier division must be exact"
            c_prev = q
        else:
            c_prev = Fraction(-tr) / k
        coeffs[n - k] = c_prev
    return Poly(coeffs)


def resultant(a: Poly, b: Poly) -> Scalar:
    """Res(a, b) by the Euclidean recursion over the rationals.

    Uses Res(a, b) = (-1)^(deg a * deg b) * lc(b)^(deg a - deg r) * Res(b, r)
    with r = a mod b.
    """
    if a.is_zero() or b.is_zero():
        return 0
    result = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if db == 0:
            return _normalize(result * Fraction(b.lc) ** da)
        r = a % b
        if r.is_zero():
            return 0
        if (da * db) % 2:
            result = -result
        result *= Fraction(b.lc) ** (da - r.degree)
        a, b = b, r


def poly_disc(p: Poly) -> Scalar:
    """Discriminant (-1)^(d(d-1)/2) Res(p, p') / lc(p)."""
    d = p.degree
    if d < 1:
        raise ValueError("discriminant of a constant polynomial is undefined")
    if d == 1:
        return 1
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return _normalize(sign * Fraction(resultant(p, p.derivative())) / p.lc)
