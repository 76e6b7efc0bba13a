"""The standard quadratic space and the invariants built from it.

Coordinates of a vector in dimension ``n = 2*nu (+1)`` are ordered
``x1, y1, ..., x_nu, y_nu (, z)``; this order fixes the rows of the
determinant ``D``.  All building blocks are returned over ZZ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

from .errors import UnsupportedDimension, WrongArity
from .polynomial import Polynomial, Variable, x, y, z
from .ring import ZZ, Ring

__all__ = [
    "QuadraticSpace",
    "SkewPolyMatrix",
    "quadratic_form",
    "bilinear_form",
    "determinant",
    "determinant_d",
    "pfaffian",
]


@dataclass(frozen=True)
class QuadraticSpace:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise UnsupportedDimension(f"dimension must be at least 2, got {self.n}")

    @property
    def nu(self) -> int:
        return self.n // 2

    @property
    def odd(self) -> bool:
        return self.n % 2 == 1

    @cached_property
    def letters(self) -> tuple[tuple[str, int], ...]:
        """Coordinate letters ``(kind, pair)`` in basis order."""
        out = []
        for r in range(1, self.nu + 1):
            out += [("x", r), ("y", r)]
        if self.odd:
            out.append(("z", 0))
        return tuple(out)

    def coordinate(self, letter: tuple[str, int], slot: int) -> Variable:
        kind, r = letter
        if kind == "x":
            return x(r, slot)
        if kind == "y":
            return y(r, slot)
        if kind == "z":
            return z(slot)
        raise ValueError(f"unknown coordinate letter {letter!r}")

    def coordinates(self, slot: int) -> list[Variable]:
        return [self.coordinate(letter, slot) for letter in self.letters]

    def contains(self, v: Variable) -> bool:
        if v.kind == "z":
            return self.odd
        return v.kind in "xy" and 1 <= v.pair <= self.nu


def quadratic_form(space: QuadraticSpace, i: int, ring: Ring = ZZ) -> Polynomial:
    """Q^(i) = x1 y1 + ... + x_nu y_nu (+ z^2) in the coordinates of slot i."""
    terms = {}
    for r in range(1, space.nu + 1):
        terms[((x(r, i), 1), (y(r, i), 1))] = 1
    if space.odd:
        terms[((z(i), 2),)] = 1
    return Polynomial(terms, ring)


def bilinear_form(space: QuadraticSpace, i: int, j: int, ring: Ring = ZZ) -> Polynomial:
    """B^(ij), the polar form of q evaluated at slots i and j."""
    p = Polynomial.zero(ring)
    for r in range(1, space.nu + 1):
        p = p + Polynomial.var(x(r, i), ring) * Polynomial.var(y(r, j), ring)
        p = p + Polynomial.var(y(r, i), ring) * Polynomial.var(x(r, j), ring)
    if space.odd:
        p = p + 2 * (Polynomial.var(z(i), ring) * Polynomial.var(z(j), ring))
    return p


def determinant(matrix: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant by row expansion, memoised on the used-column mask."""
    size = len(matrix)
    if size == 0:
        return Polynomial.one()
    ring = matrix[0][0].ring
    if any(len(row) != size for row in matrix):
        raise WrongArity("determinant needs a square matrix")
    memo: dict[int, Polynomial] = {}

    def minor(row: int, used: int) -> Polynomial:
        if row == size:
            return Polynomial.one(ring)
        hit = memo.get(used)
        if hit is not None:
            return hit
        acc = Polynomial.zero(ring)
        sign = 1
        for col in range(size):
            if used >> col & 1:
                continue
            entry = matrix[row][col]
            if entry:
                term = entry * minor(row + 1, used | 1 << col)
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[used] = acc
        return acc

    return minor(0, 0)


def determinant_d(space: QuadraticSpace, slots: Sequence[int], ring: Ring = ZZ) -> Polynomial:
    """D^(i1..in): determinant of the matrix with columns v^(i1), ..., v^(in)."""
    slots = tuple(slots)
    if len(slots) != space.n:
        raise WrongArity(f"D needs exactly {space.n} slots, got {len(slots)}")
    rows = [
        [Polynomial.var(space.coordinate(letter, i), ring) for i in slots]
        for letter in space.letters
    ]
    return determinant(rows)


@dataclass(frozen=True)
class SkewPolyMatrix:
    """Skew-symmetric matrix stored by its strict upper triangle.

    ``upper[(i, j)]`` with ``0 <= i < j < size``; missing entries are zero.
    """

    size: int
    upper: Mapping[tuple[int, int], Polynomial] = field(default_factory=dict)
    ring: Ring = ZZ

    def __post_init__(self):
        if self.size < 0:
            raise ValueError("size must be non-negative")
        for i, j in self.upper:
            if not 0 <= i < j < self.size:
                raise ValueError(f"upper-triangle index out of range: {(i, j)}")

    def entry(self, i: int, j: int) -> Polynomial:
        if i == j:
            return Polynomial.zero(self.ring)
        if i < j:
            return self.upper.get((i, j), Polynomial.zero(self.ring))
        return -self.upper.get((j, i), Polynomial.zero(self.ring))

    def dense(self) -> list[list[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.size)] for i in range(self.size)]

    def permuted(self, perm: Sequence[int]) -> SkewPolyMatrix:
        """Matrix with rows and columns reordered: new index k is old perm[k]."""
        upper = {}
        for a in range(self.size):
            for b in range(a + 1, self.size):
                e = self.entry(perm[a], perm[b])
                if e:
                    upper[(a, b)] = e
        return SkewPolyMatrix(self.size, upper, self.ring)


def pfaffian(matrix: SkewPolyMatrix, indices: Sequence[int] | None = None, memo: dict | None = None) -> Polynomial:
    """Pfaffian by expansion along the first row, memoised on index subsets.

    ``indices`` restricts to a principal submatrix (taken in ascending order);
    passing the same ``memo`` across calls shares subresults between
    overlapping submatrices.
    """
    ring = matrix.ring
    if indices is None:
        mask = (1 << matrix.size) - 1
    else:
        mask = 0
        for i in indices:
            mask |= 1 << i
    if memo is None:
        memo = {}

    def pf(mask: int) -> Polynomial:
        if mask == 0:
            return Polynomial.one(ring)
        hit = memo.get(mask)
        if hit is not None:
            return hit
        if bin(mask).count("1") % 2:
            memo[mask] = res = Polynomial.zero(ring)
            return res
        first = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << first)
        acc = Polynomial.zero(ring)
        sign = 1
        bits = rest
        while bits:
            j = (bits & -bits).bit_length() - 1
            bits &= bits - 1
            a = matrix.entry(first, j)
            if a:
                term = a * pf(rest & ~(1 << j))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        memo[mask] = acc
        return acc

    return pf(mask)
