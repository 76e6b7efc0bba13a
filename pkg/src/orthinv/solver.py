"""Brute-force GF(2) computation of multilinear invariant spaces.

Why multilinear linear algebra decides indecomposability
--------------------------------------------------------
The group acts diagonally and linearly on the vector slots, so it preserves
the slot multidegree; the multihomogeneous components of an invariant are
invariants.  Take an m-linear invariant in the subalgebra generated by
invariants of lower degree and write it as a combination of products of
multihomogeneous invariants.  Only products whose multidegrees add up to
(1, ..., 1) contribute, and such a product is a product of block-multilinear
invariants over a set partition of {1..m}; a product contributing in degree
m with a factor of degree < m has at least two nonconstant factors, i.e. the
partition is proper.  So the m-linear part of that subalgebra is exactly the
span of block products over proper set partitions, which is what
:func:`decomposable_subspace` computes.  A mod-2 reduction of an integer
decomposition is a decomposition mod 2, so a non-member mod 2 is also
indecomposable over ZZ.

Invariant spaces are kernels of the linear conditions "every L-coefficient of
sigma(p) - p vanishes" over the multilinear monomials, one block of
conditions per generator.  The torus condition (weight zero) is applied by
dropping non-zero-weight monomials up front, unless ``weight_zero=False``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .constructions import FamilySpec, construct
from .errors import TooLarge, UnsupportedDimension
from .gf2 import GF2Matrix, pack_columns, unpack_columns
from .group import GeneratorSubstitution, check_invariance, generator_family, INVARIANT
from .partitions import perfect_matchings, set_partitions
from .polynomial import Monomial, Polynomial, s, t, z
from .quadratic import QuadraticSpace, bilinear_form
from .ring import GF2

__all__ = [
    "DEFAULT_CEILING",
    "default_ceiling",
    "MultilinearColumns",
    "InvariantBasis",
    "Certificate",
    "AuditReport",
    "multilinear_invariant_basis",
    "decomposable_subspace",
    "indecomposability_certificate",
    "indecomposable_range",
    "multiplicity_in_xy",
    "multiplicity_in_s",
    "to_ts_coordinates",
    "substitute_z_for_top_pair",
    "lemma_bound_audit",
    "matching_products",
]

DEFAULT_CEILING = 2**14


def default_ceiling() -> int:
    env = os.environ.get("INVARIANT_CEILING")
    return int(env) if env else DEFAULT_CEILING


def _check_size(n: int, m: int, ceiling: int | None):
    ceiling = default_ceiling() if ceiling is None else ceiling
    if n**m > ceiling:
        raise TooLarge(f"n**m = {n}**{m} = {n**m} exceeds the ceiling {ceiling}")


class MultilinearColumns:
    """Index of the m-linear monomials used as coordinates.

    A monomial is stored as a word: the letter index (position in
    ``space.letters``) carried by each slot.
    """

    def __init__(self, space: QuadraticSpace, m: int, weight_zero: bool = True, ceiling: int | None = None):
        _check_size(space.n, m, ceiling)
        self.space = space
        self.m = m
        self.weight_zero = weight_zero
        letters = space.letters
        self._vars = [[space.coordinate(letter, slot) for letter in letters] for slot in range(1, m + 1)]
        words = []
        for word in itertools.product(range(space.n), repeat=m):
            if weight_zero and not _balanced(word, space.nu):
                continue
            words.append(word)
        self.words = words
        self.index = {w: k for k, w in enumerate(words)}

    def __len__(self):
        return len(self.words)

    @property
    def ncols(self) -> int:
        return len(self.words)

    def monomial(self, col: int) -> Monomial:
        return tuple((self._vars[k][letter], 1) for k, letter in enumerate(self.words[col]))

    def word_of(self, mono: Monomial) -> tuple[int, ...]:
        word = []
        for slot, (v, e) in enumerate(mono, start=1):
            if e != 1 or v.slot != slot:
                raise ValueError("monomial is not multilinear in slots 1..m")
            word.append(self.space.n - 1 if v.kind == "z" else 2 * (v.pair - 1) + (v.kind == "y"))
        if len(word) != self.m:
            raise ValueError("monomial is not multilinear in slots 1..m")
        return tuple(word)

    def to_vector(self, p: Polynomial) -> np.ndarray:
        """Packed GF(2) coefficient vector; raises KeyError off the column set."""
        cols = []
        for mono, c in p.items():
            if c % 2:
                cols.append(self.index[self.word_of(mono)])
        return pack_columns(cols, self.ncols)

    def to_polynomial(self, vec: np.ndarray) -> Polynomial:
        return Polynomial({self.monomial(c): 1 for c in unpack_columns(vec, self.ncols)}, GF2)


def _balanced(word, nu):
    bal = [0] * (nu + 1)
    for letter in word:
        r = letter >> 1
        if r < nu:
            bal[r] += 1 if letter % 2 == 0 else -1
    return not any(bal)


@dataclass
class InvariantBasis:
    n: int
    m: int
    group: str
    basis: list[Polynomial]
    columns: MultilinearColumns = field(repr=False)
    matrix: GF2Matrix = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)


def constraint_matrix(columns: MultilinearColumns, family: list[GeneratorSubstitution]) -> GF2Matrix:
    """Stacked invariance conditions over the column monomials."""
    rows: dict[tuple, list[int]] = {}
    for gi, g in enumerate(family):
        if g.char != "two":
            raise ValueError("invariant spaces are computed over GF(2)")
        if g.torus:
            if not columns.weight_zero:
                for col, word in enumerate(columns.words):
                    if not _balanced(word, columns.space.nu):
                        rows[(gi, col)] = [col]
            continue
        for col in range(columns.ncols):
            mono = columns.monomial(col)
            base = Polynomial._from_clean({mono: 1}, GF2)
            diff = g.apply(base) - base
            for out in diff.monomials():
                rows.setdefault((gi, out), []).append(col)
    return GF2Matrix.from_supports(rows.values(), columns.ncols)


def multilinear_invariant_basis(
    space: QuadraticSpace,
    m: int,
    group: str,
    ceiling: int | None = None,
    weight_zero: bool = True,
    family: list[GeneratorSubstitution] | None = None,
) -> InvariantBasis:
    """GF(2) basis of the m-linear invariants of O(n) or SO(n)."""
    columns = MultilinearColumns(space, m, weight_zero=weight_zero, ceiling=ceiling)
    if family is None:
        family = generator_family(space, group, "two")
    kernel = constraint_matrix(columns, family).kernel()
    basis = [columns.to_polynomial(v) for v in kernel]
    rows = np.vstack(kernel) if kernel else np.zeros((0, max(1, (columns.ncols + 63) >> 6)), np.uint64)
    return InvariantBasis(space.n, m, group, basis, columns, GF2Matrix(rows, columns.ncols))


@lru_cache(maxsize=None)
def _basis_words(n: int, b: int, group: str, ceiling: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    inv = multilinear_invariant_basis(QuadraticSpace(n), b, group, ceiling=ceiling)
    return tuple(
        tuple(inv.columns.words[c] for c in unpack_columns(vec, inv.columns.ncols))
        for vec in inv.matrix.rows
    )


def decomposable_subspace(space: QuadraticSpace, m: int, group: str, ceiling: int | None = None,
                          columns: MultilinearColumns | None = None) -> GF2Matrix:
    """Row space of products of block invariants over proper set partitions."""
    ceiling = default_ceiling() if ceiling is None else ceiling
    if columns is None:
        columns = MultilinearColumns(space, m, ceiling=ceiling)
    supports = []
    for blocks in set_partitions(m, min_blocks=2):
        factors = [_basis_words(space.n, len(b), group, ceiling) for b in blocks]
        if any(not f for f in factors):
            continue
        for choice in itertools.product(*factors):
            support = []
            for parts in itertools.product(*choice):
                word = [0] * m
                for block, part in zip(blocks, parts):
                    for slot, letter in zip(block, part):
                        word[slot - 1] = letter
                support.append(columns.index[tuple(word)])
            supports.append(support)
    return GF2Matrix.from_supports(supports, columns.ncols)


def indecomposable_range(spec: FamilySpec) -> tuple[bool, str, str]:
    """``(in_range, group, reason)`` where the target is expected to be indecomposable."""
    n, m = spec.n, spec.m
    if spec.family == "G":
        if n % 2 == 0:
            return m > n, "O", "even n: needs m > n >= 2"
        return m >= n, "SO", "odd n: needs m >= n >= 3"
    if spec.family == "H":
        if n % 2:
            return m >= n, "SO", "odd n: needs m >= n >= 3"
        return False, "SO", "even n: h coincides with g; certify g instead"
    return m >= n >= 4, "SO", "needs m >= n >= 4, both even"


@dataclass
class Certificate:
    target: FamilySpec
    group: str
    dim_invariant: int
    dim_decomposable: int
    member: bool
    witness: Polynomial | None
    in_expected_range: bool
    range_note: str
    target_invariant: bool

    @property
    def indecomposable(self) -> bool:
        return not self.member and self.target_invariant

    def as_dict(self) -> dict:
        return {
            "target": str(self.target),
            "n": self.target.n,
            "m": self.target.m,
            "group": self.group,
            "dim_invariant": self.dim_invariant,
            "dim_decomposable": self.dim_decomposable,
            "member": self.member,
            "in_expected_range": self.in_expected_range,
            "range_note": self.range_note,
            "target_invariant": self.target_invariant,
            "integer_lift_indecomposable": self.indecomposable,
            "witness": None if self.witness is None else str(self.witness),
        }


def indecomposability_certificate(spec: FamilySpec, ceiling: int | None = None) -> Certificate:
    spec = spec.with_lift("mod2").validate()
    in_range, group, note = indecomposable_range(spec)
    space = spec.space
    _check_size(space.n, spec.m, ceiling)
    target = construct(spec)
    family = generator_family(space, group, "two")
    target_invariant = all(v == INVARIANT for v in check_invariance(target, family).values())
    inv = multilinear_invariant_basis(space, spec.m, group, ceiling=ceiling, family=family)
    decomp = decomposable_subspace(space, spec.m, group, ceiling=ceiling, columns=inv.columns)
    residual = decomp.reduce(inv.columns.to_vector(target))
    member = not residual.any()
    return Certificate(
        target=spec,
        group=group,
        dim_invariant=inv.dim,
        dim_decomposable=decomp.rank(),
        member=member,
        witness=None if member else inv.columns.to_polynomial(residual),
        in_expected_range=in_range,
        range_note=note,
        target_invariant=target_invariant,
    )


def matching_products(space: QuadraticSpace, m: int) -> list[Polynomial]:
    """Products of B^(ij) mod 2 over the perfect matchings of 1..m."""
    if m % 2:
        return []
    out = []
    for matching in perfect_matchings(range(1, m + 1)):
        p = Polynomial.one(GF2)
        for i, j in matching:
            p = p * bilinear_form(space, i, j, GF2)
        out.append(p)
    return out


# ---------------------------------------------------------------------------
# Multiplicities


def multiplicity_in_xy(p: Polynomial) -> float:
    """Least total x,y-degree over the terms of p; ``inf`` for p = 0."""
    return p.degree_in("xy")


def to_ts_coordinates(p: Polynomial) -> Polynomial:
    """Rewrite in t_r = x_r, s_r = x_r + y_r (so y_r = s_r - t_r)."""
    ring = p.ring

    def image(v):
        if v.kind == "x":
            return Polynomial.var(t(v.pair, v.slot), ring)
        if v.kind == "y":
            return Polynomial.var(s(v.pair, v.slot), ring) - Polynomial.var(t(v.pair, v.slot), ring)
        return Polynomial.var(v, ring)

    return p.substitute(image)


def multiplicity_in_s(p: Polynomial) -> float:
    return to_ts_coordinates(p).degree_in("s")


def substitute_z_for_top_pair(p: Polynomial, space: QuadraticSpace) -> Polynomial:
    """Send x_nu and y_nu to z in every slot (space of dimension n - 1 after)."""
    if space.odd or space.nu < 2:
        raise UnsupportedDimension("needs an even-dimensional source space with nu >= 2")
    top = space.nu

    def rename(v):
        if v.kind in ("x", "y") and v.pair == top:
            return z(v.slot)
        return v

    return p.map_variables(rename)


@dataclass
class AuditReport:
    n: int
    m: int
    group: str
    kind: str  # "xy" or "s"
    bound: int
    multiplicities: list[float]
    dim: int

    @property
    def min_achieved(self) -> float:
        return min(self.multiplicities) if self.multiplicities else math.inf

    @property
    def ok(self) -> bool:
        return all(v >= self.bound for v in self.multiplicities)

    def as_dict(self) -> dict:
        low = self.min_achieved
        return {
            "n": self.n,
            "m": self.m,
            "group": self.group,
            "kind": self.kind,
            "bound": self.bound,
            "dim": self.dim,
            "min_achieved": None if math.isinf(low) else int(low),
            "ok": self.ok,
        }


def lemma_bound_audit(space: QuadraticSpace, m: int, group: str, ceiling: int | None = None) -> AuditReport:
    """Check the multiplicity lower bound on every invariant basis element.

    Odd n: multiplicity in x,y is at least min(m, 2 nu).  Even n: multiplicity
    in s is at least min(m // 2, nu).  Multiplicity is a valuation, so the
    bound on a basis carries over to the whole space.
    """
    inv = multilinear_invariant_basis(space, m, group, ceiling=ceiling)
    if space.odd:
        kind, bound = "xy", min(m, 2 * space.nu)
        mults = [multiplicity_in_xy(p) for p in inv.basis]
    else:
        kind, bound = "s", min(m // 2, space.nu)
        mults = [multiplicity_in_s(p) for p in inv.basis]
    return AuditReport(space.n, m, group, kind, bound, mults, inv.dim)
