"""The invariant families g, h, f and their integer lifts.

Every family is produced in two independent ways:

* :func:`construct` expands the Gram Pfaffian and the determinant-Pfaffian
  shuffle sum, then divides exactly by the appropriate power of two;
* :func:`construct_combinatorial` writes the same polynomial down monomial by
  monomial from the closed-form coefficient rules.

Agreement of the two is the main correctness check of the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import ArityParity, InvalidSpec, NotMultilinear
from .polynomial import Monomial, Polynomial, Variable, is_multilinear_monomial
from .quadratic import QuadraticSpace, SkewPolyMatrix, bilinear_form, determinant_d, pfaffian
from .ring import GF2, ZZ

__all__ = [
    "FamilySpec",
    "BlockProfile",
    "monomial_sign",
    "permutation_sign",
    "block_profile",
    "gram_matrix",
    "build_pf_gram",
    "build_db_sum",
    "shuffles",
    "construct",
    "construct_combinatorial",
    "FAMILY_NAMES",
]

FAMILY_NAMES = {
    "g": ("G", "mod2"),
    "h": ("H", "mod2"),
    "f": ("F", "mod2"),
    "tilde-g": ("G", "integer"),
    "tilde-h": ("H", "integer"),
    "tilde-f": ("F", "integer"),
}


@dataclass(frozen=True)
class FamilySpec:
    family: str  # "G", "H" or "F"
    n: int
    m: int
    lift: str = "mod2"  # "integer" or "mod2"

    @classmethod
    def from_name(cls, name: str, n: int, m: int) -> FamilySpec:
        try:
            family, lift = FAMILY_NAMES[name]
        except KeyError:
            raise InvalidSpec(f"unknown family {name!r}") from None
        return cls(family, n, m, lift)

    @property
    def name(self) -> str:
        base = self.family.lower()
        return base if self.lift == "mod2" else f"tilde-{base}"

    @property
    def nu(self) -> int:
        return self.n // 2

    @property
    def mu(self) -> int:
        return self.m // 2

    @property
    def space(self) -> QuadraticSpace:
        return QuadraticSpace(self.n)

    def with_lift(self, lift: str) -> FamilySpec:
        return FamilySpec(self.family, self.n, self.m, lift)

    def validate(self) -> FamilySpec:
        n, m = self.n, self.m
        if self.lift not in ("integer", "mod2"):
            raise InvalidSpec(f"unknown lift {self.lift!r}")
        if n < 2 or m < 1:
            raise InvalidSpec(f"need n >= 2 and m >= 1, got n={n}, m={m}")
        if self.family == "G":
            if m % 2 or m < 2 * self.nu:
                raise InvalidSpec(f"g needs m even and m >= 2*nu; got n={n}, m={m}")
        elif self.family == "H":
            if m < n or (m - n) % 2:
                raise InvalidSpec(f"h needs m >= n with m = n mod 2; got n={n}, m={m}")
        elif self.family == "F":
            if n % 2 or m % 2 or n < 4 or m < n:
                raise InvalidSpec(f"f needs m >= n >= 4, both even; got n={n}, m={m}")
        else:
            raise InvalidSpec(f"unknown family {self.family!r}")
        return self

    def __str__(self):
        return f"{self.name}_{self.n}x{self.m}"


@dataclass(frozen=True)
class BlockProfile:
    """Block data of a multilinear monomial.

    ``counts[r-1]`` is the number of slots carrying a pair-r letter,
    ``starts[r-1]`` is "x" or "y" when those letters alternate (None when they
    do not alternate or the block is empty) and ``z_count`` counts z letters.
    """

    z_count: int
    counts: tuple[int, ...]
    starts: tuple[str | None, ...]

    @property
    def m(self) -> int:
        return self.z_count + sum(self.counts)

    def all_alternating(self) -> bool:
        return all(c == 0 or st is not None for c, st in zip(self.counts, self.starts))

    def y_first(self) -> int:
        return sum(1 for st in self.starts if st == "y")


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of a permutation given as a sequence of distinct comparable items."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _blocks(mono: Monomial):
    z_slots: list[int] = []
    pair_slots: dict[int, list[tuple[int, str]]] = {}
    for v, _ in mono:
        if v.kind == "z":
            z_slots.append(v.slot)
        elif v.kind in ("x", "y"):
            pair_slots.setdefault(v.pair, []).append((v.slot, v.kind))
        else:
            raise NotMultilinear(f"unexpected variable {v} in a multilinear monomial")
    return z_slots, pair_slots


def _check_multilinear(mono: Monomial):
    m = len(mono)
    if not is_multilinear_monomial(mono, m):
        raise NotMultilinear(f"monomial is not multilinear in slots 1..{m}")


def monomial_sign(mono: Monomial) -> int:
    """Sign of the slot sequence read block by block: z first, then pairs 1..nu."""
    _check_multilinear(mono)
    z_slots, pair_slots = _blocks(mono)
    seq = list(z_slots)
    for r in sorted(pair_slots):
        seq.extend(slot for slot, _ in pair_slots[r])
    return permutation_sign(seq)


def block_profile(mono: Monomial, space: QuadraticSpace) -> BlockProfile:
    _check_multilinear(mono)
    z_slots, pair_slots = _blocks(mono)
    counts, starts = [], []
    for r in range(1, space.nu + 1):
        letters = [k for _, k in pair_slots.get(r, [])]
        counts.append(len(letters))
        alternating = bool(letters) and all(a != b for a, b in zip(letters, letters[1:]))
        starts.append(letters[0] if alternating else None)
    return BlockProfile(len(z_slots), tuple(counts), tuple(starts))


# ---------------------------------------------------------------------------
# Algebraic route


def gram_matrix(space: QuadraticSpace, slots: Sequence[int]) -> SkewPolyMatrix:
    """Skew matrix whose upper half holds B^(i_a i_b) for the given slots."""
    upper = {}
    for a in range(len(slots)):
        for b in range(a + 1, len(slots)):
            upper[(a, b)] = bilinear_form(space, slots[a], slots[b])
    return SkewPolyMatrix(len(slots), upper)


def build_pf_gram(space: QuadraticSpace, slots: Sequence[int]) -> Polynomial:
    """Pf^(i1..i2mu) over ZZ."""
    if len(slots) % 2:
        raise ArityParity(f"Pfaffian needs an even number of slots, got {len(slots)}")
    return pfaffian(gram_matrix(space, slots))


def shuffles(m: int, n: int):
    """Yield ``(sign, head, tail)`` over (n, m-n)-shuffles of 1..m.

    ``head`` runs over n-subsets in lexicographic order; the sign is the
    parity of pairs (a in head, b in tail) with a > b.
    """
    everything = range(1, m + 1)
    for head in itertools.combinations(everything, n):
        hs = set(head)
        tail = tuple(i for i in everything if i not in hs)
        crossings = sum(1 for a in head for b in tail if a > b)
        yield (-1) ** crossings, head, tail


def build_db_sum(space: QuadraticSpace, m: int) -> Polynomial:
    """Sum over shuffles pi of sgn(pi) * D^(pi(1..n)) * Pf^(pi(n+1..m)), over ZZ."""
    n = space.n
    if m < n or (m - n) % 2:
        raise ArityParity(f"the shuffle sum needs m >= n with m = n mod 2; got n={n}, m={m}")
    gram = gram_matrix(space, range(1, m + 1))
    memo: dict = {}
    total = Polynomial.zero()
    for sign, head, tail in shuffles(m, n):
        pf = pfaffian(gram, [i - 1 for i in tail], memo)
        term = determinant_d(space, head) * pf
        total = total + term if sign > 0 else total - term
    return total


def _divisor_exponent(spec: FamilySpec) -> int:
    e = spec.mu - spec.nu
    return e + 1 if spec.family == "F" else e


def construct(spec: FamilySpec) -> Polynomial:
    """Build the family member by expansion and exact division.

    A :class:`~orthinv.errors.NonDivisible` raised here is a falsification
    signal, not a recoverable condition.
    """
    spec.validate()
    space = spec.space
    slots = range(1, spec.m + 1)
    if spec.family == "G":
        numerator = build_pf_gram(space, slots)
    elif spec.family == "H":
        numerator = build_db_sum(space, spec.m)
    else:
        numerator = build_pf_gram(space, slots) - build_db_sum(space, spec.m)
    lifted = numerator.exact_div(2 ** _divisor_exponent(spec))
    return lifted if spec.lift == "integer" else lifted.reduce_mod2()


# ---------------------------------------------------------------------------
# Combinatorial route


def _candidate_monomials(space: QuadraticSpace, m: int, require_even_z: bool):
    """Yield (monomial, profile) for block assignments with even pair blocks.

    Every slot is assigned to block 0 (z) or a pair r; each nonempty pair
    block gets one of its two alternating x/y patterns.
    """
    block_ids = ([0] if space.odd else []) + list(range(1, space.nu + 1))
    for assignment in itertools.product(block_ids, repeat=m):
        counts = [0] * (space.nu + 1)
        for b in assignment:
            counts[b] += 1
        if any(c % 2 for c in counts[1:]):
            continue
        if require_even_z and counts[0] % 2:
            continue
        active = [r for r in range(1, space.nu + 1) if counts[r]]
        for starts in itertools.product("xy", repeat=len(active)):
            start_of = dict(zip(active, starts))
            seen = {r: 0 for r in active}
            variables: list[Variable] = []
            for slot, b in enumerate(assignment, start=1):
                if b == 0:
                    variables.append(space.coordinate(("z", 0), slot))
                    continue
                first = start_of[b]
                letter = first if seen[b] % 2 == 0 else ("y" if first == "x" else "x")
                seen[b] += 1
                variables.append(space.coordinate((letter, b), slot))
            mono = tuple((v, 1) for v in variables)
            profile = BlockProfile(
                counts[0],
                tuple(counts[1:]),
                tuple(start_of.get(r) for r in range(1, space.nu + 1)),
            )
            yield mono, profile


def _pf_coefficient(spec: FamilySpec, profile: BlockProfile, sign: int) -> int:
    """Coefficient of an alternating, even-block monomial in Pf^(1..2mu)."""
    if profile.z_count % 2:
        return 0
    occupied = sum(1 for c in profile.counts if c >= 2)
    return 2 ** (spec.mu - occupied) * sign


def _db_coefficient(spec: FamilySpec, profile: BlockProfile, sign: int) -> int:
    """Coefficient in the shuffle sum; zero unless every pair block is occupied."""
    if any(c == 0 for c in profile.counts):
        return 0
    if spec.n % 2 and profile.z_count % 2 == 0:
        return 0
    return 2 ** (spec.mu - spec.nu) * (-1) ** profile.y_first() * sign


def _in_mod2_support(spec: FamilySpec, profile: BlockProfile) -> bool:
    counts = profile.counts
    if spec.family == "G":
        return profile.z_count % 2 == 0 and all(c > 0 for c in counts)
    if spec.family == "H":
        return all(c > 0 for c in counts)
    zeros = sum(1 for c in counts if c == 0)
    if zeros == 0:
        return profile.y_first() % 2 == 1
    return zeros == 1


def construct_combinatorial(spec: FamilySpec) -> Polynomial:
    """Build the family member directly from the coefficient rules."""
    spec.validate()
    space = spec.space
    divisor = 2 ** _divisor_exponent(spec)
    terms: dict[Monomial, int] = {}
    for mono, profile in _candidate_monomials(space, spec.m, require_even_z=spec.family != "H"):
        if spec.lift == "mod2":
            if _in_mod2_support(spec, profile):
                terms[mono] = 1
            continue
        sign = monomial_sign(mono)
        if spec.family == "G":
            numerator = _pf_coefficient(spec, profile, sign)
        elif spec.family == "H":
            numerator = _db_coefficient(spec, profile, sign)
        else:
            numerator = _pf_coefficient(spec, profile, sign) - _db_coefficient(spec, profile, sign)
        if numerator:
            terms[mono] = ZZ.exact_divide(numerator, divisor)
    return Polynomial(terms, GF2 if spec.lift == "mod2" else ZZ)


@lru_cache(maxsize=64)
def cached_construct(spec: FamilySpec) -> Polynomial:
    return construct(spec)
