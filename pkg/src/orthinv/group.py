"""Symbolic generators of O(n) and SO(n) and an exact invariance test.

Each generator is a coordinate substitution depending polynomially on the
formal parameter ``L``; it acts diagonally on all vector slots.  Invariance
for formal ``L`` is invariance for every field value of the parameter.

The diagonal torus would need ``L**-1``; it is represented by a marker
generator whose test is exact: a polynomial is torus invariant iff each of
its monomials has weight zero (as many ``x_r`` as ``y_r`` letters for every
pair ``r``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .errors import RingMismatch, UnsupportedDimension
from .polynomial import LAM, Monomial, Polynomial, Variable, x, y, z
from .quadratic import QuadraticSpace, quadratic_form
from .ring import GF2, ZZ, ParamPoly

__all__ = [
    "GeneratorSubstitution",
    "generator_family",
    "check_invariance",
    "lambda_collect",
    "monomial_weight",
    "INVARIANT",
    "ANTI_INVARIANT",
    "NEITHER",
]

INVARIANT = "invariant"
ANTI_INVARIANT = "anti-invariant"
NEITHER = "neither"

# image of one coordinate letter: tuple of (coefficient, letter, power of L)
Letter = tuple[str, int]
ImageTerms = tuple[tuple[int, Letter, int], ...]


@dataclass(frozen=True)
class GeneratorSubstitution:
    name: str
    char: str  # "two" or "zero"
    component: str  # "special" or "non-special"
    images: Mapping[Letter, ImageTerms] = field(default_factory=dict)
    torus: bool = False

    @property
    def ring(self):
        return GF2 if self.char == "two" else ZZ

    def image(self, v: Variable) -> Polynomial:
        """Image of a slot-specific coordinate (identity when untouched)."""
        ring = self.ring
        letter = (v.kind, v.pair)
        terms = self.images.get(letter)
        if terms is None:
            return Polynomial.var(v, ring)
        out: dict[Monomial, int] = {}
        for coeff, (kind, pair), lam in terms:
            target = z(v.slot) if kind == "z" else (x(pair, v.slot) if kind == "x" else y(pair, v.slot))
            mono = ((LAM, lam), (target, 1)) if lam else ((target, 1),)
            out[mono] = out.get(mono, 0) + coeff
        return Polynomial(out, ring)

    def apply(self, p: Polynomial) -> Polynomial:
        if self.torus:
            raise ValueError("the torus marker has no substitution form")
        return p.substitute(self.image)

    def preserves_q(self, space: QuadraticSpace) -> bool:
        if self.torus:
            return True
        q = quadratic_form(space, 1, self.ring)
        return self.apply(q) == q


def _sub(char: str, c: int) -> int:
    """Coefficient of a term that is subtracted in characteristic zero."""
    return c if char == "two" else -c


def _pair_family(nu: int, char: str, lowering: bool):
    gens = []
    for a in range(1, nu + 1):
        for b in range(a + 1, nu + 1):
            gens.append(GeneratorSubstitution(
                f"swap-pairs({a},{b})", char, "special",
                {("x", a): ((1, ("x", b), 0),), ("y", a): ((1, ("y", b), 0),),
                 ("x", b): ((1, ("x", a), 0),), ("y", b): ((1, ("y", a), 0),)},
            ))
    for a in range(1, nu + 1):
        for b in range(a + 1, nu + 1):
            gens.append(GeneratorSubstitution(
                f"eichler-yx({a},{b})", char, "special",
                {("y", a): ((1, ("y", a), 0), (1, ("x", b), 1)),
                 ("y", b): ((1, ("y", b), 0), (_sub(char, 1), ("x", a), 1))},
            ))
            if lowering:
                gens.append(GeneratorSubstitution(
                    f"eichler-xy({a},{b})", char, "special",
                    {("x", a): ((1, ("x", a), 0), (1, ("y", b), 1)),
                     ("x", b): ((1, ("x", b), 0), (_sub(char, 1), ("y", a), 1))},
                ))
    for a in range(1, nu + 1):
        for b in range(1, nu + 1):
            if a != b:
                gens.append(GeneratorSubstitution(
                    f"eichler-xx({a},{b})", char, "special",
                    {("x", a): ((1, ("x", a), 0), (1, ("x", b), 1)),
                     ("y", b): ((1, ("y", b), 0), (_sub(char, 1), ("y", a), 1))},
                ))
    return gens


def _z_family(char: str, lowering: bool):
    if char == "two":
        raise_ = {("z", 0): ((1, ("z", 0), 0), (1, ("x", 1), 1)),
                  ("y", 1): ((1, ("y", 1), 0), (1, ("x", 1), 2))}
        lower = {("z", 0): ((1, ("z", 0), 0), (1, ("y", 1), 1)),
                 ("x", 1): ((1, ("x", 1), 0), (1, ("y", 1), 2))}
    else:
        raise_ = {("z", 0): ((1, ("z", 0), 0), (1, ("x", 1), 1)),
                  ("y", 1): ((1, ("y", 1), 0), (-2, ("z", 0), 1), (-1, ("x", 1), 2))}
        lower = {("z", 0): ((1, ("z", 0), 0), (1, ("y", 1), 1)),
                 ("x", 1): ((1, ("x", 1), 0), (-2, ("z", 0), 1), (-1, ("y", 1), 2))}
    gens = [GeneratorSubstitution("z-transvection-x", char, "special", raise_)]
    if lowering:
        gens.append(GeneratorSubstitution("z-transvection-y", char, "special", lower))
    return gens


def generator_family(space: QuadraticSpace, group: str, char: str = "two",
                     torus: bool = True, lowering: bool = True) -> list[GeneratorSubstitution]:
    """Generators of O(n) or SO(n) as formal substitutions.

    The default family is: pair transpositions, Eichler transvections for both
    signs of ``e_a + e_b`` and for ``e_a - e_b``, the z-transvections (odd n),
    the torus marker, and for ``group="O"`` the reflection ``x1 <-> y1``
    whenever it is not already special.

    ``torus=False, lowering=False`` gives the bare list without the torus
    and without the ``x += L*y`` transvections.  That list generates only a
    parabolic subgroup, so it is kept for comparison and not used for
    invariant spaces.
    """
    if group not in ("O", "SO"):
        raise ValueError(f"unknown group {group!r}")
    if char not in ("two", "zero"):
        raise ValueError(f"unknown characteristic {char!r}")
    if space.n < 2:
        raise UnsupportedDimension(f"no generator family for n={space.n}")
    gens = _pair_family(space.nu, char, lowering)
    if space.odd:
        gens += _z_family(char, lowering)
    if torus:
        gens.append(GeneratorSubstitution("torus", char, "special", torus=True))
    # In char 2 all of O(2nu+1) is special; over C the reflection has det -1.
    if group == "O" and (not space.odd or char == "zero"):
        gens.append(GeneratorSubstitution(
            "reflection-x1y1", char, "non-special",
            {("x", 1): ((1, ("y", 1), 0),), ("y", 1): ((1, ("x", 1), 0),)},
        ))
    for g in gens:
        if not g.preserves_q(space):
            raise AssertionError(f"generator {g.name} does not preserve q")
    return gens


def monomial_weight(mono: Monomial) -> tuple[int, ...]:
    """Torus weight: per pair r, (#x_r - #y_r), as a sorted sparse tuple."""
    w: dict[int, int] = {}
    for v, e in mono:
        if v.kind == "x":
            w[v.pair] = w.get(v.pair, 0) + e
        elif v.kind == "y":
            w[v.pair] = w.get(v.pair, 0) - e
    return tuple(sorted((r, k) for r, k in w.items() if k))


def lambda_collect(p: Polynomial) -> dict[Monomial, ParamPoly]:
    """Group the terms of ``p`` by their L-free part."""
    groups: dict[Monomial, dict[int, int]] = {}
    for mono, c in p.items():
        lam = 0
        rest = []
        for v, e in mono:
            if v.kind == "L":
                lam = e
            else:
                rest.append((v, e))
        groups.setdefault(tuple(rest), {})[lam] = c
    return {k: ParamPoly(v, p.ring) for k, v in groups.items()}


def check_invariance(p: Polynomial, family: list[GeneratorSubstitution]) -> dict[str, str]:
    """Verdict per generator name: invariant, anti-invariant, or neither.

    Polynomials over ZZ are reduced mod 2 for a characteristic-two family;
    GF2 polynomials cannot be checked against a characteristic-zero family.
    """
    verdicts: dict[str, str] = {}
    for g in family:
        q = p
        if g.char == "two" and p.ring is ZZ:
            q = p.reduce_mod2()
        elif g.char == "zero" and p.ring is GF2:
            raise RingMismatch("a GF2 polynomial needs the characteristic-two family")
        if g.torus:
            ok = all(not monomial_weight(mono) for mono in q.monomials())
            verdicts[g.name] = INVARIANT if ok else NEITHER
            continue
        image = g.apply(q)
        bound = 2 * q.degree() if q else 0
        for mono in image.monomials():
            lam = sum(e for v, e in mono if v.kind == "L")
            if lam > bound:
                raise AssertionError(f"L-degree {lam} exceeds the bound {bound}")
        diff = lambda_collect(image - q)
        if not diff:
            verdicts[g.name] = INVARIANT
        elif q.ring is ZZ and not lambda_collect(image + q):
            verdicts[g.name] = ANTI_INVARIANT
        else:
            verdicts[g.name] = NEITHER
    return verdicts
