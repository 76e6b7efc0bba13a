"""Sparse exact multivariate polynomials in the coordinates of m vectors.

A variable is a coordinate of one of the vector slots: ``x[r,i]``/``y[r,i]``
for the hyperbolic pair ``r`` of slot ``i``, ``z[i]`` for the anisotropic
coordinate (odd dimension), ``t[r,i]``/``s[r,i]`` for the sheared coordinates
``t = x``, ``s = x + y``, and ``L`` for the formal group parameter.

Monomials are sorted tuples of ``(Variable, exponent)`` pairs, so they are
immutable and hash cheaply; a polynomial is a dict from monomials to nonzero
ints, normalised for its :class:`~orthinv.ring.Ring`.
"""

from __future__ import annotations

import math
import re
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Union

from .errors import MissingImage, NonDivisible, ParseError, RingMismatch
from .ring import GF2, ZZ, Ring

__all__ = [
    "Variable",
    "Monomial",
    "Polynomial",
    "x",
    "y",
    "z",
    "t",
    "s",
    "LAM",
    "monomial",
    "mono_mul",
    "mono_degree",
    "is_multilinear_monomial",
    "parse",
    "serialize",
]

_KIND_OFFSET = {"x": 0, "y": 1, "t": 2, "s": 3}
_Z_RANK = 1 << 20


class Variable(NamedTuple):
    """A coordinate symbol.

    Tuple order is the variable total order: slot ascending, then
    ``x[1] < y[1] < ... < x[nu] < y[nu] < z`` inside a slot (``t``/``s`` sit
    after ``x``/``y`` of the same pair).  ``L`` has slot 0 and sorts first.
    """

    slot: int
    rank: int
    kind: str
    pair: int

    def __str__(self):
        if self.kind == "L":
            return "L"
        if self.kind == "z":
            return f"z[{self.slot}]"
        return f"{self.kind}[{self.pair},{self.slot}]"

    def __repr__(self):
        return str(self)

    @property
    def name_key(self):
        return (self.kind, self.pair, self.slot)

    def with_slot(self, slot: int) -> Variable:
        return self._replace(slot=slot)


def _pair_var(kind, r, i):
    if r < 1 or i < 1:
        raise ValueError(f"{kind}[{r},{i}]: pair and slot indices start at 1")
    return Variable(i, 4 * (r - 1) + _KIND_OFFSET[kind], kind, r)


def x(r: int, i: int) -> Variable:
    return _pair_var("x", r, i)


def y(r: int, i: int) -> Variable:
    return _pair_var("y", r, i)


def t(r: int, i: int) -> Variable:
    return _pair_var("t", r, i)


def s(r: int, i: int) -> Variable:
    return _pair_var("s", r, i)


def z(i: int) -> Variable:
    if i < 1:
        raise ValueError(f"z[{i}]: slot indices start at 1")
    return Variable(i, _Z_RANK, "z", 0)


LAM = Variable(0, 0, "L", 0)

Monomial = tuple  # tuple[tuple[Variable, int], ...], sorted by Variable


def monomial(*variables: Variable) -> Monomial:
    """Monomial from a list of variables (repeats raise the exponent)."""
    exps: dict[Variable, int] = {}
    for v in variables:
        exps[v] = exps.get(v, 0) + 1
    return tuple(sorted(exps.items()))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def is_multilinear_monomial(a: Monomial, m: int) -> bool:
    """Every slot 1..m carries exactly one variable, with exponent 1."""
    if len(a) != m:
        return False
    return all(e == 1 and v.slot == k for k, (v, e) in enumerate(a, start=1))


def _grlex_key(mono: Monomial):
    flat = tuple(v for v, e in mono for _ in range(e))
    return (len(flat), flat)


Scalar = int
ImageMap = Union[Mapping[Variable, "Polynomial"], Callable[[Variable], "Polynomial"]]


class Polynomial:
    """Immutable sparse polynomial with coefficients in ZZ or GF2."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None, ring: Ring = ZZ):
        self.ring = ring
        norm = ring.normalize
        clean = {}
        for mono, c in (terms or {}).items():
            c = norm(c)
            if c:
                clean[mono] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, terms: dict, ring: Ring) -> Polynomial:
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def var(cls, v: Variable, ring: Ring = ZZ) -> Polynomial:
        return cls._from_clean({((v, 1),): 1}, ring)

    @classmethod
    def const(cls, c: int, ring: Ring = ZZ) -> Polynomial:
        return cls({(): c}, ring)

    @classmethod
    def zero(cls, ring: Ring = ZZ) -> Polynomial:
        return cls._from_clean({}, ring)

    @classmethod
    def one(cls, ring: Ring = ZZ) -> Polynomial:
        return cls._from_clean({(): 1}, ring)

    # -- container protocol -------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def monomials(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.const(other, self.ring)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring is other.ring and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.modulus, frozenset(self._terms.items())))
        return self._hash

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.ring is not self.ring:
                raise RingMismatch(f"cannot combine polynomials over {self.ring} and {other.ring}")
            return other
        if isinstance(other, int):
            return Polynomial.const(other, self.ring)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        norm = self.ring.normalize
        for mono, c in other._terms.items():
            v = norm(out.get(mono, 0) + c)
            if v:
                out[mono] = v
            else:
                out.pop(mono, None)
        return Polynomial._from_clean(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.normalize
        return Polynomial._from_clean({k: norm(-c) for k, c in self._terms.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        norm = self.ring.normalize
        out: dict[Monomial, int] = {}
        for ma, ca in self._terms.items():
            for mb, cb in other._terms.items():
                mono = mono_mul(ma, mb)
                out[mono] = out.get(mono, 0) + ca * cb
        return Polynomial._from_clean({k: v for k, v in ((k, norm(v)) for k, v in out.items()) if v}, self.ring)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return self._coerce(other) * self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = Polynomial.one(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> Polynomial:
        return Polynomial({k: v * c for k, v in self._terms.items()}, self.ring)

    def exact_div(self, d: int) -> Polynomial:
        """Divide every coefficient by the scalar ``d`` exactly."""
        out = {}
        for mono, c in self._terms.items():
            try:
                out[mono] = self.ring.exact_divide(c, d)
            except NonDivisible as exc:
                raise NonDivisible(
                    f"coefficient {c} of {_render_monomial(mono)} is not divisible by {d}",
                    monomial=mono,
                    coefficient=c,
                    divisor=d,
                ) from exc
        return Polynomial._from_clean(out, self.ring)

    def reduce_mod2(self) -> Polynomial:
        return Polynomial(self._terms, GF2)

    def lift(self) -> Polynomial:
        """The same coefficients viewed over ZZ (GF2 entries become 0/1)."""
        return Polynomial._from_clean(dict(self._terms), ZZ)

    # -- structure ----------------------------------------------------------

    def variables(self) -> set[Variable]:
        return {v for mono in self._terms for v, _ in mono}

    def degree(self) -> float:
        if not self._terms:
            return -math.inf
        return max(mono_degree(m) for m in self._terms)

    def slot_degree(self, slot: int) -> float:
        if not self._terms:
            return -math.inf
        return max(sum(e for v, e in m if v.slot == slot) for m in self._terms)

    def degree_in(self, kinds: Iterable[str]) -> float:
        """Minimum over terms of the total degree in variables of the given kinds."""
        kinds = set(kinds)
        if not self._terms:
            return math.inf
        return min(sum(e for v, e in m if v.kind in kinds) for m in self._terms)

    def is_multilinear(self, m: int) -> bool:
        return all(is_multilinear_monomial(mono, m) for mono in self._terms)

    def components(self, grading: str = "slot") -> list[Polynomial]:
        """Split into homogeneous components.

        ``grading="slot"`` groups terms by their slot multidegree,
        ``grading="z"`` by their degree in the ``z`` variables.  Components are
        returned in increasing grading order; the zero polynomial has none.
        """
        if grading == "slot":
            def key(mono):
                deg: dict[int, int] = {}
                for v, e in mono:
                    if v.kind != "L":
                        deg[v.slot] = deg.get(v.slot, 0) + e
                return tuple(sorted(deg.items()))
        elif grading == "z":
            def key(mono):
                return sum(e for v, e in mono if v.kind == "z")
        else:
            raise ValueError(f"unknown grading {grading!r}")
        groups: dict = {}
        for mono, c in self._terms.items():
            groups.setdefault(key(mono), {})[mono] = c
        return [Polynomial._from_clean(groups[k], self.ring) for k in sorted(groups)]

    def substitute(self, images: ImageMap, ring: Ring | None = None) -> Polynomial:
        """Ring homomorphism sending each variable to its image.

        ``images`` is a mapping or a callable; a variable occurring in ``self``
        without an image raises :class:`MissingImage`.  The result lives over
        GF2 if either side does, else over ZZ.
        """
        if ring is None:
            ring = self.ring
        lookup = images if callable(images) else images.get
        cache: dict[Variable, list] = {}

        def image_terms(v):
            img = cache.get(v)
            if img is None:
                poly = lookup(v)
                if poly is None:
                    raise MissingImage(f"no image given for {v}")
                nonlocal ring
                if poly.ring is GF2:
                    ring = GF2
                img = cache[v] = list(poly._terms.items())
            return img

        out: dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            partial = [((), c)]
            for v, e in mono:
                img = image_terms(v)
                for _ in range(e):
                    partial = [
                        (mono_mul(pm, im), pc * ic) for pm, pc in partial for im, ic in img
                    ]
            for pm, pc in partial:
                out[pm] = out.get(pm, 0) + pc
        return Polynomial(out, ring)

    def map_variables(self, rename: Callable[[Variable], Variable]) -> Polynomial:
        """Substitute variables by variables; cheaper than :meth:`substitute`."""
        out: dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            exps: dict[Variable, int] = {}
            for v, e in mono:
                w = rename(v)
                exps[w] = exps.get(w, 0) + e
            key = tuple(sorted(exps.items()))
            out[key] = out.get(key, 0) + c
        return Polynomial(out, self.ring)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"Polynomial({serialize(self)!r}, ring={self.ring!r})"


# ---------------------------------------------------------------------------
# Canonical text form


def _render_var(v: Variable, e: int) -> list[str]:
    if v.kind == "L":
        return ["L" if e == 1 else f"L^{e}"]
    return [str(v)] * e


def _render_monomial(mono: Monomial) -> str:
    parts: list[str] = []
    for v, e in sorted(mono, key=lambda ve: ve[0].name_key):
        parts.extend(_render_var(v, e))
    return "*".join(parts)


def serialize(p: Polynomial) -> str:
    """Canonical text: grlex-sorted terms, variables by (letter, pair, slot)."""
    if not p:
        return "0"
    out = []
    for k, mono in enumerate(sorted(p.monomials(), key=_grlex_key)):
        c = p.coefficient(mono)
        body = _render_monomial(mono)
        mag = abs(c)
        if not body:
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if k == 0:
            out.append(f"-{text}" if c < 0 else text)
        else:
            out.append(f" - {text}" if c < 0 else f" + {text}")
    return "".join(out)


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<pair>[xyts])\[\s*(?P<r>\d+)\s*,\s*(?P<i>\d+)\s*\]
  | z\[\s*(?P<zi>\d+)\s*\]
  | (?P<lam>L)
  | (?P<num>\d+)
  | (?P<op>[-+*^])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = mt.lastgroup
        if kind == "ws":
            pass
        elif kind in ("pair", "r", "i"):
            letter = mt.group("pair")
            r, i = int(mt.group("r")), int(mt.group("i"))
            if r < 1 or i < 1:
                raise ParseError("indices start at 1", pos)
            tokens.append(("var", _pair_var(letter, r, i), pos))
        elif kind == "zi":
            i = int(mt.group("zi"))
            if i < 1:
                raise ParseError("indices start at 1", pos)
            tokens.append(("var", z(i), pos))
        elif kind == "lam":
            tokens.append(("var", LAM, pos))
        elif kind == "num":
            tokens.append(("num", int(mt.group("num")), pos))
        else:
            tokens.append(("op", mt.group("op"), pos))
        pos = mt.end()
    tokens.append(("end", None, len(text)))
    return tokens


def parse(text: str, ring: Ring = ZZ) -> Polynomial:
    """Inverse of :func:`serialize` (also accepts ``^k`` on any variable)."""
    tokens = _tokenize(text)
    k = 0

    def peek():
        return tokens[k]

    def take():
        nonlocal k
        tok = tokens[k]
        k += 1
        return tok

    def factor():
        kind, val, pos = take()
        if kind == "num":
            return None, val
        if kind != "var":
            raise ParseError("expected a variable or a coefficient", pos)
        exp = 1
        if peek()[:2] == ("op", "^"):
            take()
            kind2, val2, pos2 = take()
            if kind2 != "num" or val2 < 1:
                raise ParseError("expected a positive exponent", pos2)
            exp = val2
        return val, exp

    def term():
        coeff = 1
        exps: dict[Variable, int] = {}
        first = True
        while True:
            if not first:
                if peek()[:2] != ("op", "*"):
                    break
                take()
            pos = peek()[2]
            v, e = factor()
            if v is None:
                if not first:
                    raise ParseError("coefficient must lead the term", pos)
                coeff = e
            else:
                exps[v] = exps.get(v, 0) + e
            first = False
        return tuple(sorted(exps.items())), coeff

    terms: dict[Monomial, int] = {}
    sign = 1
    if peek()[:2] == ("op", "-"):
        take()
        sign = -1
    if peek()[0] == "end":
        raise ParseError("empty polynomial", peek()[2])
    while True:
        mono, c = term()
        terms[mono] = terms.get(mono, 0) + sign * c
        kind, val, pos = take()
        if kind == "end":
            break
        if kind == "op" and val in "+-":
            sign = 1 if val == "+" else -1
            if peek()[0] == "end":
                raise ParseError("dangling operator", peek()[2])
            continue
        raise ParseError(f"unexpected token {val!r}", pos)
    return Polynomial(terms, ring)
