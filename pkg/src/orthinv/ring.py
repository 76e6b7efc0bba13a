"""Coefficient rings: the integers, GF(2), and R[L] for a formal parameter L.

Ring elements are plain Python ints (arbitrary precision).  A :class:`Ring`
only decides how they are normalised, so GF(2) elements are the ints 0 and 1.
"""

from __future__ import annotations

import math
from typing import Mapping

from .errors import NonDivisible, RingMismatch

__all__ = ["Ring", "ZZ", "GF2", "ParamPoly", "reduce_mod2", "common_ring"]


class Ring:
    __slots__ = ("modulus", "name")

    def __init__(self, modulus: int, name: str):
        self.modulus = modulus
        self.name = name

    def __repr__(self):
        return self.name

    def __reduce__(self):
        return (_ring_by_modulus, (self.modulus,))

    def normalize(self, a: int) -> int:
        return a & 1 if self.modulus == 2 else a

    def add(self, a: int, b: int) -> int:
        return self.normalize(a + b)

    def neg(self, a: int) -> int:
        return self.normalize(-a)

    def mul(self, a: int, b: int) -> int:
        return self.normalize(a * b)

    def exact_divide(self, a: int, b: int) -> int:
        """Return ``q`` with ``q * b == a``; raise :class:`NonDivisible` otherwise."""
        a, b = self.normalize(a), self.normalize(b)
        if b == 0:
            if a == 0:
                raise NonDivisible("0/0 is not a well-defined quotient", coefficient=a, divisor=b)
            raise NonDivisible(f"{a} is not divisible by 0", coefficient=a, divisor=b)
        if self.modulus == 2:
            return a  # b == 1
        q, r = divmod(a, b)
        if r:
            raise NonDivisible(f"{a} is not divisible by {b}", coefficient=a, divisor=b)
        return q


ZZ = Ring(0, "ZZ")
GF2 = Ring(2, "GF2")


def _ring_by_modulus(modulus):
    return GF2 if modulus == 2 else ZZ


def common_ring(a: Ring, b: Ring) -> Ring:
    if a is not b:
        raise RingMismatch(f"cannot combine elements of {a} and {b}")
    return a


class ParamPoly:
    """Univariate polynomial in the formal parameter L over ZZ or GF2.

    Zero coefficients are never stored; the zero element has degree ``-inf``.
    """

    __slots__ = ("ring", "_coeffs")

    def __init__(self, coeffs: Mapping[int, int] | None = None, ring: Ring = ZZ):
        self.ring = ring
        clean = {}
        for k, c in (coeffs or {}).items():
            if k < 0:
                raise ValueError("negative powers of L are not supported")
            c = ring.normalize(c)
            if c:
                clean[k] = c
        self._coeffs = clean

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._coeffs)

    def degree(self) -> float:
        return max(self._coeffs) if self._coeffs else -math.inf

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other):
        if isinstance(other, int):
            other = ParamPoly({0: other}, self.ring)
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self.ring is other.ring and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.ring.modulus, frozenset(self._coeffs.items())))

    def _coerce(self, other) -> ParamPoly:
        if isinstance(other, int):
            return ParamPoly({0: other}, self.ring)
        if isinstance(other, ParamPoly):
            common_ring(self.ring, other.ring)
            return other
        raise TypeError(f"cannot combine ParamPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return ParamPoly(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return ParamPoly({k: -c for k, c in self._coeffs.items()}, self.ring)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[int, int] = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return ParamPoly(out, self.ring)

    __rmul__ = __mul__

    def exact_divide(self, d: int) -> ParamPoly:
        return ParamPoly({k: self.ring.exact_divide(c, d) for k, c in self._coeffs.items()}, self.ring)

    def __repr__(self):
        if not self._coeffs:
            return "0"
        parts = []
        for k in sorted(self._coeffs, reverse=True):
            c = self._coeffs[k]
            parts.append(f"{c}" if k == 0 else f"{c}*L^{k}")
        return " + ".join(parts)


def reduce_mod2(a):
    """Canonical map ZZ -> GF(2), applied coefficientwise to ParamPoly."""
    if isinstance(a, ParamPoly):
        return ParamPoly(a.coeffs, GF2)
    return a & 1
