"""Exact arithmetic in the cyclotomic fields Q(zeta_m).

An element is stored as a tuple of ``Fraction`` coefficients of length
``phi(m)``: the canonical residue of a rational polynomial in ``zeta``
modulo the m-th cyclotomic polynomial.  ``m = 1`` (and ``m = 2``) is plain Q.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Union

__all__ = [
    "CoefficientField",
    "FieldScalar",
    "FieldMismatchError",
    "cyclotomic_polynomial",
    "QQ",
]


class FieldMismatchError(ValueError):
    """Raised when scalars from different coefficient fields are combined."""


# --- small helpers on dense rational polynomials (lowest degree first) -------


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pdivmod(num: list, den: list) -> tuple[list, list]:
    num = list(num)
    den = _trim(list(den))
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        t = Fraction(num[k + len(den) - 1]) / lead
        q[k] = t
        if t:
            for i, d in enumerate(den):
                num[k + i] -= t * d
    return _trim(q), _trim(num[: len(den) - 1])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _psub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be >= 1, got {m}")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _pdivmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


class CoefficientField:
    """The field Q(zeta_m).  Instances are interned per order."""

    _cache: dict[int, "CoefficientField"] = {}

    def __new__(cls, m: int = 1):
        if not isinstance(m, int) or m < 1:
            raise ValueError(f"cyclotomic order must be a positive integer, got {m!r}")
        inst = cls._cache.get(m)
        if inst is None:
            inst = super().__new__(cls)
            inst.m = m
            inst.modulus = cyclotomic_polynomial(m)
            inst.degree = len(inst.modulus) - 1
            cls._cache[m] = inst
        return inst

    def __reduce__(self):
        return (CoefficientField, (self.m,))

    def __repr__(self) -> str:
        return "QQ" if self.m == 1 else f"QQ(zeta_{self.m})"

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __call__(self, value) -> "FieldScalar":
        return FieldScalar.coerce(value, self)

    def zero(self) -> "FieldScalar":
        return FieldScalar(self, (Fraction(0),) * self.degree)

    def one(self) -> "FieldScalar":
        return FieldScalar.coerce(1, self)

    def zeta(self) -> "FieldScalar":
        """The primitive m-th root of unity generating the field."""
        if self.m <= 2:
            return FieldScalar.coerce(1 if self.m == 1 else -1, self)
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldScalar(self, tuple(c))

    @property
    def roots_of_unity_count(self) -> int:
        """Order of the (cyclic) group of roots of unity contained in the field."""
        return self.m if self.m % 2 == 0 else 2 * self.m

    def root_of_unity(self, order: int) -> "FieldScalar | None":
        """A primitive root of unity of the given order, or None if absent."""
        w = self.roots_of_unity_count
        if order < 1 or w % order:
            return None
        gen = self.zeta() if self.m % 2 == 0 else -self.zeta()
        return gen ** (w // order)


QQ = CoefficientField(1)

ScalarLike = Union["FieldScalar", int, Fraction]


class FieldScalar:
    """An immutable element of a cyclotomic field."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: CoefficientField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def coerce(cls, value, field: CoefficientField) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            if value.field is not field:
                raise FieldMismatchError(f"scalar over {value.field!r} used in {field!r}")
            return value
        if isinstance(value, (int, Rational)) and not isinstance(value, bool):
            return cls(field, (Fraction(value),) + (Fraction(0),) * (field.degree - 1))
        raise TypeError(f"cannot interpret {value!r} as a field scalar")

    @classmethod
    def from_poly(cls, field: CoefficientField, coeffs) -> "FieldScalar":
        """Reduce a rational polynomial in zeta (lowest degree first)."""
        c = [Fraction(x) for x in coeffs]
        if field.m == 2:
            # zeta_2 = -1
            val = sum((x * (-1) ** i for i, x in enumerate(c)), Fraction(0))
            return cls(field, (val,))
        mod = field.modulus
        d = field.degree
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t:
                for i in range(d + 1):
                    c[k - d + i] -= t * mod[i]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return cls(field, tuple(c))

    # -- predicates -----------------------------------------------------------

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    # -- arithmetic -----------------------------------------------------------

    def _other(self, other) -> "FieldScalar | None":
        if isinstance(other, FieldScalar):
            if other.field is not self.field:
                raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return FieldScalar.coerce(other, self.field)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldScalar(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldScalar(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldScalar(self.field, (self.coeffs[0] * o.coeffs[0],))
        return FieldScalar.from_poly(self.field, _pmul(list(self.coeffs), list(o.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero in coefficient field")
        if self.field.degree == 1:
            return FieldScalar(self.field, (1 / self.coeffs[0],))
        # extended Euclid: s*self + t*Phi = g, g a nonzero constant
        r0, r1 = [Fraction(x) for x in self.field.modulus], _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        g = r1[0]
        return FieldScalar.from_poly(self.field, [x / g for x in s1])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"FieldScalar({self})"

    def __str__(self) -> str:
        from .parse import format_scalar

        return format_scalar(self)
