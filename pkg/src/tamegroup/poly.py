"""Sparse multivariate polynomials over a cyclotomic coefficient field.

Terms are kept in a dict ``{exponent tuple: FieldScalar}`` with no zero
coefficients, so two polynomials are equal exactly when their term dicts
are.  Printing and leading terms use the graded-lexicographic order.
"""

from __future__ import annotations

from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .field import QQ, CoefficientField, FieldMismatchError, FieldScalar

__all__ = ["PolyRing", "MultiPoly", "RingMismatchError", "grlex_key"]


class RingMismatchError(ValueError):
    """Raised when polynomials from different rings are combined."""


def grlex_key(exps: tuple[int, ...]) -> tuple:
    return (sum(exps), exps)


class PolyRing:
    """K[X_1, ..., X_n] with named variables over ``Q(zeta_m)``."""

    __slots__ = ("names", "field")

    def __init__(self, names: Sequence[str], field: CoefficientField = QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct: {names}")
        self.names = names
        self.field = field

    @property
    def nvars(self) -> int:
        return len(self.names)

    def __eq__(self, other) -> bool:
        return isinstance(other, PolyRing) and self.names == other.names and self.field is other.field

    def __hash__(self) -> int:
        return hash((self.names, self.field.m))

    def __repr__(self) -> str:
        return f"PolyRing({list(self.names)}, {self.field!r})"

    def index(self, var: int | str) -> int:
        if isinstance(var, str):
            try:
                return self.names.index(var)
            except ValueError:
                raise IndexError(f"unknown variable {var!r}; ring has {self.names}") from None
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range for {self.nvars} variables")
        return var

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = FieldScalar.coerce(c, self.field)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, v: int | str) -> "MultiPoly":
        i = self.index(v)
        e = [0] * self.nvars
        e[i] = 1
        return MultiPoly(self, {tuple(e): self.field.one()})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "MultiPoly":
        exps = tuple(exps)
        if len(exps) != self.nvars or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {self.nvars} variables")
        c = FieldScalar.coerce(coeff, self.field)
        return MultiPoly(self, {exps: c} if c else {})

    def from_terms(self, terms: Mapping) -> "MultiPoly":
        out: dict = {}
        for e, c in terms.items():
            c = FieldScalar.coerce(c, self.field)
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"bad exponent vector {e}")
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self, out)

    def extend(self, extra: Sequence[str]) -> "PolyRing":
        return PolyRing(self.names + tuple(extra), self.field)

    def embed(self, p: "MultiPoly", target: "PolyRing") -> "MultiPoly":
        """Map p into a ring whose variable list starts with this ring's."""
        pad = (0,) * (target.nvars - self.nvars)
        return MultiPoly(target, {e + pad: c for e, c in p.terms.items()})

    def monomials_up_to(self, degree: int, variables: Iterable[int] | None = None) -> list[tuple[int, ...]]:
        """All exponent vectors of total degree <= degree in the given variables, grlex ascending."""
        vs = list(range(self.nvars)) if variables is None else sorted(set(variables))
        out: list[tuple[int, ...]] = []

        def rec(k: int, left: int, cur: list[int]):
            if k == len(vs):
                e = [0] * self.nvars
                for v, x in zip(vs, cur):
                    e[v] = x
                out.append(tuple(e))
                return
            for x in range(left + 1):
                rec(k + 1, left - x, cur + [x])

        if degree >= 0:
            rec(0, degree, [])
        return sorted(set(out), key=grlex_key)


class MultiPoly:
    """Immutable sparse polynomial.  Build through :class:`PolyRing`."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- coercion -------------------------------------------------------------

    def _lift(self, other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        if isinstance(other, FieldScalar):
            if other.field is not self.ring.field:
                raise FieldMismatchError(f"{other.field!r} vs {self.ring.field!r}")
            return self.ring.const(other)
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self.ring.const(other)
        return None

    # -- ring operations ------------------------------------------------------

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return self.ring.zero()
        if len(o.terms) == 1 and (0,) * self.ring.nvars in o.terms:
            return self.scale(o.terms[(0,) * self.ring.nvars])
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e)
                out[e] = c1 * c2 if s is None else s + c1 * c2
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = FieldScalar.coerce(c, self.ring.field)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: x * c for e, x in self.terms.items()})

    def __truediv__(self, c):
        """Division by a nonzero scalar only; use :func:`divides` for polynomials."""
        if isinstance(c, MultiPoly):
            if not c.is_constant() or c.is_zero():
                raise TypeError("polynomial division: use divides()")
            c = c.constant_coeff()
        c = FieldScalar.coerce(c, self.ring.field)
        return self.scale(c.inverse())

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            o = self._lift(other)
        except (RingMismatchError, FieldMismatchError):
            return False
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        from .parse import format_poly

        return format_poly(self)

    # -- inspection -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.ring.nvars in self.terms)

    def constant_coeff(self) -> FieldScalar:
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    def coeff(self, exps: Sequence[int]) -> FieldScalar:
        return self.terms.get(tuple(exps), self.ring.field.zero())

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, var: int | str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        i = self.ring.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, x in enumerate(e) if x}

    def depends_on(self, var: int | str) -> bool:
        return self.degree(var) > 0

    def is_univariate_in(self, var: int | str) -> bool:
        return self.variables() <= {self.ring.index(var)}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], FieldScalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[tuple[int, ...], FieldScalar]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficients_in(self, var: int | str) -> dict[int, "MultiPoly"]:
        """View as a polynomial in ``var``: {power: coefficient free of var}."""
        i = self.ring.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1 :]] = c
        return {k: MultiPoly(self.ring, t) for k, t in out.items()}

    def coefficients_outside(self, var: int | str) -> dict[tuple[int, ...], "MultiPoly"]:
        """View as a polynomial in all variables except ``var``, with coefficients in K[var]."""
        i = self.ring.index(var)
        out: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = e[:i] + (0,) + e[i + 1 :]
            mono = [0] * self.ring.nvars
            mono[i] = e[i]
            out.setdefault(key, {})[tuple(mono)] = c
        return {k: MultiPoly(self.ring, t) for k, t in out.items()}

    # -- calculus and substitution -------------------------------------------

    def diff(self, var: int | str) -> "MultiPoly":
        i = self.ring.index(var)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                out[e[:i] + (k - 1,) + e[i + 1 :]] = c * k
        return MultiPoly(self.ring, out)

    def subs(self, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Evaluate at ``X_i -> images[i]``; images may live in another ring over the same field."""
        if len(images) != self.ring.nvars:
            raise ValueError(f"substitution needs {self.ring.nvars} images, got {len(images)}")
        if not images:
            return self
        target = images[0].ring
        for g in images:
            if g.ring != target:
                raise RingMismatchError("substitution images must share one ring")
        if target.field is not self.ring.field:
            raise FieldMismatchError("substitution across coefficient fields")
        # cache powers of each image
        powers: list[dict[int, MultiPoly]] = [{0: target.one(), 1: g} for g in images]

        def pw(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = pw(i, k // 2) * pw(i, k - k // 2)
            return cache[k]

        acc: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for te, tc in term.terms.items():
                s = acc.get(te)
                acc[te] = tc if s is None else s + tc
        return MultiPoly(target, {e: c for e, c in acc.items() if c})

    def subs_var(self, var: int | str, image: "MultiPoly") -> "MultiPoly":
        i = self.ring.index(var)
        imgs = self.ring.gens()
        imgs[i] = image
        return self.subs(imgs)

    def evaluate(self, point: Sequence) -> FieldScalar:
        """Evaluate at a point of scalars."""
        f = self.ring.field
        point = [FieldScalar.coerce(x, f) for x in point]
        total = f.zero()
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = total + t
        return total

