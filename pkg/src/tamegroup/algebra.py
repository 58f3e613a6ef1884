"""Division, univariate gcd and the structure lemmas used by the solvers.

Univariate inputs are ordinary :class:`MultiPoly` values that only involve
the named variable; they stay in their ambient ring.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd

from .field import FieldScalar
from .poly import MultiPoly, grlex_key

__all__ = [
    "divides",
    "DivisionByZeroPolynomial",
    "to_dense",
    "from_dense",
    "univariate_gcd",
    "depress",
    "scaling_order",
    "power_decompose",
    "ShiftInvariance",
    "shift_invariance",
    "AffineSymmetries",
    "affine_symmetries",
    "antiderivative",
    "Coprime",
    "CommonFactor",
    "common_factor_check",
]


class DivisionByZeroPolynomial(ZeroDivisionError):
    pass


def divides(u: MultiPoly, v: MultiPoly) -> MultiPoly | None:
    """Exact quotient ``v / u`` or None when ``u`` does not divide ``v``.

    Repeated leading-term elimination under grlex.  If ``u | v`` every
    intermediate remainder is a multiple of ``u``, so a leading term that is
    not divisible by ``lt(u)`` proves non-divisibility.
    """
    if u.ring != v.ring:
        from .poly import RingMismatchError

        raise RingMismatchError(f"{u.ring!r} vs {v.ring!r}")
    if u.is_zero():
        raise DivisionByZeroPolynomial("divisor must be nonzero")
    ring = u.ring
    lu, lc = u.leading_term()
    lc_inv = lc.inverse()
    if u.is_constant():
        return v.scale(lc_inv)
    r = dict(v.terms)
    q: dict = {}
    u_terms = list(u.terms.items())
    while r:
        e = max(r, key=grlex_key)
        if any(a < b for a, b in zip(e, lu)):
            return None
        qe = tuple(a - b for a, b in zip(e, lu))
        qc = r[e] * lc_inv
        q[qe] = qc
        for ue, uc in u_terms:
            te = tuple(a + b for a, b in zip(qe, ue))
            s = r.get(te)
            t = -(qc * uc) if s is None else s - qc * uc
            if t:
                r[te] = t
            else:
                r.pop(te, None)
    return MultiPoly(ring, q)


# --- univariate dense form ---------------------------------------------------


def to_dense(p: MultiPoly, var: int | str) -> list[FieldScalar]:
    """Coefficient list (lowest degree first) of a polynomial involving only ``var``."""
    i = p.ring.index(var)
    if not p.is_univariate_in(i):
        raise ValueError(f"{p} is not univariate in {p.ring.names[i]}")
    deg = p.degree(i)
    out = [p.ring.field.zero()] * (deg + 1)
    for e, c in p.terms.items():
        out[e[i]] = c
    return out


def from_dense(ring, var: int | str, coeffs) -> MultiPoly:
    i = ring.index(var)
    terms = {}
    for k, c in enumerate(coeffs):
        c = FieldScalar.coerce(c, ring.field)
        if c:
            e = [0] * ring.nvars
            e[i] = k
            terms[tuple(e)] = c
    return MultiPoly(ring, terms)


def _dtrim(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _ddivmod(a: list, b: list) -> tuple[list, list]:
    a = list(a)
    b = _dtrim(list(b))
    inv = b[-1].inverse()
    q = [b[0].field.zero()] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        t = a[k + len(b) - 1] * inv
        q[k] = t
        if t:
            for i, x in enumerate(b):
                a[k + i] = a[k + i] - t * x
    return _dtrim(q), _dtrim(a[: len(b) - 1])


def univariate_gcd(f: MultiPoly, g: MultiPoly, var: int | str) -> MultiPoly:
    """Monic gcd in K[var]; gcd(0, 0) = 0."""
    a, b = _dtrim(to_dense(f, var)), _dtrim(to_dense(g, var))
    while b:
        _, r = _ddivmod(a, b)
        a, b = b, r
    if not a:
        return f.ring.zero()
    inv = a[-1].inverse()
    return from_dense(f.ring, var, [c * inv for c in a])


# --- structure lemmas --------------------------------------------------------


def _require_univariate(f: MultiPoly, var) -> int:
    i = f.ring.index(var)
    if not f.is_univariate_in(i):
        raise ValueError(f"{f} must be univariate in {f.ring.names[i]}")
    return i


def depress(f: MultiPoly, var: int | str) -> tuple[FieldScalar, MultiPoly]:
    """Shift ``X -> X + shift`` killing the degree n-1 coefficient.

    Returns ``(shift, f(X + shift))`` with ``shift = -a_{n-1} / (n a_n)``.
    """
    i = _require_univariate(f, var)
    n = f.degree(i)
    if n < 2:
        raise ValueError(f"depress needs degree >= 2, got degree {n}")
    c = to_dense(f, i)
    shift = -c[n - 1] / (c[n] * n)
    x = f.ring.var(i)
    return shift, f.subs_var(i, x + shift)


def scaling_order(f: MultiPoly, var: int | str) -> int:
    """gcd of the positive exponents of ``var``; 0 when ``f`` does not involve it.

    Works for multivariate ``f``: it is the order s with ``f(lambda X) = f``
    exactly for ``lambda^s = 1``.
    """
    i = f.ring.index(var)
    s = 0
    for e in f.terms:
        s = gcd(s, e[i])
    return s


def power_decompose(f: MultiPoly, var: int | str, s: int) -> MultiPoly | None:
    """``h`` with ``f(X) = h(X^s)`` (h written in the same variable), else None."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    i = f.ring.index(var)
    terms = {}
    for e, c in f.terms.items():
        if e[i] % s:
            return None
        terms[e[:i] + (e[i] // s,) + e[i + 1 :]] = c
    return MultiPoly(f.ring, terms)


class ShiftInvariance(enum.Enum):
    ONLY_ZERO = "OnlyZero"
    ALL_SHIFTS = "AllShifts"


def shift_invariance(f: MultiPoly, var: int | str) -> ShiftInvariance:
    """Which c satisfy f(X + c) = f(X), with f viewed over the other variables."""
    return ShiftInvariance.ALL_SHIFTS if f.degree(var) <= 0 else ShiftInvariance.ONLY_ZERO


@dataclass(frozen=True)
class AffineSymmetries:
    """Solutions of ``g(lambda X + beta) = g(X)`` for the depressed form of f.

    ``beta`` is forced to 0 and lambda ranges over the ``order``-th roots of
    unity; ``shift`` conjugates back: ``depressed(X) = f(X + shift)``.
    """

    beta: FieldScalar
    order: int
    shift: FieldScalar
    depressed: MultiPoly


def affine_symmetries(f: MultiPoly, var: int | str) -> AffineSymmetries:
    shift, g = depress(f, var)
    return AffineSymmetries(beta=f.ring.field.zero(), order=scaling_order(g, var), shift=shift, depressed=g)


def antiderivative(f: MultiPoly, var: int | str) -> MultiPoly:
    """Integral in ``var`` with zero constant term."""
    i = f.ring.index(var)
    terms = {}
    for e, c in f.terms.items():
        k = e[i] + 1
        terms[e[:i] + (k,) + e[i + 1 :]] = c / k
    return MultiPoly(f.ring, terms)


@dataclass(frozen=True)
class Coprime:
    pass


@dataclass(frozen=True)
class CommonFactor:
    factor: MultiPoly


def common_factor_check(f: MultiPoly, g: MultiPoly, var: int | str) -> Coprime | CommonFactor:
    """Common non-constant factor of ``f in K[var]`` and ``g``.

    Any divisor of ``f`` lies in K[var], so it suffices to take the gcd of
    ``f`` with the coefficients of ``g`` over the remaining variables.
    """
    i = _require_univariate(f, var)
    if f.is_zero():
        raise ValueError("f must be nonzero")
    d = univariate_gcd(f, f.ring.zero(), i)
    for c in g.coefficients_outside(i).values():
        d = univariate_gcd(d, c, i)
        if d.is_constant():
            return Coprime()
    if d.is_constant():
        return Coprime()
    return CommonFactor(d)
