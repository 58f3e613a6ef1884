"""Certificates of non-simplicity and the decider for Shamsuddin derivations.

A Shamsuddin derivation of K[X, Y_1, ..., Y_n] has the form

    D = d/dX + sum_i (a_i(X) Y_i + b_i(X)) d/dY_i.

Every ``NotSimple`` verdict carries a principal D-stable ideal ``<u>`` together
with an elementary automorphism commuting with D; both are re-checked before
the verdict is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .algebra import antiderivative, divides
from .errors import PreconditionViolation
from .field import FieldScalar
from .linalg import canonical_span, nullspace, solve
from .maps import Derivation, ElementaryAuto, classify_shape, commutes, derive
from .poly import MultiPoly, PolyRing, grlex_key

__all__ = [
    "StableIdeal",
    "FirstIntegral",
    "OdeSolution",
    "RepeatedPair",
    "NonSimplicityWitness",
    "Simple",
    "NotSimple",
    "Unknown",
    "SimplicityVerdict",
    "ShamsuddinSpec",
    "principal_stable",
    "first_integrals",
    "darboux_fixed_cofactor",
    "two_var_prefilter",
    "degree_conditions",
    "shamsuddin_spec",
    "shamsuddin_ode_solve",
    "shamsuddin_decide",
    "search_non_simplicity",
    "check_witness",
]


# --- witnesses and verdicts --------------------------------------------------


@dataclass(frozen=True)
class StableIdeal:
    u: MultiPoly
    cofactor: MultiPoly


@dataclass(frozen=True)
class FirstIntegral:
    H: MultiPoly


@dataclass(frozen=True)
class OdeSolution:
    """``h' = a_i h + b_i`` for the pair attached to variable ``index``."""

    index: int
    h: MultiPoly


@dataclass(frozen=True)
class RepeatedPair:
    i: int
    j: int


NonSimplicityWitness = Union[StableIdeal, FirstIntegral, OdeSolution, RepeatedPair]


@dataclass(frozen=True)
class Simple:
    reason: str
    checks: tuple[str, ...] = ()


@dataclass(frozen=True)
class NotSimple:
    witness: NonSimplicityWitness
    ideal: StableIdeal
    automorphism: ElementaryAuto | None = None


@dataclass(frozen=True)
class Unknown:
    searched: dict = field(default_factory=dict)


SimplicityVerdict = Union[Simple, NotSimple, Unknown]


@dataclass(frozen=True)
class ShamsuddinSpec:
    """Pairs ``(a_i, b_i)`` in K[X], one per Y-variable (ring index i + 1)."""

    ring: PolyRing
    pairs: tuple[tuple[MultiPoly, MultiPoly], ...]


# --- basic certificates ------------------------------------------------------


def principal_stable(D: Derivation, u: MultiPoly) -> MultiPoly | None:
    """Cofactor q with ``D(u) = q u``, or None when ``<u>`` is not D-stable."""
    if u.is_zero():
        raise PreconditionViolation("u must be nonzero")
    return divides(u, derive(D, u))


def _columns(ring: PolyRing, d: int, with_constant: bool) -> list[tuple[int, ...]]:
    cols = sorted(ring.monomials_up_to(d), key=grlex_key, reverse=True)
    return cols if with_constant else [c for c in cols if any(c)]


def _kernel(D: Derivation, c: FieldScalar, d: int, with_constant: bool) -> list[MultiPoly]:
    ring = D.ring
    cols = _columns(ring, d, with_constant)
    images = [derive(D, ring.monomial(e)) - ring.monomial(e, c) for e in cols]
    keys = sorted({e for p in images for e in p.terms}, key=grlex_key)
    rows = [[p.coeff(e) for p in images] for e in keys]
    f0 = ring.field
    if rows:
        basis = nullspace(rows, len(cols), f0)
    else:
        basis = [[f0.one() if i == k else f0.zero() for i in range(len(cols))] for k in range(len(cols))]
    basis = canonical_span(basis, len(cols), f0)
    return [ring.from_terms({e: x for e, x in zip(cols, v) if x}) for v in basis]


def first_integrals(D: Derivation, d: int) -> list[MultiPoly]:
    """Basis of ``{H : D(H) = 0, deg H <= d, H(0) = 0}``, echelon form in grlex."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    return _kernel(D, D.ring.field.zero(), d, with_constant=False)


def darboux_fixed_cofactor(D: Derivation, c, d: int) -> list[MultiPoly]:
    """Basis of ``{u : D(u) = c u, deg u <= d}``; constants dropped when c = 0."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    c = FieldScalar.coerce(c, D.ring.field)
    return _kernel(D, c, d, with_constant=bool(c))


def check_witness(D: Derivation, w: NonSimplicityWitness, spec: ShamsuddinSpec | None = None) -> bool:
    """Re-verify the defining identity of a witness exactly."""
    if isinstance(w, StableIdeal):
        return not w.u.is_constant() and derive(D, w.u) == w.cofactor * w.u
    if isinstance(w, FirstIntegral):
        return not w.H.is_constant() and derive(D, w.H).is_zero()
    if spec is None:
        spec = shamsuddin_spec(D)
    pairs = spec.pairs
    if isinstance(w, OdeSolution):
        a, b = pairs[w.index - 1]
        return w.h.diff(0) == a * w.h + b
    if isinstance(w, RepeatedPair):
        return w.i != w.j and pairs[w.i - 1] == pairs[w.j - 1]
    raise TypeError(f"not a witness: {w!r}")


# --- two variables -----------------------------------------------------------


def _require_two(D: Derivation) -> None:
    if D.ring.nvars != 2:
        raise PreconditionViolation(f"needs 2 variables, got {D.ring.nvars}")


def two_var_prefilter(D: Derivation) -> NonSimplicityWitness | None:
    """Cheap non-simplicity witnesses for ``D = f d/dX + g d/dY``.

    None is not a proof of simplicity.
    """
    _require_two(D)
    ring = D.ring
    f, g = D.images
    X, Y = ring.var(0), ring.var(1)
    if f.is_constant() and g.is_constant():
        H = X.scale(g.constant_coeff()) - Y.scale(f.constant_coeff())
        return FirstIntegral(X if H.is_zero() else H)
    if not g.is_constant() and g.is_univariate_in(1):
        return StableIdeal(g, principal_stable(D, g))
    if not f.is_constant() and f.is_univariate_in(0):
        return StableIdeal(f, principal_stable(D, f))
    if f.is_constant() and not f.is_zero() and not g.is_constant() and g.is_univariate_in(0):
        return FirstIntegral(antiderivative(g, 0).scale(f.constant_coeff().inverse()) - Y)
    if g.is_constant() and not g.is_zero() and not f.is_constant() and f.is_univariate_in(1):
        return FirstIntegral(antiderivative(f, 1).scale(g.constant_coeff().inverse()) - X)
    if f.is_zero():
        return FirstIntegral(X)
    if g.is_zero():
        return FirstIntegral(Y)
    return None


def degree_conditions(D: Derivation) -> dict[str, bool]:
    """Necessary degree inequalities for a simple two-variable derivation."""
    _require_two(D)
    f, g = D.images
    dx = max(f.degree(0), 0) + max(g.degree(0), 0)
    dy = max(f.degree(1), 0) + max(g.degree(1), 0)
    return {"deg_X f + deg_X g >= 1": dx >= 1, "deg_Y f + deg_Y g >= 1": dy >= 1}


# --- Shamsuddin derivations --------------------------------------------------


def shamsuddin_spec(D: Derivation) -> ShamsuddinSpec:
    if not classify_shape(D).is_shamsuddin:
        raise PreconditionViolation(
            "not a Shamsuddin derivation: need D(X) = 1 and D(Y_i) = a_i(X) Y_i + b_i(X)"
        )
    ring = D.ring
    pairs = []
    for i in range(1, ring.nvars):
        cf = D.images[i].coefficients_in(i)
        pairs.append((cf.get(1, ring.zero()), cf.get(0, ring.zero())))
    return ShamsuddinSpec(ring, tuple(pairs))


def _ode_columns(a: MultiPoly, N: int) -> list[MultiPoly]:
    X = a.ring.var(0)
    return [(X**k).diff(0) - a * X**k for k in range(N + 1)]


def _rows(polys: list[MultiPoly]) -> tuple[list[list[FieldScalar]], list[tuple[int, ...]]]:
    keys = sorted({e for p in polys for e in p.terms}, key=grlex_key)
    return [[p.coeff(e) for p in polys] for e in keys], keys


def shamsuddin_ode_solve(a: MultiPoly, b: MultiPoly) -> MultiPoly | None:
    """The polynomial h in X with ``h' = a h + b``, or None.

    For a != 0 a solution has degree exactly ``deg b - deg a`` (compare leading
    terms of ``a h``), and it is unique since ``h' = a h`` forces h = 0.
    """
    if a.is_zero():
        raise PreconditionViolation("a must be nonzero")
    if not (a.is_univariate_in(0) and b.is_univariate_in(0)):
        raise PreconditionViolation("a and b must be polynomials in the first variable")
    if b.is_zero():
        return a.ring.zero()
    N = b.degree(0) - a.degree(0)
    if N < 0:
        return None
    cols = _ode_columns(a, N)
    rows, keys = _rows(cols + [b])
    x = solve([r[:-1] for r in rows], [r[-1] for r in rows], a.ring.field)
    if x is None:
        return None
    X = a.ring.var(0)
    return sum((X**k).scale(c) for k, c in enumerate(x) if c) if any(x) else a.ring.zero()


def _combination(spec: ShamsuddinSpec, group: list[int]) -> tuple[dict[int, FieldScalar], MultiPoly] | None:
    """Nonzero c and h with ``h' = a h + sum c_i b_i`` for indices sharing ``a``."""
    ring = spec.ring
    a = spec.pairs[group[0]][0]
    N = max(spec.pairs[i][1].degree(0) for i in group) - a.degree(0)
    hcols = _ode_columns(a, N) if N >= 0 else []
    cols = [-spec.pairs[i][1] for i in group] + hcols
    rows, _ = _rows(cols)
    for v in nullspace(rows, len(cols), ring.field):
        c = {i: x for i, x in zip(group, v) if x}
        if c:
            X = ring.var(0)
            h = ring.zero()
            for k, x in enumerate(v[len(group):]):
                h = h + (X**k).scale(x)
            return c, h
    return None


def _not_simple(D: Derivation, spec: ShamsuddinSpec, w, u: MultiPoly, k: int, ck: FieldScalar) -> NotSimple:
    """Attach ``<u>`` (cofactor a_k) and ``Y_k -> Y_k + u / c_k``."""
    a = spec.pairs[k - 1][0]
    ideal = StableIdeal(u, a)
    sigma = _shift_elementary(D.ring, k, u, ck)
    for wit in (w, ideal):
        if not check_witness(D, wit, spec):
            raise AssertionError(f"internal error: witness {wit} fails re-verification")
    if sigma.is_identity() or not commutes(sigma, D):
        raise AssertionError(f"internal error: {sigma} is not a non-identity commuting elementary")
    return NotSimple(w, ideal, sigma)


def _shift_elementary(ring: PolyRing, k: int, u: MultiPoly, ck: FieldScalar) -> ElementaryAuto:
    # Y_k -> Y_k + u/c_k, written as scale * Y_k + offset with the Y_k-part split off
    v = u.scale(ck.inverse())
    cf = v.coefficients_in(k)
    lin = cf.get(1, ring.zero())
    return ElementaryAuto(ring, k, lin.constant_coeff() + 1, cf.get(0, ring.zero()))


def shamsuddin_decide(D: Derivation) -> SimplicityVerdict:
    """Complete simplicity test for Shamsuddin derivations.

    D is not simple exactly when some nonzero combination ``sum c_i Y_i - h``
    over indices with a common ``a`` satisfies ``D(u) = a u``.  The single
    index, constant-pair and repeated-pair cases are reported with their own
    witnesses; the general combination is searched last.
    """
    spec = shamsuddin_spec(D)
    ring = D.ring
    one = ring.field.one()
    pairs = spec.pairs
    n = len(pairs)
    for i, (a, b) in enumerate(pairs, start=1):
        Yi = ring.var(i)
        if a.is_zero():
            u = Yi - antiderivative(b, 0)
            return _not_simple(D, spec, StableIdeal(u, ring.zero()), u, i, one)
    for i, (a, b) in enumerate(pairs, start=1):
        if a.is_constant() and b.is_constant():
            u = ring.var(i).scale(a.constant_coeff()) + b
            return _not_simple(D, spec, StableIdeal(u, a), u, i, a.constant_coeff())
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if pairs[i - 1] == pairs[j - 1]:
                u = ring.var(i) - ring.var(j)
                return _not_simple(D, spec, RepeatedPair(i, j), u, i, one)
    for i, (a, b) in enumerate(pairs, start=1):
        h = shamsuddin_ode_solve(a, b)
        if h is not None:
            u = ring.var(i) - h
            return _not_simple(D, spec, OdeSolution(i, h), u, i, one)
    groups: dict[MultiPoly, list[int]] = {}
    for i, (a, _) in enumerate(pairs):
        groups.setdefault(a, []).append(i)
    for group in groups.values():
        if len(group) < 2:
            continue
        found = _combination(spec, group)
        if found is not None:
            c, h = found
            u = sum((ring.var(i + 1).scale(x) for i, x in c.items()), ring.zero()) - h
            k = min(c)
            return _not_simple(D, spec, StableIdeal(u, pairs[k][0]), u, k + 1, c[k])
    checks = (
        "every a_i is nonzero",
        "no pair (a_i, b_i) is constant",
        "the pairs are pairwise distinct",
        "no index has a polynomial solution of h' = a_i h + b_i",
        "no combination over indices with equal a_i has one",
    )
    return Simple("Shamsuddin criterion: no principal stable ideal Y-linear in the Y_i", checks)


def search_non_simplicity(D: Derivation, d: int = 2) -> SimplicityVerdict:
    """Decide when D is Shamsuddin; otherwise look for cheap witnesses."""
    if classify_shape(D).is_shamsuddin:
        return shamsuddin_decide(D)
    searched: dict = {}
    if D.ring.nvars == 2:
        w = two_var_prefilter(D)
        searched["prefilter"] = True
        if w is not None:
            return _wrap(D, w)
    H = first_integrals(D, d)
    searched["first_integrals_degree"] = d
    if H:
        return _wrap(D, FirstIntegral(H[0]))
    return Unknown(searched)


def _wrap(D: Derivation, w: NonSimplicityWitness) -> NotSimple:
    if isinstance(w, FirstIntegral):
        ideal = StableIdeal(w.H, D.ring.zero())
    else:
        ideal = w
    if not check_witness(D, ideal):
        raise AssertionError(f"internal error: witness {w} fails re-verification")
    return NotSimple(w, ideal, None)
