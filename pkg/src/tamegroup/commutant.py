"""Elementary automorphisms commuting with a derivation.

For ``sigma: X_j -> a X_j + h`` (h free of X_j) commutation with D reads

    f_k(X_j -> a X_j + h) = f_k                 (k != j)
    f_j(X_j -> a X_j + h) = a f_j + D(h)

When every f_k is affine in X_j these equations are linear and homogeneous
in ``(a - 1, h)``: :func:`affine_axis_commutant` solves them exactly up to a
degree bound on h.  Otherwise :func:`scalar_axis_commutant` pins h from
leading coefficients in X_j and solves for a symbolically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence, Union

from .algebra import (
    Coprime,
    antiderivative,
    common_factor_check,
    divides,
    from_dense,
    power_decompose,
    scaling_order,
    to_dense,
    univariate_gcd,
)
from .errors import HypothesisFailure, Inconclusive, NotCommuting, PreconditionViolation, TemplateMismatch
from .field import FieldScalar
from .linalg import canonical_span, nullspace
from .maps import Derivation, ElementaryAuto, commutes, derive
from .poly import MultiPoly, PolyRing

__all__ = [
    "Translations",
    "AffineFamily",
    "OffsetFamily",
    "ScalingFamily",
    "ExplicitGenerators",
    "CommutantFamily",
    "StabilityWitness",
    "translation_commutant",
    "affine_axis_commutant",
    "scalar_axis_commutant",
    "axis_commutant",
    "closed_form_tame_group",
    "elementary_stable_witness",
    "default_degree_bound",
    "axis_summary",
]

ONLY_IDENTITY = "OnlyIdentity"
ALL_SHIFTS = "AllShifts"


# --- families ----------------------------------------------------------------


@dataclass(frozen=True)
class Translations:
    ring: PolyRing
    axis: int
    extent: str  # ONLY_IDENTITY or ALL_SHIFTS

    def member(self, c=1) -> ElementaryAuto:
        if self.extent == ONLY_IDENTITY and c != 0:
            raise ValueError("only the identity translation commutes on this axis")
        return ElementaryAuto.translation(self.ring, self.axis, c)

    def is_identity_only(self) -> bool:
        return self.extent == ONLY_IDENTITY


@dataclass(frozen=True)
class AffineFamily:
    """``X_j -> X_j + sum_i t_i (db_i X_j + dh_i)``: an affine space through the identity.

    ``basis`` holds the directions ``(db_i, dh_i)`` of the homogeneous
    solution space in the unknowns ``(a - 1, h)``, in reduced echelon form.
    Members with ``a = 0`` are excluded.
    """

    ring: PolyRing
    axis: int
    degree_bound: int
    basis: tuple[tuple[FieldScalar, MultiPoly], ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def is_identity_only(self) -> bool:
        return not self.basis

    def member(self, params: Sequence) -> ElementaryAuto:
        if len(params) != len(self.basis):
            raise ValueError(f"family has {len(self.basis)} parameters, got {len(params)}")
        f = self.ring.field
        a = f.one()
        h = self.ring.zero()
        for t, (db, dh) in zip(params, self.basis):
            t = FieldScalar.coerce(t, f)
            a = a + t * db
            h = h + dh.scale(t)
        return ElementaryAuto(self.ring, self.axis, a, h)

    def contains(self, sigma: ElementaryAuto) -> bool:
        if sigma.axis != self.axis:
            return sigma.is_identity()
        if sigma.offset.total_degree() > self.degree_bound:
            return False
        cols = _unknown_columns(self.ring, self.axis, self.degree_bound)
        target = _to_vector(sigma.scale - 1, sigma.offset, cols, self.ring)
        span = [_to_vector(db, dh, cols, self.ring) for db, dh in self.basis]
        n = len(cols) + 1
        return len(canonical_span(span + [target], n, self.ring.field)) == len(canonical_span(span, n, self.ring.field))


@dataclass(frozen=True)
class OffsetFamily:
    """``X_j -> X_j + r`` for every polynomial r in the ``depends_on`` variables."""

    ring: PolyRing
    axis: int
    depends_on: tuple[int, ...]

    def member(self, r: MultiPoly) -> ElementaryAuto:
        if not r.variables() <= set(self.depends_on):
            raise ValueError(f"offset {r} outside the family")
        return ElementaryAuto(self.ring, self.axis, 1, r)

    def is_identity_only(self) -> bool:
        return False


@dataclass(frozen=True)
class ScalingFamily:
    """``X_j -> lam (X_j + center) - center (+ gamma)`` for ``lam^order = 1``.

    ``order == 0`` means every nonzero lam; ``translation_free`` adds an
    arbitrary constant gamma.  ``members`` lists the concrete elements with
    gamma = 0 realizable in the active coefficient field.
    """

    ring: PolyRing
    axis: int
    order: int
    center: MultiPoly
    translation_free: bool = False
    members: tuple[ElementaryAuto, ...] = field(default=())

    def member(self, lam, gamma=0) -> ElementaryAuto:
        lam = FieldScalar.coerce(lam, self.ring.field)
        if self.order and lam**self.order != 1:
            raise ValueError(f"scale must be a root of unity of order dividing {self.order}")
        if gamma and not self.translation_free:
            raise ValueError("family has no free translation part")
        off = self.center.scale(lam - 1) + self.ring.const(gamma)
        return ElementaryAuto(self.ring, self.axis, lam, off)

    def is_identity_only(self) -> bool:
        return self.order == 1 and not self.translation_free

    @property
    def realizable_order(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ExplicitGenerators:
    theorem: str
    generators: tuple
    notes: tuple[str, ...] = ()


CommutantFamily = Union[Translations, AffineFamily, OffsetFamily, ScalingFamily, ExplicitGenerators]


@dataclass(frozen=True)
class StabilityWitness:
    u: MultiPoly
    cofactor: MultiPoly | None
    degenerate: bool


# --- helpers -----------------------------------------------------------------


def default_degree_bound(D: Derivation) -> int:
    return 1 + max((f.total_degree() for f in D.images), default=0)


def _unknown_columns(ring: PolyRing, axis: int, d: int) -> list[tuple[int, ...]]:
    others = [i for i in range(ring.nvars) if i != axis]
    return ring.monomials_up_to(d, others)


def _to_vector(db: FieldScalar, dh: MultiPoly, cols, ring: PolyRing) -> list[FieldScalar]:
    return [db] + [dh.coeff(c) for c in cols]


# --- translations ------------------------------------------------------------


def translation_commutant(D: Derivation) -> list[Translations]:
    out = []
    for j in range(D.ring.nvars):
        moves = any(f.depends_on(j) for f in D.images)
        out.append(Translations(D.ring, j, ONLY_IDENTITY if moves else ALL_SHIFTS))
    return out


# --- affine solver -----------------------------------------------------------


def _residual(D: Derivation, j: int, db: FieldScalar, h: MultiPoly) -> list[MultiPoly]:
    """Linear residuals of the commutation equations in ``(a - 1, h)``."""
    ring = D.ring
    xj = ring.var(j)
    out = []
    for k, f in enumerate(D.images):
        coeffs = f.coefficients_in(j)
        p = coeffs.get(1, ring.zero())
        q = coeffs.get(0, ring.zero())
        if k != j:
            out.append(p * (xj.scale(db) + h))
        else:
            out.append(p * h - q.scale(db) - derive(D, h))
    return out


def affine_axis_commutant(D: Derivation, j: int | str, d: int | None = None) -> AffineFamily:
    """All elementary automorphisms on axis ``j`` with offset degree <= d commuting with D."""
    ring = D.ring
    j = ring.index(j)
    bad = [k for k, f in enumerate(D.images) if f.degree(j) > 1]
    if bad:
        names = ", ".join(f"D({ring.names[k]})" for k in bad)
        raise PreconditionViolation(f"{names} not affine in {ring.names[j]}")
    if d is None:
        d = default_degree_bound(D)
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    f0 = ring.field
    cols = _unknown_columns(ring, j, d)
    columns = [_residual(D, j, f0.one(), ring.zero())]
    for c in cols:
        columns.append(_residual(D, j, f0.zero(), ring.monomial(c)))
    # one row per (equation, monomial)
    keys = sorted({(k, e) for col in columns for k, r in enumerate(col) for e in r.terms})
    rows = [[col[k].coeff(e) for col in columns] for k, e in keys]
    basis = nullspace(rows, len(columns), f0) if rows else _unit_basis(len(columns), f0)
    basis = canonical_span(basis, len(columns), f0)
    fam = []
    for v in basis:
        h = ring.from_terms({c: x for c, x in zip(cols, v[1:]) if x})
        fam.append((v[0], h))
    return AffineFamily(ring, j, d, tuple(fam))


def _unit_basis(n: int, field_):
    out = []
    for i in range(n):
        v = [field_.zero()] * n
        v[i] = field_.one()
        out.append(v)
    return out


# --- scalar solver -----------------------------------------------------------


def _pin_center(f: MultiPoly, j: int) -> tuple[str, MultiPoly | None, int]:
    """From ``f(a X + h) = a^e f + ...`` with deg_X f = n: h = center*(a - 1).

    Returns ("identity", None, n) when the leading coefficient does not divide
    the next one (which forces a = 1, h = 0), else ("center", center, n).
    """
    cf = f.coefficients_in(j)
    n = f.degree(j)
    lead = cf[n]
    nxt = cf.get(n - 1, f.ring.zero())
    q = divides(lead, nxt)
    if q is None:
        return "identity", None, n
    return "center", q.scale(FieldScalar.coerce(n, f.ring.field).inverse()), n


def _identity_family(ring: PolyRing, j: int) -> ScalingFamily:
    return ScalingFamily(ring, j, 1, ring.zero(), False, (ElementaryAuto.identity(ring, j),))


def scalar_axis_commutant(D: Derivation, j: int | str) -> ScalingFamily:
    """Commuting elementaries on axis j when the offset is forced by the equations.

    The offset is first pinned to ``center * (a - 1)`` (plus possibly a free
    constant) by comparing the two top X_j-coefficients of some ``f_k``; the
    commutation residuals then become polynomials in a alone, whose common
    roots form the group of ``order``-th roots of unity.
    """
    ring = D.ring
    j = ring.index(j)
    imgs = D.images
    others = [k for k in range(ring.nvars) if k != j]
    center: MultiPoly | None = None
    free_gamma = False

    for k in others:
        if imgs[k].degree(j) >= 1:
            kind, c, _ = _pin_center(imgs[k], j)
            if kind == "identity":
                return _identity_family(ring, j)
            center = c
            break
    fj = imgs[j]
    if center is None and fj.degree(j) >= 2:
        kind, c, _ = _pin_center(fj, j)
        if kind == "identity":
            return _identity_family(ring, j)
        center = c
    if center is None:
        rest_zero = all(imgs[k].is_zero() for k in others)
        if rest_zero and fj.degree(j) == 1:
            # c h + (1 - a) c0 = D(h) = 0
            cf = fj.coefficients_in(j)
            q = divides(cf[1], cf.get(0, ring.zero()))
            if q is None:
                return _identity_family(ring, j)
            center = q
        elif not others:
            center, free_gamma = ring.zero(), True
        elif len(others) == 1 and not fj.depends_on(j) and not imgs[others[0]].depends_on(j):
            k = others[0]
            fk = imgs[k]
            if fk.is_zero():
                raise Inconclusive(
                    f"D({ring.names[k]}) = 0: offsets on {ring.names[j]} are not forced to be constant"
                )
            # h'(X_k) f_k = (1 - a) f_j
            free_gamma = True
            q = divides(fk, fj) if not fj.is_zero() else ring.zero()
            center = ring.zero() if q is None else -antiderivative(q, k)
        else:
            raise Inconclusive(
                f"cannot prove the offset on {ring.names[j]} is determined by the scale; "
                "use affine-commutant or check candidates with commutes"
            )

    order = _solve_scale(D, j, center, free_gamma)
    members: tuple[ElementaryAuto, ...] = ()
    if order >= 1:
        t = gcd(order, ring.field.roots_of_unity_count)
        w = ring.field.root_of_unity(t)
        members = tuple(
            ElementaryAuto(ring, j, w**i, center.scale(w**i - 1)) for i in range(t)
        )
    if order == 1:
        center = ring.zero()
    fam = ScalingFamily(ring, j, order, center, free_gamma, members)
    for m in members:
        assert commutes(m, D), f"internal error: {m} does not commute"
    return fam


def _solve_scale(D: Derivation, j: int, center: MultiPoly, free_gamma: bool) -> int:
    """Order s of the group {a : X_j -> a X_j + center (a - 1) (+ gamma) commutes}, 0 for all a."""
    ring = D.ring
    n = ring.nvars
    big = ring.extend(["@a", "@g"])
    A = big.var(n)
    G = big.var(n + 1)
    Dx = D.extend(big)
    imgs = [big.var(i) for i in range(n)] + [A, G]
    off = ring.embed(center, big) * (A - 1)
    if free_gamma:
        off = off + G
    imgs[j] = big.var(j) * A + off
    coeff_polys: dict[tuple, dict] = {}
    for k in range(n):
        fk = ring.embed(D.images[k], big)
        r = fk.subs(imgs) - derive(Dx, imgs[k])
        for e, c in r.terms.items():
            coeff_polys.setdefault(e[:n], {})[e[n:]] = c
    aring = PolyRing(["@a"], ring.field)
    g = aring.zero()
    for terms in coeff_polys.values():
        if any(ge for (_, ge) in terms):
            raise Inconclusive("free translation part is constrained; family shape not recognised")
        p = aring.from_terms({(ae,): c for (ae, _), c in terms.items()})
        g = univariate_gcd(g, p, 0)
    if g.is_zero():
        return 0
    dense = to_dense(g, 0)
    while dense and not dense[0]:
        dense = dense[1:]
    g = from_dense(aring, 0, dense)
    sq = univariate_gcd(g, g.diff(0), 0)
    g = divides(sq, g)
    lead = to_dense(g, 0)[-1]
    g = g.scale(lead.inverse())
    s = g.degree(0)
    if s < 1 or g != aring.var(0) ** s - 1:
        raise Inconclusive(f"scale constraint {g} does not describe a group of roots of unity")
    return s


def axis_commutant(D: Derivation, j: int, d: int | None = None):
    """Affine solver when applicable, scalar solver otherwise."""
    try:
        return affine_axis_commutant(D, j, d)
    except PreconditionViolation:
        return scalar_axis_commutant(D, j)


# --- closed forms ------------------------------------------------------------


def _require(cond: bool, name: str, detail: str, witness=None):
    if not cond:
        raise HypothesisFailure(name, detail, witness)


def _group_1var(D: Derivation) -> ExplicitGenerators:
    a = D.images[0]
    if not a.is_constant():
        raise TemplateMismatch("one-variable template needs D = a d/dX with a constant")
    _require(not a.is_zero(), "nonzero", "D = 0")
    return ExplicitGenerators("T1VAR", (Translations(D.ring, 0, ALL_SHIFTS),))


def _group_tigtc(D: Derivation) -> ExplicitGenerators:
    ring = D.ring
    c = D.images[0].constant_coeff()
    f = D.images[1]
    _require(f.degree(0) >= 1, "deg f >= 1", f"f = {f} has degree {f.degree(0)}")
    F = antiderivative(f, 0)
    one = ring.field.one()
    basis = ((one, -F.scale(c.inverse())), (ring.field.zero(), ring.one()))
    fam = AffineFamily(ring, 1, F.total_degree(), basis)
    return ExplicitGenerators(
        "TIGTC",
        (fam,),
        ("members (X, b*Y + (1-b)/c*F(X) + g) with F' = f, b != 0",),
    )


def _scaling_members(ring, j, s) -> tuple[ElementaryAuto, ...]:
    t = gcd(s, ring.field.roots_of_unity_count)
    w = ring.field.root_of_unity(t)
    return tuple(ElementaryAuto(ring, j, w**i, ring.zero()) for i in range(t))


def _check_depressed(f: MultiPoly, var: int):
    n = f.degree(var)
    if n >= 2:
        cf = to_dense(f, var)
        _require(not cf[n - 1], "depressed", f"coefficient of degree {n - 1} in {f} is nonzero", f)


def _group_tigt0(D: Derivation) -> ExplicitGenerators:
    ring = D.ring
    f = D.images[1]
    _require(f.degree(0) >= 2, "deg f >= 2", f"f = {f} has degree {f.degree(0)}")
    _check_depressed(f, 0)
    s = scaling_order(f, 0)
    _require(power_decompose(f, 0, s) is not None, "f = h(X^s)", f"no decomposition with s = {s}")
    gens = (
        OffsetFamily(ring, 1, (0,)),
        ScalingFamily(ring, 0, s, ring.zero(), False, _scaling_members(ring, 0, s)),
    )
    return ExplicitGenerators("TIGT0", gens, (f"s = {s}",))


TAUT_NOTE = (
    "the scaling generator acts on X: (lam*X, Y, Z) commutes with D, "
    "while (X, lam*Y, Z) does not for lam != 1"
)


def _group_taut(D: Derivation) -> ExplicitGenerators:
    ring = D.ring
    f, g = D.images[1], D.images[2]
    _require(f.degree(0) >= 1, "f non-constant", f"f = {f}")
    _check_depressed(f, 0)
    cf = common_factor_check(f, g, 0)
    _require(isinstance(cf, Coprime), "no common factor", f"f and g share {getattr(cf, 'factor', '')}",
             getattr(cf, "factor", None))
    s = scaling_order(f, 0)
    sg = scaling_order(g, 0)
    _require(sg % s == 0, "g(lam X, Y) = g(X, Y)", f"g is not invariant under {s}-th roots of unity")
    gens = (
        OffsetFamily(ring, 2, (0,)),
        ScalingFamily(ring, 0, s, ring.zero(), False, _scaling_members(ring, 0, s)),
    )
    return ExplicitGenerators("TAUT", gens, (f"s = {s}", TAUT_NOTE))


def closed_form_tame_group(D: Derivation) -> ExplicitGenerators:
    """Generators of Tame_D for the one-, two- and three-variable triangular templates."""
    imgs = D.images
    n = D.ring.nvars
    if n == 1:
        return _group_1var(D)
    if all(f.is_zero() for f in imgs):
        raise HypothesisFailure("nonzero", "D = 0")
    if n == 2 and imgs[0].is_constant() and imgs[1].is_univariate_in(0):
        if not imgs[0].is_zero():
            return _group_tigtc(D)
        return _group_tigt0(D)
    if (
        n == 3
        and imgs[0].is_zero()
        and imgs[1].is_univariate_in(0)
        and imgs[2].variables() <= {0, 1}
    ):
        return _group_taut(D)
    raise TemplateMismatch("derivation does not match any closed-form template")


# --- stable ideals from commuting elementaries -------------------------------


def elementary_stable_witness(D: Derivation, sigma: ElementaryAuto) -> StabilityWitness:
    """``u = sigma(X_j) - X_j`` generates a D-stable ideal when sigma commutes with D."""
    if not commutes(sigma, D):
        raise NotCommuting(f"{sigma} does not commute with D")
    u = sigma.image() - sigma.ring.var(sigma.axis)
    if u.is_constant():
        return StabilityWitness(u, None if u.is_zero() else u.ring.zero(), True)
    q = divides(u, derive(D, u))
    assert q is not None, "commuting elementary without divisibility"
    return StabilityWitness(u, q, False)


# --- comparing descriptions per axis -----------------------------------------


def axis_summary(fam, ring: PolyRing, axis: int, d: int):
    """Normal form of the commuting elementaries one family allows on ``axis``.

    Linear families become the canonical span of ``(a - 1, h)`` truncated at
    degree ``d``; finite scaling groups become a tuple.
    """
    cols = _unknown_columns(ring, axis, d)
    n = len(cols) + 1
    f0 = ring.field
    zero, one = f0.zero(), f0.one()
    vecs: list[list[FieldScalar]]
    if fam is None:
        vecs = []
    elif isinstance(fam, Translations):
        vecs = [] if fam.is_identity_only() else [_to_vector(zero, ring.one(), cols, ring)]
    elif isinstance(fam, AffineFamily):
        vecs = [_to_vector(db, dh, cols, ring) for db, dh in fam.basis]
    elif isinstance(fam, OffsetFamily):
        vecs = [
            _to_vector(zero, ring.monomial(c), cols, ring)
            for c in cols
            if all(x == 0 or i in fam.depends_on for i, x in enumerate(c))
        ]
    elif isinstance(fam, ScalingFamily):
        if fam.order >= 2:
            return ("finite", fam.order, fam.center, fam.translation_free)
        vecs = []
        if fam.order == 0:
            vecs.append(_to_vector(one, fam.center, cols, ring))
        if fam.translation_free:
            vecs.append(_to_vector(zero, ring.one(), cols, ring))
    else:
        raise TypeError(f"cannot summarise {fam!r}")
    rows = canonical_span(vecs, n, f0)
    return ("linear", tuple(tuple(r) for r in rows))
