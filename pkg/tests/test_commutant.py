import random
from fractions import Fraction
from itertools import product

import pytest

from tamegroup.commutant import (
    AffineFamily,
    ScalingFamily,
    Translations,
    affine_axis_commutant,
    axis_commutant,
    axis_summary,
    closed_form_tame_group,
    elementary_stable_witness,
    scalar_axis_commutant,
    translation_commutant,
)
from tamegroup.errors import HypothesisFailure, Inconclusive, NotCommuting, PreconditionViolation, TemplateMismatch
from tamegroup.field import CoefficientField
from tamegroup.maps import Derivation, ElementaryAuto, commutes, derive
from tamegroup.algebra import divides
from tamegroup.parse import parse_derivation, parse_poly
from tamegroup.poly import PolyRing
from tamegroup.verify import sample_members

from .helpers import POOL, rand_poly

R = PolyRing(["X", "Y"])
R3 = PolyRing(["X", "Y", "Z"])


def D_(s, ring=R):
    return parse_derivation(s, ring)


def P(s, ring=R):
    return parse_poly(s, ring)


def in_scaling(fam: ScalingFamily, s: ElementaryAuto) -> bool:
    if s.axis != fam.axis:
        return s.is_identity()
    if fam.order and s.scale**fam.order != 1:
        return False
    rest = s.offset - fam.center.scale(s.scale - 1)
    return rest.is_constant() if fam.translation_free else rest.is_zero()


def contains(fam, s: ElementaryAuto) -> bool:
    if isinstance(fam, AffineFamily):
        return fam.contains(s)
    if isinstance(fam, ScalingFamily):
        return in_scaling(fam, s)
    raise TypeError(fam)


# --- worked examples ---------------------------------------------------------


def test_translation_examples():
    assert [t.extent for t in translation_commutant(D_("-Y;X"))] == ["OnlyIdentity"] * 2
    assert translation_commutant(D_("0;Y"))[0].extent == "AllShifts"
    assert [t.extent for t in translation_commutant(D_("1;X*Y+1"))] == ["OnlyIdentity"] * 2


def test_translation_brute_force():
    rng = random.Random(12)
    for _ in range(40):
        D = Derivation(R, (rand_poly(rng, R, 2, 3), rand_poly(rng, R, 2, 3)))
        for t in translation_commutant(D):
            moved = commutes(ElementaryAuto.translation(R, t.axis, 1), D)
            assert moved == (t.extent == "AllShifts")


def test_affine_scaling_example_axis_y():
    fam = affine_axis_commutant(D_("0;Y"), "Y", 2)
    assert fam.basis == ((1, R.zero()),)
    for beta in (2, -1, Fraction(1, 3)):
        assert commutes(ElementaryAuto(R, 1, beta, R.zero()), D_("0;Y"))


def test_affine_tigtc_example():
    fam = affine_axis_commutant(D_("1;X"), "Y", 3)
    assert fam.degree_bound == 3
    assert fam.basis == ((1, P("-1/2*X^2")), (0, P("1")))
    # (X, bY + (1-b)X^2/2 + g)
    for b, g in ((2, 0), (-1, 5), (Fraction(1, 2), -1)):
        s = ElementaryAuto(R, 1, b, P("X^2").scale((1 - Fraction(b)) / 2) + R.const(g))
        assert fam.contains(s) and commutes(s, D_("1;X"))


def test_affine_simple_example_identity_only():
    assert affine_axis_commutant(D_("1;X*Y+1"), "Y", 5).is_identity_only()


def test_affine_precondition_names_equation():
    with pytest.raises(PreconditionViolation, match="D\\(Y\\)"):
        affine_axis_commutant(D_("1;X^2*Y"), "X")


def test_scalar_examples():
    fam = scalar_axis_commutant(D_("0;X^2"), "X")
    assert fam.order == 2
    assert sorted(str(m) for m in fam.members) == ["(-X, Y)", "(X, Y)"]
    for c in (-1, 1):
        assert commutes(ElementaryAuto(R, 0, c, R.zero()), D_("0;X^2"))
    assert scalar_axis_commutant(D_("1;X"), "X").is_identity_only()
    assert scalar_axis_commutant(D_("-Y;X"), "X").is_identity_only()


def test_scalar_members_follow_field():
    D = D_("0;X^3", PolyRing(["X", "Y"]))
    assert scalar_axis_commutant(D, 0).order == 3 and len(scalar_axis_commutant(D, 0).members) == 1
    S = PolyRing(["X", "Y"], CoefficientField(3))
    fam = scalar_axis_commutant(parse_derivation("0;X^3", S), 0)
    assert fam.order == 3 and fam.realizable_order == 3
    assert all(commutes(m, parse_derivation("0;X^3", S)) for m in fam.members)


def test_scalar_non_depressed_center():
    D = D_("0;(X+1)^2")
    fam = scalar_axis_commutant(D, 0)
    assert fam.order == 2 and fam.center == P("1")
    assert commutes(fam.member(-1), D)
    assert fam.member(-1).offset == P("-2")


def test_scalar_inconclusive():
    with pytest.raises(Inconclusive):
        scalar_axis_commutant(D_("1;X*Y+1"), "Y")


def test_closed_form_one_variable():
    R1 = PolyRing(["X"])
    g = closed_form_tame_group(parse_derivation("3", R1))
    assert g.theorem == "T1VAR"
    assert g.generators == (Translations(R1, 0, "AllShifts"),)


def test_closed_form_tigt0():
    g = closed_form_tame_group(D_("0;X^2"))
    assert g.theorem == "TIGT0"
    off, sc = g.generators
    assert off.axis == 1 and off.depends_on == (0,)
    assert sc.order == 2 and [str(m.scale) for m in sc.members] == ["1", "-1"]
    for m in sample_members(g):
        assert commutes(m, D_("0;X^2"))


def test_closed_form_taut():
    D = D_("0;X^2;Y", R3)
    g = closed_form_tame_group(D)
    assert g.theorem == "TAUT"
    off, sc = g.generators
    assert off.axis == 2 and sc.axis == 0 and sc.order == 2
    for m in sample_members(g):
        assert commutes(m, D)
    # the other reading of the scaling generator does not commute
    assert not commutes(ElementaryAuto(R3, 1, -1, R3.zero()), D)
    assert any("lam*X" in n for n in g.notes)


def test_closed_form_errors():
    with pytest.raises(TemplateMismatch):
        closed_form_tame_group(D_("-Y;X"))
    with pytest.raises(HypothesisFailure) as e:
        closed_form_tame_group(D_("0;X^2;X*Y", R3))
    assert e.value.witness == P("X", R3)
    with pytest.raises(HypothesisFailure):
        closed_form_tame_group(D_("0;X^2+X"))
    with pytest.raises(HypothesisFailure):
        closed_form_tame_group(D_("0;0"))


def test_tigtc_beta_one_gives_translations():
    g = closed_form_tame_group(D_("2;X^2"))
    fam = g.generators[0]
    for c in (1, -3, Fraction(1, 2)):
        # beta = 1 means t_1 = 0, h = gamma
        s = fam.member([0, c])
        assert s.scale == 1 and s.offset == R.const(c)
        assert commutes(s, D_("2;X^2"))


def test_stable_witness_examples():
    D = D_("1;Y+X")
    w = elementary_stable_witness(D, ElementaryAuto(R, 1, 2, P("X+1")))
    assert w.u == P("Y+X+1") and w.cofactor == P("1") and not w.degenerate
    t = elementary_stable_witness(D_("0;Y"), ElementaryAuto.translation(R, 0, 4))
    assert t.degenerate and t.u == 4
    i = elementary_stable_witness(D, ElementaryAuto.identity(R, 1))
    assert i.degenerate and i.u.is_zero()
    with pytest.raises(NotCommuting):
        elementary_stable_witness(D, ElementaryAuto(R, 1, 2, R.zero()))


# --- properties --------------------------------------------------------------


def _random_derivations(rng, count):
    out = []
    for k in range(count):
        kind = k % 4
        if kind == 0:
            out.append(Derivation(R, (R.const(rng.choice(POOL)), rand_poly(rng, R, 3, 3, variables=[0]))))
        elif kind == 1:
            a = rand_poly(rng, R, 2, 2, variables=[0])
            b = rand_poly(rng, R, 2, 2, variables=[0])
            out.append(Derivation(R, (R.one(), a * R.var(1) + b)))
        elif kind == 2:
            out.append(Derivation(R, (rand_poly(rng, R, 1, 2), rand_poly(rng, R, 1, 2))))
        else:
            out.append(Derivation(R, (rand_poly(rng, R, 2, 3), rand_poly(rng, R, 2, 3))))
    return out


def _families(D):
    for j in range(D.ring.nvars):
        try:
            yield j, axis_commutant(D, j, 3)
        except Inconclusive:
            continue


def test_soundness_sampled_members():
    rng = random.Random(13)
    for D in _random_derivations(rng, 60):
        for j, fam in _families(D):
            for m in sample_members(fam):
                assert commutes(m, D), (D, fam, m)
            if isinstance(fam, AffineFamily) and fam.dimension:
                for _ in range(3):
                    try:
                        m = fam.member([rng.choice(POOL) for _ in fam.basis])
                    except ValueError:
                        continue
                    assert commutes(m, D)


def _candidates(j):
    other = 1 - j
    mons = [R.var(other) ** k for k in range(3)]
    for a in (1, -1, 2, Fraction(1, 2)):
        for cs in product((-1, 0, 1), repeat=3):
            h = R.zero()
            for c, mnm in zip(cs, mons):
                h = h + mnm.scale(c)
            yield ElementaryAuto(R, j, a, h)


def test_completeness_brute_force():
    rng = random.Random(14)
    checked = 0
    for D in _random_derivations(rng, 24):
        for j, fam in _families(D):
            for s in _candidates(j):
                if commutes(s, D):
                    checked += 1
                    assert contains(fam, s), (D, j, s, fam)
    assert checked > 20


def test_divisibility_mechanism():
    rng = random.Random(15)
    for D in _random_derivations(rng, 40):
        for j, fam in _families(D):
            for s in sample_members(fam):
                u = s.image() - R.var(j)
                if u.is_zero():
                    continue
                q = divides(u, derive(D, u))
                assert q is not None and q * u == derive(D, u)


@pytest.mark.parametrize("text", ["1;X", "2;X^2+1", "-1;X^3", "0;X^2", "0;X^3", "0;X^4+X^2"])
def test_solvers_agree_with_closed_forms(text):
    D = D_(text)
    g = closed_form_tame_group(D)
    expected = {fam.axis: fam for fam in g.generators}
    for j in range(2):
        got = axis_commutant(D, j, 5)
        assert axis_summary(got, R, j, 5) == axis_summary(expected.get(j), R, j, 5)


def test_solvers_agree_with_taut():
    D = D_("0;X^2;Y", R3)
    g = closed_form_tame_group(D)
    expected = {fam.axis: fam for fam in g.generators}
    for j in range(3):
        assert axis_summary(axis_commutant(D, j, 3), R3, j, 3) == axis_summary(expected.get(j), R3, j, 3)
