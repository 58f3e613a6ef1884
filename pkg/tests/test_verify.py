import pytest

from tamegroup.errors import PreconditionViolation, TemplateMismatch
from tamegroup.field import CoefficientField
from tamegroup.maps import commutes
from tamegroup.parse import parse_derivation
from tamegroup.poly import PolyRing
from tamegroup.report import encode
from tamegroup.verify import sample_members, verify_theorem

R1 = PolyRing(["X"])
R2 = PolyRing(["X", "Y"])
R3 = PolyRing(["X", "Y", "Z"])


def run(tid, s, ring, **kw):
    return verify_theorem(tid, parse_derivation(s, ring), **kw)


@pytest.mark.parametrize(
    "tid,s,ring,verdict",
    [
        ("TIGTC", "1;X", R2, "Match"),
        ("SHAM", "1;X*Y+1", R2, "Match"),
        ("SHAM", "1;Y+X", R2, "Match"),
        ("TAUT", "0;X^2;X*Y", R3, "HypothesesNotMet"),
        ("TAUT", "0;X^2;Y", R3, "Match"),
        ("TIGT0", "0;X^2", R2, "Match"),
        ("T1VAR", "3", R1, "Match"),
        ("GENTRANS", "1;X*Y+1", R2, "Match"),
        ("GENTRANS", "1;0", R2, "HypothesesNotMet"),
        ("NOTRANS", "1;X*Y+1", R2, "Match"),
        ("SIMPLE2V", "1;X*Y+1", R2, "Match"),
        ("SIMPLE2V", "1;Y", R2, "HypothesesNotMet"),
    ],
)
def test_verdicts(tid, s, ring, verdict):
    r = run(tid, s, ring)
    assert r.verdict == verdict, r.detail
    for mc in r.member_checks:
        assert mc.commutes and mc.stable


def test_taut_records_common_factor():
    r = run("TAUT", "0;X^2;X*Y", R3)
    assert "X" in r.detail and r.hypotheses[0].passed is False


def test_structural_order_and_scales_reported():
    for tid, s, ring in (("TIGT0", "0;X^2", R2), ("TAUT", "0;X^2;Y", R3)):
        notes = run(tid, s, ring).notes
        assert "s = 2" in notes
        assert "realizable scales on X: 1, -1" in notes


def test_scales_over_cyclotomic_field():
    ring = PolyRing(["X", "Y"], CoefficientField(3))
    r = run("TIGT0", "0;X^3", ring)
    assert r.verdict == "Match"
    scales = next(n for n in r.notes if n.startswith("realizable"))
    assert scales.count(",") == 2


def test_taut_note_on_scaling_axis():
    notes = " ".join(run("TAUT", "0;X^2;Y", R3).notes)
    assert "(lam*X, Y, Z) commutes" in notes


def test_sampled_members_commute():
    r = run("TIGTC", "1;X", R2)
    assert r.member_checks
    D = parse_derivation("1;X", R2)
    for fam in r.computed:
        for m in sample_members(fam):
            assert commutes(m, D)


def test_determinism():
    for tid, s, ring in (("TIGTC", "1;X", R2), ("SHAM", "1;Y+X", R2), ("TAUT", "0;X^2;Y", R3)):
        assert encode(run(tid, s, ring)) == encode(run(tid, s, ring))


def test_degree_raised_note():
    r = run("TIGTC", "1;X", R2, degree=0)
    assert r.degree_bound >= 2 and any("raised" in n for n in r.notes)


def test_shape_errors():
    with pytest.raises(TemplateMismatch):
        run("TIGTC", "0;X^2;Y", R3)
    with pytest.raises(TemplateMismatch):
        run("SHAM", "-Y;X", R2)
    with pytest.raises(TemplateMismatch):
        run("SIMPLE2V", "1;X;Y", R3)
    with pytest.raises(PreconditionViolation):
        run("NOPE", "1;X", R2)
