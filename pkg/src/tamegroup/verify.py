"""End-to-end checks of the closed-form and structural statements on given instances.

Each check runs the per-axis solvers, builds the expected description and
compares both through :func:`axis_summary`, i.e. as solution sets up to the
offset degree bound, never by sampling alone.  Sampled members are still
pushed through ``commutes`` and the stable-ideal mechanism as a spot check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .commutant import (
    AffineFamily,
    ExplicitGenerators,
    OffsetFamily,
    ScalingFamily,
    Translations,
    axis_commutant,
    axis_summary,
    closed_form_tame_group,
    default_degree_bound,
    elementary_stable_witness,
    translation_commutant,
)
from .errors import DomainError, HypothesisFailure, Inconclusive, PreconditionViolation, TemplateMismatch
from .maps import Derivation, ElementaryAuto, classify_shape, commutes
from .simplicity import NotSimple, Simple, search_non_simplicity

__all__ = ["THEOREMS", "Hypothesis", "MemberCheck", "TheoremReport", "verify_theorem", "sample_members"]

THEOREMS = ("T1VAR", "TIGTC", "TIGT0", "TAUT", "GENTRANS", "NOTRANS", "SIMPLE2V", "SHAM")

MATCH = "Match"
MISMATCH = "Mismatch"
NOT_MET = "HypothesesNotMet"


@dataclass(frozen=True)
class Hypothesis:
    name: str
    passed: bool | None  # None: could not be decided
    witness: object = None


@dataclass(frozen=True)
class MemberCheck:
    member: ElementaryAuto
    commutes: bool
    stable: bool


@dataclass
class TheoremReport:
    theorem_id: str
    instance: Derivation
    degree_bound: int
    hypotheses: list[Hypothesis] = field(default_factory=list)
    computed: list = field(default_factory=list)
    expected: list = field(default_factory=list)
    verdict: str = MATCH
    detail: str = ""
    notes: list[str] = field(default_factory=list)
    member_checks: list[MemberCheck] = field(default_factory=list)


# --- sampling ----------------------------------------------------------------


def sample_members(fam) -> list[ElementaryAuto]:
    """A few concrete non-identity members of a family (gamma, t, r small)."""
    if fam is None:
        return []
    if isinstance(fam, ExplicitGenerators):
        return [m for g in fam.generators for m in sample_members(g)]
    if isinstance(fam, ElementaryAuto):
        return [fam]
    ring = fam.ring
    if isinstance(fam, Translations):
        return [] if fam.is_identity_only() else [fam.member(1)]
    if isinstance(fam, AffineFamily):
        out = []
        for i in range(fam.dimension):
            for t in (1, 2):
                params = [0] * fam.dimension
                params[i] = t
                try:
                    out.append(fam.member(params))
                    break
                except ValueError:
                    continue
        return out
    if isinstance(fam, OffsetFamily):
        rs = [ring.one()] + [ring.var(v) for v in fam.depends_on]
        return [fam.member(r) for r in rs]
    if isinstance(fam, ScalingFamily):
        out = [m for m in fam.members if not m.is_identity()]
        if fam.order == 0:
            out.append(fam.member(2))
        if fam.translation_free:
            out.append(fam.member(1, 1))
        return out
    raise TypeError(f"cannot sample {fam!r}")


def _check_members(D: Derivation, fams, report: TheoremReport) -> bool:
    ok = True
    for fam in fams:
        for m in sample_members(fam):
            c = commutes(m, D)
            s = False
            if c:
                try:
                    w = elementary_stable_witness(D, m)
                    s = w.degenerate or w.cofactor is not None
                except DomainError:
                    s = False
            report.member_checks.append(MemberCheck(m, c, s))
            ok = ok and c and s
    return ok


# --- comparison --------------------------------------------------------------


def _family_axes(fam) -> dict[int, object]:
    if isinstance(fam, ExplicitGenerators):
        return {g.axis: g for g in fam.generators}
    return {fam.axis: fam}


def _compare(D: Derivation, computed: dict, expected: dict, d: int) -> list[str]:
    ring = D.ring
    bad = []
    for j in range(ring.nvars):
        got = axis_summary(computed.get(j), ring, j, d)
        want = axis_summary(expected.get(j), ring, j, d)
        if got != want:
            bad.append(f"axis {ring.names[j]}: solver and expected description differ")
    return bad


def _solve_axes(D: Derivation, d: int, report: TheoremReport) -> dict[int, object] | None:
    out = {}
    for j in range(D.ring.nvars):
        try:
            fam = axis_commutant(D, j, d)
        except Inconclusive as e:
            report.verdict = MISMATCH
            report.detail = f"axis {D.ring.names[j]}: {e}"
            return None
        out[j] = fam
        report.computed.append(fam)
    return out


def _simplicity(D: Derivation, d: int) -> tuple[bool | None, object]:
    v = search_non_simplicity(D, d)
    if isinstance(v, Simple):
        return True, v.reason
    if isinstance(v, NotSimple):
        return False, v.ideal.u
    return None, v.searched


# --- per-theorem checks ------------------------------------------------------


def _closed_form_check(D: Derivation, d: int, report: TheoremReport, theorem: str) -> TheoremReport:
    try:
        gens = closed_form_tame_group(D)
    except HypothesisFailure as e:
        report.hypotheses.append(Hypothesis(e.hypothesis, False, e.witness))
        report.verdict = NOT_MET
        report.detail = e.detail
        _solve_axes(D, d, report)
        if report.verdict == MISMATCH:
            report.verdict = NOT_MET
        return report
    if gens.theorem != theorem:
        raise TemplateMismatch(f"instance matches template {gens.theorem}, not {theorem}")
    report.hypotheses.append(Hypothesis("template hypotheses", True))
    report.expected.append(gens)
    report.notes.extend(gens.notes)
    for g in gens.generators:
        if isinstance(g, ScalingFamily):
            report.notes.append(
                f"realizable scales on {D.ring.names[g.axis]}: "
                + ", ".join(str(m.scale) for m in g.members)
            )
    computed = _solve_axes(D, d, report)
    if computed is None:
        return report
    bad = _compare(D, computed, _family_axes(gens), d)
    if not _check_members(D, list(computed.values()) + [gens], report):
        bad.append("a sampled member failed commutes or the stable-ideal check")
    if bad:
        report.verdict = MISMATCH
        report.detail = "; ".join(bad)
    return report


def _shape(cond: bool, msg: str) -> None:
    if not cond:
        raise TemplateMismatch(msg)


def _gentrans(D: Derivation, d: int, report: TheoremReport) -> TheoremReport:
    _shape(D.ring.nvars >= 2, "needs at least 2 variables")
    status, wit = _simplicity(D, d)
    report.hypotheses.append(Hypothesis("D simple", status, wit))
    if status is False:
        report.verdict = NOT_MET
        report.detail = "D is not simple"
        return report
    if status is None:
        report.notes.append("simplicity not certified; checking the conclusion only")
    computed = _solve_axes(D, d, report)
    if computed is None:
        return report
    expected = {t.axis: t for t in translation_commutant(D)}
    report.expected.extend(expected.values())
    bad = _compare(D, computed, expected, d)
    if not _check_members(D, computed.values(), report):
        bad.append("a sampled member failed commutes or the stable-ideal check")
    if bad:
        report.verdict = MISMATCH
        report.detail = "; ".join(bad)
    return report


def _notrans(D: Derivation, d: int, report: TheoremReport) -> TheoremReport:
    _shape(D.ring.nvars >= 2, "needs at least 2 variables")
    ring = D.ring
    status, wit = _simplicity(D, d)
    report.hypotheses.append(Hypothesis("D simple", status, wit))
    if status is False:
        report.verdict = NOT_MET
        report.detail = "D is not simple"
        return report
    if status is None:
        report.notes.append("simplicity not certified; checking the conclusion only")
    trans = translation_commutant(D)
    report.computed.extend(trans)
    bad = []
    for t in trans:
        moved = any(f.depends_on(t.axis) for f in D.images)
        if not moved:
            continue
        report.expected.append(Translations(ring, t.axis, "OnlyIdentity"))
        unit = ElementaryAuto.translation(ring, t.axis, 1)
        if not t.is_identity_only() or commutes(unit, D):
            bad.append(f"axis {ring.names[t.axis]}: a nontrivial translation commutes")
    if bad:
        report.verdict = MISMATCH
        report.detail = "; ".join(bad)
    return report


def _identity_everywhere(D: Derivation, d: int, report: TheoremReport) -> TheoremReport:
    computed = _solve_axes(D, d, report)
    if computed is None:
        return report
    bad = _compare(D, computed, {}, d)
    trans = translation_commutant(D)
    report.computed.extend(trans)
    bad += [f"axis {D.ring.names[t.axis]}: translations commute" for t in trans if not t.is_identity_only()]
    if bad:
        report.verdict = MISMATCH
        report.detail = "; ".join(bad)
    return report


def _simple2v(D: Derivation, d: int, report: TheoremReport) -> TheoremReport:
    _shape(D.ring.nvars == 2, "needs exactly 2 variables")
    status, wit = _simplicity(D, d)
    report.hypotheses.append(Hypothesis("D simple (certified)", status, wit))
    if status is not True:
        report.verdict = NOT_MET
        report.detail = "simplicity is not certified" if status is None else "D is not simple"
        return report
    return _identity_everywhere(D, d, report)


def _sham(D: Derivation, d: int, report: TheoremReport) -> TheoremReport:
    _shape(classify_shape(D).is_shamsuddin, "not a Shamsuddin derivation")
    v = search_non_simplicity(D, d)
    report.hypotheses.append(Hypothesis("Shamsuddin shape", True))
    if isinstance(v, Simple):
        report.notes.append("decider: Simple")
        return _identity_everywhere(D, d, report)
    assert isinstance(v, NotSimple)
    sigma = v.automorphism
    report.notes.append(f"decider: NotSimple, stable ideal <{v.ideal.u}>, commuting {sigma}")
    computed = _solve_axes(D, d, report)
    if computed is None:
        return report
    fam = computed[sigma.axis]
    report.expected.append(ExplicitGenerators("SHAM", (sigma,)))
    bad = []
    if fam.is_identity_only():
        bad.append(f"axis {D.ring.names[sigma.axis]}: solver finds only the identity")
    elif isinstance(fam, AffineFamily) and not fam.contains(sigma):
        bad.append(f"axis {D.ring.names[sigma.axis]}: decider automorphism not in the solver family")
    if not _check_members(D, computed.values(), report):
        bad.append("a sampled member failed commutes or the stable-ideal check")
    if bad:
        report.verdict = MISMATCH
        report.detail = "; ".join(bad)
    return report


def verify_theorem(theorem_id: str, D: Derivation, degree: int | None = None) -> TheoremReport:
    """Run one named check; hypothesis failures are reported, shape mismatches raise."""
    tid = theorem_id.upper()
    if tid not in THEOREMS:
        raise PreconditionViolation(f"unknown theorem id {theorem_id!r}; choose from {', '.join(THEOREMS)}")
    d = default_degree_bound(D) if degree is None else max(degree, default_degree_bound(D))
    report = TheoremReport(tid, D, d)
    if degree is not None and degree < d:
        report.notes.append(f"degree bound raised from {degree} to {d}")
    if tid in ("T1VAR", "TIGTC", "TIGT0", "TAUT"):
        want = {"T1VAR": 1, "TIGTC": 2, "TIGT0": 2, "TAUT": 3}[tid]
        _shape(D.ring.nvars == want, f"{tid} needs {want} variable(s), got {D.ring.nvars}")
        return _closed_form_check(D, d, report, tid)
    if tid == "GENTRANS":
        return _gentrans(D, d, report)
    if tid == "NOTRANS":
        return _notrans(D, d, report)
    if tid == "SIMPLE2V":
        return _simple2v(D, d, report)
    return _sham(D, d, report)
