"""Command-line front end.

Exit status: 0 on success, 1 when the library rejects the input on
mathematical grounds (the report names the violated condition), 2 on
parse or usage errors.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import commutant as cm
from . import simplicity as sp
from .errors import DomainError
from .field import CoefficientField
from .maps import Derivation, TameWord, apply, commutes, compose_word, conjugate, derive
from .parse import ZETA_NAME, ParseError, format_poly, parse_axis, parse_derivation, parse_elementary, parse_endomorphism, parse_poly
from .poly import PolyRing, RingMismatchError
from .report import FORMAT_VERSION, dumps, encode
from .verify import THEOREMS, verify_theorem

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class UsageError(Exception):
    pass


# --- session -----------------------------------------------------------------


def _ring(args) -> PolyRing:
    if args.cyclotomic < 1:
        raise UsageError("--cyclotomic must be >= 1")
    names = [v.strip() for v in args.vars.split(",")]
    for v in names:
        if not _IDENT.match(v):
            raise UsageError(f"invalid variable name {v!r}")
    if len(set(names)) != len(names):
        raise UsageError("variable names must be distinct")
    if args.cyclotomic > 1 and ZETA_NAME in names:
        raise UsageError(f"{ZETA_NAME!r} denotes the root of unity when --cyclotomic > 1")
    return PolyRing(names, CoefficientField(args.cyclotomic))


def _need(args, name: str):
    v = getattr(args, name, None)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def _derivation(args, ring) -> Derivation:
    return parse_derivation(_need(args, "derivation"), ring)


def _word(args, ring) -> TameWord:
    return TameWord(ring, tuple(parse_elementary(e, ring) for e in args.elem))


def _map(args, ring):
    if args.endo is not None and args.elem:
        raise UsageError("give either --endo or --elem, not both")
    if args.endo is not None:
        return parse_endomorphism(args.endo, ring)
    if args.elem:
        return _word(args, ring)
    return None


def _map_inputs(m) -> dict:
    if isinstance(m, TameWord):
        return {"word": [encode(f) for f in m.factors], "composed": encode(compose_word(m))}
    return {"endomorphism": encode(m)}


# --- text rendering ----------------------------------------------------------


def _text(obj, ring: PolyRing) -> str:
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, list):
        return "\n".join(_text(x, ring) for x in obj) if obj else "(none)"
    if isinstance(obj, cm.Translations):
        return f"{ring.names[obj.axis]}: {obj.extent}"
    if isinstance(obj, cm.AffineFamily):
        x = ring.names[obj.axis]
        if obj.is_identity_only():
            return f"{x}: identity only (offset degree <= {obj.degree_bound})"
        lines = [f"{x}: {x} -> {x} + sum_i t_i*(da_i*{x} + dh_i), a = 1 + sum_i t_i*da_i != 0,"
                 f" offset degree <= {obj.degree_bound}"]
        for i, (db, dh) in enumerate(obj.basis, 1):
            lines.append(f"  da_{i} = {db}, dh_{i} = {format_poly(dh)}")
        return "\n".join(lines)
    if isinstance(obj, cm.OffsetFamily):
        x = ring.names[obj.axis]
        deps = ", ".join(ring.names[v] for v in obj.depends_on)
        return f"{x}: {x} -> {x} + r({deps}) for every polynomial r"
    if isinstance(obj, cm.ScalingFamily):
        x = ring.names[obj.axis]
        if obj.is_identity_only():
            return f"{x}: identity only"
        lam = "lam != 0" if obj.order == 0 else f"lam^{obj.order} = 1"
        g = " + gamma" if obj.translation_free else ""
        if obj.center.is_zero():
            head = f"{x}: {x} -> lam*{x}{g}, {lam}"
        else:
            c = format_poly(obj.center)
            head = f"{x}: {x} -> lam*({x} + ({c})) - ({c}){g}, {lam}"
        if obj.order >= 1:
            head += "; members over this field: " + ", ".join(str(m.scale) for m in obj.members)
        return head
    if isinstance(obj, cm.ExplicitGenerators):
        lines = [f"{obj.theorem}:"] + ["  " + _text(g, ring).replace("\n", "\n  ") for g in obj.generators]
        lines += [f"  note: {n}" for n in obj.notes]
        return "\n".join(lines)
    if isinstance(obj, cm.StabilityWitness):
        if obj.degenerate:
            return f"u = {format_poly(obj.u)} (constant: {'zero' if obj.u.is_zero() else 'unit'} ideal)"
        return f"u = {format_poly(obj.u)}, cofactor {format_poly(obj.cofactor)}"
    if isinstance(obj, sp.Simple):
        return "Simple"
    if isinstance(obj, sp.NotSimple):
        lines = ["NotSimple", f"  witness: {_text(obj.witness, ring)}",
                 f"  stable ideal: <{format_poly(obj.ideal.u)}>, cofactor {format_poly(obj.ideal.cofactor)}"]
        if obj.automorphism is not None:
            lines.append(f"  commuting automorphism: {obj.automorphism}")
        return "\n".join(lines)
    if isinstance(obj, sp.Unknown):
        return "Unknown"
    if isinstance(obj, sp.StableIdeal):
        return f"StableIdeal({format_poly(obj.u)}, cofactor {format_poly(obj.cofactor)})"
    if isinstance(obj, sp.FirstIntegral):
        return f"FirstIntegral({format_poly(obj.H)})"
    if isinstance(obj, sp.OdeSolution):
        return f"OdeSolution({ring.names[obj.index]}, h = {format_poly(obj.h)})"
    if isinstance(obj, sp.RepeatedPair):
        return f"RepeatedPair({ring.names[obj.i]}, {ring.names[obj.j]})"
    if obj is None:
        return "none"
    return str(obj)


# --- commands ----------------------------------------------------------------
# Each returns (inputs, result, diagnostics, text).


def _cmd_apply(args, ring):
    p = parse_poly(_need(args, "poly"), ring)
    m = _map(args, ring)
    if m is None and args.derivation is not None:
        D = _derivation(args, ring)
        r = derive(D, p)
        return {"derivation": encode(D), "poly": encode(p)}, encode(r), {}, format_poly(r)
    if m is None:
        raise UsageError("apply needs --endo, --elem or --derivation")
    r = apply(m, p)
    return {"poly": encode(p), **_map_inputs(m)}, encode(r), {}, format_poly(r)


def _cmd_derive(args, ring):
    D = _derivation(args, ring)
    p = parse_poly(_need(args, "poly"), ring)
    r = derive(D, p)
    return {"derivation": encode(D), "poly": encode(p)}, encode(r), {}, format_poly(r)


def _cmd_commutes(args, ring):
    D = _derivation(args, ring)
    m = _map(args, ring)
    if m is None:
        raise UsageError("commutes needs --endo or --elem")
    r = commutes(m, D)
    return {"derivation": encode(D), **_map_inputs(m)}, r, {}, _text(r, ring)


def _cmd_conjugate(args, ring):
    D = _derivation(args, ring)
    if not args.elem:
        raise UsageError("conjugate needs at least one --elem")
    w = _word(args, ring)
    E = conjugate(D, w)
    return {"derivation": encode(D), **_map_inputs(w)}, encode(E), {}, str(E)


def _cmd_translations(args, ring):
    D = _derivation(args, ring)
    r = cm.translation_commutant(D)
    return {"derivation": encode(D)}, encode(r), {}, _text(r, ring)


def _cmd_affine(args, ring):
    D = _derivation(args, ring)
    j = parse_axis(_need(args, "axis"), ring)
    fam = cm.affine_axis_commutant(D, j, args.degree)
    diag = {"degree_bound": fam.degree_bound, "default_degree_bound": args.degree is None}
    return {"derivation": encode(D), "axis": ring.names[j]}, encode(fam), diag, _text(fam, ring)


def _cmd_scalar(args, ring):
    D = _derivation(args, ring)
    j = parse_axis(_need(args, "axis"), ring)
    fam = cm.scalar_axis_commutant(D, j)
    diag = {"order": fam.order, "realizable_order": fam.realizable_order}
    return {"derivation": encode(D), "axis": ring.names[j]}, encode(fam), diag, _text(fam, ring)


def _cmd_group(args, ring):
    D = _derivation(args, ring)
    g = cm.closed_form_tame_group(D)
    return {"derivation": encode(D)}, encode(g), {"template": g.theorem}, _text(g, ring)


def _cmd_stable(args, ring):
    D = _derivation(args, ring)
    u = parse_poly(_need(args, "poly"), ring)
    q = sp.principal_stable(D, u)
    res = {"stable": q is not None, "cofactor": None if q is None else encode(q)}
    txt = "none" if q is None else f"cofactor {format_poly(q)}"
    return {"derivation": encode(D), "poly": encode(u)}, res, {}, txt


def _cmd_first_integrals(args, ring):
    D = _derivation(args, ring)
    d = _need(args, "max_degree")
    r = sp.first_integrals(D, d)
    return {"derivation": encode(D), "max_degree": d}, encode(r), {"degree_bound": d}, _text([format_poly(h) for h in r], ring)


def _cmd_darboux(args, ring):
    D = _derivation(args, ring)
    d = _need(args, "max_degree")
    cp = parse_poly(_need(args, "cofactor"), ring)
    if not cp.is_constant():
        raise UsageError("--cofactor must be a constant")
    c = cp.constant_coeff()
    r = sp.darboux_fixed_cofactor(D, c, d)
    inputs = {"derivation": encode(D), "cofactor": encode(c), "max_degree": d}
    return inputs, encode(r), {"degree_bound": d}, _text([format_poly(h) for h in r], ring)


def _cmd_prefilter2(args, ring):
    D = _derivation(args, ring)
    w = sp.two_var_prefilter(D)
    diag = {"degree_conditions": sp.degree_conditions(D)}
    if w is not None and not sp.check_witness(D, w):
        raise AssertionError("internal error: prefilter witness fails re-verification")
    txt = _text(w, ring) if w is not None else "no witness (not a proof of simplicity)"
    return {"derivation": encode(D)}, encode(w), diag, txt


def _cmd_shamsuddin(args, ring):
    D = _derivation(args, ring)
    v = sp.shamsuddin_decide(D)
    return {"derivation": encode(D)}, encode(v), {}, _text(v, ring)


def _cmd_verify(args, ring):
    D = _derivation(args, ring)
    tid = _need(args, "theorem")
    rep = verify_theorem(tid, D, args.degree)
    lines = [f"{rep.theorem_id}: {rep.verdict}" + (f" ({rep.detail})" if rep.detail else "")]
    for h in rep.hypotheses:
        mark = {True: "pass", False: "fail", None: "unknown"}[h.passed]
        lines.append(f"  hypothesis {h.name}: {mark}")
    lines += [f"  note: {n}" for n in rep.notes]
    diag = {"degree_bound": rep.degree_bound, "hypotheses": encode(rep.hypotheses)}
    return {"derivation": encode(D), "theorem": rep.theorem_id}, encode(rep), diag, "\n".join(lines)


COMMANDS = {
    "apply": (_cmd_apply, "apply an endomorphism, tame word or derivation to a polynomial"),
    "derive": (_cmd_derive, "compute D(p)"),
    "commutes": (_cmd_commutes, "test whether a map commutes with D"),
    "conjugate": (_cmd_conjugate, "the derivation w D w^-1 for a tame word w"),
    "translations": (_cmd_translations, "translations commuting with D, per axis"),
    "affine-commutant": (_cmd_affine, "commuting elementaries on an axis where D is affine"),
    "scalar-commutant": (_cmd_scalar, "commuting elementaries with forced offset"),
    "group": (_cmd_group, "closed-form generators for the triangular templates"),
    "stable": (_cmd_stable, "test whether <u> is D-stable"),
    "first-integrals": (_cmd_first_integrals, "polynomial first integrals up to a degree"),
    "darboux": (_cmd_darboux, "solutions of D(u) = c u up to a degree"),
    "prefilter2": (_cmd_prefilter2, "quick non-simplicity witnesses in two variables"),
    "shamsuddin": (_cmd_shamsuddin, "decide simplicity of a Shamsuddin derivation"),
    "verify": (_cmd_verify, "check a named structural statement on an instance"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", default=argparse.SUPPRESS, help="comma-separated variable names (default X,Y)")
    common.add_argument("--cyclotomic", type=int, default=argparse.SUPPRESS, metavar="M",
                        help="coefficients in Q(zeta_M); z names zeta_M (default 1)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="tamegroup", parents=[common], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--derivation", help="images f1;...;fn of the variables")
        if name in ("apply", "derive", "stable"):
            p.add_argument("--poly", help="polynomial")
        if name in ("apply", "commutes", "conjugate"):
            p.add_argument("--elem", action="append", default=[],
                           help="axis=<var|index>,scale=<c>,offset=<poly>; repeat for a word")
        if name in ("apply", "commutes"):
            p.add_argument("--endo", help="images g1;...;gn of an endomorphism")
        if name in ("affine-commutant", "scalar-commutant"):
            p.add_argument("--axis", help="variable name or 0-based index")
        if name in ("affine-commutant", "verify"):
            p.add_argument("--degree", type=int, help="offset degree bound")
        if name in ("first-integrals", "darboux"):
            p.add_argument("--max-degree", type=int, dest="max_degree")
        if name == "darboux":
            p.add_argument("--cofactor", help="constant c")
        if name == "verify":
            p.add_argument("--theorem", choices=THEOREMS, type=str.upper)
    return parser


def _document(command, inputs, result, diagnostics, status, ring, error=None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "command": command,
        "inputs": {"vars": list(ring.names) if ring else None,
                   "cyclotomic": ring.field.m if ring else None, **(inputs or {})},
        "result": result,
        "diagnostics": diagnostics or {},
        "status": status,
    }
    if error is not None:
        doc["error"] = error
    return doc


_VALUE_FLAGS = {"--vars", "--derivation", "--poly", "--elem", "--endo", "--axis", "--cofactor"}


def _glue_values(argv: list[str]) -> list[str]:
    # "--derivation -Y;X" would otherwise read -Y;X as an option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run_command(argv: list[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = _glue_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    for k, v in (("vars", "X,Y"), ("cyclotomic", 1), ("json", False)):
        if not hasattr(args, k):
            setattr(args, k, v)
    fn = COMMANDS[args.command][0]
    ring = None
    try:
        ring = _ring(args)
        inputs, result, diag, text = fn(args, ring)
    except (ParseError, UsageError) as e:
        return _fail(args, ring, "usage" if isinstance(e, UsageError) else "parse", e, 2, out, err)
    except (DomainError, RingMismatchError, ValueError, ZeroDivisionError) as e:
        return _fail(args, ring, type(e).__name__, e, 1, out, err)
    if args.json:
        out.write(dumps(_document(args.command, inputs, result, diag, "ok", ring)))
    else:
        out.write(text + "\n")
    return 0


def _fail(args, ring, kind, exc, code, out, err) -> int:
    if args.json:
        error = {"type": kind, "message": str(exc)}
        out.write(dumps(_document(args.command, None, None, None, "error", ring, error)))
    else:
        err.write(f"error ({kind}): {exc}\n")
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
