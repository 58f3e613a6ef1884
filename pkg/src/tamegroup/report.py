"""Plain-data encoding of results, used by the CLI's JSON output.

Polynomials and scalars are stored in their printed form, so decoding goes
through the parser; ``decode(encode(x), ring) == x`` for every type handled.
"""

from __future__ import annotations

import json

from .commutant import AffineFamily, ExplicitGenerators, OffsetFamily, ScalingFamily, StabilityWitness, Translations
from .field import FieldScalar
from .maps import Derivation, ElementaryAuto, Endomorphism
from .parse import format_poly, format_scalar, parse_poly
from .poly import MultiPoly, PolyRing
from .simplicity import FirstIntegral, NotSimple, OdeSolution, RepeatedPair, Simple, StableIdeal, Unknown
from .verify import Hypothesis, MemberCheck, TheoremReport

__all__ = ["FORMAT_VERSION", "encode", "decode", "dumps"]

FORMAT_VERSION = 1


def _axis(ring: PolyRing, j: int) -> str:
    return ring.names[j]


def encode(obj):
    """JSON-ready form of library values."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, MultiPoly):
        return format_poly(obj)
    if isinstance(obj, FieldScalar):
        return format_scalar(obj)
    if isinstance(obj, (list, tuple)):
        return [encode(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, Derivation):
        return {"kind": "Derivation", "images": [format_poly(f) for f in obj.images]}
    if isinstance(obj, Endomorphism):
        return {"kind": "Endomorphism", "images": [format_poly(g) for g in obj.images]}
    if isinstance(obj, ElementaryAuto):
        return {
            "kind": "ElementaryAuto",
            "axis": _axis(obj.ring, obj.axis),
            "scale": format_scalar(obj.scale),
            "offset": format_poly(obj.offset),
        }
    if isinstance(obj, Translations):
        return {"kind": "Translations", "axis": _axis(obj.ring, obj.axis), "extent": obj.extent}
    if isinstance(obj, AffineFamily):
        return {
            "kind": "AffineFamily",
            "axis": _axis(obj.ring, obj.axis),
            "degree_bound": obj.degree_bound,
            "basis": [{"da": format_scalar(db), "dh": format_poly(dh)} for db, dh in obj.basis],
            "excluded": "a = 0",
        }
    if isinstance(obj, OffsetFamily):
        return {
            "kind": "OffsetFamily",
            "axis": _axis(obj.ring, obj.axis),
            "depends_on": [_axis(obj.ring, v) for v in obj.depends_on],
        }
    if isinstance(obj, ScalingFamily):
        return {
            "kind": "ScalingFamily",
            "axis": _axis(obj.ring, obj.axis),
            "order": obj.order,
            "center": format_poly(obj.center),
            "translation_free": obj.translation_free,
            "members": [encode(m) for m in obj.members],
        }
    if isinstance(obj, ExplicitGenerators):
        return {
            "kind": "ExplicitGenerators",
            "theorem": obj.theorem,
            "generators": [encode(g) for g in obj.generators],
            "notes": list(obj.notes),
        }
    if isinstance(obj, StabilityWitness):
        return {
            "kind": "StabilityWitness",
            "u": format_poly(obj.u),
            "cofactor": None if obj.cofactor is None else format_poly(obj.cofactor),
            "degenerate": obj.degenerate,
        }
    if isinstance(obj, StableIdeal):
        return {"kind": "StableIdeal", "u": format_poly(obj.u), "cofactor": format_poly(obj.cofactor)}
    if isinstance(obj, FirstIntegral):
        return {"kind": "FirstIntegral", "H": format_poly(obj.H)}
    if isinstance(obj, OdeSolution):
        return {"kind": "OdeSolution", "index": _axis(obj.h.ring, obj.index), "h": format_poly(obj.h)}
    if isinstance(obj, RepeatedPair):
        return {"kind": "RepeatedPair", "i": obj.i, "j": obj.j}
    if isinstance(obj, Simple):
        return {"kind": "Simple", "reason": obj.reason, "checks": list(obj.checks)}
    if isinstance(obj, NotSimple):
        return {
            "kind": "NotSimple",
            "witness": encode(obj.witness),
            "ideal": encode(obj.ideal),
            "automorphism": encode(obj.automorphism),
            "verified": True,
        }
    if isinstance(obj, Unknown):
        return {"kind": "Unknown", "searched": encode(obj.searched)}
    if isinstance(obj, Hypothesis):
        return {"name": obj.name, "passed": obj.passed, "witness": encode(obj.witness)}
    if isinstance(obj, MemberCheck):
        return {"member": encode(obj.member), "commutes": obj.commutes, "stable": obj.stable}
    if isinstance(obj, TheoremReport):
        return {
            "kind": "TheoremReport",
            "theorem_id": obj.theorem_id,
            "instance": encode(obj.instance),
            "degree_bound": obj.degree_bound,
            "hypotheses": encode(obj.hypotheses),
            "computed": encode(obj.computed),
            "expected": encode(obj.expected),
            "verdict": obj.verdict,
            "detail": obj.detail,
            "notes": list(obj.notes),
            "member_checks": encode(obj.member_checks),
        }
    raise TypeError(f"cannot encode {type(obj).__name__}")


def _p(s: str, ring: PolyRing) -> MultiPoly:
    return parse_poly(s, ring)


def _c(s: str, ring: PolyRing) -> FieldScalar:
    return FieldScalar.coerce(parse_poly(s, ring).constant_coeff(), ring.field)


def decode(data, ring: PolyRing):
    """Inverse of :func:`encode` for tagged objects (``kind`` field)."""
    if isinstance(data, list):
        return [decode(x, ring) for x in data]
    if not isinstance(data, dict) or "kind" not in data:
        return data
    k = data["kind"]
    ax = ring.index(data["axis"]) if "axis" in data else None
    if k == "Derivation":
        return Derivation(ring, tuple(_p(s, ring) for s in data["images"]))
    if k == "Endomorphism":
        return Endomorphism(ring, tuple(_p(s, ring) for s in data["images"]))
    if k == "ElementaryAuto":
        return ElementaryAuto(ring, ax, _c(data["scale"], ring), _p(data["offset"], ring))
    if k == "Translations":
        return Translations(ring, ax, data["extent"])
    if k == "AffineFamily":
        basis = tuple((_c(b["da"], ring), _p(b["dh"], ring)) for b in data["basis"])
        return AffineFamily(ring, ax, data["degree_bound"], basis)
    if k == "OffsetFamily":
        return OffsetFamily(ring, ax, tuple(ring.index(v) for v in data["depends_on"]))
    if k == "ScalingFamily":
        members = tuple(decode(m, ring) for m in data["members"])
        return ScalingFamily(ring, ax, data["order"], _p(data["center"], ring), data["translation_free"], members)
    if k == "ExplicitGenerators":
        gens = tuple(decode(g, ring) for g in data["generators"])
        return ExplicitGenerators(data["theorem"], gens, tuple(data["notes"]))
    if k == "StabilityWitness":
        cof = None if data["cofactor"] is None else _p(data["cofactor"], ring)
        return StabilityWitness(_p(data["u"], ring), cof, data["degenerate"])
    if k == "StableIdeal":
        return StableIdeal(_p(data["u"], ring), _p(data["cofactor"], ring))
    if k == "FirstIntegral":
        return FirstIntegral(_p(data["H"], ring))
    if k == "OdeSolution":
        return OdeSolution(ring.index(data["index"]), _p(data["h"], ring))
    if k == "RepeatedPair":
        return RepeatedPair(data["i"], data["j"])
    if k == "Simple":
        return Simple(data["reason"], tuple(data["checks"]))
    if k == "NotSimple":
        return NotSimple(decode(data["witness"], ring), decode(data["ideal"], ring), decode(data["automorphism"], ring))
    if k == "Unknown":
        return Unknown(dict(data["searched"]))
    raise ValueError(f"unknown kind {k!r}")


def dumps(obj) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"
