"""Text form of polynomials, derivations and automorphisms.

Grammar (whitespace insignificant, no implicit multiplication)::

    poly     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := atom ('^' uint)?
    atom     := rational | identifier | '(' poly ')'
    rational := int ('/' uint)?

The identifier ``z`` is the primitive m-th root of unity when m > 1.
The printer emits exactly this grammar, so ``parse(format(p)) == p``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .field import FieldScalar
from .maps import Derivation, ElementaryAuto, Endomorphism
from .poly import MultiPoly, PolyRing

__all__ = [
    "ParseError",
    "parse_poly",
    "parse_scalar",
    "parse_derivation",
    "parse_endomorphism",
    "parse_elementary",
    "format_poly",
    "format_scalar",
    "ZETA_NAME",
]

ZETA_NAME = "z"

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.column = col


class _Parser:
    def __init__(self, text: str, ring: PolyRing, base: int = 0, source: str | None = None):
        self.text = text
        self.ring = ring
        self.base = base
        self.source = text if source is None else source
        self.tokens: list[tuple[str, str, int]] = []
        for m in _TOKEN.finditer(text):
            start = m.start(m.lastindex) if m.lastindex else m.end()
            if m.group(1) is not None:
                self.tokens.append(("int", m.group(1), start))
            elif m.group(2) is not None:
                self.tokens.append(("id", m.group(2), start))
            elif m.group(3) is not None:
                ch = m.group(3)
                if ch not in "+-*/^()":
                    raise self.error(f"unexpected character {ch!r}", start)
                self.tokens.append(("op", ch, start))
        self.i = 0

    def error(self, msg: str, pos: int | None = None) -> ParseError:
        if pos is None:
            pos = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text.rstrip())
        return ParseError(msg, self.source, self.base + pos)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, value: str | None = None):
        t = self.peek()
        if t is None or (value is not None and t[1] != value):
            want = f"{value!r}" if value else "a token"
            got = "end of input" if t is None else repr(t[1])
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return t

    def parse(self) -> MultiPoly:
        if not self.tokens:
            raise self.error("empty expression", 0)
        p = self.poly()
        if self.peek() is not None:
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def poly(self) -> MultiPoly:
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.i += 1
            sign = -1 if t[1] == "-" else 1
        acc = self.term() * sign
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.i += 1
                nxt = self.term()
                acc = acc + nxt if t[1] == "+" else acc - nxt
            else:
                return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while (t := self.peek()) and t[1] == "*" and t[0] == "op":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        a = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.i += 1
            e = self.peek()
            if e is None or e[0] != "int":
                raise self.error("exponent must be a non-negative integer")
            self.i += 1
            return a ** int(e[1])
        return a

    def atom(self) -> MultiPoly:
        t = self.peek()
        if t is None:
            raise self.error("unexpected end of input")
        kind, val, pos = t
        if kind == "int":
            self.i += 1
            num = int(val)
            n = self.peek()
            if n and n[0] == "op" and n[1] == "/":
                self.i += 1
                d = self.peek()
                if d is None or d[0] != "int":
                    raise self.error("denominator must be an unsigned integer")
                self.i += 1
                if int(d[1]) == 0:
                    raise self.error("zero denominator", d[2])
                return self.ring.const(Fraction(num, int(d[1])))
            return self.ring.const(num)
        if kind == "id":
            self.i += 1
            if val in self.ring.names:
                return self.ring.var(val)
            if val == ZETA_NAME and self.ring.field.m > 1:
                return self.ring.const(self.ring.field.zeta())
            raise self.error(f"unknown identifier {val!r}", pos)
        if val == "(":
            self.i += 1
            p = self.poly()
            self.take(")")
            return p
        raise self.error(f"unexpected {val!r}", pos)


def parse_poly(text: str, ring: PolyRing, *, _base: int = 0, _source: str | None = None) -> MultiPoly:
    return _Parser(text, ring, _base, _source).parse()


def parse_scalar(text: str, ring: PolyRing) -> FieldScalar:
    p = parse_poly(text, PolyRing((), ring.field) if ZETA_NAME not in ring.names else ring)
    if not p.is_constant():
        raise ParseError("expected a constant", text, 0)
    return p.constant_coeff()


def _split(text: str, sep: str) -> list[tuple[str, int]]:
    parts, start = [], 0
    for k, ch in enumerate(text):
        if ch == sep:
            parts.append((text[start:k], start))
            start = k + 1
    parts.append((text[start:], start))
    return parts


def _parse_list(text: str, ring: PolyRing, what: str) -> list[MultiPoly]:
    parts = _split(text, ";")
    if len(parts) != ring.nvars:
        raise ParseError(
            f"{what} needs {ring.nvars} ';'-separated images, got {len(parts)}", text, 0
        )
    return [parse_poly(s, ring, _base=off, _source=text) for s, off in parts]


def parse_derivation(text: str, ring: PolyRing) -> Derivation:
    return Derivation(ring, tuple(_parse_list(text, ring, "derivation")))


def parse_endomorphism(text: str, ring: PolyRing) -> Endomorphism:
    return Endomorphism(ring, tuple(_parse_list(text, ring, "endomorphism")))


def parse_axis(text: str, ring: PolyRing) -> int:
    t = text.strip()
    if t in ring.names:
        return ring.names.index(t)
    if t.isdigit() and int(t) < ring.nvars:
        return int(t)
    raise ParseError(f"unknown axis {t!r}; use a variable name or 0-based index", text, 0)


def parse_elementary(text: str, ring: PolyRing) -> ElementaryAuto:
    """``axis=<var|index>,scale=<constant>,offset=<poly>`` (scale and offset optional)."""
    fields: dict[str, tuple[str, int]] = {}
    for part, off in _split(text, ","):
        if "=" not in part:
            raise ParseError(f"expected key=value, got {part.strip()!r}", text, off)
        key, val = part.split("=", 1)
        key = key.strip()
        if key not in ("axis", "scale", "offset"):
            raise ParseError(f"unknown key {key!r}", text, off)
        fields[key] = (val, off + part.index("=") + 1)
    if "axis" not in fields:
        raise ParseError("missing axis=", text, 0)
    axis = parse_axis(fields["axis"][0], ring)
    scale = ring.field.one()
    if "scale" in fields:
        s, off = fields["scale"]
        sp = parse_poly(s, ring, _base=off, _source=text)
        if not sp.is_constant():
            raise ParseError("scale must be a constant", text, off)
        scale = sp.constant_coeff()
        if not scale:
            raise ParseError("scale must be nonzero", text, off)
    offset = ring.zero()
    if "offset" in fields:
        s, off = fields["offset"]
        offset = parse_poly(s, ring, _base=off, _source=text)
        if offset.depends_on(axis):
            raise ParseError(f"offset must not involve {ring.names[axis]}", text, off)
    return ElementaryAuto(ring, axis, scale, offset)


# --- printing ----------------------------------------------------------------


def _frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _mono(names, exps) -> str:
    parts = []
    for name, k in zip(names, exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def _join(terms: list[str]) -> str:
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
    return out


def _term(coeff: Fraction, mono: str) -> str:
    if not mono:
        return _frac(coeff)
    if coeff == 1:
        return mono
    if coeff == -1:
        return "-" + mono
    return f"{_frac(coeff)}*{mono}"


def _zeta_terms(c: FieldScalar) -> list[tuple[Fraction, int]]:
    return [(x, k) for k, x in reversed(list(enumerate(c.coeffs))) if x]


def format_scalar(c: FieldScalar) -> str:
    terms = _zeta_terms(c)
    return _join([_term(x, _mono([ZETA_NAME], [k])) for x, k in terms])


def format_poly(p: MultiPoly) -> str:
    names = p.ring.names
    out = []
    for e, c in p.sorted_terms():
        mono = _mono(names, e)
        zt = _zeta_terms(c)
        if len(zt) == 1:
            x, k = zt[0]
            zm = _mono([ZETA_NAME], [k])
            out.append(_term(x, "*".join(s for s in (zm, mono) if s)))
        elif not mono:
            s = format_scalar(c)
            out.append(s if len(p.terms) == 1 else f"({s})")
        else:
            out.append(f"({format_scalar(c)})*{mono}")
    return _join(out)
