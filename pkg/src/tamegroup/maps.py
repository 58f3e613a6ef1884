"""Derivations and (elementary, tame) endomorphisms of a polynomial ring.

Composition convention for words: ``(u * v)(p) = v(u(p))``, the left-most
factor acts first on polynomials.  With it the factorisation
``(X-Y, Y)(2X, Y)(X, X+Y)`` evaluates to ``(X-Y, X+Y)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .field import FieldScalar
from .poly import MultiPoly, PolyRing, RingMismatchError

__all__ = [
    "Derivation",
    "ElementaryAuto",
    "TameWord",
    "Endomorphism",
    "derive",
    "apply",
    "compose_word",
    "elementary_inverse",
    "word_inverse",
    "commutes",
    "conjugate",
    "ShapeInfo",
    "classify_shape",
]


def _check_ring(ring: PolyRing, p: MultiPoly) -> None:
    if p.ring != ring:
        raise RingMismatchError(f"{p.ring!r} vs {ring!r}")


@dataclass(frozen=True)
class Derivation:
    """``D = sum_i images[i] * d/dX_i``."""

    ring: PolyRing
    images: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.ring.nvars:
            raise ValueError(f"derivation needs {self.ring.nvars} images, got {len(self.images)}")
        for f in self.images:
            _check_ring(self.ring, f)

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return derive(self, p)

    def __str__(self) -> str:
        return "; ".join(str(f) for f in self.images)

    def extend(self, ring: PolyRing) -> "Derivation":
        """The same derivation on a ring with extra variables, acting as constants."""
        imgs = [self.ring.embed(f, ring) for f in self.images]
        imgs += [ring.zero()] * (ring.nvars - self.ring.nvars)
        return Derivation(ring, tuple(imgs))


@dataclass(frozen=True)
class ElementaryAuto:
    """``X_axis -> scale * X_axis + offset``, other variables fixed."""

    ring: PolyRing
    axis: int
    scale: FieldScalar
    offset: MultiPoly

    def __post_init__(self):
        object.__setattr__(self, "axis", self.ring.index(self.axis))
        object.__setattr__(self, "scale", FieldScalar.coerce(self.scale, self.ring.field))
        _check_ring(self.ring, self.offset)
        if not self.scale:
            raise ValueError("elementary automorphism needs a nonzero scale")
        if self.offset.depends_on(self.axis):
            raise ValueError(
                f"offset {self.offset} must not involve {self.ring.names[self.axis]}"
            )

    @classmethod
    def translation(cls, ring: PolyRing, axis, c) -> "ElementaryAuto":
        return cls(ring, ring.index(axis), ring.field.one(), ring.const(c))

    @classmethod
    def identity(cls, ring: PolyRing, axis=0) -> "ElementaryAuto":
        return cls(ring, ring.index(axis), ring.field.one(), ring.zero())

    def image(self) -> MultiPoly:
        return self.ring.var(self.axis).scale(self.scale) + self.offset

    def images(self) -> list[MultiPoly]:
        imgs = self.ring.gens()
        imgs[self.axis] = self.image()
        return imgs

    def is_identity(self) -> bool:
        return self.scale == 1 and self.offset.is_zero()

    def is_translation(self) -> bool:
        return self.scale == 1 and self.offset.is_constant()

    def as_endomorphism(self) -> "Endomorphism":
        return Endomorphism(self.ring, tuple(self.images()))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.images()) + ")"


@dataclass(frozen=True)
class TameWord:
    ring: PolyRing
    factors: tuple[ElementaryAuto, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        for f in self.factors:
            if f.ring != self.ring:
                raise RingMismatchError("every factor must live in the word's ring")

    def __str__(self) -> str:
        return "".join(str(f) for f in self.factors) if self.factors else "id"


@dataclass(frozen=True)
class Endomorphism:
    """``X_i -> images[i]``; not assumed invertible."""

    ring: PolyRing
    images: tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.ring.nvars:
            raise ValueError(f"endomorphism needs {self.ring.nvars} images, got {len(self.images)}")
        for g in self.images:
            _check_ring(self.ring, g)

    @classmethod
    def identity(cls, ring: PolyRing) -> "Endomorphism":
        return cls(ring, tuple(ring.gens()))

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.images) + ")"


MapLike = Union[Endomorphism, ElementaryAuto, TameWord]


def derive(D: Derivation, p: MultiPoly) -> MultiPoly:
    _check_ring(D.ring, p)
    out = D.ring.zero()
    for i, f in enumerate(D.images):
        if f.is_zero():
            continue
        dp = p.diff(i)
        if not dp.is_zero():
            out = out + dp * f
    return out


def _endo(sigma: MapLike) -> Endomorphism:
    if isinstance(sigma, Endomorphism):
        return sigma
    if isinstance(sigma, ElementaryAuto):
        return sigma.as_endomorphism()
    if isinstance(sigma, TameWord):
        return compose_word(sigma)
    raise TypeError(f"not a ring map: {sigma!r}")


def apply(sigma: MapLike, p: MultiPoly) -> MultiPoly:
    e = _endo(sigma)
    _check_ring(e.ring, p)
    return p.subs(list(e.images))


def compose_word(w: TameWord) -> Endomorphism:
    imgs = w.ring.gens()
    for f in w.factors:
        fi = f.images()
        imgs = [g.subs(fi) for g in imgs]
    return Endomorphism(w.ring, tuple(imgs))


def elementary_inverse(sigma: ElementaryAuto) -> ElementaryAuto:
    inv = sigma.scale.inverse()
    return ElementaryAuto(sigma.ring, sigma.axis, inv, -sigma.offset.scale(inv))


def word_inverse(w: TameWord) -> TameWord:
    return TameWord(w.ring, tuple(elementary_inverse(f) for f in reversed(w.factors)))


def commutes(sigma: MapLike, D: Derivation) -> bool:
    """``sigma D = D sigma``, checked on the generators."""
    e = _endo(sigma)
    if e.ring != D.ring:
        raise RingMismatchError(f"{e.ring!r} vs {D.ring!r}")
    imgs = list(e.images)
    for f, g in zip(D.images, imgs):
        if f.subs(imgs) != derive(D, g):
            return False
    return True


def conjugate(D: Derivation, w: TameWord | ElementaryAuto) -> Derivation:
    """The derivation ``w D w^{-1}``."""
    if isinstance(w, ElementaryAuto):
        w = TameWord(w.ring, (w,))
    if w.ring != D.ring:
        raise RingMismatchError(f"{w.ring!r} vs {D.ring!r}")
    fwd = compose_word(w)
    back = compose_word(word_inverse(w))
    imgs = tuple(derive(D, b).subs(list(fwd.images)) for b in back.images)
    return Derivation(D.ring, imgs)


@dataclass(frozen=True)
class ShapeInfo:
    is_triangular: bool
    is_shamsuddin: bool
    is_translation_invariant_axes: tuple[int, ...]


def _is_triangular(D: Derivation) -> bool:
    for i, f in enumerate(D.images):
        if any(v >= i for v in f.variables()):
            return False
    return True


def _is_shamsuddin(D: Derivation) -> bool:
    if D.ring.nvars < 2 or D.images[0] != 1:
        return False
    for i, f in enumerate(D.images[1:], start=1):
        if not f.variables() <= {0, i} or f.degree(i) > 1:
            return False
    return True


def classify_shape(D: Derivation) -> ShapeInfo:
    n = D.ring.nvars
    inv = tuple(j for j in range(n) if all(not f.depends_on(j) for f in D.images))
    return ShapeInfo(_is_triangular(D), _is_shamsuddin(D), inv)

