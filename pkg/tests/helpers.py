import random
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from tamegroup.field import QQ, CoefficientField
from tamegroup.poly import PolyRing

POOL = tuple(Fraction(x) for x in ("-2", "-1", "-1/2", "0", "1/3", "1", "2", "3"))


def rand_poly(rng: random.Random, ring: PolyRing, maxdeg: int = 4, nterms: int = 4, variables=None):
    mons = ring.monomials_up_to(maxdeg, variables)
    terms = {}
    for _ in range(rng.randint(0, nterms)):
        c = rng.choice(POOL)
        if ring.field.m > 1 and rng.random() < 0.3:
            c = ring.field.zeta() ** rng.randint(1, 3) * c
        terms[rng.choice(mons)] = c
    return ring.from_terms({e: c for e, c in terms.items() if c})


def poly_strategy(ring: PolyRing, maxdeg: int = 4, max_terms: int = 5, variables=None):
    mons = ring.monomials_up_to(maxdeg, variables)
    coeff = st.sampled_from(POOL)
    return st.dictionaries(st.sampled_from(mons), coeff, max_size=max_terms).map(
        lambda d: ring.from_terms({e: c for e, c in d.items() if c})
    )


def to_sympy(p, syms):
    """Independent representation of a rational polynomial for oracle checks."""
    assert p.ring.field is QQ
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        f = c.as_fraction()
        term = sympy.Rational(f.numerator, f.denominator)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, ring, syms):
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for mon, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(mon)] = Fraction(int(c.p), int(c.q))
    return ring.from_terms(terms)


def field_to_complex(c):
    """Numerical value of a field element with zeta = exp(2 pi i / m)."""
    import cmath

    z = cmath.exp(2j * cmath.pi / c.field.m)
    return sum(float(x) * z**k for k, x in enumerate(c.coeffs))


__all__ = ["POOL", "rand_poly", "poly_strategy", "to_sympy", "from_sympy", "field_to_complex", "CoefficientField"]
