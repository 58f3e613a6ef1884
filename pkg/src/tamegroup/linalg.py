"""Gaussian elimination over a cyclotomic field.

Matrices are lists of rows of :class:`FieldScalar`.  Results are in reduced
row echelon form so that bases are canonical (needed for deterministic
reports and for comparing solution spaces).
"""

from __future__ import annotations

from .field import CoefficientField, FieldScalar


def rref(rows: list[list[FieldScalar]], ncols: int, field: CoefficientField) -> tuple[list[list[FieldScalar]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                t = m[i][c]
                m[i] = [a - t * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[list[FieldScalar]], ncols: int, field: CoefficientField) -> list[list[FieldScalar]]:
    """Basis of ``{v : A v = 0}``, one vector per free column (free entry = 1)."""
    red, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero()] * ncols
        v[f] = field.one()
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def canonical_span(vectors: list[list[FieldScalar]], ncols: int, field: CoefficientField) -> list[list[FieldScalar]]:
    """Canonical basis (RREF rows) of the span of ``vectors``."""
    red, _ = rref(vectors, ncols, field)
    return red


def solve(rows: list[list[FieldScalar]], rhs: list[FieldScalar], field: CoefficientField) -> list[FieldScalar] | None:
    """One solution of ``A x = b`` (free variables set to 0), or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1, field)
    if ncols in pivots:
        return None
    x = [field.zero()] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x
