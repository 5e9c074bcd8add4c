"""Exact Gauss-Jordan elimination over a FieldSpec."""

from __future__ import annotations

from .field import FieldElement, FieldSpec


def rref(rows: list[list[FieldElement]], ncols: int, field: FieldSpec):
    """Reduced row echelon form; pivots are chosen by column order.

    Returns (reduced rows, pivot columns).
    """
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(rows: list[list[FieldElement]], ncols: int, field: FieldSpec) -> list[list[FieldElement]]:
    """Basis of {v : rows . v = 0}, one vector per free column."""
    red, pivots = rref(rows, ncols, field)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [field.zero] * ncols
        v[fc] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def rank(vectors: list[list[FieldElement]], field: FieldSpec) -> int:
    if not vectors:
        return 0
    return len(rref(vectors, len(vectors[0]), field)[1])
