"""Sparse Gaussian elimination over Q(q)."""

from __future__ import annotations

from typing import Optional, Sequence

from .qscalar import ONE, ZERO, QScalar


def _eliminate(rows, rhs):
    # reduced row echelon form; rows are dicts col -> QScalar
    pivots = {}  # col -> (row, rhs)
    for row, b in zip(rows, rhs):
        row = {k: v for k, v in row.items() if v}
        for col in sorted(row):
            if col in pivots and col in row:
                c = row[col]
                prow, pb = pivots[col]
                for k, v in prow.items():
                    nv = row.get(k, ZERO) - c * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                b = b - c * pb
        if not row:
            if b:
                return None
            continue
        lead = min(row)
        inv = ONE / row[lead]
        row = {k: v * inv for k, v in row.items()}
        b = b * inv
        for col, (prow, pb) in list(pivots.items()):
            if lead in prow:
                c = prow[lead]
                for k, v in row.items():
                    nv = prow.get(k, ZERO) - c * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
                pivots[col] = (prow, pb - c * b)
        pivots[lead] = (row, b)
    return pivots


def solve_linear(rows: Sequence[dict], rhs: Sequence[QScalar], nvars: int) -> Optional[list]:
    """One solution of ``rows . x = rhs`` (free variables set to 0), or None."""
    piv = _eliminate(rows, rhs)
    if piv is None:
        return None
    x = [ZERO] * nvars
    for col, (row, b) in piv.items():
        x[col] = b  # free columns are zero, so the reduced row gives x directly
    return x


def rank(rows: Sequence[dict]) -> int:
    piv = _eliminate(rows, [ZERO] * len(rows))
    return len(piv)


def nullspace(rows: Sequence[dict], nvars: int) -> list:
    """Basis of the solution space of ``rows . x = 0`` as dicts col -> QScalar."""
    piv = _eliminate(rows, [ZERO] * len(rows))
    pivcols = set(piv)
    basis = []
    for free in range(nvars):
        if free in pivcols:
            continue
        vec = {free: ONE}
        for col, (row, _) in piv.items():
            c = row.get(free)
            if c:
                vec[col] = -c
        basis.append(vec)
    return basis
