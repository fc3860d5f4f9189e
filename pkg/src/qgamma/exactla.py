"""Exact linear algebra over the rationals: row reduction, rank, nullspace.

Matrices are lists of row tuples/lists of Fractions.  Sizes here are tiny
(cohomology ranks, ray counts), so plain Gaussian elimination is enough.
"""

from __future__ import annotations

from fractions import Fraction


def row_reduce(rows):
    """Returns (rref rows, pivot column list)."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(row_reduce(rows)[1])


def nullspace(rows, ncols=None):
    """Basis of {v : M v = 0} as a list of Fraction tuples."""
    if not rows:
        if ncols is None:
            raise ValueError("need ncols for an empty matrix")
        return [tuple(Fraction(int(i == j)) for j in range(ncols))
                for i in range(ncols)]
    ncols = len(rows[0])
    red, pivots = row_reduce(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -red[ri][fc]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs):
    """Unique solution of M v = rhs; raises on inconsistent or underdetermined."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        raise ValueError("inconsistent system")
    if len(pivots) < ncols:
        raise ValueError("underdetermined system")
    v = [Fraction(0)] * ncols
    for ri, pc in enumerate(pivots):
        v[pc] = red[ri][-1]
    return tuple(v)
