"""Small exact linear algebra over the rationals.

Dense row operations on lists of Fractions; sized for the desk-scale
systems that appear in identity finding and pattern matching.
"""

from __future__ import annotations

from fractions import Fraction


def rank(rows, ncols: int) -> int:
    """Rank of a matrix given as an iterable of dense Fraction rows."""
    r = 0
    for _ in _eliminate(rows, ncols):
        r += 1
    return r


def nullspace(rows, ncols: int) -> list:
    """Basis of the right nullspace of the matrix, as dense vectors."""
    pivots = list(_eliminate(rows, ncols))
    pivot_cols = [c for c, _ in pivots]
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for c, row in reversed(pivots):
            v[c] = -sum(row[j] * v[j] for j in range(c + 1, ncols))
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int):
    """One solution x of A x = b, or None when inconsistent.

    ``rows`` and ``rhs`` are parallel sequences; free variables are set
    to zero.
    """
    augmented = [list(r) + [Fraction(v)] for r, v in zip(rows, rhs)]
    pivots = list(_eliminate(augmented, ncols + 1))
    for c, _ in pivots:
        if c == ncols:
            return None
    x = [Fraction(0)] * ncols
    for c, row in reversed(pivots):
        x[c] = row[ncols] - sum(row[j] * x[j] for j in range(c + 1, ncols))
    return x


def _eliminate(rows, width: int):
    """Incremental reduced echelon pivots: yields (pivot_col, normalized row)."""
    pivots = []
    for raw in rows:
        row = [Fraction(x) for x in raw]
        for c, piv in pivots:
            f = row[c]
            if f:
                row = [a - f * b for a, b in zip(row, piv)]
        lead = next((c for c in range(width) if row[c]), None)
        if lead is None:
            continue
        inv = row[lead]
        row = [a / inv for a in row]
        for c, piv in pivots:
            f = piv[lead]
            if f:
                piv[:] = [a - f * b for a, b in zip(piv, row)]
        pivots.append((lead, row))
        pivots.sort(key=lambda p: p[0])
    yield from pivots
