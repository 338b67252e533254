"""Gaussian elimination over any exact field.

Matrices are lists of rows; vectors are tuples.  Nothing here knows about
algebras, so the routines work for Fraction, RationalFunction and nmod alike.
"""

from __future__ import annotations


def rref(rows, field):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = field.one / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, field):
    return len(rref(rows, field)[1])


def nullspace(rows, ncols, field):
    """Basis of ``{x : M x = 0}`` for an m x ``ncols`` matrix ``M``.

    Basis vectors are returned in the standard normalised form: each has a 1
    in one free column and 0 in the other free columns.
    """
    reduced, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(rows, rhs, field):
    """One solution of ``M x = rhs`` or ``None`` when inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def span_contains(basis, v, field):
    """Whether ``v`` lies in the span of ``basis``."""
    if not any(v):
        return True
    if not basis:
        return False
    cols = [list(col) for col in zip(*basis)]
    return solve(cols, list(v), field) is not None


def matmul(a, b):
    """Product of two matrices given as lists of rows."""
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), 0 * row[0]) if row else 0 for col in bt] for row in a]


def identity(n, field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
