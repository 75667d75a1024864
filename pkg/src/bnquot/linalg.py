"""Exact elimination over Q, carried out fraction-free on integer rows.

Each row is first cleared of denominators (row scaling leaves the row
space unchanged), then eliminated with integer cross-multiplication and
divided by its content, so entries stay small and no Fraction arithmetic
happens in the inner loop.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    return [int(x * den) for x in fr]


def _primitive(row: list[int]) -> list[int]:
    g = reduce(gcd, row, 0)
    return [x // g for x in row] if g > 1 else row


def echelon(rows: Sequence[Sequence]) -> tuple[list[list[int]], list[int]]:
    """Integer reduced echelon form: pivot columns are zero off the pivot row.

    Pivot entries are positive but not necessarily 1.
    """
    m = [_primitive(_integer_row(r)) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if m[r][c] < 0:
            m[r] = [-x for x in m[r]]
        prow, p = m[r], m[r][c]
        for i in range(n_rows):
            q = m[i][c]
            if i != r and q:
                g = gcd(p, q)
                a, b = p // g, q // g
                m[i] = _primitive([a * x - b * y for x, y in zip(m[i], prow)])
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and pivot columns."""
    m, pivots = echelon(rows)
    return [[Fraction(x, row[c]) for x in row] for row, c in zip(m, pivots)], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(echelon(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : rows @ v = 0}``, one vector per free column."""
    if n_cols is None:
        n_cols = len(rows[0]) if rows else 0
    if not rows:
        return [[Fraction(int(i == j)) for i in range(n_cols)] for j in range(n_cols)]
    m, pivots = echelon(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(n_cols):
        if f in pivot_set:
            continue
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for row, c in zip(m, pivots):
            if row[f]:
                v[c] = Fraction(-row[f], row[c])
        basis.append(v)
    return basis


def primitive_vector(v: Sequence) -> list[Fraction]:
    """Positive rational multiple of ``v`` with coprime integer entries."""
    return [Fraction(x) for x in _primitive(_integer_row(v))]


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return not any(v)
    return rank(list(vectors) + [list(v)]) == rank(vectors)
