"""Dense exact/float linear algebra for small obstruction matrices.

Determinants dispatch on the scalar type: all-Fraction matrices go through
integer Bareiss elimination (fraction-free, exact), anything containing a
float through partially pivoted Gaussian elimination.  `rank_kernel` gives
the rank and a kernel basis with a scale-aware tolerance and flags rank
decisions that were numerically marginal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .jets import to_scalar


def _coerce_matrix(rows):
    return [[to_scalar(v) for v in row] for row in rows]


def is_exact_matrix(rows):
    return all(isinstance(v, Fraction) for row in rows for v in row)


def det(rows):
    m = _coerce_matrix(rows)
    if not m:
        return Fraction(1)
    if any(len(r) != len(m) for r in m):
        raise ValueError("determinant of a non-square matrix")
    if is_exact_matrix(m):
        return _det_exact(m)
    return _det_float(m)


def _det_exact(rows):
    """Scale each row to integers, run Bareiss, divide the scales back."""
    n = len(rows)
    scale = Fraction(1)
    m = []
    for row in rows:
        den = math.lcm(*(v.denominator for v in row))
        scale *= den
        m.append([int(v * den) for v in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], 1) / scale


def _det_float(rows):
    n = len(rows)
    m = [[float(v) for v in row] for row in rows]
    detval = 1.0
    for k in range(n):
        pivot_row = max(range(k, n), key=lambda i: abs(m[i][k]))
        if m[pivot_row][k] == 0.0:
            return 0.0
        if pivot_row != k:
            m[k], m[pivot_row] = m[pivot_row], m[k]
            detval = -detval
        pivot = m[k][k]
        detval *= pivot
        for i in range(k + 1, n):
            factor = m[i][k] / pivot
            if factor == 0.0:
                continue
            for j in range(k, n):
                m[i][j] -= factor * m[k][j]
    return detval


@dataclass
class RankResult:
    rank: int
    kernel: list = field(default_factory=list)
    marginal: bool = False
    exact: bool = True
    pivot_cols: list = field(default_factory=list)


def rank_kernel(rows, tol=1e-9):
    """Row-reduce and return rank plus a kernel basis.

    Exact matrices are decided exactly (`marginal` stays False).  For float
    matrices a pivot candidate below tol * (largest matrix entry) counts as
    zero; accepted pivots within a factor 10 of that threshold, or rejected
    candidates within a factor 10 above it, mark the result as marginal.

    Kernel vectors are normalised so their largest-magnitude entry is +1.
    An empty row list is treated as the zero map on `ncols` columns only if
    rows are given; callers with no rows should build the standard basis
    themselves.
    """
    if not rows:
        raise ValueError("rank_kernel needs at least one row")
    m = _coerce_matrix(rows)
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    exact = is_exact_matrix(m)

    marginal = False
    if exact:
        thr = None
    else:
        m = [[float(v) for v in row] for row in m]
        scale = max((abs(v) for row in m for v in row), default=0.0)
        thr = tol * scale if scale > 0.0 else tol

    nrows = len(m)
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best_i = max(range(r, nrows), key=lambda i: abs(m[i][c]))
        best = abs(m[best_i][c])
        if exact:
            if best == 0:
                continue
        else:
            if best < thr:
                if best > thr / 10.0:
                    marginal = True
                for i in range(r, nrows):
                    m[i][c] = 0.0
                continue
            if best < 10.0 * thr:
                marginal = True
        if best_i != r:
            m[r], m[best_i] = m[best_i], m[r]
        pivot = m[r][c]
        m[r] = [v / pivot for v in m[r]]
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f == 0:
                continue
            m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1

    rank = len(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    kernel = []
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    for fc in free_cols:
        v = [zero] * ncols
        v[fc] = one
        for i, pc in enumerate(pivot_cols):
            v[pc] = -m[i][fc]
        # normalise: largest-magnitude entry becomes +1
        top = max(range(ncols), key=lambda j: abs(v[j]))
        pivot = v[top]
        v = [a / pivot for a in v]
        kernel.append(tuple(v))
    return RankResult(rank, kernel, marginal, exact, pivot_cols)


def mat_vec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]
