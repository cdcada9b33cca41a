"""Exact rational feasibility for ``A x = c, x >= 0`` (phase-1 simplex, Bland's rule).

Returns either a feasible rational point or a Farkas certificate ``y`` with
``y^T A >= 0`` and ``y^T c < 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class Feasibility:
    point: tuple[Fraction, ...] | None = None
    farkas: tuple[Fraction, ...] | None = None

    @property
    def feasible(self) -> bool:
        return self.point is not None


def solve_feasibility(A: Sequence[Sequence], c: Sequence) -> Feasibility:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    T = []
    flips = []
    for i in range(rows):
        row = [Fraction(v) for v in A[i]]
        rhs = Fraction(c[i])
        flip = rhs < 0
        if flip:
            row = [-v for v in row]
            rhs = -rhs
        flips.append(-1 if flip else 1)
        art = [Fraction(0)] * rows
        art[i] = Fraction(1)
        T.append(row + art + [rhs])
    width = cols + rows
    basis = [cols + i for i in range(rows)]
    # phase-1 reduced costs: cost 1 on artificials
    def reduced(j):
        cj = 1 if j >= cols else 0
        return cj - sum(T[i][j] for i in range(rows) if basis[i] >= cols)

    while True:
        entering = None
        for j in range(width):
            if j in basis:
                continue
            if reduced(j) < 0:
                entering = j
                break
        if entering is None:
            break
        leave = None
        best = None
        for i in range(rows):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            break  # unbounded direction cannot occur in phase 1
        _pivot(T, leave, entering)
        basis[leave] = entering

    objective = sum(T[i][-1] for i in range(rows) if basis[i] >= cols)
    if objective == 0:
        x = [Fraction(0)] * cols
        for i, b in enumerate(basis):
            if b < cols:
                x[b] = T[i][-1]
        return Feasibility(point=tuple(x))
    # duals of phase 1: y_j = c_B^T B^{-1} e_j, with B^{-1} read off the artificial block
    y = []
    for r in range(rows):
        col = cols + r
        yr = sum(T[i][col] for i in range(rows) if basis[i] >= cols)
        y.append(-yr * flips[r])
    return Feasibility(farkas=tuple(y))


def _pivot(T, r, c):
    piv = T[r][c]
    T[r] = [v / piv for v in T[r]]
    pr = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                Ti = T[i]
                T[i] = [a - f * b for a, b in zip(Ti, pr)]


def check_point(A, c, x) -> bool:
    if any(v < 0 for v in x):
        return False
    return all(sum(Fraction(a) * v for a, v in zip(row, x)) == ci for row, ci in zip(A, c))


def check_farkas(A, c, y) -> bool:
    cols = len(A[0]) if A else 0
    for j in range(cols):
        if sum(Fraction(A[i][j]) * y[i] for i in range(len(A))) < 0:
            return False
    return sum(Fraction(ci) * yi for ci, yi in zip(c, y)) < 0
