"""Validity of signed matrices.

A k x (m+1) matrix A is valid when the k linear paths
``l_p(t) = sum_j t_j s_{p,j} e_{I_{p,j}}`` stay linearly independent over the
whole simplex, i.e. the Gram determinant never vanishes there.  Equivalently,
for no direction b does the origin lie in the convex hull of the columns of
the induced matrix M(A, b).

For k = 2 the exact combinatorial test is :func:`is_valid_k2`.  For general k,
:func:`certify_valid_general` returns an exact certificate either way, or an
honest ``unresolved`` verdict.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import bernstein
from .lp import check_point, solve_feasibility
from .matrixcore import DuplicateColumn, MatrixError, SignedMatrix

DEFAULT_MAX_DEPTH = 12
DEFAULT_B_SAMPLES = 512
ENGINE_VERSION = "1"


class WrongK(MatrixError):
    pass


@dataclass(frozen=True)
class CircuitWitness:
    rows: tuple[int, int]
    cols: tuple[int, ...]
    kind: str  # "circuit" or "anticircuit"

    @property
    def length(self) -> int:
        return len(self.cols)

    def to_json(self) -> dict:
        return {"type": "circuit", "rows": list(self.rows), "cols": list(self.cols), "kind": self.kind}


@dataclass(frozen=True)
class RowPair:
    """Row ``row`` holds both ``alpha`` and ``-alpha`` (in columns ``cols``)."""

    row: int
    alpha: int
    cols: tuple[int, int]

    def to_json(self) -> dict:
        return {"type": "rowpair", "row": self.row, "alpha": self.alpha, "cols": list(self.cols)}


def _frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


@dataclass(frozen=True)
class PointWitness:
    """Exact (b, t) with M(A, b) t = 0 and t in the simplex."""

    b: tuple[Fraction, ...]
    t: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {
            "type": "point",
            "b": [_frac_json(x) for x in self.b],
            "t": [_frac_json(x) for x in self.t],
        }


@dataclass(frozen=True)
class ValidityVerdict:
    status: str  # "valid", "invalid", "unresolved"
    witness: object = None
    certificate: dict | None = field(default=None, compare=False)
    depth: int | None = None

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    @property
    def invalid(self) -> bool:
        return self.status == "invalid"

    def as_bool(self) -> bool | None:
        return {"valid": True, "invalid": False}.get(self.status)

    def to_json(self) -> dict:
        out: dict = {"verdict": self.status}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.status == "unresolved":
            out["depth"] = self.depth
        return out


def _check_distinct(A: SignedMatrix) -> None:
    if len(set(A.columns)) != len(A.columns):
        raise DuplicateColumn(f"matrix {A} has repeated columns")


# --- induced matrix and Gram determinant -------------------------------------

def induced_matrix(A: SignedMatrix, b: Sequence) -> list[list[Fraction]]:
    """n x (m+1) matrix whose column j is sum_i b_i s_ij e_{I_ij}."""
    if len(b) != A.k:
        raise ValueError(f"b must have length {A.k}")
    b = [Fraction(x) for x in b]
    M = [[Fraction(0)] * A.ncols for _ in range(A.n)]
    for j, col in enumerate(A.columns):
        for i, v in enumerate(col):
            M[abs(v) - 1][j] += b[i] if v > 0 else -b[i]
    return M


def _paths_at(A: SignedMatrix, t: Sequence[Fraction]) -> list[list[Fraction]]:
    L = [[Fraction(0)] * A.n for _ in range(A.k)]
    for j, col in enumerate(A.columns):
        tj = Fraction(t[j])
        if not tj:
            continue
        for i, v in enumerate(col):
            L[i][abs(v) - 1] += tj if v > 0 else -tj
    return L


def gram_matrix(A: SignedMatrix, t: Sequence) -> list[list[Fraction]]:
    L = _paths_at(A, t)
    return [[sum(x * y for x, y in zip(L[p], L[q])) for q in range(A.k)] for p in range(A.k)]


def _det(M: list[list[Fraction]]) -> Fraction:
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def _nullspace_vector(M: list[list[Fraction]]) -> list[Fraction] | None:
    """A nonzero rational kernel vector of a square matrix, or None."""
    n = len(M)
    R = [list(r) for r in M]
    pivots = []
    row = 0
    for c in range(n):
        piv = next((r for r in range(row, n) if R[r][c] != 0), None)
        if piv is None:
            continue
        R[row], R[piv] = R[piv], R[row]
        pv = R[row][c]
        R[row] = [x / pv for x in R[row]]
        for r in range(n):
            if r != row and R[r][c] != 0:
                f = R[r][c]
                R[r] = [a - f * b for a, b in zip(R[r], R[row])]
        pivots.append(c)
        row += 1
    free = [c for c in range(n) if c not in pivots]
    if not free:
        return None
    fc = free[0]
    x = [Fraction(0)] * n
    x[fc] = Fraction(1)
    for r, pc in enumerate(pivots):
        x[pc] = -R[r][fc]
    return x


def gram_determinant(A: SignedMatrix, t: Sequence) -> Fraction:
    """det of the k x k Gram matrix of the paths at the barycentric point t."""
    if len(t) != A.ncols:
        raise ValueError(f"t must have {A.ncols} coordinates")
    return _det(gram_matrix(A, t))


def gram_polynomial(A: SignedMatrix) -> bernstein.Poly:
    """The Gram determinant as a homogeneous integer form of degree 2k in t."""
    nv = A.ncols
    forms = []
    for i in range(A.k):
        axes: dict[int, list[int]] = {}
        for j, col in enumerate(A.columns):
            v = col[i]
            axes.setdefault(abs(v), [0] * nv)[j] += 1 if v > 0 else -1
        forms.append(axes)
    G = [[None] * A.k for _ in range(A.k)]
    for p in range(A.k):
        for q in range(p, A.k):
            acc: bernstein.Poly = {}
            for axis, cp in forms[p].items():
                cq = forms[q].get(axis)
                if cq is None:
                    continue
                acc = bernstein.poly_add(
                    acc, bernstein.poly_mul(bernstein.linear_form(cp), bernstein.linear_form(cq))
                )
            G[p][q] = G[q][p] = acc
    return bernstein.poly_det(G, nv)


# --- k = 2 combinatorics ---------------------------------------------------

def _find_cycle(succ: dict[int, list[int]], nodes: Sequence[int]) -> list[int] | None:
    color = {v: 0 for v in nodes}
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succ.get(root, ())))]
        path = [root]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[v] = 2
                stack.pop()
                path.pop()
                continue
            if color[nxt] == 1:
                return path[path.index(nxt):]
            if color[nxt] == 0:
                color[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(succ.get(nxt, ()))))
    return None


def find_circuit_in_rows(
    A: SignedMatrix, i0: int, i1: int, kind: str
) -> CircuitWitness | None:
    """Circuit: a[i1][j_a] = a[i0][j_(a+1)] cyclically; anti-circuit with a sign flip."""
    sgn = 1 if kind == "circuit" else -1
    where: dict[int, list[int]] = {}
    for j, col in enumerate(A.columns):
        where.setdefault(col[i0], []).append(j)
    succ = {j: where.get(sgn * col[i1], []) for j, col in enumerate(A.columns)}
    cyc = _find_cycle(succ, range(A.ncols))
    if cyc is None:
        return None
    return CircuitWitness((i0, i1), tuple(cyc), kind)


def find_circuit(A: SignedMatrix, kind: str = "circuit") -> CircuitWitness | None:
    if kind not in ("circuit", "anticircuit"):
        raise ValueError(f"unknown circuit kind {kind!r}")
    for i0, i1 in itertools.permutations(range(A.k), 2):
        w = find_circuit_in_rows(A, i0, i1, kind)
        if w is not None:
            return w
    return None


def find_row_pair(A: SignedMatrix) -> RowPair | None:
    for i, row in enumerate(A.rows):
        first: dict[int, int] = {}
        for j, v in enumerate(row):
            if -v in first:
                return RowPair(i, abs(v), (first[-v], j))
            first.setdefault(v, j)
    return None


def is_valid_k2(A: SignedMatrix) -> ValidityVerdict:
    if A.k != 2:
        raise WrongK(f"is_valid_k2 needs k = 2, got k = {A.k}")
    _check_distinct(A)
    rp = find_row_pair(A)
    if rp is not None:
        return ValidityVerdict("invalid", rp)
    for kind in ("circuit", "anticircuit"):
        w = find_circuit(A, kind)
        if w is not None:
            return ValidityVerdict("invalid", w)
    return ValidityVerdict("valid")


def invalid_submatrix_filter(A: SignedMatrix) -> ValidityVerdict | None:
    """Sound, incomplete invalidity test from every pair of rows."""
    if A.k < 2:
        raise WrongK("the row-pair filter needs k >= 2")
    rp = find_row_pair(A)
    if rp is not None:
        return ValidityVerdict("invalid", rp)
    for i0, i1 in itertools.combinations(range(A.k), 2):
        for kind in ("circuit", "anticircuit"):
            w = find_circuit_in_rows(A, i0, i1, kind)
            if w is not None:
                return ValidityVerdict("invalid", w)
    return None


def point_from_combinatorial(A: SignedMatrix, w) -> PointWitness:
    """Turn a row-pair or circuit witness into an exact (b, t)."""
    b = [Fraction(0)] * A.k
    t = [Fraction(0)] * A.ncols
    if isinstance(w, RowPair):
        b[w.row] = Fraction(1)
        for j in w.cols:
            t[j] = Fraction(1, 2)
    elif isinstance(w, CircuitWitness):
        i0, i1 = w.rows
        b[i0] = Fraction(1)
        b[i1] = Fraction(-1 if w.kind == "circuit" else 1)
        for j in w.cols:
            t[j] = Fraction(1, w.length)
    else:
        raise TypeError(f"not a combinatorial witness: {w!r}")
    return PointWitness(tuple(b), tuple(t))


def check_point_witness(A: SignedMatrix, w: PointWitness) -> bool:
    if any(x < 0 for x in w.t) or sum(w.t) != 1 or not any(w.b):
        return False
    M = induced_matrix(A, w.b)
    return all(sum(a * x for a, x in zip(row, w.t)) == 0 for row in M)


# --- general k -------------------------------------------------------------

def _lp_witness(A: SignedMatrix, b: Sequence[Fraction]) -> PointWitness | None:
    M = induced_matrix(A, b)
    rows = [r for r in M if any(r)]
    rows.append([Fraction(1)] * A.ncols)
    rhs = [Fraction(0)] * (len(rows) - 1) + [Fraction(1)]
    res = solve_feasibility(rows, rhs)
    if res.feasible and check_point(rows, rhs, res.point):
        return PointWitness(tuple(Fraction(x) for x in b), res.point)
    return None


def structured_directions(k: int):
    """b in {+-1}^k, then unit vectors, then e_i +- e_j; one of each +-b pair."""
    seen = set()

    def emit(v):
        v = tuple(v)
        neg = tuple(-x for x in v)
        if v in seen or neg in seen:
            return None
        seen.add(v)
        return v

    for signs in itertools.product((1, -1), repeat=k):
        v = emit(signs)
        if v:
            yield v
    for i in range(k):
        v = emit(tuple(int(r == i) for r in range(k)))
        if v:
            yield v
    for i, j in itertools.combinations(range(k), 2):
        for s in (1, -1):
            v = emit(tuple(1 if r == i else s if r == j else 0 for r in range(k)))
            if v:
                yield v


def grid_directions(k: int, count: int, denom: int = 256):
    """Deterministic low-discrepancy rational directions in [-1, 1]^k."""
    # Kronecker sequence with generalized golden-ratio increments
    phi = 2.0
    for _ in range(64):
        phi = (1 + phi) ** (1.0 / (k + 1))
    alphas = [(1 / phi) ** (i + 1) % 1 for i in range(k)]
    produced = 0
    idx = 1
    while produced < count:
        v = []
        for a in alphas:
            u = (0.5 + a * idx) % 1
            v.append(Fraction(round((2 * u - 1) * denom), denom))
        idx += 1
        if any(v):
            produced += 1
            yield tuple(v)


def certify_valid_general(
    A: SignedMatrix,
    max_depth: int = DEFAULT_MAX_DEPTH,
    b_samples: int = DEFAULT_B_SAMPLES,
    use_filter: bool = True,
) -> ValidityVerdict:
    """Certified validity verdict for any k.

    Invalid verdicts carry an exact PointWitness; valid ones a record of the
    Bernstein subdivision that proves the Gram determinant positive.  With
    ``use_filter=False`` the combinatorial row-pair filter is skipped, so the
    verdict depends on LP and Gram arithmetic alone.
    """
    _check_distinct(A)
    if A.ncols == 0:
        raise MatrixError("matrix has no columns")
    if use_filter and A.k >= 2:
        v = invalid_submatrix_filter(A)
        if v is not None:
            return ValidityVerdict("invalid", point_from_combinatorial(A, v.witness))
    for b in structured_directions(A.k):
        w = _lp_witness(A, b)
        if w is not None:
            return ValidityVerdict("invalid", w)
    poly = gram_polynomial(A)
    res = bernstein.certify_positive(poly, A.ncols, 2 * A.k, max_depth=max_depth)
    if res.status == "positive":
        cert = {
            "method": "bernstein",
            "degree": 2 * A.k,
            "cells": len(res.leaves),
            "depth": res.depth,
            "max_elevation": max(c["elevation"] for c in res.leaves),
        }
        return ValidityVerdict("valid", certificate=cert)
    if res.status == "zero":
        G = gram_matrix(A, res.zero)
        b = _nullspace_vector(G)
        w = PointWitness(tuple(b), tuple(res.zero))
        if check_point_witness(A, w):
            return ValidityVerdict("invalid", w)
    for b in grid_directions(A.k, b_samples):
        w = _lp_witness(A, b)
        if w is not None:
            return ValidityVerdict("invalid", w)
    return ValidityVerdict("unresolved", depth=max_depth)


def is_valid_k1(A: SignedMatrix) -> ValidityVerdict:
    """A single path sum t_j v_j of distinct signed axes vanishes only across an antipodal pair."""
    if A.k != 1:
        raise WrongK("is_valid_k1 needs k = 1")
    _check_distinct(A)
    rp = find_row_pair(A)
    return ValidityVerdict("invalid", rp) if rp else ValidityVerdict("valid")


def validity_verdict(A: SignedMatrix, max_depth: int = DEFAULT_MAX_DEPTH,
                     b_samples: int = DEFAULT_B_SAMPLES) -> ValidityVerdict:
    """Dispatch to the cheapest exact procedure for A's row count."""
    if A.k == 1:
        return is_valid_k1(A)
    if A.k == 2:
        return is_valid_k2(A)
    return certify_valid_general(A, max_depth=max_depth, b_samples=b_samples)


def is_valid(A: SignedMatrix) -> bool | None:
    """Validity oracle: True, False, or None when undecided."""
    if len(set(A.columns)) != len(A.columns):
        return False
    return validity_verdict(A).as_bool()
