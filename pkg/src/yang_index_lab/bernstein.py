"""Homogeneous integer polynomials on a simplex and Bernstein positivity certificates.

A homogeneous polynomial of degree d in barycentric coordinates,
``p = sum a_alpha lambda^alpha``, has Bernstein coefficients
``a_alpha * alpha! / d!``; they are all positive exactly when every monomial
of degree d is present with a positive coefficient.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

Poly = dict  # exponent tuple -> int


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for ea, ca in p.items():
        for eb, cb in q.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def poly_add(p: Poly, q: Poly, scale: int = 1) -> Poly:
    out = dict(p)
    for e, c in q.items():
        out[e] = out.get(e, 0) + scale * c
    return {e: c for e, c in out.items() if c}


def poly_eval(p: Poly, t: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in p.items():
        term = Fraction(c)
        for ti, ei in zip(t, e):
            if ei:
                term *= Fraction(ti) ** ei
        total += term
    return total


def linear_form(coeffs: Sequence[int]) -> Poly:
    nv = len(coeffs)
    out = {}
    for i, c in enumerate(coeffs):
        if c:
            e = [0] * nv
            e[i] = 1
            out[tuple(e)] = c
    return out


def poly_det(M: list[list[Poly]], nvars: int) -> Poly:
    """Determinant by Laplace expansion along rows, memoized on column subsets."""
    k = len(M)
    one = {(0,) * nvars: 1}
    memo: dict[tuple[int, ...], Poly] = {(): one}

    def minor(cols: tuple[int, ...]) -> Poly:
        if cols in memo:
            return memo[cols]
        row = k - len(cols)
        acc: Poly = {}
        for pos, c in enumerate(cols):
            entry = M[row][c]
            if not entry:
                continue
            rest = minor(cols[:pos] + cols[pos + 1:])
            if rest:
                acc = poly_add(acc, poly_mul(entry, rest), -1 if pos % 2 else 1)
        memo[cols] = acc
        return acc

    return minor(tuple(range(k)))


def monomials(nvars: int, degree: int):
    """All exponent tuples of the given total degree."""
    for bars in itertools.combinations(range(degree + nvars - 1), nvars - 1):
        prev = -1
        e = []
        for b in bars:
            e.append(b - prev - 1)
            prev = b
        e.append(degree + nvars - 1 - prev - 1)
        yield tuple(e)


def bernstein_positive(p: Poly, nvars: int, degree: int) -> bool:
    if len(p) != comb(degree + nvars - 1, nvars - 1):
        return False
    return all(c > 0 for c in p.values())


def elevate(p: Poly, nvars: int) -> Poly:
    """Multiply by (lambda_1 + ... + lambda_nvars), raising the degree by one."""
    out: Poly = {}
    for e, c in p.items():
        for i in range(nvars):
            f = e[:i] + (e[i] + 1,) + e[i + 1:]
            out[f] = out.get(f, 0) + c
    return out


def bisect_poly(p: Poly, degree: int, i: int, j: int, keep: str) -> Poly:
    """Restrict p to a half of the simplex split at the midpoint of edge (i, j).

    ``keep="i"`` keeps vertex i and moves vertex j to the midpoint; the
    result is scaled by 2**degree so coefficients stay integral.
    """
    if keep == "j":
        i, j = j, i
    # lambda_i = mu_i + mu_j / 2, lambda_j = mu_j / 2
    out: Poly = {}
    for e, c in p.items():
        a, b = e[i], e[j]
        scale = c * (1 << (degree - a - b))
        for r in range(a + 1):
            # C(a, r) (2 mu_i)^(a-r) mu_j^r * mu_j^b
            coeff = scale * comb(a, r) * (1 << (a - r))
            f = list(e)
            f[i] = a - r
            f[j] = b + r
            f = tuple(f)
            out[f] = out.get(f, 0) + coeff
    return {e: c for e, c in out.items() if c}


def vertex_value_index(nvars: int, degree: int, v: int) -> tuple[int, ...]:
    e = [0] * nvars
    e[v] = degree
    return tuple(e)


@dataclass
class Cell:
    poly: Poly
    vertices: list[tuple[Fraction, ...]]
    depth: int


@dataclass
class PositivityResult:
    """Outcome of a subdivision search for strict positivity on the simplex."""

    status: str  # "positive", "zero", "unresolved"
    zero: tuple[Fraction, ...] | None = None
    leaves: list[dict] = field(default_factory=list)
    depth: int = 0
    nodes: int = 0


def _edge_len2(u, v) -> Fraction:
    return sum((a - b) ** 2 for a, b in zip(u, v))


def certify_positive(
    p: Poly,
    nvars: int,
    degree: int,
    max_depth: int = 12,
    max_elevation: int | None = None,
    max_nodes: int = 200000,
) -> PositivityResult:
    """Decide strict positivity of a nonnegative homogeneous form on the standard simplex.

    Each cell first tries degree elevation; failing that it is bisected along
    its longest edge.  A zero at a cell vertex ends the search.
    """
    if max_elevation is None:
        max_elevation = degree
    ident = [tuple(Fraction(int(r == c)) for c in range(nvars)) for r in range(nvars)]
    stack = [Cell(p, ident, 0)]
    leaves = []
    nodes = 0
    deepest = 0
    while stack:
        cell = stack.pop()
        nodes += 1
        deepest = max(deepest, cell.depth)
        for v in range(nvars):
            if cell.poly.get(vertex_value_index(nvars, degree, v), 0) <= 0:
                return PositivityResult("zero", zero=cell.vertices[v], depth=deepest, nodes=nodes)
        q, d = cell.poly, degree
        certified = None
        for r in range(max_elevation + 1):
            if bernstein_positive(q, nvars, d):
                certified = r
                break
            if r < max_elevation:
                q, d = elevate(q, nvars), d + 1
        if certified is not None:
            leaves.append({"vertices": cell.vertices, "elevation": certified})
            continue
        if cell.depth >= max_depth or nodes >= max_nodes:
            return PositivityResult("unresolved", depth=deepest, nodes=nodes)
        best = None
        for a in range(nvars):
            for b in range(a + 1, nvars):
                L = _edge_len2(cell.vertices[a], cell.vertices[b])
                if best is None or L > best[0]:
                    best = (L, a, b)
        _, a, b = best
        mid = tuple((x + y) / 2 for x, y in zip(cell.vertices[a], cell.vertices[b]))
        va = list(cell.vertices)
        va[b] = mid
        vb = list(cell.vertices)
        vb[a] = mid
        stack.append(Cell(bisect_poly(cell.poly, degree, a, b, "i"), va, cell.depth + 1))
        stack.append(Cell(bisect_poly(cell.poly, degree, a, b, "j"), vb, cell.depth + 1))
    return PositivityResult("positive", leaves=leaves, depth=deepest, nodes=nodes)
