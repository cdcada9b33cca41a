"""GF(2) linear algebra on int bitsets."""

from __future__ import annotations

from typing import Sequence


def rank(vectors: Sequence[int]) -> int:
    pivots: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                r += 1
                break
    return r


def kernel(columns: Sequence[int]) -> list[int]:
    """Basis of {x : sum_j x_j columns[j] = 0}; each x is a bitset over column indices."""
    pivots: dict[int, tuple[int, int]] = {}
    basis = []
    for j, v in enumerate(columns):
        combo = 1 << j
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                pv, pc = pivots[top]
                v ^= pv
                combo ^= pc
            else:
                pivots[top] = (v, combo)
                break
        if not v:
            basis.append(combo)
    return basis


def bits(x: int) -> list[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out
