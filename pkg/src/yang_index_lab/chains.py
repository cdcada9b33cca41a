"""GF(2) chains of faces with the free involution and Yang's inductive index.

In Stiefel mode a face is its sorted column set.  In Grassmann mode every
face is replaced by its canonical class under determinant +1 signed row
permutations, so identifications in the quotient cancel automatically.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, TextIO

from .matrixcore import (
    ChainTemplate,
    Face,
    MatrixError,
    SignedMatrix,
    canonical_face,
    expand_template,
    face_key,
    format_face,
    sort_columns,
)
from .validity import is_valid

STIEFEL = "stiefel"
GRASSMANN = "grassmann"
MODES = (STIEFEL, GRASSMANN)


class ChainError(ValueError):
    pass


class DimZero(ChainError):
    pass


class NotInvariant(ChainError):
    pass


class NotCycle(ChainError):
    pass


class FixedFace(ChainError):
    """The involution fixes a face; it would not be free."""


@lru_cache(maxsize=1 << 20)
def _canonical(face: Face) -> Face:
    return canonical_face(face)


def normalize_face(cols: Iterable, mode: str) -> Face:
    face = sort_columns(tuple(c) for c in cols)
    if mode == GRASSMANN:
        return _canonical(face)
    return face


def tau_face(face: Face, mode: str) -> Face:
    """Negate the last entry of every column."""
    return normalize_face((c[:-1] + (-c[-1],) for c in face), mode)


@dataclass(frozen=True)
class Chain:
    faces: frozenset
    dim: int
    n: int
    k: int
    mode: str = STIEFEL

    @classmethod
    def from_faces(cls, faces: Iterable, n: int, k: int, mode: str = STIEFEL,
                   dim: int | None = None) -> "Chain":
        """Sum faces over GF(2); repeated faces cancel in pairs."""
        if mode not in MODES:
            raise ChainError(f"unknown mode {mode!r}")
        acc: set = set()
        for f in faces:
            if isinstance(f, SignedMatrix):
                f = f.columns
            g = normalize_face(f, mode)
            if len(set(g)) != len(g):
                raise MatrixError(f"face with repeated columns: {format_face(g)}")
            if dim is None:
                dim = len(g) - 1
            elif len(g) - 1 != dim:
                raise ChainError(f"face {format_face(g)} is not of dimension {dim}")
            acc ^= {g}
        if dim is None:
            raise ChainError("cannot infer the dimension of an empty chain")
        return cls(frozenset(acc), dim, n, k, mode)

    def with_faces(self, faces: Iterable[Face], dim: int | None = None) -> "Chain":
        return Chain(frozenset(faces), self.dim if dim is None else dim, self.n, self.k, self.mode)

    def _compatible(self, other: "Chain") -> None:
        if (self.dim, self.n, self.k, self.mode) != (other.dim, other.n, other.k, other.mode):
            raise ChainError("chains differ in dimension, parameters or mode")

    def __add__(self, other: "Chain") -> "Chain":
        self._compatible(other)
        return self.with_faces(self.faces ^ other.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __bool__(self) -> bool:
        return bool(self.faces)

    def __iter__(self):
        return iter(self.sorted_faces())

    def sorted_faces(self) -> list[Face]:
        return sorted(self.faces, key=face_key)

    def to_mode(self, mode: str) -> "Chain":
        return Chain.from_faces(self.faces, self.n, self.k, mode, self.dim)


def zero_chain(dim: int, n: int, k: int, mode: str = STIEFEL) -> Chain:
    return Chain(frozenset(), dim, n, k, mode)


def boundary(c: Chain) -> Chain:
    if c.dim < 1:
        raise DimZero("the boundary of a 0-chain is not defined here")
    acc: set = set()
    mode = c.mode
    for f in c.faces:
        for j in range(len(f)):
            g = f[:j] + f[j + 1:]
            if mode == GRASSMANN:
                g = _canonical(g)
            acc ^= {g}
    return c.with_faces(acc, c.dim - 1)


def tau(c: Chain) -> Chain:
    return c.with_faces(tau_face(f, c.mode) for f in c.faces)


def is_invariant(c: Chain) -> bool:
    return all(tau_face(f, c.mode) in c.faces for f in c.faces)


@dataclass(frozen=True)
class Splitting:
    d: Chain
    tau_d: Chain


def split_invariant(c: Chain, rng: random.Random | None = None) -> Splitting:
    """Write c = d + tau(d), taking the smaller face of each orbit (or a random one)."""
    d, td = [], []
    seen = set()
    for f in sorted(c.faces, key=face_key):
        if f in seen:
            continue
        g = tau_face(f, c.mode)
        if g == f:
            raise FixedFace(f"involution fixes {format_face(f)}")
        if g not in c.faces:
            raise NotInvariant(f"{format_face(f)} is in the chain but its image is not")
        seen.add(f)
        seen.add(g)
        first, second = (f, g) if face_key(f) <= face_key(g) else (g, f)
        if rng is not None and rng.random() < 0.5:
            first, second = second, first
        d.append(first)
        td.append(second)
    return Splitting(c.with_faces(d), c.with_faces(td))


def yang_index_of_chain(c: Chain, rng: random.Random | None = None, check: bool = True) -> int:
    """Yang's index of an invariant cycle: parity of |d| in degree 0, else index of the boundary of d."""
    if check:
        if not is_invariant(c):
            raise NotInvariant("chain is not invariant under the involution")
        if c.dim > 0 and boundary(c):
            raise NotCycle("chain has nonzero boundary")
    while True:
        d = split_invariant(c, rng).d
        if c.dim == 0:
            return len(d) % 2
        c = boundary(d)


def chain_from_template(t: ChainTemplate, mode: str = STIEFEL,
                        oracle: Callable[[SignedMatrix], bool | None] = is_valid) -> Chain:
    mats = expand_template(t, oracle)
    if not mats:
        raise ChainError("template expands to nothing")
    return Chain.from_faces((A.columns for A in mats), t.n, t.k, mode)


# --- serialization ----------------------------------------------------------

def write_chain(c: Chain, fh: TextIO) -> None:
    """JSON lines: a header, then one face per line in the matrix text grammar."""
    fh.write(json.dumps({"n": c.n, "k": c.k, "dim": c.dim, "mode": c.mode}) + "\n")
    for f in c.sorted_faces():
        fh.write(json.dumps({"face": format_face(f)}) + "\n")


def read_chain(fh: TextIO) -> Chain:
    lines = [ln for ln in fh if ln.strip()]
    if not lines:
        raise ChainError("empty chain file")
    head = json.loads(lines[0])
    n, k, mode, dim = head["n"], head["k"], head.get("mode", STIEFEL), head["dim"]
    faces = []
    for ln in lines[1:]:
        A = SignedMatrix.parse(json.loads(ln)["face"], n=n, k=k)
        faces.append(A.columns)
    return Chain.from_faces(faces, n, k, mode, dim)
