"""Signed matrices, faces, chain templates and Grassmann canonical forms.

Entries are nonzero Python ints: ``-3`` is the signed index with magnitude 3
and sign -1.  A column is a k-tuple of entries, a face is a sorted tuple of
distinct columns.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

Column = tuple[int, ...]
Face = tuple[Column, ...]


class MatrixError(ValueError):
    pass


class DuplicateColumn(MatrixError):
    pass


class ShapeMismatch(MatrixError):
    pass


class AmbiguousDep(MatrixError):
    """A dependent sign slot has zero or several valid completions."""


class OracleUnresolved(MatrixError):
    pass


class ParseError(MatrixError):
    def __init__(self, message: str, text: str = "", pos: int = 0, line: int = 1):
        self.text = text
        self.pos = pos
        self.line = line
        super().__init__(f"line {line}, column {pos + 1}: {message}")


def entry_key(v: int) -> tuple[int, bool]:
    """Order on signed indices: by magnitude, positive before negative."""
    return (abs(v), v < 0)


def column_key(col: Column) -> tuple:
    return tuple((abs(v), v < 0) for v in col)


def sort_columns(cols: Iterable[Column]) -> Face:
    return tuple(sorted(cols, key=column_key))


def face_key(face: Face) -> tuple:
    """Row-major comparison key of a face stored with sorted columns."""
    if not face:
        return ()
    k = len(face[0])
    return tuple(entry_key(col[i]) for i in range(k) for col in face)


@dataclass(frozen=True)
class SignedMatrix:
    """A k x (m+1) matrix over {+-1, ..., +-n}, stored by columns."""

    columns: tuple[Column, ...]
    n: int
    k: int

    def __post_init__(self):
        cols = tuple(tuple(int(v) for v in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if self.k < 1 or self.n < 1:
            raise MatrixError(f"need n, k >= 1, got n={self.n}, k={self.k}")
        for c in cols:
            if len(c) != self.k:
                raise ShapeMismatch(f"column {c} does not have {self.k} entries")
            for v in c:
                if v == 0 or abs(v) > self.n:
                    raise MatrixError(f"entry {v} outside +-1..+-{self.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], n: int | None = None) -> "SignedMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise MatrixError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeMismatch("ragged rows")
        if n is None:
            n = max(abs(v) for r in rows for v in r)
        return cls(tuple(zip(*rows)), n, len(rows))

    @classmethod
    def parse(cls, text: str, n: int | None = None, k: int | None = None) -> "SignedMatrix":
        t = parse_template(text, n=n)
        if t.n_free or t.n_dep or len(t.terms) != 1:
            raise ParseError("sign slots '~'/'!' are not allowed in a plain matrix", text)
        rows = [[s.value for s in row] for row in t.terms[0]]
        if k is not None and len(rows) != k:
            raise ShapeMismatch(f"expected {k} rows, got {len(rows)}")
        return cls.from_rows(rows, n=t.n)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.columns))

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def dim(self) -> int:
        return len(self.columns) - 1

    def with_columns(self, cols: Iterable[Column]) -> "SignedMatrix":
        return SignedMatrix(tuple(cols), self.n, self.k)

    def format(self) -> str:
        return format_rows(self.rows)

    def __str__(self) -> str:
        return self.format()


def format_rows(rows: Sequence[Sequence[int]]) -> str:
    return " ; ".join(" ".join(str(v) for v in r) for r in rows)


def format_face(face: Face) -> str:
    return format_rows(list(zip(*face)))


def face_of(A: SignedMatrix) -> Face:
    """The unordered column set of ``A``, stored sorted."""
    if len(set(A.columns)) != len(A.columns):
        raise DuplicateColumn(f"matrix {A} has repeated columns")
    return sort_columns(A.columns)


def face_matrix(face: Face, n: int) -> SignedMatrix:
    return SignedMatrix(face, n, len(face[0]))


def is_vertex(col: Column) -> bool:
    mags = [abs(v) for v in col]
    return len(set(mags)) == len(mags)


# --- even signed row operations -------------------------------------------

def _perm_parity(p: Sequence[int]) -> int:
    p = list(p)
    sign = 1
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


_GROUP_CACHE: dict[tuple[int, bool], tuple] = {}


def signed_permutations(k: int, even_only: bool = True) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Signed permutation matrices as (perm, signs): row i of g.A is signs[i] * row perm[i] of A.

    With ``even_only`` only determinant +1 elements are returned; these are
    exactly the products of an even number of row negations and swaps.
    """
    key = (k, even_only)
    if key not in _GROUP_CACHE:
        out = []
        for perm in itertools.permutations(range(k)):
            par = _perm_parity(perm)
            for signs in itertools.product((1, -1), repeat=k):
                det = par
                for s in signs:
                    det *= s
                if even_only and det != 1:
                    continue
                out.append((perm, signs))
        _GROUP_CACHE[key] = tuple(out)
    return _GROUP_CACHE[key]


def act_on_column(g, col: Column) -> Column:
    perm, signs = g
    return tuple(s * col[p] for p, s in zip(perm, signs))


def canonical_face(face: Iterable[Column]) -> Face:
    """Minimum of the face's orbit under determinant +1 signed row permutations."""
    cols = tuple(face)
    k = len(cols[0])
    best = None
    best_key = None
    for g in signed_permutations(k):
        cand = sort_columns(act_on_column(g, c) for c in cols)
        key = face_key(cand)
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def canonical_form(A: SignedMatrix) -> SignedMatrix:
    return A.with_columns(canonical_face(A.columns))


def rotation_equivalent(A: SignedMatrix, B: SignedMatrix) -> bool:
    if A.k != B.k or A.ncols != B.ncols or A.n != B.n:
        raise ShapeMismatch("matrices differ in shape or ambient n")
    return canonical_face(A.columns) == canonical_face(B.columns)


def signed_perm_det(g) -> int:
    perm, signs = g
    det = _perm_parity(perm)
    for s in signs:
        det *= s
    return det


def row_ops_to_group_element(ops: Sequence[tuple], k: int):
    """Compose ("neg", i) / ("swap", i, j) row operations into (perm, signs)."""
    perm = list(range(k))
    signs = [1] * k
    for op in ops:
        if op[0] == "neg":
            signs[op[1]] = -signs[op[1]]
        elif op[0] == "swap":
            i, j = op[1], op[2]
            perm[i], perm[j] = perm[j], perm[i]
            signs[i], signs[j] = signs[j], signs[i]
        else:
            raise ValueError(f"unknown row operation {op!r}")
    return tuple(perm), tuple(signs)


# --- templates ---------------------------------------------------------------

@dataclass(frozen=True)
class Slot:
    kind: str  # "fixed", "free" or "dep"
    value: int  # signed entry for fixed, magnitude otherwise

    def __post_init__(self):
        if self.kind not in ("fixed", "free", "dep"):
            raise ValueError(f"bad slot kind {self.kind}")
        if self.value == 0 or (self.kind != "fixed" and self.value < 0):
            raise ValueError(f"bad slot value {self.value}")

    def text(self) -> str:
        if self.kind == "free":
            return f"~{self.value}"
        if self.kind == "dep":
            return f"!{self.value}"
        return str(self.value)


def Fixed(v: int) -> Slot:
    return Slot("fixed", v)


def Free(m: int) -> Slot:
    return Slot("free", m)


def Dep(m: int) -> Slot:
    return Slot("dep", m)


Grid = tuple[tuple[Slot, ...], ...]
_JSON_KEYS = {"fixed": "v", "free": "pm", "dep": "mp"}


@dataclass(frozen=True)
class ChainTemplate:
    """A GF(2) sum of sign-slot grids.

    Each term is a row-major grid of slots.  A free slot stands for both
    signs, a dependent slot for whichever sign keeps the matrix valid.
    """

    terms: tuple[Grid, ...]
    n: int
    k: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        terms = tuple(tuple(tuple(r) for r in g) for g in self.terms)
        object.__setattr__(self, "terms", terms)
        for g in terms:
            if len(g) != self.k:
                raise ShapeMismatch(f"template term has {len(g)} rows, expected {self.k}")
            width = len(g[0])
            for r in g:
                if len(r) != width:
                    raise ShapeMismatch("ragged template rows")
                for s in r:
                    if abs(s.value) > self.n:
                        raise MatrixError(f"slot {s.text()} exceeds n={self.n}")

    @property
    def n_free(self) -> int:
        return sum(s.kind == "free" for g in self.terms for r in g for s in r)

    @property
    def n_dep(self) -> int:
        return sum(s.kind == "dep" for g in self.terms for r in g for s in r)

    def term_sizes(self) -> list[int]:
        return [2 ** sum(s.kind == "free" for r in g for s in r) for g in self.terms]

    def format(self) -> str:
        return " + ".join(" ; ".join(" ".join(s.text() for s in r) for r in g) for g in self.terms)

    def __add__(self, other: "ChainTemplate") -> "ChainTemplate":
        if (self.n, self.k) != (other.n, other.k):
            raise ShapeMismatch("cannot add templates with different (n, k)")
        return ChainTemplate(self.terms + other.terms, self.n, self.k, self.name)

    def to_json(self) -> dict:
        def slot(s: Slot) -> dict:
            return {_JSON_KEYS[s.kind]: s.value}

        terms = [[[slot(s) for s in r] for r in g] for g in self.terms]
        if len(terms) == 1:
            return {"n": self.n, "k": self.k, "rows": terms[0]}
        return {"n": self.n, "k": self.k, "terms": terms}

    @classmethod
    def from_json(cls, obj: dict) -> "ChainTemplate":
        def slot(d: dict) -> Slot:
            if len(d) != 1:
                raise ParseError(f"slot object must have one key: {d}")
            (key, val), = d.items()
            kind = {v: k for k, v in _JSON_KEYS.items()}.get(key)
            if kind is None:
                raise ParseError(f"unknown slot key {key!r}")
            return Slot(kind, int(val))

        grids = obj["terms"] if "terms" in obj else [obj["rows"]]
        terms = tuple(tuple(tuple(slot(d) for d in r) for r in g) for g in grids)
        return cls(terms, int(obj["n"]), int(obj["k"]))


_TOKEN = re.compile(r"[~!]?-?\d+\Z")


def parse_template(text: str, n: int | None = None, k: int | None = None) -> ChainTemplate:
    """Parse ``"1 1 ; ~2 ~3"``; terms of a sum are joined by ``" + "``."""
    terms = []
    offset = 0
    for term_text in text.split(" + "):
        rows = []
        roff = offset
        for row_text in term_text.split(" ; "):
            if row_text == "":
                raise ParseError("empty row", text, roff)
            row = []
            coff = roff
            for tok in row_text.split(" "):
                if not tok or not _TOKEN.match(tok):
                    raise ParseError(f"bad entry {tok!r}", text, coff)
                if tok[0] == "~":
                    body, kind = tok[1:], "free"
                elif tok[0] == "!":
                    body, kind = tok[1:], "dep"
                else:
                    body, kind = tok, "fixed"
                v = int(body)
                if v == 0 or (kind != "fixed" and v < 0):
                    raise ParseError(f"bad entry {tok!r}", text, coff)
                row.append(Slot(kind, v))
                coff += len(tok) + 1
            rows.append(tuple(row))
            roff += len(row_text) + 3
        if any(len(r) != len(rows[0]) for r in rows):
            raise ParseError("rows have different lengths", text, offset)
        terms.append(tuple(rows))
        offset += len(term_text) + 3
    if k is None:
        k = len(terms[0])
    if any(len(g) != k for g in terms):
        raise ParseError(f"every term must have {k} rows", text)
    mags = max(abs(s.value) for g in terms for r in g for s in r)
    if n is None:
        n = mags
    elif mags > n:
        raise ParseError(f"entry magnitude {mags} exceeds n={n}", text)
    return ChainTemplate(tuple(terms), n, k)


def parse_template_json(obj: dict | str) -> ChainTemplate:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return ChainTemplate.from_json(obj)


def matrix_to_json(A: SignedMatrix) -> dict:
    return {"n": A.n, "k": A.k, "rows": [[{"v": v} for v in r] for r in A.rows]}


def _sign_assignments(count: int) -> Iterator[tuple[int, ...]]:
    return itertools.product((1, -1), repeat=count)


def expand_grid(grid: Grid, n: int, oracle: Callable[[SignedMatrix], bool | None]) -> list[SignedMatrix]:
    """Expand one template grid; ``oracle`` returns True/False or None if undecided."""
    k = len(grid)
    cells = [(i, j, s) for i, r in enumerate(grid) for j, s in enumerate(r)]
    free = [(i, j, s.value) for i, j, s in cells if s.kind == "free"]
    dep = [(i, j, s.value) for i, j, s in cells if s.kind == "dep"]
    base = [[s.value if s.kind == "fixed" else 0 for s in r] for r in grid]
    out = []
    for fs in _sign_assignments(len(free)):
        rows = [list(r) for r in base]
        for (i, j, m), s in zip(free, fs):
            rows[i][j] = s * m
        valid = []
        for ds in _sign_assignments(len(dep)):
            for (i, j, m), s in zip(dep, ds):
                rows[i][j] = s * m
            if dep and _row_has_opposites(rows):
                continue
            A = SignedMatrix(tuple(zip(*rows)), n, k)
            if len(set(A.columns)) != len(A.columns):
                continue
            verdict = oracle(A)
            if verdict is None:
                raise OracleUnresolved(f"validity of {A} could not be decided")
            if verdict:
                valid.append(A)
                if len(valid) > 1:
                    break
        if len(valid) != 1:
            raise AmbiguousDep(
                f"free signs {fs} admit {len(valid)} valid completions in {format_rows(rows)}"
            )
        out.extend(valid)
    return out


def _row_has_opposites(rows) -> bool:
    for r in rows:
        seen = set(r)
        if any(-v in seen for v in r):
            return True
    return False


def expand_template(t: ChainTemplate, oracle: Callable[[SignedMatrix], bool | None]) -> list[SignedMatrix]:
    """All matrices represented by ``t``, dependent signs filled in by ``oracle``.

    Every free-sign assignment must have exactly one valid completion, so the
    result always has ``2 ** t.n_free`` entries.  Multiplicities are kept;
    GF(2) reduction happens when the list becomes a Chain.
    """
    out = []
    for g in t.terms:
        out.extend(expand_grid(g, t.n, oracle))
    return out
