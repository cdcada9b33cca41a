"""Complexes of valid faces, invariant cycle spaces, and their Yang indices."""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import gf2
from .chains import (
    GRASSMANN,
    MODES,
    STIEFEL,
    Chain,
    ChainError,
    FixedFace,
    _canonical,
    boundary,
    is_invariant,
    tau_face,
    yang_index_of_chain,
)
from .matrixcore import Face, SignedMatrix, column_key, face_key, format_face
from .validity import ENGINE_VERSION, validity_verdict

DEFAULT_MAX_FACES = 2_000_000


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class ValidComplex:
    n: int
    k: int
    mode: str
    max_dim: int
    faces_by_dim: list[list[Face]]
    excluded: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        self._index = [{f: i for i, f in enumerate(fs)} for fs in self.faces_by_dim]

    def faces(self, m: int) -> list[Face]:
        return self.faces_by_dim[m] if 0 <= m < len(self.faces_by_dim) else []

    def __contains__(self, face: Face) -> bool:
        m = len(face) - 1
        return 0 <= m < len(self._index) and face in self._index[m]

    def face_counts(self) -> list[int]:
        return [len(fs) for fs in self.faces_by_dim]

    @property
    def top_dim(self) -> int:
        return max((m for m, fs in enumerate(self.faces_by_dim) if fs), default=-1)

    def chain(self, faces, m: int) -> Chain:
        return Chain(frozenset(faces), m, self.n, self.k, self.mode)


def vertices(n: int, k: int) -> list[tuple[int, ...]]:
    cols = []
    for mags in itertools.permutations(range(1, n + 1), k):
        for signs in itertools.product((1, -1), repeat=k):
            cols.append(tuple(s * m for s, m in zip(signs, mags)))
    return sorted(cols, key=column_key)


def _enumerate_stiefel(n, k, max_dim, max_faces, max_depth, b_samples):
    verts = vertices(n, k)
    rank = {v: i for i, v in enumerate(verts)}
    levels = [[(v,) for v in verts]]
    excluded: dict[int, int] = {}
    total = len(verts)
    for m in range(1, max_dim + 1):
        prev = set(levels[-1])
        cur = []
        for f in levels[-1]:
            last = rank[f[-1]]
            for v in verts[last + 1:]:
                cand = f + (v,)
                if any(cand[:j] + cand[j + 1:] not in prev for j in range(len(cand) - 1)):
                    continue
                verdict = validity_verdict(SignedMatrix(cand, n, k), max_depth, b_samples)
                if verdict.status == "valid":
                    cur.append(cand)
                    total += 1
                    if total > max_faces:
                        raise BudgetExceeded(f"more than {max_faces} faces")
                elif verdict.status == "unresolved":
                    excluded[m] = excluded.get(m, 0) + 1
        levels.append(cur)
        if not cur:
            break
    while len(levels) < max_dim + 1:
        levels.append([])
    return levels, excluded


def enumerate_valid_faces(
    n: int,
    k: int,
    max_dim: int,
    mode: str = STIEFEL,
    max_faces: int = DEFAULT_MAX_FACES,
    max_depth: int = 12,
    b_samples: int = 512,
    cache_dir: str | os.PathLike | None = None,
) -> ValidComplex:
    """Valid faces of dimension <= max_dim, built one dimension at a time.

    A candidate is tested only once all of its facets are present.  In
    Grassmann mode the faces are canonical classes.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if max_dim < 0:
        raise ValueError("max_dim must be >= 0")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if cache_dir is not None:
        cached = load_cached(cache_dir, n, k, max_dim, mode)
        if cached is not None:
            return cached
    levels, excluded = _enumerate_stiefel(n, k, max_dim, max_faces, max_depth, b_samples)
    if mode == GRASSMANN:
        levels = [sorted({_canonical(f) for f in fs}, key=face_key) for fs in levels]
    else:
        levels = [sorted(fs, key=face_key) for fs in levels]
    C = ValidComplex(n, k, mode, max_dim, levels, excluded)
    if cache_dir is not None:
        save_cached(cache_dir, C)
    return C


# --- invariant homology ----------------------------------------------------

def _orbits(C: ValidComplex, m: int):
    """Orbit representatives (smaller member first) of the involution on m-faces."""
    reps = []
    where: dict[Face, int] = {}
    for f in C.faces(m):
        if f in where:
            continue
        g = tau_face(f, C.mode)
        if g == f:
            raise FixedFace(f"involution fixes {format_face(f)}")
        if g not in C:
            raise ChainError(f"complex is not closed under the involution at {format_face(f)}")
        where[f] = where[g] = len(reps)
        reps.append((f, g))
    return reps, where


def _orbit_boundary_columns(C: ValidComplex, m: int, reps) -> list[int]:
    lower, lower_where = _orbits(C, m - 1)
    cols = []
    for f, g in reps:
        c = boundary(C.chain((f, g), m))
        vec = 0
        for h in c.faces:
            o = lower_where[h]
            if lower[o][0] == h:
                vec ^= 1 << o
        cols.append(vec)
    return cols


@dataclass
class InvariantCycleBasis:
    dim: int
    cycles: list[Chain]
    orbit_count: int


def invariant_cycle_basis(C: ValidComplex, m: int) -> InvariantCycleBasis:
    """Basis of the invariant m-cycles, one generator per orbit sum."""
    if m > C.max_dim:
        raise ValueError(f"m={m} exceeds max_dim={C.max_dim}")
    reps, _ = _orbits(C, m)
    if m == 0:
        kern = [1 << i for i in range(len(reps))]
    else:
        kern = gf2.kernel(_orbit_boundary_columns(C, m, reps))
    cycles = []
    for x in kern:
        faces = []
        for i in gf2.bits(x):
            faces.extend(reps[i])
        cycles.append(C.chain(faces, m))
    return InvariantCycleBasis(m, cycles, len(reps))


def boundary_rank(C: ValidComplex, m: int) -> int:
    """Rank of the boundary from invariant (m+1)-chains into invariant m-chains."""
    if m + 1 > C.max_dim or not C.faces(m + 1):
        return 0
    reps, _ = _orbits(C, m + 1)
    return gf2.rank(_orbit_boundary_columns(C, m + 1, reps))


@dataclass
class ComplexIndex:
    index: int
    witness: Chain | None
    exact: bool


def has_faces_above(C: ValidComplex) -> bool:
    """Whether some valid face of dimension max_dim + 1 exists.

    Extending class representatives by every vertex suffices in both modes,
    since the row-operation group maps valid faces to valid faces.
    """
    verts = vertices(C.n, C.k)
    for f in C.faces(C.max_dim):
        present = set(f)
        for v in verts:
            if v in present:
                continue
            if validity_verdict(SignedMatrix(f + (v,), C.n, C.k)).status != "invalid":
                return True
    return False


def yang_index_of_complex(C: ValidComplex) -> ComplexIndex:
    """Largest m <= max_dim carrying an invariant cycle of index 1.

    The index homomorphism is linear and kills invariant boundaries, so it
    is nonzero on H_m exactly when it is nonzero on a basis of the cycles.
    The value is a certified lower bound; it is exact when the complex has
    no faces above max_dim.
    """
    exact = not has_faces_above(C)
    for m in range(C.max_dim, -1, -1):
        for c in invariant_cycle_basis(C, m).cycles:
            if yang_index_of_chain(c, check=False) == 1:
                return ComplexIndex(m, c, exact)
    return ComplexIndex(-1, None, exact)


def homology_report(C: ValidComplex) -> list[dict]:
    rows = []
    for m in range(C.max_dim + 1):
        basis = invariant_cycle_basis(C, m)
        z = len(basis.cycles)
        b = boundary_rank(C, m)
        nu = any(yang_index_of_chain(c, check=False) for c in basis.cycles)
        rows.append({
            "dim": m,
            "faces": len(C.faces(m)),
            "orbits": basis.orbit_count,
            "cycles": z,
            "boundaries": b,
            "homology": z - b,
            "index_nonzero": nu,
            "truncated": m == C.max_dim and has_faces_above(C),
        })
    return rows


def audit(C: ValidComplex) -> list[str]:
    """Closure under facets and under the involution; returns problems found."""
    problems = []
    for m in range(1, len(C.faces_by_dim)):
        for f in C.faces(m):
            for j in range(len(f)):
                g = f[:j] + f[j + 1:]
                if C.mode == GRASSMANN:
                    g = _canonical(g)
                if g not in C:
                    problems.append(f"facet {format_face(g)} of {format_face(f)} missing")
    for m in range(len(C.faces_by_dim)):
        for f in C.faces(m):
            if tau_face(f, C.mode) not in C:
                problems.append(f"image of {format_face(f)} missing")
    return problems


def verify_chain_report(c, mode: str | None = None, max_depth: int = 12,
                        b_samples: int = 512) -> dict:
    """Validity of every face, invariance, vanishing boundary, and nu when those hold.

    ``c`` is a Chain or a ChainTemplate; templates are expanded with the
    validity oracle first.
    """
    from .chains import chain_from_template
    from .matrixcore import ChainTemplate

    if isinstance(c, ChainTemplate):
        c = chain_from_template(c, mode or STIEFEL)
    elif mode is not None and mode != c.mode:
        c = c.to_mode(mode)
    verdicts = []
    for f in c.sorted_faces():
        v = validity_verdict(SignedMatrix(f, c.n, c.k), max_depth, b_samples)
        verdicts.append({"face": format_face(f), "status": v.status})
    valid = all(v["status"] == "valid" for v in verdicts)
    invariant = is_invariant(c)
    bd = boundary(c) if c.dim > 0 else None
    cycle = bd is None or not bd
    nu = yang_index_of_chain(c, check=False) if valid and invariant and cycle else None
    return {
        "n": c.n, "k": c.k, "dim": c.dim, "mode": c.mode, "faces": len(c),
        "all_valid": valid,
        "invariant": invariant,
        "boundary_zero": cycle,
        "boundary_faces": 0 if bd is None else len(bd),
        "nu": nu,
        "pass": bool(valid and invariant and cycle and nu == 1),
        "verdicts": verdicts,
    }


# --- cache -------------------------------------------------------------------

def default_cache_dir() -> Path:
    env = os.environ.get("YANG_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "yang-index-lab"


def _cache_path(cache_dir, n, k, m, mode) -> Path:
    return Path(cache_dir) / f"complex-n{n}-k{k}-m{m}-{mode}-e{ENGINE_VERSION}.jsonl"


def save_cached(cache_dir, C: ValidComplex) -> Path:
    path = _cache_path(cache_dir, C.n, C.k, C.max_dim, C.mode)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "w") as fh:
        head = {"n": C.n, "k": C.k, "m": C.max_dim, "mode": C.mode, "engine": ENGINE_VERSION,
                "excluded": {str(d): c for d, c in sorted(C.excluded.items())}}
        fh.write(json.dumps(head) + "\n")
        for fs in C.faces_by_dim:
            for f in fs:
                fh.write(json.dumps({"face": format_face(f)}) + "\n")
    os.replace(tmp, path)
    return path


def load_cached(cache_dir, n, k, max_dim, mode) -> ValidComplex | None:
    path = _cache_path(cache_dir, n, k, max_dim, mode)
    if not path.exists():
        return None
    with open(path) as fh:
        head = json.loads(fh.readline())
        if (head.get("n"), head.get("k"), head.get("m"), head.get("mode"), head.get("engine")) != (
            n, k, max_dim, mode, ENGINE_VERSION
        ):
            return None
        levels: list[list[Face]] = [[] for _ in range(max_dim + 1)]
        for line in fh:
            if not line.strip():
                continue
            A = SignedMatrix.parse(json.loads(line)["face"], n=n, k=k)
            levels[A.ncols - 1].append(A.columns)
    excluded = {int(d): c for d, c in head.get("excluded", {}).items()}
    return ValidComplex(n, k, mode, max_dim, levels, excluded)


__all__ = [
    "BudgetExceeded",
    "ComplexIndex",
    "InvariantCycleBasis",
    "ValidComplex",
    "audit",
    "boundary_rank",
    "default_cache_dir",
    "enumerate_valid_faces",
    "homology_report",
    "invariant_cycle_basis",
    "is_invariant",
    "verify_chain_report",
    "vertices",
    "yang_index_of_complex",
]
