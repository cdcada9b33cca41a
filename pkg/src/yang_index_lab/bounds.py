"""Interval propagation for ind <= nu <= coind over Stiefel manifolds and Grassmannians.

Every cell is an integer interval for one quantity of one space.  Base facts
pin intervals; rules are inequalities ``q(X) <= q(Y)`` coming from
equivariant maps X -> Y, plus the linkage ``ind <= nu <= coind``.
Propagation raises lower bounds along and upper bounds against each
inequality until nothing moves.
"""

from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable

QUANTITIES = ("ind", "nu", "coind")
ST, G = "St", "G"

BASE_FACTS = {
    "init": "every index and coindex is >= 0",
    "dim": "coind is at most the dimension of the quotient",
    "st_sphere": "St(n,1) is a sphere: all three equal n-1",
    "st2_ind": "ind St(n,2) = n-2",
    "st2_coind": "coind St(n,2) = n-1, or n-2 for n in {2,4,8}",
    "st_lower": "ind St(n,k) >= n-k",
    "g_trivial": "G(n,0), G(n,n): all three are 0",
    "g_sphere": "G(n,1), G(n,n-1): all three equal n-1",
    "g42": "G(4,2): all three equal 2",
    "thm13": "nu G(n,2) >= n-1 for odd n >= 3",
    "st_diag_zero": "nu St(n,n) = coind St(n,n) = 0 for n >= 2 (det splits O(n) equivariantly onto S^0)",
}
EXTRA_FACTS = {"st_diag_zero"}

RULES = {
    "linkage": "ind <= nu <= coind",
    "st_k_antitone": "St(n,k+1) -> St(n,k)",
    "st_n_monotone": "St(n,k) -> St(n+1,k)",
    "st_diag_monotone": "St(n,k) -> St(n+1,k+1)",
    "quotient": "St(n,k) -> G(n,k)",
    "g_duality": "G(n,k) = G(n,n-k)",
    "g_n_monotone": "G(n,k) -> G(n+1,k)",
    "g_diag_monotone": "G(n,k) -> G(n+1,k+1)",
}

Key = tuple  # (family, n, k, quantity)


class Contradiction(ValueError):
    def __init__(self, key, cell, chain):
        self.key = key
        self.cell = cell
        self.chain = chain
        super().__init__(f"{fmt_key(key)}: lo {cell.lo} > hi {cell.hi}; {chain}")


def fmt_key(key: Key) -> str:
    fam, n, k, q = key
    return f"{q}({fam}({n},{k}))"


def space_dim(family: str, n: int, k: int) -> int:
    if family == ST:
        return n * k - k * (k + 1) // 2
    return k * (n - k)


@dataclass
class BoundCell:
    lo: int
    hi: int
    provenance: list[dict] = field(default_factory=list)

    def text(self) -> str:
        return str(self.lo) if self.lo == self.hi else f"{self.lo}:{self.hi}"


def spaces(n_max: int):
    for n in range(0, n_max + 1):
        for k in range(0, n + 1):
            yield (G, n, k)
        for k in range(1, n + 1):
            yield (ST, n, k)


@dataclass(frozen=True)
class Inequality:
    """``small <= big`` for two cells, justified by ``rule``."""

    small: Key
    big: Key
    rule: str


def inequalities(n_max: int) -> list[Inequality]:
    out = []
    spc = set(spaces(n_max))

    def maps(src, dst, rule):
        if src in spc and dst in spc:
            for q in QUANTITIES:
                out.append(Inequality(src + (q,), dst + (q,), rule))

    for sp in sorted(spc):
        fam, n, k = sp
        out.append(Inequality(sp + ("ind",), sp + ("nu",), "linkage"))
        out.append(Inequality(sp + ("nu",), sp + ("coind",), "linkage"))
        if fam == ST:
            maps((ST, n, k + 1), sp, "st_k_antitone")
            maps(sp, (ST, n + 1, k), "st_n_monotone")
            maps(sp, (ST, n + 1, k + 1), "st_diag_monotone")
            maps(sp, (G, n, k), "quotient")
        else:
            if n - k != k:
                maps(sp, (G, n, n - k), "g_duality")
            maps(sp, (G, n + 1, k), "g_n_monotone")
            maps(sp, (G, n + 1, k + 1), "g_diag_monotone")
    return out


class BoundTable:
    def __init__(self, n_max: int):
        self.n_max = n_max
        self.cells: dict[Key, BoundCell] = {}

    def __getitem__(self, key: Key) -> BoundCell:
        return self.cells[key]

    def cell(self, family: str, n: int, k: int, quantity: str = "nu") -> BoundCell:
        return self.cells[(family, n, k, quantity)]

    def raise_lo(self, key: Key, value: int, rule: str, premise: Key | None = None) -> bool:
        c = self.cells.get(key)
        if c is None or value <= c.lo:
            return False
        c.lo = value
        c.provenance.append({"bound": "lo", "value": value, "rule": rule,
                             "from": list(premise) if premise else None})
        self._check(key)
        return True

    def lower_hi(self, key: Key, value: int, rule: str, premise: Key | None = None) -> bool:
        c = self.cells.get(key)
        if c is None or value >= c.hi:
            return False
        c.hi = value
        c.provenance.append({"bound": "hi", "value": value, "rule": rule,
                             "from": list(premise) if premise else None})
        self._check(key)
        return True

    def pin(self, key: Key, lo: int | None, hi: int | None, rule: str) -> None:
        if lo is not None:
            self.raise_lo(key, lo, rule)
        if hi is not None:
            self.lower_hi(key, hi, rule)

    def _check(self, key: Key) -> None:
        c = self.cells[key]
        if c.lo > c.hi:
            chain = {"lo": explain(self, key, "lo"), "hi": explain(self, key, "hi")}
            raise Contradiction(key, c, chain)

    def snapshot(self) -> dict:
        return {key: (c.lo, c.hi) for key, c in self.cells.items()}


def base_facts(n_max: int, drop: Iterable[str] = (), inject: Iterable[dict] = ()) -> BoundTable:
    """Cell table with every base fact applied (minus ``drop``, plus ``inject``)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    drop = set(drop)
    unknown = drop - set(BASE_FACTS) - set(RULES)
    if unknown:
        raise KeyError(f"unknown fact id(s): {sorted(unknown)}")
    T = BoundTable(n_max)
    T.dropped = drop
    for fam, n, k in spaces(n_max):
        d = space_dim(fam, n, k)
        for q in QUANTITIES:
            # "init" and "dim" seed the table; without them cells start unbounded
            cell = BoundCell(0 if "init" not in drop else -10**9, 10**9)
            if "init" not in drop:
                cell.provenance.append({"bound": "lo", "value": 0, "rule": "init", "from": None})
            T.cells[(fam, n, k, q)] = cell
        if "dim" not in drop:
            for q in QUANTITIES:
                T.lower_hi((fam, n, k, q), d, "dim")

    def all3(fam, n, k, value, rule):
        if rule in drop:
            return
        for q in QUANTITIES:
            T.pin((fam, n, k, q), value, value, rule)

    for n in range(1, n_max + 1):
        all3(ST, n, 1, n - 1, "st_sphere")
        if n >= 2:
            if "st2_ind" not in drop:
                T.pin((ST, n, 2, "ind"), n - 2, n - 2, "st2_ind")
            if "st2_coind" not in drop:
                v = n - 2 if n in (2, 4, 8) else n - 1
                T.pin((ST, n, 2, "coind"), v, v, "st2_coind")
            if "st_diag_zero" not in drop:
                T.pin((ST, n, n, "nu"), 0, 0, "st_diag_zero")
                T.pin((ST, n, n, "coind"), 0, 0, "st_diag_zero")
        if "st_lower" not in drop:
            for k in range(1, n + 1):
                T.raise_lo((ST, n, k, "ind"), n - k, "st_lower")
    for n in range(0, n_max + 1):
        all3(G, n, 0, 0, "g_trivial")
        all3(G, n, n, 0, "g_trivial")
        if n >= 1:
            all3(G, n, 1, n - 1, "g_sphere")
            all3(G, n, n - 1, n - 1, "g_sphere")
    if n_max >= 4:
        all3(G, 4, 2, 2, "g42")
    if "thm13" not in drop:
        for n in range(3, n_max + 1, 2):
            T.raise_lo((G, n, 2, "nu"), n - 1, "thm13")
    if "linkage" not in drop:
        _link(T)
    for i, fact in enumerate(inject):
        rule = fact.get("id", f"inject:{i}")
        fam = {"g": G, "st": ST}.get(str(fact["family"]).lower(), fact["family"])
        key = (fam, int(fact["n"]), int(fact["k"]), fact.get("quantity", "nu"))
        if key not in T.cells:
            raise KeyError(f"injected fact for unknown cell {fmt_key(key)}")
        T.pin(key, fact.get("lo"), fact.get("hi"), rule)
    return T


def _link(T: BoundTable) -> None:
    for _ in range(2):
        for fam, n, k in spaces(T.n_max):
            for small, big in (("ind", "nu"), ("nu", "coind")):
                a, b = (fam, n, k, small), (fam, n, k, big)
                T.raise_lo(b, T.cells[a].lo, "linkage", a)
                T.lower_hi(a, T.cells[b].hi, "linkage", b)


def propagate(T: BoundTable, rng: random.Random | None = None) -> BoundTable:
    """Apply every inequality until a fixpoint; ``rng`` shuffles the schedule."""
    ineqs = [q for q in inequalities(T.n_max) if q.rule not in getattr(T, "dropped", ())]
    changed = True
    while changed:
        changed = False
        if rng is not None:
            rng.shuffle(ineqs)
        for q in ineqs:
            lo = T.cells[q.small].lo
            if T.raise_lo(q.big, lo, q.rule, q.small):
                changed = True
            hi = T.cells[q.big].hi
            if T.lower_hi(q.small, hi, q.rule, q.big):
                changed = True
    return T


def explain(T: BoundTable, key: Key, bound: str, _depth: int = 0) -> list[str]:
    """Provenance chain for the current lo/hi of a cell, ending at a base fact."""
    c = T.cells[key]
    value = c.lo if bound == "lo" else c.hi
    entry = next((p for p in reversed(c.provenance) if p["bound"] == bound and p["value"] == value), None)
    if entry is None:
        return [f"{fmt_key(key)} {bound}={value}: no provenance"]
    line = f"{fmt_key(key)} {bound}={value} by {entry['rule']}"
    if entry["from"] is None or _depth > 200:
        return [line]
    return [line] + explain(T, tuple(entry["from"]), bound, _depth + 1)


def compute_table(n_max: int, drop: Iterable[str] = (), inject: Iterable[dict] = (),
                  rng: random.Random | None = None) -> BoundTable:
    return propagate(base_facts(n_max, drop, inject), rng)


# --- rendering -----------------------------------------------------------

def _family(name: str) -> str:
    f = {"g": G, "st": ST}.get(name.lower())
    if f is None:
        raise ValueError(f"unknown family {name!r}")
    return f


def table_rows(T: BoundTable, family: str, n_max: int | None = None) -> list[tuple[int, list[str]]]:
    fam = _family(family)
    n_max = T.n_max if n_max is None else min(n_max, T.n_max)
    rows = []
    for n in range(0 if fam == G else 1, n_max + 1):
        ks = range(0, n + 1) if fam == G else range(1, n + 1)
        rows.append((n, [T.cell(fam, n, k).text() for k in ks]))
    return rows


def emit_table(T: BoundTable, family: str, fmt: str = "md", n_max: int | None = None) -> str:
    """nu intervals as markdown, CSV or JSON; ``a:b`` means every integer from a to b."""
    fam = _family(family)
    rows = table_rows(T, family, n_max)
    k0 = 0 if fam == G else 1
    width = max(len(r) for _, r in rows)
    ks = list(range(k0, k0 + width))
    if fmt == "md":
        out = ["| n \\ k | " + " | ".join(str(k) for k in ks) + " |",
               "|---" * (width + 1) + "|"]
        for n, r in rows:
            cells = r + [""] * (width - len(r))
            out.append(f"| {n} | " + " | ".join(cells) + " |")
        return "\n".join(out) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n"] + [f"k={k}" for k in ks])
        for n, r in rows:
            w.writerow([n] + r + [""] * (width - len(r)))
        return buf.getvalue()
    if fmt == "json":
        cells = []
        for n, r in rows:
            for k, text in zip(ks, r):
                c = T.cell(fam, n, k)
                cells.append({"n": n, "k": k, "lo": c.lo, "hi": c.hi, "text": text})
        return json.dumps({"family": fam, "quantity": "nu", "cells": cells,
                           "facts": fact_list(T)}, indent=1) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def fact_list(T: BoundTable) -> list[dict]:
    dropped = getattr(T, "dropped", set())
    return [{"id": fid, "description": desc, "extra": fid in EXTRA_FACTS}
            for fid, desc in BASE_FACTS.items() if fid not in dropped]


def golden_tables() -> dict:
    text = resources.files("yang_index_lab").joinpath("data/tables.json").read_text()
    return json.loads(text)


def diff_against_reference(T: BoundTable, family: str | None = None) -> list[dict]:
    """Cells whose nu interval differs from the embedded reference tables."""
    gold = golden_tables()
    fams = [_family(family)] if family else [G, ST]
    out = []
    for fam in fams:
        k0 = 0 if fam == G else 1
        n0 = 0 if fam == G else 1
        for i, row in enumerate(gold[fam]):
            n = n0 + i
            if n > T.n_max:
                break
            for j, want in enumerate(row):
                k = k0 + j
                c = T.cell(fam, n, k)
                if c.text() != want:
                    out.append({
                        "family": fam, "n": n, "k": k, "expected": want, "got": c.text(),
                        "lo": explain(T, (fam, n, k, "nu"), "lo"),
                        "hi": explain(T, (fam, n, k, "nu"), "hi"),
                    })
    return out
