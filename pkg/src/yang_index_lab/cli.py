"""Command-line front end: ``yang-index-lab <command> ...``.

Exit codes: 0 success (or "valid"), 1 check failed (or "invalid"),
2 unresolved, 64 malformed input, 70 budget or internal error.
"""

from __future__ import annotations

import argparse
import io
import json
import random
import sys

from . import bounds as B
from .chains import (
    MODES,
    STIEFEL,
    ChainError,
    boundary,
    chain_from_template,
    read_chain,
    write_chain,
    yang_index_of_chain,
)
from .complex import (
    BudgetExceeded,
    default_cache_dir,
    enumerate_valid_faces,
    homology_report,
    verify_chain_report,
    yang_index_of_complex,
)
from .matrixcore import (
    MatrixError,
    OracleUnresolved,
    ParseError,
    SignedMatrix,
    expand_template,
    format_face,
    parse_template,
)
from .named import NAMED, BadParams, UnknownName, build_named_chain
from .validity import DEFAULT_B_SAMPLES, DEFAULT_MAX_DEPTH, validity_verdict

DEFAULT_SEED = 0x5EED
EXIT_OK, EXIT_FAIL, EXIT_UNRESOLVED, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


def _oracle(args):
    def oracle(A):
        return validity_verdict(A, args.max_depth, args.b_samples).as_bool()
    return oracle


def _template_from_args(args):
    if getattr(args, "named", None):
        return build_named_chain(args.named, args.n, args.k if args.k is not None else 2,
                                 allow_even=getattr(args, "allow_even", False))
    if getattr(args, "template", None):
        return parse_template(args.template, n=args.n, k=args.k)
    raise UsageError("give a template, --named NAME or --file FILE")


def _chain_from_args(args):
    if getattr(args, "file", None):
        with open(args.file) as fh:
            c = read_chain(fh)
        return c if args.mode is None else c.to_mode(args.mode)
    t = _template_from_args(args)
    return chain_from_template(t, args.mode or STIEFEL, _oracle(args))


# --- commands --------------------------------------------------------------

def cmd_validate(args, out) -> int:
    A = SignedMatrix.parse(args.matrix, n=args.n, k=args.k)
    v = validity_verdict(A, args.max_depth, args.b_samples)
    if args.format == "json":
        out.write(_dump({"matrix": A.format(), "n": A.n, "k": A.k, **v.to_json()}) + "\n")
    else:
        line = f"{v.status}"
        if v.witness is not None:
            line += " " + json.dumps(v.witness.to_json())
        out.write(line + "\n")
    return {"valid": EXIT_OK, "invalid": EXIT_FAIL}.get(v.status, EXIT_UNRESOLVED)


def cmd_expand(args, out) -> int:
    t = _template_from_args(args)
    mats = expand_template(t, _oracle(args))
    if args.format == "json":
        out.write(_dump({"n": t.n, "k": t.k, "count": len(mats),
                         "matrices": [A.format() for A in mats]}) + "\n")
    else:
        for A in mats:
            out.write(A.format() + "\n")
    return EXIT_OK


def cmd_chain(args, out) -> int:
    c = _chain_from_args(args)
    if args.op == "boundary":
        c = boundary(c)
    elif args.op == "nu":
        nu = yang_index_of_chain(c)
        out.write(_dump({"nu": nu}) + "\n" if args.format == "json" else f"nu = {nu}\n")
        return EXIT_OK
    write_chain(c, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if getattr(args, "file", None):
        target = _chain_from_args(args)
    else:
        target = _template_from_args(args)
    rep = verify_chain_report(target, args.mode or STIEFEL, args.max_depth, args.b_samples)
    if args.resplits and rep["nu"] is not None:
        c = _chain_from_args(args)
        rng = random.Random(args.seed)
        values = {yang_index_of_chain(c, rng, check=False) for _ in range(args.resplits)}
        rep["resplits"] = args.resplits
        rep["split_independent"] = values == {rep["nu"]}
        rep["pass"] = rep["pass"] and rep["split_independent"]
    if args.format == "json":
        out.write(_dump(rep) + "\n")
    else:
        bad = [v for v in rep["verdicts"] if v["status"] != "valid"]
        out.write(f"chain: n={rep['n']} k={rep['k']} dim={rep['dim']} mode={rep['mode']} faces={rep['faces']}\n")
        out.write(f"all faces valid: {'yes' if rep['all_valid'] else 'no'}\n")
        for v in bad:
            out.write(f"  {v['status']}: {v['face']}\n")
        out.write(f"invariant: {'yes' if rep['invariant'] else 'no'}\n")
        out.write(f"boundary zero: {'yes' if rep['boundary_zero'] else 'no'}"
                  + ("" if rep["boundary_zero"] else f" ({rep['boundary_faces']} faces)") + "\n")
        out.write(f"nu: {'-' if rep['nu'] is None else rep['nu']}\n")
        if "split_independent" in rep:
            out.write(f"split independent over {rep['resplits']} resplits: "
                      f"{'yes' if rep['split_independent'] else 'no'}\n")
        out.write(("PASS" if rep["pass"] else "FAIL") + "\n")
    return EXIT_OK if rep["pass"] else EXIT_FAIL


def _build_complex(args):
    cache = None if args.no_cache else default_cache_dir()
    return enumerate_valid_faces(args.n, args.k, args.max_dim, args.mode or STIEFEL,
                                 max_faces=args.max_faces, max_depth=args.max_depth,
                                 b_samples=args.b_samples, cache_dir=cache)


def cmd_complex(args, out) -> int:
    C = _build_complex(args)
    res = yang_index_of_complex(C)
    if args.witness and res.witness is not None:
        with open(args.witness, "w") as fh:
            write_chain(res.witness, fh)
    witness = [format_face(f) for f in res.witness.sorted_faces()] if res.witness else []
    if args.format == "json":
        out.write(_dump({
            "n": C.n, "k": C.k, "mode": C.mode, "max_dim": C.max_dim,
            "face_counts": C.face_counts(),
            "excluded": {str(d): c for d, c in sorted(C.excluded.items())},
            "index": res.index, "exact": res.exact, "witness": witness,
        }) + "\n")
    else:
        out.write(f"complex n={C.n} k={C.k} mode={C.mode} max_dim={C.max_dim}\n")
        out.write("faces by dimension: " + " ".join(str(x) for x in C.face_counts()) + "\n")
        if C.excluded:
            out.write("excluded unresolved: "
                      + " ".join(f"dim{d}:{c}" for d, c in sorted(C.excluded.items())) + "\n")
        rel = "=" if res.exact else ">="
        out.write(f"index {rel} {res.index}\n")
        if witness:
            out.write(f"witness ({len(witness)} faces):\n")
            for w in witness:
                out.write(f"  {w}\n")
    return EXIT_OK


def cmd_homology(args, out) -> int:
    C = _build_complex(args)
    rows = homology_report(C)
    if args.format == "json":
        out.write(_dump({"n": C.n, "k": C.k, "mode": C.mode, "rows": rows}) + "\n")
    else:
        out.write("dim faces orbits cycles boundaries homology nu\n")
        for r in rows:
            mark = "*" if r["truncated"] else ""
            out.write(f"{r['dim']} {r['faces']} {r['orbits']} {r['cycles']} {r['boundaries']} "
                      f"{r['homology']}{mark} {int(r['index_nonzero'])}\n")
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    inject = []
    if args.inject_facts:
        with open(args.inject_facts) as fh:
            data = json.load(fh)
        inject = data["facts"] if isinstance(data, dict) else data
    try:
        T = B.compute_table(args.max_n, drop=args.drop_fact or (), inject=inject)
    except KeyError as e:
        raise UsageError(str(e.args[0]) if e.args else str(e))
    except B.Contradiction as e:
        out.write(_dump({"contradiction": B.fmt_key(e.key), "chain": e.chain}) + "\n")
        return EXIT_FAIL
    if args.explain:
        fam, n, k = args.explain
        key = (B._family(fam), int(n), int(k), args.quantity)
        if key not in T.cells:
            raise UsageError(f"no cell {B.fmt_key(key)}")
        for bound in ("lo", "hi"):
            for line in B.explain(T, key, bound):
                out.write(line + "\n")
        return EXIT_OK
    out.write(B.emit_table(T, args.family, args.format))
    if args.diff:
        d = B.diff_against_reference(T, args.family)
        if args.format == "json":
            out.write(_dump({"diff": d}) + "\n")
        else:
            out.write(f"diff: {len(d)} cell(s) differ from the reference table\n")
            for x in d:
                out.write(f"  {x['family']}({x['n']},{x['k']}): expected {x['expected']}, got {x['got']}\n")
                for line in x["lo"] + x["hi"]:
                    out.write(f"    {line}\n")
        return EXIT_OK if not d else EXIT_FAIL
    return EXIT_OK


# --- parser ----------------------------------------------------------------

def _common(p, mode=True):
    p.add_argument("--n", type=int, help="ambient dimension")
    p.add_argument("--k", type=int, help="number of rows")
    if mode:
        p.add_argument("--mode", choices=MODES, default=None)
    p.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    p.add_argument("--b-samples", type=int, default=DEFAULT_B_SAMPLES)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--threads", type=int, default=1, help="accepted; work runs in one thread")


def _chain_source(p):
    p.add_argument("template", nargs="?", help="template text such as '1 1 ; ~2 ~3'")
    p.add_argument("--named", choices=NAMED)
    p.add_argument("--allow-even", action="store_true", help="let thm1.3_c take even n")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="yang-index-lab", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="decide validity of one matrix")
    p.add_argument("matrix")
    _common(p, mode=False)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("expand", help="expand a template into matrices")
    _chain_source(p)
    _common(p, mode=False)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("chain", help="write a chain, its boundary, or its index")
    _chain_source(p)
    p.add_argument("--file", help="chain in JSON lines")
    p.add_argument("--op", choices=("faces", "boundary", "nu"), default="faces")
    _common(p)
    p.set_defaults(func=cmd_chain)

    p = sub.add_parser("verify", help="check validity, invariance, boundary and index of a chain")
    _chain_source(p)
    p.add_argument("--file", help="chain in JSON lines")
    p.add_argument("--resplits", type=int, default=0, help="recompute nu with this many random splittings")
    _common(p)
    p.set_defaults(func=cmd_verify)

    for name, func, text in (("complex", cmd_complex, "build a complex and bound its index"),
                             ("homology", cmd_homology, "invariant homology by dimension")):
        p = sub.add_parser(name, help=text)
        _common(p)
        p.add_argument("--max-dim", type=int, required=True)
        p.add_argument("--max-faces", type=int, default=2_000_000)
        p.add_argument("--no-cache", action="store_true")
        if name == "complex":
            p.add_argument("--witness", help="write the witness cycle here")
        p.set_defaults(func=func)

    p = sub.add_parser("bounds", help="propagate index bounds and print a table")
    p.add_argument("--family", type=str.lower, choices=("g", "st"), required=True)
    p.add_argument("--max-n", type=int, default=9)
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--diff", action="store_true", help="compare with the reference table; exit 1 on mismatch")
    p.add_argument("--inject-facts", help="JSON list of {family,n,k,quantity,lo,hi,id}")
    p.add_argument("--drop-fact", action="append", help="fact or rule id to leave out")
    p.add_argument("--explain", nargs=3, metavar=("FAMILY", "N", "K"))
    p.add_argument("--quantity", choices=B.QUANTITIES, default="nu")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.set_defaults(func=cmd_bounds)
    return ap


def _check_ranges(args) -> None:
    for name in ("n", "k", "max_dim", "max_n"):
        v = getattr(args, name, None)
        if v is not None and v < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    if getattr(args, "max_depth", 1) < 0 or getattr(args, "b_samples", 1) < 0:
        raise UsageError("--max-depth and --b-samples must be >= 0")
    if args.command in ("complex", "homology") and (args.n is None or args.k is None):
        raise UsageError("--n and --k are required")
    if args.command == "bounds" and args.max_n < 1:
        raise UsageError("--max-n must be >= 1")


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        _check_ranges(args)
        return args.func(args, out)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
        return EXIT_USAGE
    except OracleUnresolved as e:
        sys.stderr.write(f"unresolved: {e}\n")
        return EXIT_UNRESOLVED
    except (UsageError, MatrixError, ChainError, BadParams, UnknownName, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except (OSError, KeyError, json.JSONDecodeError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        sys.stderr.write(f"budget exceeded: {e}\n")
        return EXIT_INTERNAL


def run(argv) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":
    sys.exit(main())
