"""Command line entry point ``webcalc``."""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from .exterior import render_key
from .functor import evaluate
from .scalar import render as render_scalar
from .web import WebIR, WebSyntaxError, parse as parse_web


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _ints(text: str) -> List[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _print_matrix(m) -> None:
    print(f"# {m.source} -> {m.target}" + (f"  (q = u^{m.root})" if m.root != 1 else ""))
    for row, col, s in m.entries():
        print(f"{render_key(row)} {render_key(col)} {render_scalar(s)}")


def cmd_eval(args) -> int:
    w = parse_web(_read(args.file))
    m = evaluate(w)
    if not m.source.factors and not m.target.factors and not args.matrix:
        print(render_scalar(m.entry((), ())))
    else:
        _print_matrix(m)
    return 0


def cmd_matrix(args) -> int:
    args.matrix = True
    return cmd_eval(args)


def cmd_ladder(args) -> int:
    from .ladderize import ladderize, ladderize_verify
    w = parse_web(_read(args.file))
    if not isinstance(w, WebIR):
        print("ladder: expects a single web, not a linear combination", file=sys.stderr)
        return 2
    if args.verify:
        rep = ladderize_verify(w)
        print(rep.ladder.render(), end="")
        print("verify: equal" if rep.equal else f"verify: UNEQUAL {rep.witness}")
        return 0 if rep.equal else 1
    print(ladderize(w).render(), end="")
    return 0


def cmd_uword(args) -> int:
    from .qgroup import n_bounded, parse_uword, phi_matrix, word_matrix, word_to_ladder
    word = parse_uword(args.word, _ints(args.weight))
    if not all(n_bounded(w, args.n) for w in word.weights()):
        print("0  # a running weight leaves 0..n")
        return 0
    if args.ladder:
        lad = word_to_ladder(word, args.n)
        print(lad.render(), end="")
        return 0
    m = phi_matrix(word, args.n) if args.oracle else word_matrix(word, args.n)
    _print_matrix(m)
    return 0


def cmd_invariant(args) -> int:
    from .braiding import braid_invariant, normalized_invariant, parse_braid
    b = parse_braid(args.word, _ints(args.colors))
    if args.normalized:
        val = normalized_invariant(b, args.n)
    else:
        val = braid_invariant(b, args.n, args.closure)
    print(f"N={args.n}: {render_scalar(val)}")
    return 0


def cmd_relcheck(args) -> int:
    from .harness import VARIANTS, relcheck
    ns = args.n or [2, 3, 4]
    failures = 0
    start = time.time()
    records = []
    for n in ns:
        for rec in relcheck(n, args.max_label, args.relation, VARIANTS, args.perturb):
            records.append(rec)
            failures += rec.status != "pass"
    if args.json:
        for rec in records:
            print(json.dumps(rec.as_dict(), sort_keys=True))
    else:
        summary = {}
        for rec in records:
            key = rec.relation
            ok, total = summary.get(key, (0, 0))
            summary[key] = (ok + (rec.status == "pass"), total + 1)
        for key in sorted(summary, key=lambda s: [int(x) for x in s.split(".")]):
            ok, total = summary[key]
            print(f"{key:>5}  {ok}/{total} pass")
        for rec in records:
            if rec.status != "pass":
                print(f"FAIL {rec.relation} {rec.params} {rec.witness}")
                break
        print(f"{len(records)} checks, {failures} failures, {time.time() - start:.1f}s")
    return 1 if failures else 0


def cmd_howe_rank(args) -> int:
    from .harness import howe_rank
    bad = 0
    for K in (args.K if args.K else range(0, args.n * args.m + 1)):
        rep = howe_rank(args.n, args.m, K)
        rec = {"relation": "howe-rank", "params": {"n": args.n, "m": args.m, "K": K},
               "status": "pass" if rep.equal else "fail",
               "span": list(rep.span), "commutant": list(rep.commutant)}
        bad += not rep.equal
        if args.json:
            print(json.dumps(rec, sort_keys=True))
        else:
            print(f"n={args.n} m={args.m} K={K}: span {rep.span} commutant {rep.commutant} {rec['status']}")
    return 1 if bad else 0


def cmd_fuzz(args) -> int:
    from .harness import random_web
    from .ladderize import ladderize_verify
    from .web import render
    bad = 0
    for n in args.n or [2, 3]:
        for seed in range(args.seed, args.seed + args.count):
            w = random_web(n, args.budget, seed)
            rep = ladderize_verify(w)
            if args.json:
                rec = {"relation": "ladderize", "params": {"n": n, "seed": seed, "budget": args.budget},
                       "status": "pass" if rep.equal else "fail"}
                if not rep.equal:
                    rec["witness"] = rep.witness
                print(json.dumps(rec, sort_keys=True))
            if not rep.equal:
                bad += 1
                if not args.json:
                    print(f"FAIL n={n} seed={seed} {rep.witness}\n{render(w)}")
    if not args.json:
        total = args.count * len(args.n or [2, 3])
        print(f"{total - bad}/{total} webs ladderized with equal evaluation")
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="webcalc", description="Exact SL_n web calculator")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="evaluate a web file (scalar if closed, else matrix)")
    s.add_argument("file")
    s.add_argument("--matrix", action="store_true", help="always print the matrix listing")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("matrix", help="print the matrix of a web file")
    s.add_argument("file")
    s.set_defaults(func=cmd_matrix)

    s = sub.add_parser("ladder", help="rewrite a web with upward boundary as a ladder")
    s.add_argument("file")
    s.add_argument("--verify", action="store_true", help="compare evaluations of web and ladder")
    s.set_defaults(func=cmd_ladder)

    s = sub.add_parser("uword", help="matrix or ladder of a quantum group word such as 'F1^2 E2'")
    s.add_argument("word")
    s.add_argument("--weight", required=True, help="source weight, e.g. 2,1,0")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--ladder", action="store_true", help="print the ladder instead of the matrix")
    s.add_argument("--oracle", action="store_true", help="use the direct wedge-basis action")
    s.set_defaults(func=cmd_uword)

    s = sub.add_parser("invariant", help="colored invariant of a braid closure")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--colors", required=True, help="one color per strand, e.g. 1,1")
    s.add_argument("--word", default="", help="e.g. 's1 s1 s2^-1'")
    s.add_argument("--closure", choices=["trace", "plat"], default="trace")
    s.add_argument("--normalized", action="store_true",
                   help="remove framing and divide by the unknot (knots, one color)")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("relcheck", help="check spider relations on full label grids")
    s.add_argument("--n", type=int, action="append", help="repeatable; default 2,3,4")
    s.add_argument("--max-label", type=int, default=None)
    s.add_argument("--relation", action="append", help="e.g. 2.3; repeatable")
    s.add_argument("--perturb", default=None, help="negative control: scale this relation's right side by q")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_relcheck)

    s = sub.add_parser("howe-rank", help="compare span of word images with the commutant dimension")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--K", type=int, action="append")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_howe_rank)

    s = sub.add_parser("fuzz-ladderize", help="ladderize seeded random webs and verify")
    s.add_argument("--n", type=int, action="append")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--budget", type=int, default=8)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_fuzz)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WebSyntaxError, ValueError, OSError) as exc:
        print(f"webcalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
