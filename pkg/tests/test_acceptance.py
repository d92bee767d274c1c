"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
"""

import random
import sys
import time
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import random_word  # noqa: E402

from webspider.braiding import (braid_invariant, check_braid_axioms, check_crossing_matches_T,
                                check_eigenvalues, check_hexagons, check_single_sum,
                                kauffman_normalized, normalized_invariant, parse_braid)
from webspider.exterior import complement, ell, generator_map, subsets
from webspider.functor import cell_map, eval_closed
from webspider.harness import howe_rank, random_web, relcheck
from webspider.ladderize import ladderize_verify
from webspider.qgroup import (UWord, check_ladder_relation, check_u_relation, ladder_relation_grid,
                              n_bounded, phi_matrix, u_relation_grid, word_matrix)
from webspider.scalar import q, quantum_binomial, zero
from webspider.web import Builder, cap, cup, merge, split, tagin, tagout

RESULTS = {}


def report(num, ok, detail):
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line, flush=True)
    assert ok, line


def criterion_1():
    start = time.time()
    bad = []
    for n in range(2, 7):
        for k in range(0, n + 1):
            w = Builder(n, ()).apply(0, cup(k, "-+")).apply(0, cap(k, "-+")).web()
            if eval_closed(w) != quantum_binomial(n, k):
                bad.append((n, k))
    took = time.time() - start
    return not bad and took < 10, f"loop = [n k] for n=2..6, k=0..n; {len(bad)} mismatches, {took:.2f}s"


def criterion_2():
    start = time.time()
    counts, fails = {}, []
    for n in (2, 3, 4):
        recs = relcheck(n)
        counts[n] = len(recs)
        fails += [r.as_dict() for r in recs if r.status != "pass"]
    took = time.time() - start
    detail = (f"relations 2.1-2.11 x 4 variants, instances {counts}, "
              f"{len(fails)} failures, {took:.0f}s")
    if fails:
        detail += f"; first {fails[0]}"
    return not fails and took < 600, detail


def criterion_3():
    bad = []
    for n in range(1, 9):
        for k in range(0, n + 1):
            total = zero()
            for s in subsets(n, k):
                total = total + q(2 * ell(s, complement(s, n)))
            if total * q(-k * (n - k)) != quantum_binomial(n, k):
                bad.append((n, k))
    return not bad, f"subset sum = [n k] for n<=8; {len(bad)} mismatches"


def _cells(n):
    for k in range(0, n + 1):
        for l in range(0, n + 1 - k):
            yield merge(k, l)
            yield split(k, l)
        for side in "LR":
            yield tagout(k, side)
            yield tagin(k, side)
        if 1 <= k <= n - 1:
            for o in ("-+", "+-"):
                yield cup(k, o)
                yield cap(k, o)


def criterion_4():
    checks, bad = 0, []
    for n in (2, 3, 4):
        for cell in _cells(n):
            m = cell_map(cell, n)
            for i in range(1, n):
                for g in ("E", "F", "K", "Kinv"):
                    checks += 1
                    if generator_map(g, i, m.source).then(m) != m.then(generator_map(g, i, m.target)):
                        bad.append((n, cell.render(), g, i))
    return not bad, f"{checks} generator/morphism pairs for n<=4; {len(bad)} failures"


def criterion_5():
    u_count, u_bad = 0, []
    for m, n in ((2, 2), (2, 3), (3, 2), (3, 3), (4, 2)):
        for rel, p, k in u_relation_grid(m, n):
            u_count += 1
            if check_u_relation(rel, p, n, k) is not None:
                u_bad.append((rel, p, k, n))
    l_count, l_bad = 0, []
    for n in (2, 3):
        for rel, p, k in ladder_relation_grid(n):
            for mir in (False, True):
                l_count += 1
                if check_ladder_relation(rel, p, n, k, mir) is not None:
                    l_bad.append((rel, p, k, n, mir))
    ok = not u_bad and not l_bad
    return ok, (f"U-relations 4.1-4.5: {u_count} instances, {len(u_bad)} failures; "
                f"ladder relations 5.1-5.5: {l_count} instances, {len(l_bad)} failures")


def criterion_6():
    singles, bad = 0, []
    for n in (2, 3):
        for m in (2, 3):
            for k in product(range(n + 1), repeat=m):
                for g, i, r in product("EF", range(1, m), range(1, n + 1)):
                    w = UWord(k, ((g, i, r),))
                    if not n_bounded(w.target, n):
                        continue
                    singles += 1
                    if phi_matrix(w, n) != word_matrix(w, n):
                        bad.append(("letter", n, k, g, i, r))
    rng = random.Random(20240611)
    for t in range(200):
        n, m = rng.choice((2, 3)), rng.choice((2, 3))
        w = random_word(rng, n, m, rng.randint(0, 4))
        if phi_matrix(w, n) != word_matrix(w, n):
            bad.append(("word", t, n, w.render(), w.source))
    return not bad, f"{singles} single letters and 200 random words; {len(bad)} mismatches"


def criterion_7():
    bad = []
    for n in (2, 3):
        for seed in range(250):
            w = random_web(n, 8, seed)
            rep = ladderize_verify(w)
            if not rep.equal:
                bad.append((n, seed, rep.witness))
    return not bad, f"500 random webs (n=2,3, budget 8); {len(bad)} failures"


def criterion_8():
    parts = {}
    parts["a"] = all(check_single_sum(n, m) == [] for n in (2, 3) for m in (2, 3))
    parts["b"] = all(all(check_eigenvalues(n).values()) for n in (2, 3, 4))
    axioms = all(all(v == [] for v in check_braid_axioms(n, m).values())
                 for n, m in ((2, 3), (3, 3), (2, 4)))
    parts["c"] = axioms and all(check_hexagons(n) == [] for n in (2, 3))
    parts["d"] = all(check_crossing_matches_T(n) == [] for n in (2, 3, 4))
    return all(parts.values()), " ".join(f"({k}) {'ok' if v else 'FAILED'}" for k, v in parts.items())


def criterion_9():
    unknot = all(braid_invariant(parse_braid("", (k,)), n) == quantum_binomial(n, k).scale_root(n)
                 for n in (2, 3, 4) for k in range(1, n))
    r2 = all(braid_invariant(parse_braid("s1 s1^-1", (n - 1, 1)), n, "plat")
             == quantum_binomial(n, 1).scale_root(n) for n in (2, 3, 4))
    tref = parse_braid("s1 s1 s1", (1, 1))
    ours, oracle = normalized_invariant(tref, 2), kauffman_normalized(tref)
    ok = unknot and r2 and ours == oracle
    return ok, (f"unknot {'ok' if unknot else 'FAILED'}, s1 s1^-1 {'ok' if r2 else 'FAILED'}, "
                f"trefoil {ours} vs oracle {oracle}")


def criterion_10():
    bad, seen = [], []
    for n, m in ((2, 2), (3, 2)):
        for K in range(0, 5):
            rep = howe_rank(n, m, K)
            seen.append(rep.span[0])
            if not rep.equal:
                bad.append((n, m, K, rep.span, rep.commutant))
    return not bad, f"span = commutant at u=7/5 and 13/9 for 10 cases, dims {seen}; {len(bad)} unequal"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("num", range(1, 11))
def test_criterion(num):
    ok, detail = CRITERIA[num - 1]()
    report(num, ok, detail)


if __name__ == "__main__":
    failed = 0
    for num in range(1, 11):
        try:
            ok, detail = CRITERIA[num - 1]()
            report(num, ok, detail)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
