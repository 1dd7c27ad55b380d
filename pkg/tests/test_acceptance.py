"""Exit criteria.  Each test prints one ``[PASS]``/``[FAIL]`` line.

Run alone with ``pytest tests/test_acceptance.py -s`` or
``python tests/test_acceptance.py``.
"""

import itertools
import math
import random
import time
from pathlib import Path

from little_glaisher import bijection as bij
from little_glaisher.cli import render_table
from little_glaisher.companions import equinumerosity_report
from little_glaisher.glaisher import (
    phi_forward_direct,
    phi_forward_iterative,
    phi_inverse,
    random_policy,
    termination_bound,
)
from little_glaisher.mixed_radix import (
    FactorList,
    compose_digits,
    decompose_digits,
    factor_form,
    unfactor_form,
)
from little_glaisher.partitions import (
    Partition,
    enumerate_partitions,
    is_kl_regular,
    parse_partition,
    regular_partitions,
)
from little_glaisher.qseries import eta_quotient_side, glaisher_series, regular_product_side

GOLDEN = Path(__file__).parent / "golden" / "table_k2_l6_n10.txt"
P = parse_partition


def report(number, name, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name}"
    if detail:
        line += f" ({detail})"
    print(line)
    return ok


def shown(capsys, check):
    """Run a criterion with capture off so its verdict line is always visible."""
    with capsys.disabled():
        print()
        return check()


# 1 -----------------------------------------------------------------------------

def check_table():
    start = time.perf_counter()
    text = render_table(2, 6, 10)
    elapsed = time.perf_counter() - start
    rows = text.splitlines()[2:]
    ok = text.encode() == GOLDEN.read_bytes() and len(rows) == 8 and elapsed < 1.0
    ok &= [c.strip() for c in rows[5].split(" | ")] == ["1^5 5", "(1 5, 2^2)", "(1 5, 4)", "1 4 5"]
    return report(1, "table k=2 l=6 n=10 matches golden file", ok,
                  f"{len(rows)} rows, {elapsed:.3f}s")


def test_criterion_1_table(capsys):
    assert shown(capsys, check_table)


# 2 -----------------------------------------------------------------------------

def check_worked_example():
    lam = P("1^2 3^5 5^3")
    target = P("2 3 4 5 8 10")
    steps = bij.little_glaisher_steps(lam, 2, 6, factors=([2], [2, 3]))
    k2 = bij.k2_special_steps(lam, 6)
    ok = steps.image == target == k2.image == bij.little_glaisher_map(lam, 2, 6)
    ok &= steps.source_grid.scaled_entries() == ((P("3 5"), P("2 6^2 10")),)
    ok &= steps.image_grid.transposed().scaled_entries() == ((P("3 5"), P("2 4 8 10")),)
    ok &= k2.lambda_parts == (P("3 5"), P("2 6^2 10"))
    ok &= k2.mu_parts == (P("3 5"), P("2 4 8 10"))
    return report(2, "worked example 1^2 3^5 5^3 -> 2 3 4 5 8 10 by both routes", ok)


def test_criterion_2_worked_example(capsys):
    assert shown(capsys, check_worked_example)


# 3 -----------------------------------------------------------------------------

def check_bijectivity():
    start = time.perf_counter()
    problems = []
    for strategy in ("prime", "optimal"):
        for k in range(2, 7):
            for l in range(2, 7):
                cf = bij.resolve_factorization(k, l, strategy)
                for n in range(31):
                    src = regular_partitions(n, k, l)
                    tgt = regular_partitions(n, l, k)
                    images = [bij.little_glaisher_map(lam, k, l, factors=cf) for lam in src]
                    if len(src) != len(tgt):
                        problems.append(f"{strategy} k={k} l={l} n={n}: counts differ")
                    if len(set(images)) != len(images):
                        problems.append(f"{strategy} k={k} l={l} n={n}: not injective")
                    if not set(images) <= set(tgt):
                        problems.append(f"{strategy} k={k} l={l} n={n}: image outside R_l,k")
                    back = [bij.little_glaisher_inverse(mu, k, l, factors=cf) for mu in images]
                    if back != src:
                        problems.append(f"{strategy} k={k} l={l} n={n}: inverse fails")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 60
    detail = f"{elapsed:.1f}s" + (f", first problem: {problems[0]}" if problems else "")
    return report(3, "exhaustive bijectivity, (k,l) in {2..6}^2, n <= 30, both strategies",
                  ok, detail)


def test_criterion_3_bijectivity(capsys):
    assert shown(capsys, check_bijectivity)


# 4 -----------------------------------------------------------------------------

def check_series():
    start = time.perf_counter()
    bad = []
    for k in range(1, 9):
        for l in range(1, 9):
            a = regular_product_side(k, l, 200)
            if not a == regular_product_side(l, k, 200) == eta_quotient_side(k, l, 200):
                bad.append((k, l))
        forms = glaisher_series(k, 200)
        if not forms.lhs == forms.eta == forms.rhs:
            bad.append(("glaisher", k))
    elapsed = time.perf_counter() - start
    return report(4, "series identities at N=200 for k,l in 1..8", not bad and elapsed < 10,
                  f"{elapsed:.2f}s" + (f", mismatches {bad}" if bad else ""))


def test_criterion_4_series(capsys):
    assert shown(capsys, check_series)


# 5 -----------------------------------------------------------------------------

def check_bridge():
    bad = []
    for k in range(2, 7):
        for l in range(2, 7):
            s = regular_product_side(k, l, 40)
            for n in range(41):
                if s[n] != len(regular_partitions(n, k, l)):
                    bad.append((k, l, n))
    # independent of the direct generator: filter all partitions of 10
    ok = not bad and regular_product_side(2, 6, 10)[10] == 8
    ok &= len(enumerate_partitions(10, lambda p: is_kl_regular(p, 2, 6))) == 8
    spot = all(s == len(enumerate_partitions(n, lambda p: is_kl_regular(p, 4, 6)))
               for n, s in enumerate(regular_product_side(4, 6, 25)))
    return report(5, "series coefficients equal brute-force counts, n <= 40", ok and spot,
                  f"mismatches {bad[:3]}" if bad else "")


def test_criterion_5_bridge(capsys):
    assert shown(capsys, check_bridge)


# 6 -----------------------------------------------------------------------------

def _conserved_along(lam, trace, k):
    """Replay ``trace`` and recompute S_i for the touched chain after every merge."""
    table = dict(lam.freq)
    for step in trace.steps:
        i, j = step.part, step.part * k
        table[i] = table.get(i, 0) - k
        table[j] = table.get(j, 0) + 1
        if table[i] < 0:
            return False
        base = i
        while base % k == 0:
            base //= k
        s, part, power = 0, base, 1
        while part <= lam.weight:
            s += table.get(part, 0) * power
            part *= k
            power *= k
        if s != lam.multiplicity(base):
            return False
    return sum(m * p for p, m in table.items()) == lam.weight


def check_glaisher(policies=100, seed=20261017):
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = []
    instances = 0
    for k in range(2, 8):
        for n in range(26):
            for lam in enumerate_partitions(n, lambda p: all(i % k for i in p.support)):
                instances += 1
                direct = phi_forward_direct(lam, k)
                if phi_inverse(direct, k) != lam:
                    bad.append(("round trip", k, lam))
                bound = termination_bound(lam, k)
                for _ in range(policies):
                    img, trace = phi_forward_iterative(lam, k, random_policy(rng))
                    if img != direct:
                        bad.append(("order", k, lam))
                    if len(trace) > bound:
                        bad.append(("bound", k, lam))
                    if not _conserved_along(lam, trace, k):
                        bad.append(("conservation", k, lam))
                    if bad:
                        break
    elapsed = time.perf_counter() - start
    return report(6, "Glaisher round trip, order independence, conservation, bound", not bad,
                  f"{instances} partitions x {policies} orders, {elapsed:.1f}s"
                  + (f", first problem {bad[0]}" if bad else ""))


def test_criterion_6_glaisher(capsys):
    assert shown(capsys, check_glaisher)


# 7 -----------------------------------------------------------------------------

def factor_test_set():
    lists = [list(c) for t in range(1, 4) for c in itertools.product(range(1, 7), repeat=t)]
    lists += [
        [2, 2, 2, 2, 2], [3, 3, 3, 3], [2, 3, 5, 7], [7, 5, 3, 2], [4, 1, 6, 1, 5],
        [12, 18], [9, 4, 35], [8, 9, 70], [7, 8, 9, 10], [10, 9, 8, 7], [2, 3, 4, 5, 42],
        [5040], [1, 5040], [16, 315], [6, 6, 6, 6, 3], [1, 1, 1, 1, 7], [2, 2, 2, 3, 105],
        [30, 4, 42], [11, 13, 17], [1, 2, 1, 3, 1],
    ]
    assert all(math.prod(x) <= 5040 and len(x) <= 5 for x in lists)
    return [FactorList(x) for x in lists]


def check_mixed_radix():
    start = time.perf_counter()
    bad = []
    sets = factor_test_set()
    for f in sets:
        d = f.product
        seen = set()
        for r in range(d):
            digits = decompose_digits(r, f)
            seen.add(digits)
            if compose_digits(digits, f) != r:
                bad.append((f, "digits", r))
        if len(seen) != d or not all(0 <= b < dj for t in seen for b, dj in zip(t, f.factors)):
            bad.append((f, "digit set"))
        if d == 1:
            continue
        prefix = f.prefix_products
        for i in range(1, 10 * d + 1):
            classes = [j for j in range(1, f.t + 1)
                       if i % prefix[j - 1] == 0 and (i // prefix[j - 1]) % f.factors[j - 1]]
            if i % d == 0:
                if classes:
                    bad.append((f, "multiple of d classified", i))
                continue
            if len(classes) != 1:
                bad.append((f, "classes", i, classes))
                continue
            j, gamma = factor_form(i, f)
            if j != classes[0] or unfactor_form(j, gamma, f) != i:
                bad.append((f, "factor form", i))
    elapsed = time.perf_counter() - start
    return report(7, "mixed-radix digit bijection and residue partition", not bad,
                  f"{len(sets)} factor lists, {elapsed:.1f}s"
                  + (f", first problem {bad[0]}" if bad else ""))


def test_criterion_7_mixed_radix(capsys):
    assert shown(capsys, check_mixed_radix)


# 8 -----------------------------------------------------------------------------

def check_companions():
    start = time.perf_counter()
    lines = []
    ok = True
    for k, variant in ((3, "schur"), (4, "alladi"), (5, "aab-pair"), (5, "companion")):
        rep = equinumerosity_report(40, k, variant)
        if variant in ("schur", "alladi"):
            ok &= rep.verdict == "PASS"
        else:
            # either outcome is acceptable as long as a mismatch is fully reported
            if rep.first_mismatch is not None:
                n = rep.first_mismatch
                ok &= rep.verdict == "DISCREPANCY"
                ok &= all(row.match for row in rep.rows[:n])
                ok &= len(rep.regular_objects) == rep.rows[n].regular
                ok &= len(rep.companion_objects) == rep.rows[n].companion
            else:
                ok &= rep.verdict == "PASS"
        desc = rep.verdict if rep.first_mismatch is None else \
            f"{rep.verdict} at n={rep.first_mismatch}"
        lines.append(f"{variant}: {desc}")
    elapsed = time.perf_counter() - start
    ok &= elapsed < 120
    return report(8, "companion equinumerosity, n <= 40", ok,
                  "; ".join(lines) + f"; {elapsed:.1f}s")


def test_criterion_8_companions(capsys):
    assert shown(capsys, check_companions)


if __name__ == "__main__":
    results = [check_table(), check_worked_example(), check_bijectivity(), check_series(),
               check_bridge(), check_glaisher(), check_mixed_radix(), check_companions()]
    raise SystemExit(0 if all(results) else 1)
