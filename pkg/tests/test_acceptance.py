"""Exit criteria. All arithmetic is exact, so every check is an exact equality.

Each test appends a PASS/FAIL line to the "acceptance criteria" section of the
pytest terminal summary.
"""

import io
import json
import math
import random
from collections import Counter

import pytest

from conftest import brute_first_occurrence, brute_rows, enumerate_farey, record_criterion, walk_seed
from sternbrocot.analytics import (
    casework_mod3_verify,
    completeness_sweep,
    det_lists,
    farey,
    reduced_fractions,
    stabilization,
)
from sternbrocot.cli import main
from sternbrocot.equivalence import canonical_seed, check_equivalent, gcd_identity_check, standard_grid
from sternbrocot.locator import locate
from sternbrocot.rational import Fraction, SeedPair, cross_determinant
from sternbrocot.tree import generate, project, slice_inclusive

pytestmark = pytest.mark.acceptance

HALF = SeedPair.parse("0/1,1/1")


def _small_seeds(bound):
    fracs = sorted({Fraction(n, d) for n in range(bound + 1) for d in range(1, bound + 1)})
    return [SeedPair(u, v) for i, u in enumerate(fracs) for v in fracs[i + 1:]]


def _cli(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), out.getvalue()


def test_criterion_01_reference_rows():
    code1, half = _cli("gen", "--seed", "0/1,1/1", "--rows", "2")
    code2, example = _cli("gen", "--seed", "2/5,5/11", "--rows", "3", "--format", "text")
    _, example_json = _cli("gen", "--seed", "2/5,5/11", "--rows", "3", "--format", "json")
    rows = [json.loads(line) for line in example_json.splitlines()]
    expected_half = "0/1 1/1\n0/1 1/2 1/1\n0/1 1/3 1/2 2/3 1/1\n"
    expected_example = ("2/5 5/11\n"
                        "2/5 7/16 5/11\n"
                        "2/5 3/7 7/16 4/9 5/11\n"
                        "2/5 5/12 3/7 10/23 7/16 11/25 4/9 9/20 5/11\n")
    factors = dict(zip(rows[2]["entries"][1::2], rows[2]["reductions"]))
    ok = (code1 == code2 == 0 and half == expected_half and example == expected_example
          and factors == {"3/7": 3, "4/9": 3})
    record_criterion(1, "reference rows reproduced (SB half rows, 2/5,5/11 example)", ok,
                     f"factors {factors}")
    assert ok


def test_criterion_02_t23():
    rows = generate(SeedPair.parse("2/1,3/1"), 2)
    texts = [" ".join(map(str, r)) for r in rows]
    ok = (texts == ["2/1 3/1", "2/1 5/2 3/1", "2/1 7/3 5/2 8/3 3/1"]
          and all(g == 1 for r in rows for g in r.reductions))
    record_criterion(2, "T(2,3) rows 0..2, no reductions", ok)
    assert ok


def test_criterion_03_row_identities():
    rows = generate(HALF, 12)
    violations = Counter()
    for r in rows:
        i, e = r.depth, r.entries
        if len(e) != 2**i + 1:
            violations["size"] += 1
        n = len(e) - 1
        for j in range(n + 1):
            u, v = e[j], e[n - j]
            if u.num * v.den + v.num * u.den != u.den * v.den:
                violations["opposite"] += 1
        violations["det"] += sum(cross_determinant(u, v) != 1 for u, v in zip(e, e[1:]))
        violations["reduction"] += sum(g != 1 for g in r.reductions)
    for lo, hi in zip(rows[:11], rows[1:12]):
        pl, ph = project(lo), project(hi)
        half = 2**lo.depth
        if slice_inclusive(ph.numerators, 0, half) != list(pl.numerators):
            violations["N recursion"] += 1
        if slice_inclusive(ph.denominators, 0, half) != [a + b for a, b in zip(pl.numerators, pl.denominators)]:
            violations["D recursion"] += 1
    total = sum(violations.values())
    record_criterion(3, "row identities, depths 0..12 (N/D recursion 0..10)", total == 0,
                     f"{total} violations {dict(violations) if total else ''}".strip())
    assert total == 0


def test_criterion_04_all_rationals_in_unit_interval():
    targets = reduced_fractions(50, inclusive=False)
    misses = []
    results = {}
    for t in targets:
        res = locate(HALF, t)  # default step cap
        results[t] = res
        if not res.found:
            misses.append(t)
    rows = brute_rows((0, 1), (1, 1), 12)
    disagreements = []
    for t in reduced_fractions(12, inclusive=False):
        res = results[t]
        if brute_first_occurrence(rows, tuple(t)) != (res.depth, res.index_in_row):
            disagreements.append(t)
    ok = not misses and not disagreements
    record_criterion(4, "every p/q in (0,1), q <= 50, located; q <= 12 matches rows", ok,
                     f"{len(targets)} targets, {len(misses)} misses, {len(disagreements)} row mismatches, "
                     f"max depth {max(r.depth for r in results.values())}")
    assert ok


def test_criterion_05_det1_weights():
    rng = random.Random(5)
    failures = 0
    done = 0
    while done < 1000:
        seed = walk_seed([rng.random() < 0.5 for _ in range(rng.randint(1, 30))])
        (a, b), (c, d) = seed
        q = rng.randint(1, 10**6)
        lo = a * q // b + 1
        hi = (c * q - 1) // d if d else lo + 10**6
        if lo > hi:
            continue
        x, y = Fraction(rng.randint(lo, hi), q)
        assert Fraction(a, b) < Fraction(x, y) < Fraction(c, d)
        w, z = c * y - d * x, b * x - a * y
        if not (w > 0 and z > 0 and Fraction(a * w + c * z, b * w + d * z) == Fraction(x, y)
                and a * w + c * z == x and b * w + d * z == y):
            failures += 1
        done += 1
    record_criterion(5, "closed-form weights on 1000 det-1 seeds", failures == 0, f"{failures} failures")
    assert failures == 0


def test_criterion_06_stabilization():
    dets = {2, 3, 4, 8, 9, 12, 16, 18, 24, 27}
    counterexamples = []
    depth_by_det = {}
    for seed in _small_seeds(8):
        if seed.det not in dets:
            continue
        rep = stabilization(seed, 10)
        if not rep.stabilized:
            counterexamples.append(str(seed))
            continue
        depth_by_det.setdefault(seed.det, Counter())[rep.first_all_ones_depth] += 1
        j = {3: 1, 9: 2, 27: 3}.get(seed.det)
        if j is not None:
            if rep.first_all_ones_depth > 2 * j:
                counterexamples.append(f"{seed} depth {rep.first_all_ones_depth} > {2 * j}")
            if max(det_lists(seed, 2)[2].values) > 3 ** (j - 1):
                counterexamples.append(f"{seed} max det after two rows exceeds {3 ** (j - 1)}")
    log = "; ".join(f"D={d}: {dict(sorted(c.items()))}" for d, c in sorted(depth_by_det.items()))
    ok = not counterexamples
    record_criterion(6, "2^m 3^n determinants stabilize by depth 10, 3^j by 2j", ok,
                     f"{sum(sum(c.values()) for c in depth_by_det.values())} seeds; depths {log}")
    assert ok, counterexamples


def _random_seed(rng, max_det=60):
    while True:
        b = rng.randint(1, 40)
        a = rng.randint(0, 3 * b)
        d = rng.randint(1, 40)
        if math.gcd(a, b) != 1:
            continue
        lo = -(-(a * d + 1) // b)
        hi = (a * d + max_det) // b
        if lo > hi:
            continue
        c = rng.randint(lo, hi)
        if math.gcd(c, d) == 1:
            return SeedPair(Fraction(a, b), Fraction(c, d))


def test_criterion_07_canonical_equivalent_tree():
    rng = random.Random(2026)
    grid = standard_grid(50)
    failures, fallbacks, dets = [], 0, Counter()
    for _ in range(200):
        seed = _random_seed(rng)
        assert seed.det <= 60
        dets[seed.det] += 1
        canon = canonical_seed(seed)
        fallbacks += canon.fallback_used
        if not gcd_identity_check(seed, canon, grid):
            failures.append(f"{seed} gcd identity")
        if not check_equivalent(seed, canon.seed, 8).equivalent:
            failures.append(f"{seed} equivalence")
    ok = not failures and fallbacks == 0
    record_criterion(7, "canonical T(0/1, D/V) for 200 random seeds, D <= 60", ok,
                     f"{len(dets)} distinct D, {len(failures)} failures, {fallbacks} fallback activations")
    assert ok, failures


def test_criterion_08_general_completeness():
    misses, checked, seeds, deepest = [], 0, 0, 0
    for seed in _small_seeds(6):
        rep = completeness_sweep(seed, 10)
        seeds += 1
        checked += rep.checked
        misses += [(str(seed), str(t)) for t in rep.missing]
        deepest = max(deepest, rep.max_depth)
    ok = not misses
    record_criterion(8, "every interior p/q, q <= 10, located for all seeds with entries <= 6", ok,
                     f"{seeds} seeds, {checked} targets, {len(misses)} misses, max depth {deepest}")
    assert ok, misses[:10]


def test_criterion_09_mod3_casework():
    ok = casework_mod3_verify()
    record_criterion(9, "mod-3 residue casework", ok)
    assert ok


def test_criterion_10_farey():
    bad = [n for n in range(1, 31)
           if [(f.num, f.den) for f in farey(n)] != [(q.numerator, q.denominator) for q in enumerate_farey(n)]]
    record_criterion(10, "Farey extraction equals enumeration, n <= 30", not bad, f"mismatches {bad}" if bad else "")
    assert not bad
