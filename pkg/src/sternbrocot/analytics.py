"""Determinant dynamics, Farey extraction and batch verification sweeps."""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

from .rational import Fraction, SeedPair, cross_determinant, mediant
from .tree import DEFAULT_DEPTH_CAP, ResourceCapError, iter_rows
from .locator import locate

__all__ = [
    "DetList",
    "StabilizationReport",
    "SweepReport",
    "CheckResult",
    "det_list",
    "det_lists",
    "stabilization",
    "casework_mod3",
    "casework_mod3_verify",
    "power_of_two_descent_check",
    "farey",
    "farey_count",
    "reduced_fractions",
    "completeness_sweep",
    "verification_suite",
]


@dataclass(frozen=True)
class DetList:
    depth: int
    values: tuple[int, ...]

    @property
    def all_ones(self) -> bool:
        return all(v == 1 for v in self.values)


@dataclass(frozen=True)
class StabilizationReport:
    seed: SeedPair
    stabilized: bool
    first_all_ones_depth: Optional[int]
    max_depth_checked: int

    def to_dict(self) -> dict:
        return {"seed": str(self.seed), "stabilized": self.stabilized,
                "first_all_ones_depth": self.first_all_ones_depth,
                "max_depth_checked": self.max_depth_checked}


@dataclass(frozen=True)
class SweepReport:
    seed: SeedPair
    max_den: int
    checked: int
    missing: tuple[Fraction, ...]
    max_depth: int

    @property
    def complete(self) -> bool:
        return not self.missing

    def to_dict(self) -> dict:
        return {"seed": str(self.seed), "max_den": self.max_den, "checked": self.checked,
                "missing": [str(f) for f in self.missing], "max_depth": self.max_depth,
                "complete": self.complete}


def det_list(row) -> DetList:
    e = row.entries
    return DetList(row.depth, tuple(cross_determinant(u, v) for u, v in zip(e, e[1:])))


def det_lists(seed: SeedPair, depth: int, *, depth_cap: int = DEFAULT_DEPTH_CAP) -> list[DetList]:
    return [det_list(row) for row in iter_rows(seed, depth, depth_cap=depth_cap)]


def stabilization(seed: SeedPair, max_depth: int, *,
                  depth_cap: int = DEFAULT_DEPTH_CAP) -> StabilizationReport:
    """Earliest depth from which every adjacent determinant is 1 through ``max_depth``.

    Rows past the first all-ones row are still generated and checked.
    """
    first = None
    for row in iter_rows(seed, max_depth, depth_cap=depth_cap):
        if det_list(row).all_ones:
            if first is None:
                first = row.depth
        else:
            first = None
    return StabilizationReport(seed, first is not None, first, max_depth)


# --- residue casework for determinants divisible by 3 -----------------------

def _branch(a, b, c, d):
    """Case split on ``bc = ad (mod 3)``.

    Returns ``(branch, designated, as_written)``: ``designated`` are the
    candidates that must reduce, decided by whether ``(c, d)`` is congruent to
    ``(a, b)`` or to ``-(a, b)``; ``as_written`` is the designation keyed on
    comparing ``(b, c)`` with ``(a, d)``, which gets the class-2 branch backwards.
    """
    outer, middle = ["outer_left", "outer_right"], ["middle"]
    cls = (b * c) % 3
    if cls == 0:
        # the nonzero coordinates are b, d or a, c
        u, v = (b, d) if a == 0 else (a, c)
        designated = middle if (u + v) % 3 == 0 else outer
        return "0", designated, designated
    if (c, d) == (a, b):
        designated = outer
    elif (c, d) == ((-a) % 3, (-b) % 3):
        designated = middle
    else:
        return None
    same = (b, c) == (a, d)
    as_written = outer if same else middle
    return f"{cls}:{'same' if same else 'swapped'}", designated, as_written


def casework_mod3() -> list[dict]:
    """Every admissible residue tuple ``(a, b, c, d) mod 3`` with its branch outcome.

    Admissible means ``bc = ad (mod 3)`` and neither ``(a, b)`` nor ``(c, d)`` is
    ``(0, 0)``. Every designated candidate among (2a+c)/(2b+d), (a+c)/(b+d),
    (a+2c)/(b+2d) must have numerator and denominator divisible by 3.
    """
    records = []
    for a, b, c, d in product(range(3), repeat=4):
        if (b * c - a * d) % 3 or (a == 0 and b == 0) or (c == 0 and d == 0):
            continue
        cands = {
            "outer_left": ((2 * a + c) % 3, (2 * b + d) % 3),
            "middle": ((a + c) % 3, (b + d) % 3),
            "outer_right": ((a + 2 * c) % 3, (b + 2 * d) % 3),
        }
        branch = _branch(a, b, c, d)
        if branch is None:
            records.append({"residues": (a, b, c, d), "branch": None, "ok": False})
            continue
        name, designated, as_written = branch
        records.append({
            "residues": (a, b, c, d),
            "branch": name,
            "designated": designated,
            "ok": all(cands[k] == (0, 0) for k in designated),
            "as_written_ok": all(cands[k] == (0, 0) for k in as_written),
        })
    return records


def casework_mod3_verify() -> bool:
    return all(r["ok"] for r in casework_mod3())


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def power_of_two_descent_check(seed: SeedPair, depth: int) -> bool:
    """For a determinant ``2^k >= 2``: every pair with determinant above 1 must
    reduce its mediant by an even factor, leaving two smaller power-of-two
    determinants. Checked recursively for ``depth`` levels."""
    if seed.det < 2 or not _is_power_of_two(seed.det):
        raise ValueError(f"seed determinant {seed.det} is not a power of two >= 2")
    pairs = [(seed.left, seed.right)]
    for _ in range(depth):
        nxt = []
        for u, v in pairs:
            D = cross_determinant(u, v)
            if D == 1:
                continue
            m, g = mediant(u, v)
            if g % 2:
                return False
            d1, d2 = cross_determinant(u, m), cross_determinant(m, v)
            if not (_is_power_of_two(d1) and _is_power_of_two(d2) and d1 < D and d2 < D):
                return False
            nxt += [(u, m), (m, v)]
        pairs = nxt
        if not pairs:
            break
    return True


# --- Farey sequences ------------------------------------------------------------

def reduced_fractions(max_den: int, lo: Fraction = Fraction(0, 1), hi: Fraction = Fraction(1, 1),
                      *, max_num: Optional[int] = None, inclusive: bool = True) -> list[Fraction]:
    """All reduced ``p/q`` with ``q <= max_den`` in ``[lo, hi]`` (or the open
    interval), sorted. ``max_num`` is required when ``hi`` is ``1/0``."""
    if hi.is_infinite and max_num is None:
        raise ValueError("an unbounded interval needs max_num")
    out = []
    for q in range(1, max_den + 1):
        # lo.num/lo.den <= p/q  <=>  p >= ceil(lo.num*q/lo.den)
        p_lo = -(-lo.num * q // lo.den)
        p_hi = max_num if hi.is_infinite else hi.num * q // hi.den
        if max_num is not None:
            p_hi = min(p_hi, max_num)
        for p in range(p_lo, p_hi + 1):
            if math.gcd(p, q) != 1:
                continue
            f = Fraction(p, q)
            if not inclusive and (f == lo or f == hi):
                continue
            out.append(f)
    out.sort()
    return out


def farey_count(order: int) -> int:
    """``1 + sum(phi(k), k <= order)`` by direct enumeration."""
    return sum(1 for q in range(1, order + 1) for p in range(0, q + 1) if math.gcd(p, q) == 1)


def farey(order: int) -> list[Fraction]:
    """Farey sequence of the given order read off the half Stern-Brocot rows.

    Pairs whose mediant already has denominator above ``order`` are not
    expanded: everything strictly between two determinant-one neighbours
    has a denominator at least the sum of theirs, so those entries would be
    discarded anyway.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    target = farey_count(order)
    row = [Fraction(0, 1), Fraction(1, 1)]
    while len(row) < target:
        nxt = [row[0]]
        for u, v in zip(row, row[1:]):
            if u.den + v.den <= order:
                nxt.append(Fraction(u.num + v.num, u.den + v.den))
            nxt.append(v)
        if len(nxt) == len(row):
            raise RuntimeError(f"row stopped growing at {len(row)} of {target} fractions")
        row = nxt
    return row


# --- sweeps -------------------------------------------------------------------

def _locate_one(args):
    seed, target, max_steps = args
    res = locate(seed, target, max_steps)
    return res.found, res.depth


def completeness_sweep(seed: SeedPair, max_den: int, max_steps: Optional[int] = None, *,
                       max_num: Optional[int] = None, parallelism: int = 1) -> SweepReport:
    """Locate every reduced fraction with denominator ``<= max_den`` strictly
    inside the seed interval and list those not reached within the budget."""
    targets = reduced_fractions(max_den, seed.left, seed.right, max_num=max_num, inclusive=False)
    jobs = [(seed, t, max_steps) for t in targets]
    if parallelism > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(_locate_one, jobs, chunksize=64))
    else:
        results = [_locate_one(j) for j in jobs]
    missing = tuple(t for t, (found, _) in zip(targets, results) if not found)
    max_depth = max((d for found, d in results if found), default=0)
    return SweepReport(seed, max_den, len(targets), missing, max_depth)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    extra: dict = field(default_factory=dict)


def _small_seeds(bound: int):
    fracs = sorted({Fraction(n, d) for n in range(bound + 1) for d in range(1, bound + 1)})
    for i, u in enumerate(fracs):
        for v in fracs[i + 1:]:
            yield SeedPair(u, v)


def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> CheckResult:
    try:
        ok, detail = fn()
    except (ResourceCapError, ArithmeticError, ValueError) as exc:
        return CheckResult(name, False, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, ok, detail)


def verification_suite(depth: int = 10) -> list[CheckResult]:
    """A quick battery of the tree identities, sized to run in a few seconds."""
    from .equivalence import canonical_seed, check_equivalent
    from .tree import generate, project, slice_inclusive

    base = SeedPair(Fraction(0, 1), Fraction(1, 1))
    rows = generate(base, depth)

    def sizes():
        bad = [r.depth for r in rows if len(r) != 2**r.depth + 1]
        return not bad, f"bad depths {bad}" if bad else f"depths 0..{depth}"

    def opposite():
        bad = [r.depth for r in rows
               if any(r[j].num * r[-1 - j].den + r[-1 - j].num * r[j].den != r[j].den * r[-1 - j].den
                      for j in range(len(r)))]
        return not bad, f"bad depths {bad}" if bad else ""

    def unit_dets():
        bad = [r.depth for r in rows if not det_list(r).all_ones]
        return not bad, ""

    def no_reductions():
        bad = [r.depth for r in rows if any(g != 1 for g in r.reductions)]
        return not bad, ""

    def nd_recursion():
        for lo, hi in zip(rows, rows[1:]):
            pl, ph = project(lo), project(hi)
            half = 2**lo.depth
            if slice_inclusive(ph.numerators, 0, half) != list(pl.numerators):
                return False, f"numerators at depth {hi.depth}"
            if slice_inclusive(ph.denominators, 0, half) != [n + d for n, d in zip(pl.numerators, pl.denominators)]:
                return False, f"denominators at depth {hi.depth}"
        return True, ""

    def all_found():
        rep = completeness_sweep(base, 20)
        return rep.complete, f"{rep.checked} targets, max depth {rep.max_depth}"

    def general_found():
        misses = [str(s) for s in _small_seeds(4) if not completeness_sweep(s, 8).complete]
        return not misses, f"misses in {misses}" if misses else ""

    def stabilizes():
        bad = [str(s) for s in _small_seeds(6) if s.det > 1 and _is_smooth23(s.det)
               and not stabilization(s, 10).stabilized]
        return not bad, f"unstable {bad}" if bad else ""

    def canonical():
        bad = []
        for s in _small_seeds(6):
            c = canonical_seed(s, grid=20)
            if c.fallback_used or not check_equivalent(s, c.seed, 6).equivalent:
                bad.append(str(s))
        return not bad, f"failed {bad}" if bad else ""

    def farey_ok():
        bad = [n for n in range(1, 16) if farey(n) != reduced_fractions(n)]
        return not bad, ""

    return [
        _check("row sizes 2^i + 1", sizes),
        _check("opposite entries sum to 1", opposite),
        _check("adjacent determinants equal 1", unit_dets),
        _check("mediants never reduce", no_reductions),
        _check("numerator/denominator recursion", nd_recursion),
        _check("every p/q in (0,1), q <= 20, is found", all_found),
        _check("general seeds contain their interval", general_found),
        _check("2^m 3^n determinants stabilize", stabilizes),
        _check("canonical seed is equivalent", canonical),
        _check("mod-3 residue casework", lambda: (casework_mod3_verify(), "")),
        _check("Farey extraction matches enumeration", farey_ok),
    ]


def _is_smooth23(n: int) -> bool:
    for p in (2, 3):
        while n % p == 0:
            n //= p
    return n == 1
