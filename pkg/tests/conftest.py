"""Brute-force oracles built on the stdlib only, plus acceptance reporting."""

import math
from fractions import Fraction as Q

import pytest

_ACCEPTANCE_LINES = []


def record_criterion(number, name, passed, detail=""):
    _ACCEPTANCE_LINES.append(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {name}"
                             + (f" -- {detail}" if detail else ""))


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_rows(left, right, depth):
    """Rows as lists of (num, den) tuples, reducing with math.gcd directly."""
    row = [left, right]
    rows = [row]
    for _ in range(depth):
        nxt = [row[0]]
        for (a, b), (c, d) in zip(row, row[1:]):
            g = math.gcd(a + c, b + d)
            nxt.append(((a + c) // g, (b + d) // g))
            nxt.append((c, d))
        row = nxt
        rows.append(row)
    return rows


def brute_first_occurrence(rows, target):
    for depth, row in enumerate(rows):
        if target in row:
            return depth, row.index(target)
    return None


def brute_ladder(rows, target):
    """For each row up to the first one containing ``target``, the newly
    inserted entry adjacent to the target's position."""
    t = Q(*target)
    out = []
    for depth, row in enumerate(rows):
        if depth == 0:
            if target in row:
                return [target]
            continue
        values = [Q(n, d) for n, d in row]
        if t in values:
            out.append(target)
            return out
        below = max(i for i, v in enumerate(values) if v < t)
        cand = below if below % 2 == 1 else below + 1
        out.append(row[cand])
    return None


def enumerate_farey(n):
    return sorted({Q(p, q) for q in range(1, n + 1) for p in range(0, q + 1)})


@pytest.fixture
def oracle():
    class _O:
        rows = staticmethod(brute_rows)
        first = staticmethod(brute_first_occurrence)
        ladder = staticmethod(brute_ladder)
        farey = staticmethod(enumerate_farey)
    return _O


def walk_seed(path):
    """Adjacent (det 1) pair reached by following ``path`` (True = right)
    down the full tree from (0/1, 1/0)."""
    from sternbrocot.rational import Fraction, SeedPair
    (a, b), (c, d) = (0, 1), (1, 0)
    for right in path:
        m = (a + c, b + d)
        if right:
            a, b = m
        else:
            c, d = m
    return SeedPair(Fraction(a, b), Fraction(c, d))
