"""Membership search by bracket descent, plus weight decompositions.

A descent keeps only the two neighbours of the target in the current row, so
memory does not grow with the depth of the row being searched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .rational import Fraction, SeedPair, cross_determinant, mediant

__all__ = [
    "Weights",
    "Bracket",
    "LocateResult",
    "default_max_steps",
    "weights_det1",
    "decompose",
    "descend",
    "locate",
    "approximation_ladder",
]


@dataclass(frozen=True)
class Weights:
    """Left weight ``x``, right weight ``y`` and reduction factor ``g``."""

    x: int
    y: int
    g: int

    def as_dict(self) -> dict:
        return {"x": self.x, "y": self.y, "g": self.g}


@dataclass(frozen=True)
class Bracket:
    left: Fraction
    right: Fraction
    left_index: int
    depth: int
    path: tuple[str, ...] = ()

    @property
    def det(self) -> int:
        return cross_determinant(self.left, self.right)


@dataclass(frozen=True)
class LocateResult:
    found: bool
    depth: int
    index_in_row: int
    path: tuple[str, ...]
    weights: Optional[Weights]
    steps_used: int
    bracket: Optional[Bracket] = field(default=None, compare=False)

    def to_dict(self) -> dict:
        return {
            "found": self.found,
            "depth": self.depth,
            "index": self.index_in_row,
            "path": "".join(self.path),
            "weights": self.weights.as_dict() if self.weights else None,
            "steps": self.steps_used,
        }


def default_max_steps(seed: SeedPair, target: Fraction) -> int:
    return 64 + (target.num + target.den) * seed.det


def _check_in_interval(seed: SeedPair, target: Fraction) -> None:
    if not seed.contains(target):
        raise ValueError(f"{target} lies outside [{seed.left}, {seed.right}]")


def weights_det1(seed: SeedPair, target: Fraction) -> Weights:
    """Closed-form weights for a determinant-one seed.

    With seed ``a/b, c/d`` and target ``x/y`` the left weight is ``cy - dx`` and
    the right weight ``bx - ay``; no reduction ever happens so ``g = 1``.
    """
    if seed.det != 1:
        raise ValueError(f"seed determinant is {seed.det}, expected 1")
    _check_in_interval(seed, target)
    (a, b), (c, d) = seed.left, seed.right
    x, y = target
    return Weights(c * y - d * x, b * x - a * y, 1)


def decompose(seed: SeedPair, target: Fraction) -> Weights:
    """Coprime weights ``(x, y)`` with ``target = (a x + c y)/(b x + d y)`` and the
    gcd ``g`` of that unreduced numerator and denominator."""
    _check_in_interval(seed, target)
    (a, b), (c, d) = seed.left, seed.right
    p, q = target
    x = c * q - d * p
    y = b * p - a * q
    h = math.gcd(x, y)
    x, y = x // h, y // h
    g = math.gcd(a * x + c * y, b * x + d * y)
    return Weights(x, y, g)


def descend(seed: SeedPair, target: Fraction) -> Iterator[tuple[Fraction, int, Bracket]]:
    """Walk the bracket around ``target`` one row at a time.

    Yields ``(mediant, reduction_factor, bracket_before_step)`` forever, or until
    the mediant equals the target (that final triple is yielded too).
    """
    left, right = seed.left, seed.right
    index = 0
    path: list[str] = []
    depth = 0
    while True:
        bracket = Bracket(left, right, index, depth, tuple(path))
        m, g = mediant(left, right)
        yield m, g, bracket
        if m == target:
            return
        depth += 1
        if target < m:
            right = m
            index = 2 * index
            path.append("L")
        else:
            left = m
            index = 2 * index + 1
            path.append("R")


def locate(seed: SeedPair, target: Fraction, max_steps: Optional[int] = None) -> LocateResult:
    """Find the first row containing ``target``.

    Seed endpoints are reported at depth 0. If the step budget runs out the
    result has ``found=False`` and carries the last bracket; that outcome is
    inconclusive rather than a proof of absence.
    """
    _check_in_interval(seed, target)
    if max_steps is None:
        max_steps = default_max_steps(seed, target)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    weights = decompose(seed, target)
    if target == seed.left or target == seed.right:
        index = 0 if target == seed.left else 1
        return LocateResult(True, 0, index, (), weights, 0)

    steps = 0
    for m, _, bracket in descend(seed, target):
        steps += 1
        if m == target:
            return LocateResult(True, steps, 2 * bracket.left_index + 1, bracket.path,
                                weights, steps, bracket)
        if steps >= max_steps:
            if target < m:
                last = Bracket(bracket.left, m, 2 * bracket.left_index, steps, bracket.path + ("L",))
            else:
                last = Bracket(m, bracket.right, 2 * bracket.left_index + 1, steps, bracket.path + ("R",))
            return LocateResult(False, steps, last.left_index, last.path, None, steps, last)
    raise AssertionError("unreachable")


def approximation_ladder(seed: SeedPair, target: Fraction,
                         max_steps: Optional[int] = None) -> list[Fraction]:
    """Mediants met on the way down to ``target``, ending with ``target``.

    Read backwards this is the chain of ancestors, each a coarser
    approximation than the one below it. A seed endpoint yields ``[target]``.
    Raises ``LookupError`` if the step budget runs out first.
    """
    _check_in_interval(seed, target)
    if target == seed.left or target == seed.right:
        return [target]
    if max_steps is None:
        max_steps = default_max_steps(seed, target)
    ladder = []
    for m, _, _ in descend(seed, target):
        ladder.append(m)
        if m == target:
            return ladder
        if len(ladder) >= max_steps:
            raise LookupError(f"{target} not reached within {max_steps} steps")
    raise AssertionError("unreachable")
