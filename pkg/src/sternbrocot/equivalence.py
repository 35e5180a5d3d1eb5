"""Canonical equivalent trees ``T(0/1, D/V)`` and positional equivalence checks.

Two trees are equivalent when every pair of corresponding insertions is
reduced by the same factor. For a seed ``a/b, c/d`` with determinant ``D`` the
canonical partner is found prime by prime: modulo each ``p^e || D`` the
residue of ``V`` is either ``a^-1 c`` or ``b^-1 d`` depending on which seed
coordinates ``p`` divides, and the residues are glued with the CRT.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional

from .rational import Fraction, SeedPair, factorize, mod_inverse
from .tree import DEFAULT_DEPTH_CAP, iter_rows

__all__ = [
    "CASE1",
    "CASE2",
    "ResidueCase",
    "CanonicalSeed",
    "EquivalenceReport",
    "ConstructionError",
    "canonical_seed",
    "construct_v",
    "crt",
    "check_equivalent",
    "gcd_identity_check",
    "standard_grid",
]

logger = logging.getLogger(__name__)

CASE1 = "CASE1"
CASE2 = "CASE2"
DEFAULT_GRID = 50
DEFAULT_VERIFY_DEPTH = 8


class ConstructionError(ArithmeticError):
    """A residue came out non-invertible; the seed violates a coprimality premise."""


@dataclass(frozen=True)
class ResidueCase:
    prime: int
    exponent: int
    case: str
    residue: int

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def to_dict(self) -> dict:
        return {"prime_power": f"{self.prime}^{self.exponent}", "case": self.case,
                "residue": self.residue}


@dataclass(frozen=True)
class CanonicalSeed:
    D: int
    V: int
    residues: tuple[ResidueCase, ...] = ()
    # True when the residue construction failed the gcd identity and V came
    # from exhaustive search instead
    fallback_used: bool = False

    @property
    def seed(self) -> SeedPair:
        return SeedPair(Fraction(0, 1), Fraction(self.D, self.V))

    def to_dict(self) -> dict:
        return {"D": self.D, "V": self.V, "cases": [r.to_dict() for r in self.residues],
                "fallback": self.fallback_used}


@dataclass(frozen=True)
class EquivalenceReport:
    depth_checked: int
    equivalent: bool
    # (depth, insertion index, factor in first tree, factor in second tree)
    first_mismatch: Optional[tuple[int, int, int, int]] = None

    def to_dict(self) -> dict:
        mismatch = None
        if self.first_mismatch is not None:
            d, i, f1, f2 = self.first_mismatch
            mismatch = {"depth": d, "index": i, "left_factor": f1, "right_factor": f2}
        return {"depth_checked": self.depth_checked, "equivalent": self.equivalent,
                "first_mismatch": mismatch, "bounded_evidence": True}


def crt(residues: Iterable[tuple[int, int]]) -> tuple[int, int]:
    """Combine ``(r_i, m_i)`` with pairwise coprime moduli into ``(r, prod m_i)``."""
    r, m = 0, 1
    for ri, mi in residues:
        # r + m*t = ri (mod mi)
        t = ((ri - r) * pow(m, -1, mi)) % mi
        r, m = r + m * t, m * mi
    return r % m, m


def construct_v(seed: SeedPair) -> tuple[int, tuple[ResidueCase, ...]]:
    """Residue-by-residue construction of ``V`` (no verification)."""
    (a, b), (c, d) = seed.left, seed.right
    D = seed.det
    cases = []
    for p, e in factorize(D):
        q = p**e
        divides = tuple(x % p == 0 for x in (a, b, c, d))
        try:
            if divides == (True, False, True, False):
                case, residue = CASE2, mod_inverse(b, q) * d % q
            elif divides == (False, True, False, True):
                # mirror of the case above: a and c are the invertible coordinates
                case, residue = CASE2, mod_inverse(a, q) * c % q
            elif not any(divides):
                case, residue = CASE1, mod_inverse(a, q) * c % q
            else:
                raise ConstructionError(f"{p} divides {divides} of a, b, c, d for seed {seed}")
        except ValueError as exc:
            raise ConstructionError(str(exc)) from exc
        if math.gcd(residue, p) != 1:
            raise ConstructionError(f"residue {residue} mod {q} is not a unit")
        cases.append(ResidueCase(p, e, case, residue))
    if not cases:
        return 1, ()
    v, _ = crt((rc.residue, rc.modulus) for rc in cases)
    return v or D, tuple(cases)


def standard_grid(size: int = DEFAULT_GRID) -> list[tuple[int, int]]:
    return list(product(range(1, size + 1), repeat=2))


def _identity_holds(seed: SeedPair, D: int, V: int, sample) -> bool:
    (a, b), (c, d) = seed.left, seed.right
    for x, y in sample:
        if math.gcd(a * x + c * y, b * x + d * y) != math.gcd(D * y, x + V * y):
            return False
    return True


def gcd_identity_check(seed: SeedPair, canonical: CanonicalSeed,
                       sample: Optional[Iterable[tuple[int, int]]] = None) -> bool:
    """Check ``gcd(ax+cy, bx+dy) == gcd(Dy, x+Vy)`` on every sampled ``(x, y)``.

    ``sample`` defaults to the grid ``1 <= x, y <= 50``.
    """
    if sample is None:
        sample = standard_grid()
    return _identity_holds(seed, canonical.D, canonical.V, sample)


def canonical_seed(seed: SeedPair, *, grid: int = DEFAULT_GRID) -> CanonicalSeed:
    """Find ``V`` with ``T(seed)`` equivalent to ``T(0/1, D/V)``.

    The constructed ``V`` is checked against the gcd identity on a grid; if it
    fails, every unit ``V`` in ``[1, D]`` is tried and ``fallback_used`` is set.
    """
    D = seed.det
    v, cases = construct_v(seed)
    sample = standard_grid(grid)
    if _identity_holds(seed, D, v, sample):
        return CanonicalSeed(D, v, cases)
    logger.warning("residue construction of V failed for seed %s; searching", seed)
    for cand in range(1, D + 1):
        if math.gcd(cand, D) == 1 and _identity_holds(seed, D, cand, sample):
            return CanonicalSeed(D, cand, cases, fallback_used=True)
    raise ConstructionError(f"no V in [1, {D}] satisfies the gcd identity for seed {seed}")


def check_equivalent(seed1: SeedPair, seed2: SeedPair, depth: int = DEFAULT_VERIFY_DEPTH,
                     *, depth_cap: int = DEFAULT_DEPTH_CAP) -> EquivalenceReport:
    """Compare reduction factors position by position through ``depth``.

    Passing is bounded evidence only; nothing is claimed beyond ``depth``.
    """
    rows1 = iter_rows(seed1, depth, depth_cap=depth_cap)
    rows2 = iter_rows(seed2, depth, depth_cap=depth_cap)
    for r1, r2 in zip(rows1, rows2):
        for i, (g1, g2) in enumerate(zip(r1.reductions, r2.reductions)):
            if g1 != g2:
                return EquivalenceReport(depth, False, (r1.depth, i, g1, g2))
    return EquivalenceReport(depth, True)
