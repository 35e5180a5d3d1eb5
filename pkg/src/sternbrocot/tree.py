"""Row-by-row construction of mediant trees from an arbitrary seed pair."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence, TypeVar

from .rational import Fraction, SeedPair, mediant

__all__ = [
    "DEFAULT_DEPTH_CAP",
    "DEFAULT_WARN_DEPTH",
    "ResourceCapError",
    "Row",
    "RowProjection",
    "expand",
    "generate",
    "iter_rows",
    "insert_sums",
    "project",
    "slice_inclusive",
    "stern_brocot_row",
]

DEFAULT_DEPTH_CAP = 24
DEFAULT_WARN_DEPTH = 20

T = TypeVar("T")


class ResourceCapError(RuntimeError):
    """Requested depth would materialize more rows than the cap allows."""


@dataclass(frozen=True)
class Row:
    depth: int
    entries: tuple[Fraction, ...]
    reductions: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        object.__setattr__(self, "reductions", tuple(self.reductions))
        if self.depth > 0 and len(self.reductions) != (len(self.entries) - 1) // 2:
            raise ValueError("one reduction factor is required per inserted mediant")

    @classmethod
    def from_seed(cls, seed: SeedPair) -> "Row":
        return cls(0, (seed.left, seed.right))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def inserted(self) -> tuple[Fraction, ...]:
        """Entries added at this depth (odd positions)."""
        return self.entries[1::2] if self.depth > 0 else ()


@dataclass(frozen=True)
class RowProjection:
    numerators: tuple[int, ...]
    denominators: tuple[int, ...]


def expand(row: Row) -> Row:
    """Copy every entry and insert the reduced mediant between each neighbour pair."""
    entries = row.entries
    out = [entries[0]]
    reductions = []
    for left, right in zip(entries, entries[1:]):
        m, g = mediant(left, right)
        out.append(m)
        out.append(right)
        reductions.append(g)
    return Row(row.depth + 1, tuple(out), tuple(reductions))


def _check_depth(depth: int, depth_cap: int, warn_depth: int) -> None:
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > depth_cap:
        raise ResourceCapError(
            f"depth {depth} exceeds the cap of {depth_cap} "
            f"({2**depth + 1} entries in the last row)"
        )
    if depth > warn_depth:
        warnings.warn(
            f"generating {2**depth + 1} entries at depth {depth}",
            ResourceWarning,
            stacklevel=3,
        )


def iter_rows(seed: SeedPair, depth: int, *, depth_cap: int = DEFAULT_DEPTH_CAP,
              warn_depth: int = DEFAULT_WARN_DEPTH):
    """Yield rows ``0..depth`` one at a time, keeping only the current row alive."""
    _check_depth(depth, depth_cap, warn_depth)
    row = Row.from_seed(seed)
    yield row
    for _ in range(depth):
        row = expand(row)
        yield row


def generate(seed: SeedPair, depth: int, *, depth_cap: int = DEFAULT_DEPTH_CAP,
             warn_depth: int = DEFAULT_WARN_DEPTH) -> list[Row]:
    """Rows ``0..depth`` of the tree grown from ``seed``.

    Raises :class:`ResourceCapError` when ``depth`` exceeds ``depth_cap``.
    """
    return list(iter_rows(seed, depth, depth_cap=depth_cap, warn_depth=warn_depth))


def stern_brocot_row(i: int, *, half: bool = True) -> Row:
    """The classical ``SB_i``: the ``[0, 1]`` half-sequence by default, or the
    full sequence ``0/1 ... 1/0`` with ``half=False``.

    The returned row keeps ``depth == i`` for both variants.
    """
    if half:
        return generate(SeedPair(Fraction(0, 1), Fraction(1, 1)), i)[-1]
    # SB_0 = 0/1, 1/1, 1/0 is one expansion of the pair (0/1, 1/0)
    row = generate(SeedPair(Fraction(0, 1), Fraction(1, 0)), i + 1)[-1]
    return Row(i, row.entries, row.reductions)


def insert_sums(xs: Sequence[int]) -> list[int]:
    """Interleave ``xs`` with the sums of neighbouring elements."""
    if not xs:
        raise ValueError("insert_sums needs a nonempty list")
    out = [xs[0]]
    for a, b in zip(xs, xs[1:]):
        out.append(a + b)
        out.append(b)
    return out


def project(row: Row) -> RowProjection:
    return RowProjection(
        tuple(f.num for f in row.entries),
        tuple(f.den for f in row.entries),
    )


def slice_inclusive(xs: Sequence[T], a: int, b: int) -> list[T]:
    """Elements ``a`` through ``b`` of ``xs``, both ends included."""
    if not 0 <= a <= b < len(xs):
        raise IndexError(f"slice [{a}, {b}] out of range for length {len(xs)}")
    return list(xs[a:b + 1])
