"""Exact nonnegative rationals (with the projective point 1/0) and the small
number-theory toolkit the tree code leans on."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Union

__all__ = [
    "Fraction",
    "INFINITE",
    "SeedPair",
    "Factorization",
    "make_fraction",
    "parse_fraction",
    "mediant",
    "cross_determinant",
    "p_adic_valuation",
    "mod_inverse",
    "factorize",
    "is_prime",
]

_FRACTION_RE = re.compile(r"\A(\d+)/(\d+)\Z")


class _Infinite:
    """Sentinel for v_p(0). Compares greater than every int."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INFINITE = _Infinite()


@total_ordering
class Fraction:
    """A reduced fraction ``num/den`` with ``num, den >= 0``.

    ``1/0`` is allowed and orders above every finite value. Instances are
    immutable and hash/compare structurally on ``(num, den)``.
    """

    __slots__ = ("_num", "_den")

    def __init__(self, num: int, den: int = 1):
        if not isinstance(num, int) or not isinstance(den, int) or isinstance(num, bool) or isinstance(den, bool):
            raise TypeError(f"numerator and denominator must be int, got {num!r}/{den!r}")
        if num < 0 or den < 0:
            raise ValueError(f"negative fractions are not supported: {num}/{den}")
        if num == 0 and den == 0:
            raise ValueError("0/0 is not a fraction")
        g = math.gcd(num, den)
        object.__setattr__(self, "_num", num // g)
        object.__setattr__(self, "_den", den // g)

    @classmethod
    def _raw(cls, num: int, den: int) -> "Fraction":
        # caller guarantees gcd(num, den) == 1
        self = object.__new__(cls)
        object.__setattr__(self, "_num", num)
        object.__setattr__(self, "_den", den)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Fraction is immutable")

    @property
    def num(self) -> int:
        return self._num

    @property
    def den(self) -> int:
        return self._den

    @property
    def is_infinite(self) -> bool:
        return self._den == 0

    def __iter__(self):
        yield self._num
        yield self._den

    def __eq__(self, other):
        if isinstance(other, Fraction):
            return self._num == other._num and self._den == other._den
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, Fraction):
            return NotImplemented
        # cross multiplication is valid with 1/0 as +infinity
        return self._num * other._den < other._num * self._den

    def __hash__(self):
        return hash((self._num, self._den))

    def __repr__(self):
        return f"Fraction({self._num}, {self._den})"

    def __str__(self):
        return f"{self._num}/{self._den}"

    def __reduce__(self):
        return (Fraction, (self._num, self._den))


def make_fraction(num: int, den: int) -> Fraction:
    """Build the reduced fraction equal to ``num/den``; ``n/0`` becomes ``1/0``."""
    return Fraction(num, den)


def parse_fraction(text: str) -> Fraction:
    """Parse the canonical ``num/den`` form (digits, one slash, no spaces)."""
    m = _FRACTION_RE.match(text)
    if m is None:
        raise ValueError(f"malformed fraction {text!r}; expected 'num/den'")
    return Fraction(int(m.group(1)), int(m.group(2)))


def mediant(a: Fraction, b: Fraction) -> tuple[Fraction, int]:
    """Reduced mediant of ``a`` and ``b`` together with the factor removed."""
    n = a.num + b.num
    d = a.den + b.den
    g = math.gcd(n, d)
    return Fraction._raw(n // g, d // g), g


def cross_determinant(a: Fraction, b: Fraction) -> int:
    """``a.den * b.num - a.num * b.den``; positive exactly when ``a < b``."""
    return a.den * b.num - a.num * b.den


@dataclass(frozen=True)
class SeedPair:
    """Ordered starting pair ``left < right`` of a generalized tree."""

    left: Fraction
    right: Fraction
    det: int = field(init=False)

    def __post_init__(self):
        if not isinstance(self.left, Fraction) or not isinstance(self.right, Fraction):
            raise TypeError("seed endpoints must be Fraction instances")
        det = cross_determinant(self.left, self.right)
        if det < 1:
            raise ValueError(f"seed must satisfy left < right, got {self.left}, {self.right}")
        object.__setattr__(self, "det", det)

    @classmethod
    def parse(cls, text: str) -> "SeedPair":
        """Parse ``"a/b,c/d"``; ``inf`` is accepted for a right endpoint of 1/0."""
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"malformed seed {text!r}; expected 'a/b,c/d'")
        left = parse_fraction(parts[0])
        right = Fraction(1, 0) if parts[1] == "inf" else parse_fraction(parts[1])
        return cls(left, right)

    def __iter__(self):
        yield self.left
        yield self.right

    def __str__(self):
        return f"{self.left},{self.right}"

    def contains(self, target: Fraction) -> bool:
        return self.left <= target <= self.right


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def p_adic_valuation(p: int, n: int) -> Union[int, _Infinite]:
    """Exponent of the prime ``p`` in ``n``; ``INFINITE`` when ``n == 0``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 0:
        raise ValueError("valuation is defined here for n >= 0 only")
    if n == 0:
        return INFINITE
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def mod_inverse(a: int, m: int) -> int:
    """The unique ``b`` in ``[1, m-1]`` with ``a*b = 1 (mod m)``.

    Raises ``ValueError`` if ``a`` is not invertible modulo ``m``.
    """
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return pow(a, -1, m)


class Factorization(tuple):
    """Sorted ``((p, e), ...)`` prime-power decomposition of a positive int."""

    __slots__ = ()

    def __new__(cls, pairs=()):
        pairs = tuple((int(p), int(e)) for p, e in pairs)
        primes = [p for p, _ in pairs]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        for p, e in pairs:
            if e < 1 or not is_prime(p):
                raise ValueError(f"bad factor {p}^{e}")
        return super().__new__(cls, pairs)

    @property
    def value(self) -> int:
        out = 1
        for p, e in self:
            out *= p**e
        return out

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self]


def factorize(n: int) -> Factorization:
    """Trial-division factorization; ``factorize(1)`` is empty."""
    if n < 1:
        raise ValueError("can only factor positive integers")
    pairs = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            pairs.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return Factorization(pairs)
