"""Exact combinatorial primitives shared by every counting layer.

Everything here is integer or rational arithmetic with no floating point:
binomial coefficients with an explicit vanishing convention, finitely
supported contact-multiplicity sequences, and the forward difference
operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator


def binom(n: int, k: int) -> int:
    """Binomial coefficient C(n, k), equal to 0 unless 0 <= k <= n.

    The recursion kernels index binomials with tops and bottoms that walk
    out of range; those terms must drop out as exact zeros.  Negative tops
    return 0 rather than the generalized (-1)^k value so that misuse shows
    up as a vanishing term instead of sign-oscillating garbage.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def forward_difference(values: Callable[[int], Fraction], t: int) -> Fraction:
    """First forward difference: values(t + 1) - values(t)."""
    return values(t + 1) - values(t)


@dataclass(frozen=True)
class IndexSequence:
    """Finitely supported multiplicity sequence indexed from 1.

    ``entry(i)`` counts contacts of order i.  Trailing zeros are stripped
    on construction, so sequences compare and hash by value:
    ``IndexSequence([2, 1]) == IndexSequence([2, 1, 0])``.
    """

    entries: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        cleaned = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in cleaned):
            raise ValueError(f"multiplicities must be nonnegative: {cleaned}")
        while cleaned and cleaned[-1] == 0:
            cleaned = cleaned[:-1]
        object.__setattr__(self, "entries", cleaned)

    @classmethod
    def unit(cls, k: int) -> IndexSequence:
        """The sequence e_k: a single contact of order k."""
        if k < 1:
            raise ValueError(f"contact order must be >= 1: {k}")
        return cls((0,) * (k - 1) + (1,))

    def entry(self, i: int) -> int:
        """Multiplicity of contact order i (0 off the support)."""
        if i < 1:
            raise ValueError(f"contact order must be >= 1: {i}")
        return self.entries[i - 1] if i <= len(self.entries) else 0

    @property
    def norm(self) -> int:
        """Total number of contacts."""
        return sum(self.entries)

    @property
    def weight(self) -> int:
        """Total intersection multiplicity: each entry weighted by its order."""
        return sum(i * e for i, e in enumerate(self.entries, start=1))

    @property
    def factorial(self) -> int:
        """Product of the factorials of all multiplicities."""
        out = 1
        for e in self.entries:
            out *= math.factorial(e)
        return out

    @property
    def max_order(self) -> int:
        return len(self.entries)

    def support(self) -> Iterator[tuple[int, int]]:
        """Yield (order, multiplicity) pairs with nonzero multiplicity."""
        for i, e in enumerate(self.entries, start=1):
            if e:
                yield i, e

    def add_unit(self, k: int) -> IndexSequence:
        """This sequence plus e_k."""
        if k < 1:
            raise ValueError(f"contact order must be >= 1: {k}")
        padded = list(self.entries) + [0] * max(0, k - len(self.entries))
        padded[k - 1] += 1
        return IndexSequence(tuple(padded))

    def remove_unit(self, k: int) -> IndexSequence:
        """This sequence minus e_k; the order-k entry must be positive."""
        if self.entry(k) < 1:
            raise ValueError(f"no order-{k} contact to remove from {self}")
        reduced = list(self.entries)
        reduced[k - 1] -= 1
        return IndexSequence(tuple(reduced))

    def __add__(self, other: IndexSequence) -> IndexSequence:
        width = max(len(self.entries), len(other.entries))
        return IndexSequence(
            tuple(self.entry(i) + other.entry(i) for i in range(1, width + 1))
        )

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"


def seq_stats(alpha: IndexSequence | Iterable[int]) -> tuple[int, int, int]:
    """(norm, weight, factorial) of a multiplicity sequence."""
    if not isinstance(alpha, IndexSequence):
        alpha = IndexSequence(tuple(alpha))
    return alpha.norm, alpha.weight, alpha.factorial
