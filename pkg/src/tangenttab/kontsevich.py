"""Counts of rational plane curves of degree d through 3d - 1 general points."""

from __future__ import annotations

import threading

from .combinatorics import binom
from .errors import RangeError


class KontsevichTable:
    """Append-only cache of the degree-indexed curve counts.

    Seeded with the degree-1 value (the unique line through two points).
    Entries are exact integers and are never rewritten; reads need no lock
    and duplicate concurrent computation is harmless because the recursion
    is pure.
    """

    def __init__(self) -> None:
        self._values: dict[int, int] = {1: 1}
        self._lock = threading.Lock()

    def known(self, d: int) -> bool:
        return d in self._values

    def __getitem__(self, d: int) -> int:
        return self._values[d]

    def store(self, d: int, value: int) -> None:
        with self._lock:
            old = self._values.get(d)
            if old is not None and old != value:
                raise ValueError(f"append-only cache rewrite at degree {d}: {old} -> {value}")
            self._values[d] = value

    def items(self) -> list[tuple[int, int]]:
        return sorted(self._values.items())


_shared_table = KontsevichTable()


def kontsevich_number(d: int, table: KontsevichTable | None = None) -> int:
    """Number of rational degree-d plane curves through 3d - 1 general points.

    For d >= 2 the count is the sum over ordered degree splits d = k + l
    (k, l >= 1) of

        N_k * N_l * k^2 * l * [l*C(3d-4, 3k-2) - k*C(3d-4, 3k-1)],

    filled bottom-up so each degree costs O(d) big-integer kernel terms.
    """
    if d < 1:
        raise RangeError(f"degree must be positive: {d}")
    tab = table if table is not None else _shared_table
    for n in range(2, d + 1):
        if tab.known(n):
            continue
        top = 3 * n - 4
        total = 0
        for k in range(1, n):
            l = n - k
            kernel = l * binom(top, 3 * k - 2) - k * binom(top, 3 * k - 1)
            if kernel:
                total += tab[k] * tab[l] * k * k * l * kernel
        tab.store(n, total)
    return tab[d]
