"""Tangency-count coefficients K_d^(lambda) and their normalization data.

The closed form for counts with tangencies factors through coefficients
K_d^(lambda) which satisfy a degree-splitting recursion.  That recursion is
stated against normalization coefficients f_d^(b) which are external DATA:
this engine ships only the entries that low-degree geometry pins down
(see :mod:`tangenttab.oracle`) and refuses to guess the rest.  Requesting a
coefficient whose normalization is unknown raises
:class:`~tangenttab.errors.UnknownNormalization`, never a fabricated number.

The b = 0 column of the normalization table is special: there the recursion
collapses to the plain degree-splitting recursion for curve counts through
points, which forces f_d^(0) = 1 for every d by induction once the degree-1
gauge f_1^(0) = 1 is chosen.  The table therefore resolves (d, 0) lookups
implicitly (tracking the gauge so that rescaled tables stay consistent),
while every other column must be populated explicitly.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .combinatorics import binom
from .errors import (
    CalibrationMismatch,
    RangeError,
    UnknownNormalization,
    ZeroNormalization,
)

# Provenance tags for normalization entries.
SHIPPED = "shipped-default"
USER_SUPPLIED = "user-supplied"
SOLVED = "solved"

# Provenance tags for K entries.
BASE_CASE = "base-case"
RECURSION = "recursion"
USER_OVERRIDE = "user-override"

_SHIPPED_ENTRIES: dict[tuple[int, int], Fraction] = {
    (1, 0): Fraction(1),
    (1, 1): Fraction(1),
    (2, 0): Fraction(1),
    (2, 1): Fraction(4),
    (2, 2): Fraction(1),
}

_BASE_CASES: dict[tuple[int, int], Fraction] = {
    (1, 0): Fraction(1),
    (1, 1): Fraction(1),
    (2, 3): Fraction(3, 4),
}


class NormalizationTable:
    """Map (d, b) -> f_d^(b), with provenance per entry.

    A stored value of exactly 0 encodes "undefined" (such factors kill
    their terms); an *absent* entry means the data is unknown and lookups
    raise :class:`UnknownNormalization`.  The b = 0 column defaults to
    gauge**d when not explicitly stored (gauge is 1 unless the table has
    been rescaled).
    """

    def __init__(self, zero_column_gauge: Fraction | int = 1) -> None:
        self._entries: dict[tuple[int, int], Fraction] = {}
        self._provenance: dict[tuple[int, int], str] = {}
        self._gauge = Fraction(zero_column_gauge)
        self._lock = threading.Lock()

    @classmethod
    def shipped(cls) -> NormalizationTable:
        """The shipped defaults: the five oracle-calibrated low-degree entries."""
        table = cls()
        for (d, b), value in _SHIPPED_ENTRIES.items():
            table.set(d, b, value, SHIPPED)
        return table

    def set(self, d: int, b: int, value: Fraction | int, provenance: str = USER_SUPPLIED) -> None:
        if d < 1 or b < 0:
            raise RangeError(f"normalization index out of range: ({d}, {b})")
        with self._lock:
            self._entries[(d, b)] = Fraction(value)
            self._provenance[(d, b)] = provenance

    def get(self, d: int, b: int) -> Fraction | None:
        stored = self._entries.get((d, b))
        if stored is not None:
            return stored
        if b == 0 and d >= 1:
            return self._gauge**d
        return None

    def lookup(self, d: int, b: int) -> Fraction:
        value = self.get(d, b)
        if value is None:
            raise UnknownNormalization(
                f"normalization coefficient f_{d}^({b}) is not in the table; "
                "supply it explicitly (e.g. via --ftable)"
            )
        return value

    def __contains__(self, key: tuple[int, int]) -> bool:
        return self.get(*key) is not None

    def provenance(self, d: int, b: int) -> str:
        stored = self._provenance.get((d, b))
        if stored is not None:
            return stored
        if b == 0 and d >= 1:
            return SHIPPED
        raise UnknownNormalization(f"no entry ({d}, {b})")

    def stored_items(self) -> Iterator[tuple[int, int, Fraction, str]]:
        """Explicitly stored entries as (d, b, value, provenance), sorted."""
        for (d, b) in sorted(self._entries):
            yield d, b, self._entries[(d, b)], self._provenance[(d, b)]

    def rescaled(self, x: Fraction | int) -> NormalizationTable:
        """New table with every f_d^(b) replaced by x**d * f_d^(b).

        This is the gauge action; it must leave every computable K value
        unchanged.  The implicit b = 0 column rescales through the gauge
        factor so the action is total.
        """
        x = Fraction(x)
        if x == 0:
            raise RangeError("gauge factor must be nonzero")
        table = NormalizationTable(zero_column_gauge=self._gauge * x)
        for d, b, value, prov in self.stored_items():
            table.set(d, b, value * x**d, prov)
        return table


class KTable:
    """Append-only cache of K_d^(lambda) values with provenance.

    The three base-case entries are preloaded.  Every insertion is checked
    against the exact integrality constraint: K_d^(lambda) is an integer
    unless 2*lambda == 3*d, in which case 4*K_d^(lambda) is an integer.
    Entries never change once written; a conflicting rewrite (including a
    user override that contradicts a base case) raises
    :class:`CalibrationMismatch`.
    """

    def __init__(self) -> None:
        self._entries: dict[tuple[int, int], Fraction] = {}
        self._provenance: dict[tuple[int, int], str] = {}
        self._lock = threading.Lock()
        for (d, lam), value in _BASE_CASES.items():
            self._entries[(d, lam)] = value
            self._provenance[(d, lam)] = BASE_CASE

    def __contains__(self, key: tuple[int, int]) -> bool:
        return key in self._entries

    def get(self, d: int, lam: int) -> Fraction:
        return self._entries[(d, lam)]

    def provenance(self, d: int, lam: int) -> str:
        return self._provenance[(d, lam)]

    def set(self, d: int, lam: int, value: Fraction | int, provenance: str) -> None:
        value = Fraction(value)
        _check_integrality(d, lam, value)
        with self._lock:
            old = self._entries.get((d, lam))
            if old is not None and old != value:
                raise CalibrationMismatch(
                    f"conflicting K value at (d={d}, lambda={lam}): {old} vs {value}"
                )
            if old is None:
                self._entries[(d, lam)] = value
                self._provenance[(d, lam)] = provenance

    def items(self) -> Iterator[tuple[int, int, Fraction, str]]:
        for (d, lam) in sorted(self._entries):
            yield d, lam, self._entries[(d, lam)], self._provenance[(d, lam)]


def _check_integrality(d: int, lam: int, value: Fraction) -> None:
    if 2 * lam != 3 * d:
        if value.denominator != 1:
            raise CalibrationMismatch(
                f"K coefficient (d={d}, lambda={lam}) = {value} must be an integer"
            )
    elif (4 * value).denominator != 1:
        raise CalibrationMismatch(
            f"K coefficient (d={d}, lambda={lam}) = {value} must be a quarter-integer"
        )


def alpha_factor(d1: int, b1: int, d2: int, b2: int) -> Fraction:
    """Rational weight of the second recursion sum.

        (3*d1 - 2*b1) * (3*d2 - 2*b2) * (3*d2 - 1) / (3*d2 * (3*d2 - 1 - b2))

    Returns exactly 0 when the denominator would vanish (the undefined
    cases are defined away as zero).
    """
    den = 3 * d2 * (3 * d2 - 1 - b2)
    if den == 0:
        return Fraction(0)
    return Fraction((3 * d1 - 2 * b1) * (3 * d2 - 2 * b2) * (3 * d2 - 1), den)


def _weighted(d: int, b: int, f: NormalizationTable, table: KTable) -> Fraction:
    """K_d^(b) * f_d^(b), with the out-of-range coefficient treated as 0.

    No curve can carry more than 3d/2 order-2 contacts, so K_d^(b) is 0
    whenever 2b > 3d; the normalization is looked up first so that a stored
    zero (the "undefined" encoding) kills the term without demanding the
    K recursion be computable.
    """
    if 2 * b > 3 * d:
        return Fraction(0)
    fval = f.lookup(d, b)
    if not fval:
        return Fraction(0)
    return k_coefficient(d, b, f, table) * fval


def recursion_rhs(d: int, b: int, f: NormalizationTable, table: KTable) -> Fraction:
    """Right-hand side of the recursion defining K_d^(b) * f_d^(b).

    Two sums over ordered splits d = d1 + d2 (d_i >= 1, b_i >= 0); the
    first distributes b = b1 + b2, the second b - 1 = b1 + b2 with the
    alpha_factor weight.  All binomials share the top 3d - 4 - b.
    """
    top = 3 * d - 4 - b
    total = Fraction(0)
    for d1 in range(1, d):
        d2 = d - d1
        for b1 in range(0, b + 1):
            b2 = b - b1
            kernel = (d1 * d1 * d2 * d2) * binom(top, 3 * d1 - 2 - b1) - (
                d1**3 * d2
            ) * binom(top, 3 * d1 - 1 - b1)
            if kernel:
                w1 = _weighted(d1, b1, f, table)
                if w1:
                    w2 = _weighted(d2, b2, f, table)
                    if w2:
                        total += w1 * w2 * kernel
        for b1 in range(0, b):
            b2 = b - 1 - b1
            alpha = alpha_factor(d1, b1, d2, b2)
            if not alpha:
                continue
            kernel = (
                2 * d1 * d2 * binom(top, 3 * d1 - 2 - b1)
                - d1 * d1 * binom(top, 3 * d1 - 1 - b1)
                - d2 * d2 * binom(top, 3 * d1 - 3 - b1)
            )
            if kernel:
                w1 = _weighted(d1, b1, f, table)
                if w1:
                    w2 = _weighted(d2, b2, f, table)
                    if w2:
                        total += alpha * w1 * w2 * kernel
    return total


def k_coefficient(
    d: int,
    lam: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> Fraction:
    """The coefficient K_d^(lambda), from base case, override, or recursion.

    Requires 0 <= 2*lambda <= 3*d.  Base cases and previously cached or
    overridden entries short-circuit; otherwise the recursion RHS is
    evaluated and divided by f_d^(lambda).  Raises UnknownNormalization if
    any required f entry is absent and ZeroNormalization if the divisor is
    the undefined-encoding zero.
    """
    if d < 1:
        raise RangeError(f"degree must be positive: {d}")
    if lam < 0 or 2 * lam > 3 * d:
        raise RangeError(f"no valid tangency problem has (d={d}, lambda={lam})")
    if f is None:
        f = NormalizationTable.shipped()
    if table is None:
        table = KTable()
    if (d, lam) in table:
        return table.get(d, lam)
    fval = f.lookup(d, lam)
    if fval == 0:
        raise ZeroNormalization(
            f"normalization f_{d}^({lam}) is the undefined-encoding zero; "
            f"K_{d}^({lam}) cannot be recovered from the recursion"
        )
    value = recursion_rhs(d, lam, f, table) / fval
    table.set(d, lam, value, RECURSION)
    return value


def solve_normalization(
    d: int,
    b: int,
    known_k: Fraction | int,
    f: NormalizationTable,
    table: KTable | None = None,
) -> Fraction:
    """Invert the recursion: f_d^(b) = RHS / K_d^(b) for a known K value.

    All lower-order normalization entries the RHS touches must already be
    present in ``f``.  The solved value is recorded in the table with
    provenance "solved" and returned.
    """
    known_k = Fraction(known_k)
    if known_k == 0:
        raise ZeroDivisionError("cannot solve a normalization against K = 0")
    if (d, b) in _BASE_CASES or d < 1 or b < 0 or 2 * b > 3 * d:
        raise RangeError(
            f"the recursion does not constrain f at (d={d}, b={b})"
        )
    if table is None:
        table = KTable()
    value = recursion_rhs(d, b, f, table) / known_k
    f.set(d, b, value, SOLVED)
    return value


# ---------------------------------------------------------------------------
# Table file formats (one entry per line, '#' comments):
#   normalization:  d b num/den
#   K override:     d lambda num/den
# ---------------------------------------------------------------------------


def _parse_table_lines(text: str) -> Iterator[tuple[int, int, Fraction]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(f"line {lineno}: expected 'd index num/den', got {raw!r}")
        try:
            yield int(fields[0]), int(fields[1]), Fraction(fields[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None


def load_normalization_file(
    path: str | Path, base: NormalizationTable | None = None
) -> NormalizationTable:
    """Read entries from a table file, overriding ``base`` (shipped defaults)."""
    table = base if base is not None else NormalizationTable.shipped()
    for d, b, value in _parse_table_lines(Path(path).read_text(encoding="utf-8")):
        table.set(d, b, value, USER_SUPPLIED)
    return table


def dump_normalization(table: NormalizationTable) -> str:
    lines = ["# normalization table: d b num/den"]
    for d, b, value, prov in table.stored_items():
        lines.append(f"{d} {b} {value.numerator}/{value.denominator}  # {prov}")
    return "\n".join(lines) + "\n"


def load_ktable_file(path: str | Path, base: KTable | None = None) -> KTable:
    """Read K overrides from a table file into ``base`` (or a fresh table)."""
    table = base if base is not None else KTable()
    for d, lam, value in _parse_table_lines(Path(path).read_text(encoding="utf-8")):
        table.set(d, lam, value, USER_OVERRIDE)
    return table
