"""Contact profiles against a smooth plane curve and their exact reduction.

A profile records, for a rational curve of degree d and a fixed smooth
divisor of degree delta >= 3, how many specified (alpha) and unspecified
(beta) contacts of each order are imposed.  Trading one free plane point
for a specified contact expands a profile into an integer combination of
profiles with one fewer unspecified contact; iterating drives any profile
to terminal profiles with zero free points.  The reduction is symbolic and
valid for every delta; numeric evaluation is available for the cubic,
where profiles supported on contact orders 1 and 2 map onto the closed
form of :mod:`tangenttab.tangency`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .combinatorics import IndexSequence
from .errors import (
    NotEvaluable,
    NotReducible,
    ProfileMismatch,
    RangeError,
    UnsupportedOrder,
)
from .kcoeff import KTable, NormalizationTable
from .tangency import TangencyProblem, count


def expected_dimension(delta: int, d: int, n: int) -> int:
    """Expected dimension of the space of maps: d*(3 - delta) + n - 1.

    Specialized to profiles whose contact orders exhaust the full
    intersection degree d*delta, which kills the defect term.
    """
    if delta < 3:
        raise RangeError(f"divisor degree must be >= 3: {delta}")
    if d < 1:
        raise RangeError(f"curve degree must be positive: {d}")
    if n < 0:
        raise RangeError(f"marking count must be nonnegative: {n}")
    return d * (3 - delta) + n - 1


@dataclass(frozen=True)
class ContactProfile:
    """Degree data plus specified/unspecified contact sequences.

    A profile that accounts for every intersection point with the divisor
    satisfies weight(alpha) + weight(beta) == d * delta.  The identity is
    checked at evaluation boundaries (where it is load-bearing) rather
    than at construction, so partially specified profiles can still be
    manipulated symbolically; :attr:`weight_consistent` reports it.
    """

    d: int
    delta: int
    alpha: IndexSequence
    beta: IndexSequence

    def __post_init__(self) -> None:
        if self.delta < 3:
            raise RangeError(f"divisor degree must be >= 3: {self.delta}")
        if self.d < 1:
            raise RangeError(f"curve degree must be positive: {self.d}")

    @property
    def markings(self) -> int:
        return self.alpha.norm + self.beta.norm

    @property
    def weight_consistent(self) -> bool:
        return self.alpha.weight + self.beta.weight == self.d * self.delta

    def __str__(self) -> str:
        return f"d={self.d} delta={self.delta} alpha={self.alpha} beta={self.beta}"


def free_points(profile: ContactProfile) -> int:
    """Free plane-point conditions: expected dimension minus |alpha|.

    For delta = 3 this reduces to |beta| - 1 and agrees with the t
    parameter of the cubic closed form.
    """
    e = expected_dimension(profile.delta, profile.d, profile.markings)
    return e - profile.alpha.norm


def hypothesis_readings_disagree(profile: ContactProfile) -> bool:
    """Whether the e - |alpha| and e - I(alpha) reducibility readings differ.

    The two readings coincide unless alpha carries contacts of order >= 2
    and the thresholds straddle zero; flagged for reports rather than
    silently resolved.
    """
    e = expected_dimension(profile.delta, profile.d, profile.markings)
    return (e - profile.alpha.norm > 0) != (e - profile.alpha.weight > 0)


class LinearCombination:
    """Integer-weighted formal sum of contact profiles.

    Zero coefficients are never stored; profiles compare by value.  Treat
    instances as immutable once returned from the reducer (they are cached).
    """

    def __init__(self, terms: Mapping[ContactProfile, int] | None = None) -> None:
        self._terms: dict[ContactProfile, int] = {}
        if terms:
            for profile, coeff in terms.items():
                self.add_term(profile, coeff)

    def add_term(self, profile: ContactProfile, coeff: int) -> None:
        if not coeff:
            return
        new = self._terms.get(profile, 0) + coeff
        if new:
            self._terms[profile] = new
        else:
            del self._terms[profile]

    def add_scaled(self, other: LinearCombination, coeff: int) -> None:
        for profile, c in other.items():
            self.add_term(profile, coeff * c)

    def items(self) -> Iterator[tuple[ContactProfile, int]]:
        return iter(self._terms.items())

    def sorted_items(self) -> list[tuple[ContactProfile, int]]:
        return sorted(
            self._terms.items(),
            key=lambda kv: (kv[0].d, kv[0].delta, kv[0].alpha.entries, kv[0].beta.entries),
        )

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self._terms == other._terms

    def __repr__(self) -> str:
        parts = [f"{c}*({p})" for p, c in self.sorted_items()]
        return " + ".join(parts) if parts else "0"


def expand_once(profile: ContactProfile) -> LinearCombination:
    """Trade one free point for one specified contact.

    Returns the combination sum over orders k with beta_k > 0 of
    k * (alpha + e_k, beta - e_k).  Requires a free point to trade;
    a profile with none raises NotReducible.
    """
    if free_points(profile) <= 0:
        raise NotReducible(f"no free points to expand at {profile}")
    combo = LinearCombination()
    for k, _ in profile.beta.support():
        combo.add_term(
            ContactProfile(
                profile.d,
                profile.delta,
                profile.alpha.add_unit(k),
                profile.beta.remove_unit(k),
            ),
            k,
        )
    return combo


@lru_cache(maxsize=None)
def reduce_to_terminal(profile: ContactProfile) -> LinearCombination:
    """Iterate the expansion until every term has zero free points.

    Each expansion step is a forced identity, so the normal form is
    independent of expansion order; coefficients multiply along paths and
    add across them.  Terms with free_points <= 0 are returned untouched
    (profiles below zero admit no expansion and no identity applies).
    """
    if free_points(profile) <= 0:
        return LinearCombination({profile: 1})
    # With delta >= 3, a positive free-point count forces |beta| >= 2, so
    # the expansion below is never an empty sum.
    assert profile.beta, f"free points with empty beta at {profile}"
    combo = LinearCombination()
    for child, coeff in expand_once(profile).items():
        combo.add_scaled(reduce_to_terminal(child), coeff)
    return combo


def evaluate_cubic_profile(
    profile: ContactProfile,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> int:
    """Numeric value of a cubic profile supported on contact orders 1, 2.

    Maps (alpha, beta) = ((a, b), (m, c)) onto the (d, a, b, c) closed
    form; the transverse count m is pinned by the weight bookkeeping.
    """
    if profile.delta != 3:
        raise NotEvaluable(
            f"no closed form is available for divisor degree {profile.delta}"
        )
    if profile.alpha.max_order > 2 or profile.beta.max_order > 2:
        raise UnsupportedOrder(
            f"cubic evaluation supports contact orders 1 and 2 only: {profile}"
        )
    a, b = profile.alpha.entry(1), profile.alpha.entry(2)
    m, c = profile.beta.entry(1), profile.beta.entry(2)
    if m != 3 * profile.d - a - 2 * b - 2 * c:
        raise ProfileMismatch(f"transverse contact count off at {profile}")
    return count(TangencyProblem(profile.d, a, b, c), f, table)


def evaluate_by_reduction(
    profile: ContactProfile,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> int:
    """Evaluate a cubic profile through its terminal normal form.

    Independent route to the same number as :func:`evaluate_cubic_profile`:
    reduce first, then evaluate each terminal profile (all at zero free
    points) with the closed form.
    """
    total = 0
    for terminal, coeff in reduce_to_terminal(profile).sorted_items():
        total += coeff * evaluate_cubic_profile(terminal, f, table)
    return total


def cubic_profile(d: int, a: int, b: int, c: int) -> ContactProfile:
    """The cubic contact profile ((a, b), (3d-a-2b-2c, c))."""
    m = 3 * d - a - 2 * b - 2 * c
    if m < 0:
        raise ProfileMismatch(
            f"(d={d}, a={a}, b={b}, c={c}) leaves a negative transverse count"
        )
    return ContactProfile(d, 3, IndexSequence((a, b)), IndexSequence((m, c)))


_PROFILE_RE = re.compile(
    r"^\s*d=(?P<d>\d+)\s+delta=(?P<delta>\d+)\s+"
    r"alpha=(?P<alpha>\[[0-9,\s]*\])\s+beta=(?P<beta>\[[0-9,\s]*\])\s*$"
)


def parse_profile(literal: str) -> ContactProfile:
    """Parse the literal syntax ``d=2 delta=3 alpha=[0,2] beta=[1,1]``."""
    match = _PROFILE_RE.match(literal)
    if not match:
        raise ValueError(f"bad profile literal: {literal!r}")
    return ContactProfile(
        int(match.group("d")),
        int(match.group("delta")),
        IndexSequence(tuple(json.loads(match.group("alpha")))),
        IndexSequence(tuple(json.loads(match.group("beta")))),
    )
