"""Counts of rational curves with first- and second-order contacts to a cubic.

The headline operation is :func:`count`: the number of rational degree-d
plane curves through ``a`` specified points of a smooth cubic, with ``b``
specified and ``c`` unspecified tangencies to it, through t = 3d-1-a-2b-c
general points of the plane.  The closed form is

    2^c * K_d^(b+c) * [C(t, c) + 2*C(t, c-1)],

together with polynomial views of the count as a function of t and a family
of exact structural identities used as verification suites.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .combinatorics import binom
from .errors import CalibrationMismatch, RangeError, UnknownNormalization
from .kcoeff import KTable, NormalizationTable, k_coefficient


@dataclass(frozen=True)
class TangencyProblem:
    """The data (d, a, b, c) of a cubic contact problem.

    d: curve degree; a: specified order-1 contacts; b: specified order-2
    contacts; c: unspecified order-2 contacts.  Out-of-range tuples are
    representable (their count is 0 by convention); use :attr:`is_valid`
    to distinguish "counts zero" from "poses no problem".
    """

    d: int
    a: int
    b: int
    c: int

    @property
    def is_valid(self) -> bool:
        return (
            self.d >= 1
            and self.a >= 0
            and self.b >= 0
            and self.c >= 0
            and self.a + 2 * self.b + 2 * self.c <= 3 * self.d
            and self.a + 2 * self.b + self.c <= 3 * self.d - 1
        )

    @property
    def free_points(self) -> int:
        """Number t of general plane points the problem imposes."""
        return 3 * self.d - 1 - self.a - 2 * self.b - self.c


def count(
    problem: TangencyProblem,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> int:
    """Evaluate the closed form for a tangency problem.

    Invalid problems count 0.  Valid ones must come out as nonnegative
    integers; anything else means the K/normalization data is inconsistent
    and raises CalibrationMismatch.
    """
    if not problem.is_valid:
        return 0
    kval = k_coefficient(problem.d, problem.b + problem.c, f, table)
    t = problem.free_points
    bracket = binom(t, problem.c) + 2 * binom(t, problem.c - 1)
    value = Fraction(2**problem.c) * kval * bracket
    if value.denominator != 1 or value < 0:
        raise CalibrationMismatch(
            f"count for {problem} evaluated to the non-count value {value}; "
            "the K table or normalization data is inconsistent"
        )
    return int(value)


def p_value(
    d: int,
    b: int,
    c: int,
    t: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> int:
    """The count as a function of the free-point parameter t.

    This is count(d, a, b, c) at a = 3d-1-2b-c-t; it vanishes outside the
    window max(0, c-1) <= t <= 3d-1-2b-c, which the zero conventions of
    the closed form produce on their own.
    """
    a = 3 * d - 1 - 2 * b - c - t
    return count(TangencyProblem(d, a, b, c), f, table)


def q_coefficients(
    d: int,
    b: int,
    c: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> tuple[Fraction, Fraction]:
    """Leading coefficients (alpha_0, alpha_1) of the polynomial view.

    On its window the count agrees with alpha_0*C(t, c) + alpha_1*C(t, c-1)
    where alpha_0 = 2^c * K_d^(b+c) and alpha_1 = 2*alpha_0; all further
    coefficients vanish.
    """
    kval = k_coefficient(d, b + c, f, table)
    alpha0 = Fraction(2**c) * kval
    return alpha0, 2 * alpha0


def q_value(
    d: int,
    b: int,
    c: int,
    t: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> Fraction:
    """Evaluate the degree-c polynomial view at an arbitrary integer t."""
    alpha0, alpha1 = q_coefficients(d, b, c, f, table)
    return alpha0 * binom(t, c) + alpha1 * binom(t, c - 1)


def gw_invariant(
    d: int,
    a: int,
    c: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> int:
    """Stack invariant matching the b = 0 counts: (3d-a-2c)! * count(d,a,0,c).

    The hypotheses d > 0, a, c >= 0, a + 2c <= 3d, a + c <= 3d - 1 are
    enforced; outside them the invariant is not defined.
    """
    if d < 1 or a < 0 or c < 0 or a + 2 * c > 3 * d or a + c > 3 * d - 1:
        raise RangeError(f"invariant hypotheses violated at (d={d}, a={a}, c={c})")
    return math.factorial(3 * d - a - 2 * c) * count(TangencyProblem(d, a, 0, c), f, table)


def valid_problems(d: int) -> Iterator[TangencyProblem]:
    """All valid (a, b, c) tuples for a fixed degree."""
    for b in range(0, 3 * d // 2 + 1):
        for c in range(0, (3 * d - 2 * b) // 2 + 1):
            for a in range(0, 3 * d - 2 * b - 2 * c + 1):
                problem = TangencyProblem(d, a, b, c)
                if problem.is_valid:
                    yield problem


# ---------------------------------------------------------------------------
# Verification suites
# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    """Outcome of an exhaustive identity sweep.

    ``checked`` holds the subjects that passed, ``failures`` human-readable
    mismatches, ``skipped`` subjects whose K data is unavailable (missing
    normalization entries are a data gap, not a failure).
    """

    suite: str
    dmax: int
    checked: list[tuple] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    skipped: list[tuple] = field(default_factory=list)

    def record(self, subject: tuple, lhs, rhs) -> None:
        if lhs == rhs:
            self.checked.append(subject)
        else:
            self.failures.append(f"{subject}: {lhs} != {rhs}")

    def skip(self, subject: tuple) -> None:
        self.skipped.append(subject)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return (
            f"[{self.suite}] dmax={self.dmax} checked={len(self.checked)} "
            f"failures={len(self.failures)} skipped={len(self.skipped)}"
        )


def _defaults(
    f: NormalizationTable | None, table: KTable | None
) -> tuple[NormalizationTable, KTable]:
    return (
        f if f is not None else NormalizationTable.shipped(),
        table if table is not None else KTable(),
    )


def verify_ch_identity(
    dmax: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> VerificationReport:
    """Check N(a,b,c) = N(a+1,b,c) + 2*N(a,b+1,c-1) wherever it applies.

    The identity holds at every valid tuple with a + 2b + c < 3d - 1; both
    sides involve the same K_d^(b+c), so a tuple is either fully checkable
    or skipped whole.
    """
    f, table = _defaults(f, table)
    report = VerificationReport("ch", dmax)
    for d in range(1, dmax + 1):
        for p in valid_problems(d):
            if p.a + 2 * p.b + p.c >= 3 * d - 1:
                continue
            subject = (d, p.a, p.b, p.c)
            try:
                lhs = count(p, f, table)
                rhs = count(TangencyProblem(d, p.a + 1, p.b, p.c), f, table) + 2 * count(
                    TangencyProblem(d, p.a, p.b + 1, p.c - 1), f, table
                )
            except UnknownNormalization:
                report.skip(subject)
                continue
            report.record(subject, lhs, rhs)
    return report


def verify_key_relation(
    dmax: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> VerificationReport:
    """Check N(a, b-1, 1) = 4 * N(a-1, b, 0) whenever a + 2b = 3d, a, b >= 1."""
    f, table = _defaults(f, table)
    report = VerificationReport("key", dmax)
    for d in range(1, dmax + 1):
        for b in range(1, (3 * d - 1) // 2 + 1):
            a = 3 * d - 2 * b
            if a < 1:
                continue
            subject = (d, a, b)
            try:
                lhs = count(TangencyProblem(d, a, b - 1, 1), f, table)
                rhs = 4 * count(TangencyProblem(d, a - 1, b, 0), f, table)
            except UnknownNormalization:
                report.skip(subject)
                continue
            report.record(subject, lhs, rhs)
    return report


def verify_delta(
    dmax: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> VerificationReport:
    """Check the difference identity P(t+1) - P(t) = 2 * P'(t).

    Here P = P_d^{b,c} and P' = P_d^{b+1,c-1}, over 0 <= t <= 3d-2-2b-c.
    The c = 0 column is included: there both sides are exactly zero on the
    stated range.
    """
    f, table = _defaults(f, table)
    report = VerificationReport("delta", dmax)
    for d in range(1, dmax + 1):
        for b in range(0, 3 * d // 2 + 2):
            for c in range(0, 3 * d - 2 * b + 2):
                tmax = 3 * d - 2 - 2 * b - c
                for t in range(0, tmax + 1):
                    subject = (d, b, c, t)
                    try:
                        lhs = p_value(d, b, c, t + 1, f, table) - p_value(d, b, c, t, f, table)
                        rhs = 2 * p_value(d, b + 1, c - 1, t, f, table)
                    except UnknownNormalization:
                        report.skip(subject)
                        continue
                    report.record(subject, lhs, rhs)
    return report


def verify_q_properties(
    dmax: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> VerificationReport:
    """Polynomial-view checks: vanishing, window agreement, and boundary.

    For each (d, b, c) with K_d^(b+c) in range: the count vanishes for
    0 <= t <= c-2; it agrees with the degree-c polynomial on the window
    max(0, c-1) <= t <= 3d-1-2b-c; alpha_1 = 2*alpha_0; and at c >= 1 the
    boundary relation Q_d^{b,c}(c-1) = 2^(c-1) * Q_d^{b+c-1,1}(0) holds.
    """
    f, table = _defaults(f, table)
    report = VerificationReport("q", dmax)
    for d in range(1, dmax + 1):
        for b in range(0, 3 * d // 2 + 1):
            for c in range(0, (3 * d - 2 * b) + 1):
                if 2 * (b + c) > 3 * d:
                    continue
                for t in range(0, max(0, c - 1)):
                    subject = (d, b, c, "vanishing", t)
                    try:
                        report.record(subject, p_value(d, b, c, t, f, table), 0)
                    except UnknownNormalization:
                        report.skip(subject)
                try:
                    alpha0, alpha1 = q_coefficients(d, b, c, f, table)
                except UnknownNormalization:
                    report.skip((d, b, c, "coefficients"))
                    continue
                report.record((d, b, c, "alpha-ratio"), alpha1, 2 * alpha0)
                for t in range(max(0, c - 1), 3 * d - 1 - 2 * b - c + 1):
                    subject = (d, b, c, "window", t)
                    report.record(
                        subject,
                        Fraction(p_value(d, b, c, t, f, table)),
                        q_value(d, b, c, t, f, table),
                    )
                if c >= 1:
                    subject = (d, b, c, "boundary")
                    report.record(
                        subject,
                        q_value(d, b, c, c - 1, f, table),
                        Fraction(2 ** (c - 1)) * q_value(d, b + c - 1, 1, 0, f, table),
                    )
    return report


def verify_integrality(
    dmax: int,
    f: NormalizationTable | None = None,
    table: KTable | None = None,
) -> VerificationReport:
    """Sweep every computable valid count and K entry for exact integrality.

    count() raises CalibrationMismatch on violations; here that is folded
    into the report so the whole sweep runs.
    """
    f, table = _defaults(f, table)
    report = VerificationReport("integrality", dmax)
    for d in range(1, dmax + 1):
        for p in valid_problems(d):
            subject = (d, p.a, p.b, p.c)
            try:
                value = count(p, f, table)
            except UnknownNormalization:
                report.skip(subject)
                continue
            except CalibrationMismatch as exc:
                report.failures.append(f"{subject}: {exc}")
                continue
            report.record(subject, value >= 0, True)
    # KTable.set enforces integrality on insertion, so every entry that got
    # this far is already conformant; re-assert for the report's tally.
    for d, lam, value, _ in table.items():
        check = value.denominator == 1 if 2 * lam != 3 * d else (4 * value).denominator == 1
        report.record(("K", d, lam), check, True)
    return report


SUITES = {
    "ch": verify_ch_identity,
    "key": verify_key_relation,
    "delta": verify_delta,
    "q": verify_q_properties,
    "integrality": verify_integrality,
}
