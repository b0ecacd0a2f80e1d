"""Independent low-degree geometric oracles.

These count classical configurations with exact linear algebra and
univariate elimination: conics through points with prescribed tangent
flags, tangent lines to a plane cubic from a point, and tangent members of
a pencil of conics.  Nothing here touches the recursion layers, so the
counts calibrate and cross-check them from the outside.

All root counting is over the complex numbers: a squarefree polynomial of
degree n has exactly n distinct roots, so counting distinct roots of an
eliminant is a degree computation on its squarefree part, carried out
exactly over the rationals.  Points at infinity of a parameter line are
tracked by pairing each eliminant with its intended degree as a binary
form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import sympy
from sympy import Poly, Rational, symbols

from .errors import (
    CalibrationMismatch,
    DegenerateConfiguration,
    ExtraneousFactorAmbiguity,
    IdenticallyZeroEliminant,
)
from .kcoeff import (
    SHIPPED,
    SOLVED,
    KTable,
    NormalizationTable,
    solve_normalization,
)
from .kontsevich import kontsevich_number

_X, _Y, _S, _W, _U, _T = symbols("x y s w u t")

Point = tuple[Fraction, Fraction, Fraction]

# Homogeneous cubic monomials x^i y^j z^k, graded lexicographic in (i, j, k).
CUBIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
    (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3),
)

# Conic monomials x^2, xy, xz, y^2, yz, z^2.
CONIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
)


def _as_point(values: Sequence) -> Point:
    x, y, z = (Fraction(v) for v in values)
    if x == 0 and y == 0 and z == 0:
        raise ValueError("(0, 0, 0) is not a projective point")
    return (x, y, z)


@dataclass(frozen=True)
class PlaneCubic:
    """Homogeneous plane cubic with exact rational coefficients.

    Coefficients follow :data:`CUBIC_MONOMIALS`.  Smoothness is not
    certified up front; the elimination routines reject curves that
    collapse an eliminant to zero, which is how singular input surfaces.
    """

    coefficients: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(Fraction(c) for c in self.coefficients)
        if len(coeffs) != 10:
            raise ValueError(f"a plane cubic has 10 coefficients, got {len(coeffs)}")
        if not any(coeffs):
            raise ValueError("the cubic is identically zero")
        object.__setattr__(self, "coefficients", coeffs)

    def evaluate(self, point: Sequence) -> Fraction:
        x, y, z = (Fraction(v) for v in point)
        total = Fraction(0)
        for c, (i, j, k) in zip(self.coefficients, CUBIC_MONOMIALS):
            if c:
                total += c * x**i * y**j * z**k
        return total

    def gradient(self, point: Sequence) -> tuple[Fraction, Fraction, Fraction]:
        x, y, z = (Fraction(v) for v in point)
        gx = gy = gz = Fraction(0)
        for c, (i, j, k) in zip(self.coefficients, CUBIC_MONOMIALS):
            if not c:
                continue
            if i:
                gx += c * i * x ** (i - 1) * y**j * z**k
            if j:
                gy += c * j * x**i * y ** (j - 1) * z**k
            if k:
                gz += c * k * x**i * y**j * z ** (k - 1)
        return (gx, gy, gz)

    def affine_expr(self):
        """The dehomogenized polynomial in sympy symbols x, y (z = 1)."""
        expr = sympy.Integer(0)
        for c, (i, j, _) in zip(self.coefficients, CUBIC_MONOMIALS):
            if c:
                expr += Rational(c.numerator, c.denominator) * _X**i * _Y**j
        return sympy.expand(expr)


# ---------------------------------------------------------------------------
# Exact rational linear algebra
# ---------------------------------------------------------------------------


def _row_reduce(rows: list[list[Fraction]], ncols: int) -> tuple[int, list[tuple[Fraction, ...]]]:
    """Row-reduce over the rationals; return (rank, nullspace basis)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col]
        m[r] = [v / inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free_cols = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -m[prow][fc]
        basis.append(tuple(vec))
    return len(pivots), basis


def _conic_point_row(point: Point) -> list[Fraction]:
    x, y, z = point
    return [x * x, x * y, x * z, y * y, y * z, z * z]


def _conic_tangent_row(point: Point, direction: Point) -> list[Fraction]:
    """Directional derivative of each conic monomial at the point."""
    x, y, z = point
    vx, vy, vz = direction
    return [
        2 * x * vx,
        y * vx + x * vy,
        z * vx + x * vz,
        2 * y * vy,
        z * vy + y * vz,
        2 * z * vz,
    ]


def _conic_is_degenerate(coeffs: Sequence[Fraction]) -> bool:
    """Vanishing determinant of the symmetric matrix of the quadratic form."""
    a, b, c, d, e, f = coeffs
    half = Fraction(1, 2)
    m = [
        [a, half * b, half * c],
        [half * b, d, half * e],
        [half * c, half * e, f],
    ]
    det = (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )
    return det == 0


def conic_flag_count(
    points: Sequence[Sequence],
    flags: Sequence[tuple[Sequence, Sequence]],
) -> int:
    """Conics through the given points with prescribed tangent flags.

    Each flag is (point, direction): the conic must pass through the point
    with tangent line spanned by point and direction.  Point and flag
    conditions must total five rows (3 points + 1 flag, or 1 point + 2
    flags).  A full-rank system with an irreducible solution conic counts
    exactly 1; anything else is reported as a degeneracy, never as a count.
    """
    pts = [_as_point(p) for p in points]
    fls = [(_as_point(p), _as_point(v)) for p, v in flags]
    if len(pts) + 2 * len(fls) != 5:
        raise ValueError("point and flag conditions must total 5 linear rows")
    rows = [_conic_point_row(p) for p in pts]
    for p, v in fls:
        rows.append(_conic_point_row(p))
        rows.append(_conic_tangent_row(p, v))
    rank, kernel = _row_reduce(rows, 6)
    if rank != 5 or len(kernel) != 1:
        raise DegenerateConfiguration(f"flag system has rank {rank}, expected 5")
    if _conic_is_degenerate(kernel[0]):
        raise DegenerateConfiguration("the unique solution conic is a line pair")
    return 1


# ---------------------------------------------------------------------------
# Binary forms: eliminants in the homogeneous parameter [s : w]
# ---------------------------------------------------------------------------
#
# Every eliminant below is a homogeneous polynomial in (s, w), so the
# parameter line needs no affine chart: a squarefree binary form of degree
# n has exactly n distinct projective roots over the complex numbers, and
# shared roots are read off the gcd.


def _binary_form(expr) -> Poly:
    return Poly(sympy.expand(expr), _S, _W, domain="QQ")


def _distinct_roots(form: Poly) -> int:
    """Distinct projective roots of a nonzero binary form."""
    if form.is_zero:
        raise IdenticallyZeroEliminant("eliminant vanished identically")
    if form.total_degree() == 0:
        return 0
    return form.sqf_part().total_degree()


def _common_distinct_roots(f: Poly, g: Poly) -> int:
    """Distinct projective roots shared by two forms (a zero form has all)."""
    if f.is_zero and g.is_zero:
        raise IdenticallyZeroEliminant("both forms vanished identically")
    if f.is_zero:
        return _distinct_roots(g)
    if g.is_zero:
        return _distinct_roots(f)
    shared = f.gcd(g)
    return shared.sqf_part().total_degree() if shared.total_degree() > 0 else 0


def _frame_through(q: Point) -> tuple[Point, Point]:
    """Two standard basis points completing q to a projective frame."""
    basis = (
        (Fraction(1), Fraction(0), Fraction(0)),
        (Fraction(0), Fraction(1), Fraction(0)),
        (Fraction(0), Fraction(0), Fraction(1)),
    )
    for i in range(3):
        for j in range(i + 1, 3):
            e1, e2 = basis[i], basis[j]
            det = (
                q[0] * (e1[1] * e2[2] - e1[2] * e2[1])
                - q[1] * (e1[0] * e2[2] - e1[2] * e2[0])
                + q[2] * (e1[0] * e2[1] - e1[1] * e2[0])
            )
            if det != 0:
                return e1, e2
    raise ValueError(f"no frame through {q}")  # unreachable for a nonzero q


def _line_restriction_forms(cubic: PlaneCubic, q: Point, p0: Point, p1: Point):
    """Coefficients c_i(s, w) of u^(3-i) t^i in E(u*q + t*(w*p0 + s*p1)).

    The lines through q are parametrized projectively by [s : w]; c_i is a
    binary form of degree i (or zero).
    """
    coords = []
    for j in range(3):
        qj = Rational(q[j].numerator, q[j].denominator)
        p0j = Rational(p0[j].numerator, p0[j].denominator)
        p1j = Rational(p1[j].numerator, p1[j].denominator)
        coords.append(_U * qj + _T * (_W * p0j + _S * p1j))
    expr = sympy.Integer(0)
    for c, (i, j, k) in zip(cubic.coefficients, CUBIC_MONOMIALS):
        if c:
            expr += Rational(c.numerator, c.denominator) * coords[0] ** i * coords[1] ** j * coords[2] ** k
    expr = sympy.expand(expr)
    return [expr.coeff(_U, 3 - i).coeff(_T, i) for i in range(4)]


def tangent_lines_count(cubic: PlaneCubic, point: Sequence) -> int:
    """Lines through the point tangent to the cubic at a point other than it.

    Restricting the cubic to the moving line gives a binary cubic whose
    discriminant is a degree-6 form in the line parameter; its distinct
    roots are the tangent lines (6 for a point off a smooth cubic).  When
    the point lies on the cubic the base intersection splits off, leaving
    a quadratic residual with a degree-4 discriminant; lines whose double
    contact sits at the point itself (c1 = c2 = 0) are excluded, which
    yields 4 generically and 3 from an inflection point.
    """
    q = _as_point(point)
    p0, p1 = _frame_through(q)
    c0, c1, c2, c3 = _line_restriction_forms(cubic, q, p0, p1)
    if cubic.evaluate(q) != 0:
        disc = _binary_form(
            18 * c0 * c1 * c2 * c3
            - 4 * c1**3 * c3
            + c1**2 * c2**2
            - 4 * c0 * c2**3
            - 27 * c0**2 * c3**2
        )
        return _distinct_roots(disc)
    form1 = _binary_form(c1)
    form2 = _binary_form(c2)
    if form1.is_zero and form2.is_zero:
        raise DegenerateConfiguration("the point is a singular point of the cubic")
    residual_disc = _binary_form(c2**2 - 4 * c1 * c3)
    # A common root of c1 and c2 automatically kills the discriminant, so
    # the excluded lines are exactly the shared roots.
    return _distinct_roots(residual_disc) - _common_distinct_roots(form1, form2)


def _collinear(p1: Point, p2: Point, p3: Point) -> bool:
    det = (
        p1[0] * (p2[1] * p3[2] - p2[2] * p3[1])
        - p1[1] * (p2[0] * p3[2] - p2[2] * p3[0])
        + p1[2] * (p2[0] * p3[1] - p2[1] * p3[0])
    )
    return det == 0


def _conic_expr(coeffs: Sequence[Fraction]):
    expr = sympy.Integer(0)
    for c, (i, j, _) in zip(coeffs, CONIC_MONOMIALS):
        if c:
            expr += Rational(c.numerator, c.denominator) * _X**i * _Y**j
    return sympy.expand(expr)


def pencil_tangency_count(points: Sequence[Sequence], cubic: PlaneCubic) -> int:
    """Members of the pencil of conics through 4 points tangent to the cubic.

    The intersection of the member [s : w] with the cubic is projected to
    the x-line by a resultant in y; the discriminant of the resulting
    sextic is then a homogeneous binary form in (s, w).  A genuinely
    tangent member meets it with odd multiplicity (two intersection points
    merge, a square-root branch), while k distinct intersection points
    merely sharing an x-coordinate cross transversally and contribute the
    even multiplicity k*(k-1) (k = 3 whenever a degenerate member carries
    a line through the projection center).  The odd part of the squarefree
    decomposition is therefore exactly the tangency locus: 12 for generic
    input, the ramification count of the degree-6 map the pencil cuts on a
    genus-1 curve.  An odd multiplicity >= 3 means a tangency collides
    with projection junk and is reported, not guessed.
    """
    pts = [_as_point(p) for p in points]
    if len(pts) != 4:
        raise ValueError(f"a pencil needs exactly 4 base points, got {len(pts)}")
    for p in pts:
        if cubic.evaluate(p) == 0:
            raise DegenerateConfiguration(f"base point {p} lies on the cubic")
    for i in range(4):
        others = [pts[j] for j in range(4) if j != i]
        if _collinear(*others):
            raise DegenerateConfiguration("three base points are collinear")
    rank, kernel = _row_reduce([_conic_point_row(p) for p in pts], 6)
    if rank != 4 or len(kernel) != 2:
        raise DegenerateConfiguration(f"base-point system has rank {rank}, expected 4")
    member = _conic_expr(kernel[0]) * _S + _conic_expr(kernel[1]) * _W
    rho = sympy.resultant(cubic.affine_expr(), member, _Y)
    rho_poly = Poly(rho, _X)
    if rho_poly.degree() != 6:
        raise DegenerateConfiguration("x-projection of the intersection degenerates")
    phi = _binary_form(rho_poly.discriminant())
    if phi.is_zero:
        raise IdenticallyZeroEliminant("pencil discriminant vanished identically")
    if not phi.is_homogeneous:
        raise ExtraneousFactorAmbiguity("pencil eliminant failed to be a binary form")
    count = 0
    for factor, multiplicity in phi.sqf_list()[1]:
        if factor.total_degree() == 0 or multiplicity % 2 == 0:
            continue
        if multiplicity >= 3:
            raise ExtraneousFactorAmbiguity(
                f"multiplicity-{multiplicity} eliminant factor mixes a tangency "
                "with projection junk"
            )
        count += factor.total_degree()
    return count


# ---------------------------------------------------------------------------
# Seeded random configurations and trial drivers
# ---------------------------------------------------------------------------


def random_rational(rng: random.Random, bound: int = 10) -> Fraction:
    """Rational with numerator in [-bound, bound] and denominator in [1, bound]."""
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_affine_point(rng: random.Random, bound: int = 10) -> Point:
    return (random_rational(rng, bound), random_rational(rng, bound), Fraction(1))


def random_direction(rng: random.Random, bound: int = 10) -> Point:
    while True:
        a = Fraction(rng.randint(-bound, bound))
        b = Fraction(rng.randint(-bound, bound))
        if a or b:
            return (a, b, Fraction(0))


def random_cubic(rng: random.Random, bound: int = 10) -> PlaneCubic:
    while True:
        coeffs = tuple(random_rational(rng, bound) for _ in range(10))
        if any(coeffs):
            return PlaneCubic(coeffs)


def random_cubic_through(rng: random.Random, point: Point, bound: int = 10) -> PlaneCubic:
    """Random cubic containing the point, smooth there.

    The z^3 coefficient is solved from the others, so the point must have
    a nonzero last coordinate.
    """
    if point[2] == 0:
        raise ValueError("construction needs an affine point")
    while True:
        partial = [random_rational(rng, bound) for _ in range(9)]
        value = Fraction(0)
        for c, (i, j, k) in zip(partial, CUBIC_MONOMIALS[:9]):
            value += c * point[0] ** i * point[1] ** j * point[2] ** k
        coeffs = tuple(partial + [-value / point[2] ** 3])
        if not any(coeffs):
            continue
        cubic = PlaneCubic(coeffs)
        if any(cubic.gradient(point)):
            return cubic


@dataclass
class TrialSummary:
    """Counts from repeated seeded trials of one oracle."""

    oracle: str
    counts: list[int]
    degenerate: int

    @property
    def unanimous(self) -> bool:
        return len(set(self.counts)) <= 1

    def summary(self) -> str:
        values = sorted(set(self.counts))
        shown = values[0] if len(values) == 1 else values
        return (
            f"[{self.oracle}] trials={len(self.counts)} count={shown} "
            f"degenerate_draws={self.degenerate}"
        )


def _run_trials(oracle: str, trials: int, draw: Callable[[], int]) -> TrialSummary:
    counts: list[int] = []
    degenerate = 0
    attempts = 0
    while len(counts) < trials:
        attempts += 1
        if attempts > 20 * trials + 100:
            raise DegenerateConfiguration(
                f"{oracle}: too many degenerate draws ({degenerate})"
            )
        try:
            counts.append(draw())
        except DegenerateConfiguration:
            degenerate += 1
    return TrialSummary(oracle, counts, degenerate)


def run_conic_flag_trials(
    trials: int, seed: int, flags: int = 1, bound: int = 10
) -> TrialSummary:
    """Seeded sweep of the conic flag oracle with 1 or 2 flags."""
    if flags not in (1, 2):
        raise ValueError("a conic supports 1 or 2 flag conditions here")
    rng = random.Random(seed)

    def draw() -> int:
        pts = [random_affine_point(rng, bound) for _ in range(5 - 2 * flags)]
        fls = [(random_affine_point(rng, bound), random_direction(rng, bound)) for _ in range(flags)]
        return conic_flag_count(pts, fls)

    return _run_trials(f"conic-{flags}-flag", trials, draw)


def run_tangent_line_trials(
    trials: int, seed: int, on_curve: bool = False, bound: int = 6
) -> TrialSummary:
    """Seeded sweep of the tangent-line oracle, off or on the cubic."""
    rng = random.Random(seed)

    def draw() -> int:
        q = random_affine_point(rng, bound)
        if on_curve:
            cubic = random_cubic_through(rng, q, bound)
        else:
            cubic = random_cubic(rng, bound)
            while cubic.evaluate(q) == 0:
                cubic = random_cubic(rng, bound)
        return tangent_lines_count(cubic, q)

    name = "tangent-lines-on-curve" if on_curve else "tangent-lines"
    return _run_trials(name, trials, draw)


def run_pencil_trials(trials: int, seed: int, bound: int = 5) -> TrialSummary:
    """Seeded sweep of the pencil tangency oracle."""
    rng = random.Random(seed)

    def draw() -> int:
        cubic = random_cubic(rng, bound)
        pts = []
        while len(pts) < 4:
            p = random_affine_point(rng, bound)
            if cubic.evaluate(p) != 0:
                pts.append(p)
        return pencil_tangency_count(pts, cubic)

    return _run_trials("pencil-tangency", trials, draw)


# ---------------------------------------------------------------------------
# Calibration of the normalization table
# ---------------------------------------------------------------------------


@dataclass
class CalibrationEntry:
    d: int
    b: int
    value: Fraction
    provenance: str
    chain: str


@dataclass
class CalibrationResult:
    entries: list[CalibrationEntry]
    oracle_summaries: list[TrialSummary]
    table: NormalizationTable
    matches_shipped: bool

    def lines(self) -> list[str]:
        out = [s.summary() for s in self.oracle_summaries]
        for e in self.entries:
            out.append(f"f[{e.d},{e.b}] = {e.value}  ({e.chain})")
        out.append(f"shipped table reproduced: {'yes' if self.matches_shipped else 'NO'}")
        return out


def calibrate(trials: int = 100, seed: int = 20240) -> CalibrationResult:
    """Regenerate the shipped normalization table from the conic oracles.

    The two flag oracles pin K at (d, b) = (2, 1) and (2, 2) to 1; solving
    the recursion backwards then yields the degree-2 normalization entries.
    The degree-1 entries are the gauge choice and the recorded assumption
    that no degree <= 2 check can fix.  Every accepted oracle trial must
    count exactly 1, otherwise calibration refuses to proceed.
    """
    one_flag = run_conic_flag_trials(trials, seed, flags=1)
    two_flag = run_conic_flag_trials(trials, seed + 1, flags=2)
    for summary, key in ((one_flag, (2, 1)), (two_flag, (2, 2))):
        bad = [c for c in summary.counts if c != 1]
        if bad:
            raise CalibrationMismatch(
                f"{summary.oracle} produced counts {sorted(set(bad))} != 1; "
                f"cannot calibrate K{key}"
            )

    table = NormalizationTable()
    entries: list[CalibrationEntry] = []

    def record(d: int, b: int, value: Fraction, provenance: str, chain: str) -> None:
        table.set(d, b, value, provenance)
        entries.append(CalibrationEntry(d, b, Fraction(value), provenance, chain))

    record(1, 0, Fraction(1), SHIPPED, "gauge choice")
    record(1, 1, Fraction(1), SHIPPED, "recorded assumption; no degree<=2 check pins it")
    ktable = KTable()
    f20 = solve_normalization(2, 0, kontsevich_number(2), table, ktable)
    entries.append(
        CalibrationEntry(2, 0, f20, SOLVED, "solved against the degree-2 point count 1")
    )
    f21 = solve_normalization(2, 1, 1, table, ktable)
    entries.append(
        CalibrationEntry(
            2, 1, f21, SOLVED,
            f"solved from {one_flag.oracle} count 1 over {trials} trials",
        )
    )
    f22 = solve_normalization(2, 2, 1, table, ktable)
    entries.append(
        CalibrationEntry(
            2, 2, f22, SOLVED,
            f"solved from {two_flag.oracle} count 1 over {trials} trials",
        )
    )

    shipped = NormalizationTable.shipped()
    matches = all(
        shipped.get(e.d, e.b) == e.value for e in entries
    ) and len(entries) == len(list(shipped.stored_items()))
    return CalibrationResult(entries, [one_flag, two_flag], table, matches)
