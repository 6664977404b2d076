"""Points of the projective plane and the ideals they define.

For a finite set of points the m-th symbolic power of its radical ideal is
the ideal of forms vanishing to order at least m at every point.  The
associated primes of a radical point ideal are exactly the point primes, so
the symbolic power is computed as the intersection of the m-th powers of the
point ideals; ``vanishing_order_at_least`` checks the same property through
partial derivatives and serves as an independent oracle.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from gmpy2 import mpq

from .arith import QQ, QQW, W, Field, format_coefficient
from .ideal import Ideal, ideal_intersect_many, ideal_power
from .linalg import rank
from .poly import (
    ParseError,
    Polynomial,
    RingDescriptor,
    all_monomials_upto,
    is_cyclotomic_text,
    monomials_of_degree,
    parse_coefficient,
    product,
)

log = logging.getLogger(__name__)

VARIABLES = ("x", "y", "z")
OMEGA = W
OMEGA2 = W * W  # -1 - w

RANDOM_BOUND = 50
RANDOM_RETRIES = 1000


def plane_ring(field_: Field) -> RingDescriptor:
    return RingDescriptor(VARIABLES, field_)


@dataclass(frozen=True)
class ProjectivePoint:
    """A point ``(c0 : c1 : c2)``, stored with its first nonzero coordinate equal to 1."""

    coords: tuple
    field: Field = QQW

    def __post_init__(self):
        coords = tuple(self.field(c) for c in self.coords)
        if len(coords) != 3:
            raise ValueError("points of P^2 have three coordinates")
        pivot = next((c for c in coords if c), None)
        if pivot is None:
            raise ValueError("(0 : 0 : 0) is not a projective point")
        inv = self.field.inv(pivot)
        object.__setattr__(self, "coords", tuple(c * inv for c in coords))

    def representative(self, chart: int | None = None) -> tuple:
        """Affine representative with coordinate ``chart`` scaled to 1."""
        if chart is None:
            return self.coords
        c = self.coords[chart]
        if not c:
            raise ValueError(f"point {self} is not in chart {chart}")
        inv = self.field.inv(c)
        return tuple(x * inv for x in self.coords)

    def charts(self) -> list[int]:
        return [i for i, c in enumerate(self.coords) if c]

    def format(self) -> str:
        return " : ".join(format_coefficient(c) for c in self.coords)

    def __str__(self):
        return f"({self.format()})"


def point(*coords, field: Field = QQW) -> ProjectivePoint:
    return ProjectivePoint(tuple(coords), field)


@dataclass(frozen=True)
class Configuration:
    """A finite set of distinct points, all over one field."""

    points: tuple[ProjectivePoint, ...]
    field: Field = QQW

    def __post_init__(self):
        pts = tuple(
            p if p.field == self.field else ProjectivePoint(p.coords, self.field)
            for p in self.points
        )
        seen = set()
        for p in pts:
            if p.coords in seen:
                raise ValueError(f"duplicate point {p}")
            seen.add(p.coords)
        object.__setattr__(self, "points", pts)

    @property
    def ring(self) -> RingDescriptor:
        return plane_ring(self.field)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def format(self) -> str:
        return "\n".join(p.format() for p in self.points) + "\n"


@dataclass(frozen=True)
class LineForm:
    """A nonzero linear form ``a*x + b*y + c*z``, normalized to leading coefficient 1."""

    poly: Polynomial

    def __post_init__(self):
        p = self.poly
        if p.ring.nvars != 3 or not p or not p.is_homogeneous() or p.degree != 1:
            raise ValueError(f"{p} is not a linear form in three variables")
        object.__setattr__(self, "poly", p.monic())

    @classmethod
    def from_coefficients(cls, coeffs: Sequence, field_: Field = QQW) -> LineForm:
        ring = plane_ring(field_)
        return cls(sum((v * c for v, c in zip(ring.gens(), coeffs)), ring.zero()))

    @property
    def coefficients(self) -> tuple:
        return tuple(self.poly.coefficient(m) for m in ((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def vanishes_at(self, p: ProjectivePoint) -> bool:
        return not self.poly.evaluate(p.coords)

    def __str__(self):
        return self.poly.format()


# -- ideals of points --------------------------------------------------------

def point_ideal(p: ProjectivePoint, ring: RingDescriptor | None = None) -> Ideal:
    """Prime ideal of ``p``: the 2x2 minors of ``[[x, y, z], coords]``."""
    ring = ring or plane_ring(p.field)
    x, y, z = ring.gens()
    a, b, c = p.coords
    return Ideal(ring, [x * b - y * a, x * c - z * a, y * c - z * b])


def radical_ideal(c: Configuration) -> Ideal:
    if not len(c):
        raise ValueError("empty configuration")
    return ideal_intersect_many([point_ideal(p, c.ring) for p in c])


def fat_point_ideal(c: Configuration, multiplicities: Sequence[int]) -> Ideal:
    """Intersection of ``I(P_i)^{m_i}``."""
    if not len(c):
        raise ValueError("empty configuration")
    if len(multiplicities) != len(c) or any(m < 1 for m in multiplicities):
        raise ValueError("need one positive multiplicity per point")
    return ideal_intersect_many(
        [ideal_power(point_ideal(p, c.ring), m) for p, m in zip(c, multiplicities)]
    )


def symbolic_power(c: Configuration, m: int) -> Ideal:
    if m < 1:
        raise ValueError("symbolic_power needs m >= 1")
    if m == 1:
        return radical_ideal(c)
    return fat_point_ideal(c, [m] * len(c))


def vanishing_order_at_least(f: Polynomial, p: ProjectivePoint, m: int, chart: int | None = None) -> bool:
    """True iff every partial derivative of ``f`` of order below ``m`` vanishes at ``p``.

    Each homogeneous component is tested separately, which makes the answer
    independent of the affine representative chosen for ``p``.
    """
    if m < 1:
        raise ValueError("m must be positive")
    pt = p.representative(chart if chart is not None else p.charts()[0])
    for comp in f.homogeneous_components().values():
        for alpha in all_monomials_upto(3, m - 1):
            d = comp
            for var, k in enumerate(alpha):
                if k:
                    d = d.derivative(var, k)
            if d and d.evaluate(pt):
                return False
    return True


def vanishing_conditions_dim(c: Configuration, m: int, t: int) -> int:
    """Dimension of the degree-``t`` forms of multiplicity >= ``m`` at every point of ``c``.

    Computed by exact rank of the derivative-condition matrix; no Groebner
    bases are involved.
    """
    if t < 0:
        return 0
    columns = list(monomials_of_degree(3, t))
    rows = []
    for p in c:
        pt = p.coords
        for alpha in all_monomials_upto(3, m - 1):
            row = {}
            for col in columns:
                if any(e < a for e, a in zip(col, alpha)):
                    continue
                val = c.field.one
                for e, a, v in zip(col, alpha, pt):
                    val = val * _falling(e, a) * v ** (e - a) if e - a else val * _falling(e, a)
                if val:
                    row[col] = val
            rows.append(row)
    return len(columns) - rank(rows, columns)


def _falling(e: int, a: int) -> int:
    out = 1
    for j in range(a):
        out *= e - j
    return out


# -- lines --------------------------------------------------------------------

def line_through(p: ProjectivePoint, q: ProjectivePoint) -> LineForm:
    if p.field != q.field:
        raise ValueError("points over different fields")
    if p == q:
        raise ValueError("a line needs two distinct points")
    (a1, a2, a3), (b1, b2, b3) = p.coords, q.coords
    cross = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    return LineForm.from_coefficients(cross, p.field)


def lines_meet(l1: LineForm, l2: LineForm) -> ProjectivePoint:
    (a1, a2, a3), (b1, b2, b3) = l1.coefficients, l2.coefficients
    cross = (a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)
    if not any(cross):
        raise ValueError(f"lines {l1} and {l2} coincide")
    return ProjectivePoint(cross, l1.poly.ring.field)


def product_of_lines(lines: Sequence[LineForm | Polynomial]) -> Polynomial:
    lines = list(lines)
    if not lines:
        raise ValueError("empty list of lines")
    return product(l.poly if isinstance(l, LineForm) else l for l in lines)


def incidence_matrix(c: Configuration, lines: Sequence[LineForm]) -> list[list[int]]:
    """Rows are points, columns are lines; entry 1 iff the point is on the line."""
    return [[int(l.vanishes_at(p)) for l in lines] for p in c]


# -- configuration families -----------------------------------------------------

def dual_hesse_config() -> Configuration:
    e, e2 = OMEGA, OMEGA2
    rows = [
        (1, 0, 0), (0, 1, 0), (0, 0, 1),
        (1, 1, 1), (1, e, e2), (1, e2, e),
        (e, 1, 1), (1, e, 1), (1, 1, e),
        (e2, 1, 1), (1, e2, 1), (1, 1, e2),
    ]
    return Configuration(tuple(ProjectivePoint(r, QQW) for r in rows), QQW)


def dual_hesse_lines() -> list[LineForm]:
    ring = plane_ring(QQW)
    x, y, z = ring.gens()
    e, e2 = OMEGA, OMEGA2
    forms = [
        x - y, x - z, y - z,
        x - y * e, x - z * e, y - z * e,
        x - y * e2, x - z * e2, y - z * e2,
    ]
    return [LineForm(f) for f in forms]


def hesse_nonic(ring: RingDescriptor | None = None) -> Polynomial:
    """``x^6y^3 - x^3y^6 - x^6z^3 + y^6z^3 + x^3z^6 - y^3z^6``."""
    ring = ring or plane_ring(QQW)
    return ring.parse("x^6*y^3 - x^3*y^6 - x^6*z^3 + y^6*z^3 + x^3*z^6 - y^3*z^6")


def default_star_lines(s: int) -> list[LineForm]:
    """``x + i*y + i^2*z`` for ``i = 1..s``; Vandermonde, so no three are concurrent."""
    return [LineForm.from_coefficients((1, i, i * i), QQ) for i in range(1, s + 1)]


def _det3(rows) -> object:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def star_configuration(s: int, lines: Sequence[LineForm] | None = None) -> Configuration:
    """Pairwise intersection points of ``s`` lines, no three of them concurrent."""
    if s < 2:
        raise ValueError("a star configuration needs s >= 2")
    lines = list(lines) if lines is not None else default_star_lines(s)
    if len(lines) != s:
        raise ValueError(f"expected {s} lines, got {len(lines)}")
    field_ = lines[0].poly.ring.field
    for l1, l2 in itertools.combinations(lines, 2):
        if l1.poly == l2.poly:
            raise ValueError(f"repeated line {l1}")
    for trio in itertools.combinations(lines, 3):
        if not _det3([l.coefficients for l in trio]):
            raise ValueError("three of the lines are concurrent: " + ", ".join(map(str, trio)))
    pts = [lines_meet(l1, l2) for l1, l2 in itertools.combinations(lines, 2)]
    return Configuration(tuple(pts), field_)


def random_rational_config(k: int, seed: int, bound: int = RANDOM_BOUND) -> Configuration:
    """``k`` distinct points with coordinates ``p/q``, ``|p| <= bound``, ``1 <= q <= bound``."""
    if k < 1:
        raise ValueError("k must be positive")
    rng = random.Random(seed)
    pts: list[ProjectivePoint] = []
    seen = set()
    for _ in range(RANDOM_RETRIES):
        if len(pts) == k:
            break
        coords = tuple(
            mpq(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(3)
        )
        if not any(coords):
            continue
        p = ProjectivePoint(coords, QQ)
        if p.coords in seen:
            continue
        seen.add(p.coords)
        pts.append(p)
    else:
        if len(pts) < k:
            raise RuntimeError(f"could not draw {k} distinct points in {RANDOM_RETRIES} tries")
    return Configuration(tuple(pts), QQ)


# -- point files ----------------------------------------------------------------

class PointFileError(ValueError):
    pass


def parse_points_text(text: str) -> Configuration:
    """Parse ``c0 : c1 : c2`` lines; ``#`` starts a comment.  Any ``w`` selects QQ(w)."""
    body = [line.split("#", 1)[0] for line in text.splitlines()]
    field_ = QQW if any(is_cyclotomic_text(line) for line in body) else QQ
    pts: list[ProjectivePoint] = []
    where: dict[tuple, int] = {}
    for lineno, line in enumerate(body, 1):
        if not line.strip():
            continue
        parts = line.split(":")
        if len(parts) != 3:
            raise PointFileError(f"line {lineno}: expected 'c0 : c1 : c2', got {line.strip()!r}")
        try:
            coords = tuple(parse_coefficient(part.strip(), field_) for part in parts)
            p = ProjectivePoint(coords, field_)
        except (ParseError, ValueError, ZeroDivisionError) as exc:
            raise PointFileError(f"line {lineno}: {exc}") from None
        if p.coords in where:
            raise PointFileError(f"line {lineno}: duplicate of the point on line {where[p.coords]}")
        where[p.coords] = lineno
        pts.append(p)
    if not pts:
        raise PointFileError("no points in file")
    return Configuration(tuple(pts), field_)


def format_points(c: Configuration, header: Iterable[str] = ()) -> str:
    lines = [f"# {h}" for h in header]
    return "\n".join(lines + [p.format() for p in c]) + "\n"
