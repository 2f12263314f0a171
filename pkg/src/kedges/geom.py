"""Exact rational planar geometry kernel.

Points carry exact rational coordinates; the orientation predicate is the
sign of an exactly evaluated 2x2 determinant, so every downstream count
(side counts, convex-position tests, sweep orders) is exact.  There is
deliberately no floating-point fast path: the kernel stays small enough
to audit by eye.

The one unavoidably inexact operation is rotation by 2*pi/3 (irrational
cosine pair).  rotate_cw_2pi3 applies an exact *rational* linear map built
from a rational approximation of sqrt(3); callers that need combinatorial
guarantees re-verify them with exact predicates on the emitted points and
escalate the approximation precision on failure (see constructions).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import GeneralPositionError, InputError, PointFileError
from .rat import R, fmt, sqrt3_floor

DEFAULT_ROTATION_PRECISION = 10**12


@dataclass(frozen=True)
class Point:
    """Planar point with exact rational coordinates.

    The optional label is a display tag (construction bookkeeping such as
    "a_3" or "b''_2") and does not take part in equality or hashing.
    """

    x: object
    y: object
    label: str | None = field(default=None, compare=False)

    def __repr__(self):
        tag = f", {self.label!r}" if self.label else ""
        return f"Point({fmt(R(self.x))}, {fmt(R(self.y))}{tag})"


def P(x, y, label=None) -> Point:
    """Point constructor that coerces ints/strings to backend rationals."""
    return Point(R(x), R(y), label)


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the determinant of (q-p, r-p): +1 if r is strictly left of
    the directed line p->q, -1 if strictly right, 0 iff collinear."""
    if p.x == q.x and p.y == q.y:
        raise InputError("degenerate pair: orientation needs two distinct base points")
    d = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


def line_intersection(a: Point, b: Point, c: Point, d: Point) -> Point:
    """Exact intersection point of lines ab and cd.

    Raises InputError("no unique intersection") for parallel or degenerate
    input (this includes identical lines).
    """
    if (a.x == b.x and a.y == b.y) or (c.x == d.x and c.y == d.y):
        raise InputError("no unique intersection: degenerate line")
    r = (b.x - a.x, b.y - a.y)
    s = (d.x - c.x, d.y - c.y)
    den = r[0] * s[1] - r[1] * s[0]
    if den == 0:
        raise InputError("no unique intersection: parallel lines")
    t = ((c.x - a.x) * s[1] - (c.y - a.y) * s[0]) / den
    return Point(a.x + t * r[0], a.y + t * r[1])


def collinear_triples(points) -> list[tuple[int, int, int]]:
    """All index triples (i<j<k) of collinear points. O(n^3)."""
    pts = list(points)
    bad = []
    for i, j, k in combinations(range(len(pts)), 3):
        if orientation(pts[i], pts[j], pts[k]) == 0:
            bad.append((i, j, k))
    return bad


@dataclass(frozen=True)
class PointSet:
    """Ordered list of distinct points with a general-position certificate.

    The certificate is computed, never assumed: `general_position` is True
    iff an exhaustive exact scan found no collinear triple.
    """

    points: tuple[Point, ...]

    def __init__(self, points):
        pts = tuple(points)
        seen = {}
        for i, p in enumerate(pts):
            key = (p.x, p.y)
            if key in seen:
                raise InputError(f"duplicate points at indices {seen[key]} and {i}")
            seen[key] = i
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    @property
    def n(self) -> int:
        return len(self.points)

    @cached_property
    def collinear_triples(self) -> tuple[tuple[int, int, int], ...]:
        return tuple(collinear_triples(self.points))

    @property
    def general_position(self) -> bool:
        return not self.collinear_triples

    def require_general_position(self):
        bad = self.collinear_triples
        if bad:
            raise GeneralPositionError(
                f"not in general position: {len(bad)} collinear triple(s), "
                f"first {bad[0]}",
                triples=bad,
            )
        return self


def check_general_position(ps: PointSet) -> list[tuple[int, int, int]]:
    """All collinear index triples of the set; empty iff general position."""
    if ps.n < 3:
        raise InputError("need at least 3 points")
    return list(ps.collinear_triples)


def rotation_cw_2pi3_maps(precision: int = DEFAULT_ROTATION_PRECISION):
    """The clockwise 2*pi/3 rotation as an exact rational matrix pair.

    Returns (apply, apply_inverse) where apply is built from a rational
    sqrt(3) approximation s (|s - sqrt3| < 1/precision):

        apply(x, y)  = (-x/2 + (s/2) y, -(s/2) x - y/2)

    apply_inverse is the exact matrix inverse of apply, so
    apply(apply_inverse(p)) == p holds exactly despite the approximation.
    """
    s = sqrt3_floor(precision)
    half = R(1, 2)
    a, b = -half, s * half          # row 1: (a, b)
    c, d = -s * half, -half         # row 2: (c, d)
    det = a * d - b * c

    def apply(p: Point, label=None) -> Point:
        return Point(a * p.x + b * p.y, c * p.x + d * p.y, label)

    def apply_inverse(p: Point, label=None) -> Point:
        return Point((d * p.x - b * p.y) / det, (a * p.y - c * p.x) / det, label)

    return apply, apply_inverse


def rotate_cw_2pi3(p: Point, precision: int = DEFAULT_ROTATION_PRECISION) -> Point:
    """Rational approximation of the clockwise rotation of p by 2*pi/3
    around the origin, accurate to within 1/precision per coordinate
    (for |p| bounded by ~precision^(1/2); exact scaling is |p|/precision)."""
    apply, _ = rotation_cw_2pi3_maps(precision)
    return apply(p, p.label)


# ---------------------------------------------------------------------------
# Point file format (shared across modules):
#   UTF-8 text; lines starting with '#' are comments; first non-comment line
#   is n; then n lines "x y" where each coordinate is an optionally signed
#   integer or "p/q" rational.  Writers emit canonical-form rationals.
# ---------------------------------------------------------------------------

_COORD_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def _parse_coord(tok: str, lineno: int):
    if not _COORD_RE.match(tok):
        raise PointFileError(f"line {lineno}: bad coordinate {tok!r}")
    if "/" in tok and int(tok.split("/")[1]) == 0:
        raise PointFileError(f"line {lineno}: zero denominator in {tok!r}")
    return R(tok)


def read_points(path) -> PointSet:
    """Read a point file; raises PointFileError with a line reference."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise PointFileError(f"cannot read {path}: {exc}") from None
    rows = [(i + 1, ln.strip()) for i, ln in enumerate(lines)]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise PointFileError("empty point file")
    no0, head = rows[0]
    try:
        n = int(head)
    except ValueError:
        raise PointFileError(f"line {no0}: expected point count, got {head!r}") from None
    if n < 1:
        raise PointFileError(f"line {no0}: point count must be positive")
    if len(rows) - 1 != n:
        raise PointFileError(f"expected {n} coordinate lines, found {len(rows) - 1}")
    pts = []
    for no, ln in rows[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise PointFileError(f"line {no}: expected 'x y', got {ln!r}")
        pts.append(Point(_parse_coord(toks[0], no), _parse_coord(toks[1], no)))
    return PointSet(pts)


def write_points(path, ps: PointSet, header: str | None = None):
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            for line in header.splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"{ps.n}\n")
        for p in ps:
            fh.write(f"{fmt(R(p.x))} {fmt(R(p.y))}\n")
