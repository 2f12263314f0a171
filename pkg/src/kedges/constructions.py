"""Extremal point-set constructions with machine verification.

Three families are generated here, each emitted as exact rational points
and then *certified*: every count the construction is supposed to achieve
is recomputed from scratch with exact predicates, and the free parameters
(rotation precision, perturbation size, how far out the collinear tail
goes) escalate automatically until the certificate passes.

* build_sr: the recursive 9r-point family whose (<=k)-edge counts meet the
  closed-form lower bound for every k <= 4r-1.  Nine classes of size r
  (A, A', A'', and their images under rotation by 2*pi/3); the A'' points
  sit on the x-axis far to the left, so far that any line through one of
  them and a non-rotated-double-prime point is flatter than any line
  avoiding A'' entirely (certified by exact slope comparison).  The raw
  set is intentionally degenerate (whole families are collinear); a
  verified perturbation produces the general-position set whose counts
  are checked against the formulas.
* build_polygon_center: 2k+1 polygon vertices plus n-2k-1 points near the
  center; meets the central inequality's corollary with equality at
  s = n-2k-1.
* build_cluster_polygon: a (2t+1)-gon with each vertex replaced by m
  near-collinear points pointing at the center; equality at s = 0.

check_3decomposable searches the O(n^2) critical projection directions
for an enclosing triangle whose side projections show each class between
the other two.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field, replace
from itertools import combinations

from .circseq import compute_s, halfperiod_from_points
from .edgestats import edge_vector_bruteforce, pair_levels
from .errors import InputError, VerificationError
from .geom import (
    Point,
    PointSet,
    collinear_triples,
    line_intersection,
    orientation,
    rotation_cw_2pi3_maps,
)
from .rat import R, dyadic_between

# ---------------------------------------------------------------------------
# Shared helpers
# ---------------------------------------------------------------------------


def comb2(x: int) -> int:
    return x * (x - 1) // 2 if x >= 2 else 0


@dataclass(frozen=True)
class LabeledPointSet:
    """A point set plus one class tag per point (A, A', A'', B, ..., C'').

    The tag's first letter is the color used by the bichromatic /
    monochromatic split."""

    point_set: PointSet
    class_tags: tuple[str, ...]

    def __post_init__(self):
        if len(self.class_tags) != self.point_set.n:
            raise InputError("one class tag per point required")

    @property
    def n(self) -> int:
        return self.point_set.n

    def letter(self, i: int) -> str:
        return self.class_tags[i][0]


def count_bichromatic_monochromatic(lps: LabeledPointSet, k: int, levels=None):
    """(bichromatic, monochromatic) (<=k)-edge counts of a labeled set.

    An edge is bichromatic when its endpoints carry different letters.
    Pass precomputed pair levels to amortize the O(n^3) scan over many k.
    """
    if not isinstance(lps, LabeledPointSet):
        raise InputError("labeled point set required")
    if levels is None:
        levels = pair_levels(lps.point_set)
    bi = mono = 0
    for (i, j), lev in levels.items():
        if lev <= k:
            if lps.letter(i) == lps.letter(j):
                mono += 1
            else:
                bi += 1
    return bi, mono


# ---------------------------------------------------------------------------
# Expected counts for the recursive family (n = 9r)
# ---------------------------------------------------------------------------


def sr_expected_leq(r: int, k: int) -> int:
    """The closed-form lower bound the family attains, 0 <= k <= 4r-1."""
    n = 9 * r
    if not 0 <= k <= 4 * r - 1:
        raise InputError(f"k out of range for S_r tightness: {k}")
    if k <= n // 3 - 1:
        return 3 * comb2(k + 2)
    if k <= 4 * r - 2:
        return 3 * comb2(k + 2) + 3 * comb2(k - n // 3 + 2)
    return 3 * comb2(4 * r + 1) + 3 * comb2(r + 1) + 3


def sr_expected_bichromatic(r: int, k: int) -> int:
    if k <= 3 * r - 1:
        return 3 * comb2(k + 2)
    return 3 * comb2(3 * r + 1) + (k - 3 * r + 1) * 9 * r


def sr_expected_monochromatic(r: int, k: int) -> int:
    if k <= 3 * r - 1:
        return 0
    if k <= 4 * r - 2:
        return 6 * comb2(k - 3 * r + 2)
    return 6 * comb2(r + 1) + 3


# ---------------------------------------------------------------------------
# The recursive family S_r
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SrConfig:
    r: int
    far_factor: object = field(default_factory=lambda: R(10**4))
    segment_choice: object = field(default_factory=lambda: R(1, 2))
    perturbation_epsilon: object = field(default_factory=lambda: R(1, 10**7))
    precision: int = 10**12

    def __post_init__(self):
        if self.r < 3:
            raise InputError("r >= 3 required")
        if not (R(0) < R(self.segment_choice) < R(1)):
            raise InputError("segment_choice must lie strictly inside (0, 1)")
        if not R(self.perturbation_epsilon) > 0:
            raise InputError("perturbation_epsilon must be positive")


@dataclass(frozen=True)
class SrResult:
    raw: LabeledPointSet
    perturbed: LabeledPointSet
    aux: dict
    config: SrConfig          # with the values that actually certified
    slope_margin: tuple       # (max |slope| flat family, min |slope| rest)
    edge_vector: object       # brute-force vector of the perturbed set


_BASE_A = {1: (-700, -50), 2: (-410, 150), 3: (-436, 144)}
_BASE_AP = {1: (-1300, 20), 2: (-1200, -10), 3: (-1170, -14)}


def _segment_param(u: Point, v: Point, w: Point):
    """Parameter of w along segment u->v (w assumed on line uv)."""
    d = (v.x - u.x, v.y - u.y)
    return ((w.x - u.x) * d[0] + (w.y - u.y) * d[1]) / (d[0] * d[0] + d[1] * d[1])


def _require_interior(u: Point, v: Point, w: Point, what: str):
    t = _segment_param(u, v, w)
    if not (R(0) < t < R(1)):
        raise VerificationError(f"{what}: point not interior to segment")
    return t


def _verify_sr_properties(A, Ap, a_inf, ap_inf, rot, t: int):
    """Exact check of the four structural properties at stage t."""
    for fam, inf, name in ((A, a_inf, "(I)"), (Ap, ap_inf, "(II)")):
        base = fam[2]
        params = []
        for i in range(2, t + 1):
            if i > 2 and orientation(base, inf, fam[i]) != 0:
                raise VerificationError(f"{name}: point {i} off the family line")
            params.append(_segment_param(base, inf, fam[i]))
        if any(not (params[i] < params[i + 1]) for i in range(len(params) - 1)):
            raise VerificationError(f"{name}: points out of order along the segment")
        if params and not params[-1] < R(1):
            raise VerificationError(f"{name}: family overruns the segment")
    b = {i: rot(A[i]) for i in range(2, t + 1)}
    b_inf = rot(a_inf)
    for i in range(2, t):
        for j in range(2, t + 1):
            z = line_intersection(Ap[i], A[j], b[i], b[i + 1])
            _require_interior(b[i], b[i + 1], z, f"(III) i={i} j={j}")
    for j in range(2, t + 1):
        z = line_intersection(Ap[t], A[j], b[t], b_inf)
        _require_interior(b[t], b_inf, z, f"(IV) j={j}")


def _point_on_line_at_x(p1: Point, p2: Point, x, label=None) -> Point:
    if p1.x == p2.x:
        raise VerificationError("family line is vertical; cannot parametrize by x")
    slope = (p2.y - p1.y) / (p2.x - p1.x)
    return Point(x, p1.y + slope * (x - p1.x), label)


def _build_sr_family(r: int, segment_choice, precision: int):
    """The A and A' families plus auxiliary points, recursively."""
    rot, rot_inv = rotation_cw_2pi3_maps(precision)
    A = {i: Point(R(x), R(y), f"a_{i}") for i, (x, y) in _BASE_A.items()}
    Ap = {i: Point(R(x), R(y), f"a'_{i}") for i, (x, y) in _BASE_AP.items()}
    c2, c3 = rot(rot(A[2])), rot(rot(A[3]))
    a_inf = line_intersection(A[2], A[3], c2, c3)
    ap_inf = line_intersection(Ap[2], Ap[3], A[2], A[3])
    b_inf = rot(a_inf)
    _verify_sr_properties(A, Ap, a_inf, ap_inf, rot, 3)

    sigma = R(segment_choice)
    for t in range(3, r):
        b_t = rot(A[t])
        x_cut = line_intersection(Ap[t], A[2], b_t, b_inf)
        _require_interior(b_t, b_inf, x_cut, f"extension t={t}: cut point")
        lo, hi = sorted((x_cut.x, b_inf.x))
        target = x_cut.x + sigma * (b_inf.x - x_cut.x)
        b_new = _point_on_line_at_x(b_t, b_inf, dyadic_between(lo, hi, target))
        A[t + 1] = rot_inv(b_new, f"a_{t + 1}")

        y_cut = line_intersection(b_new, a_inf, Ap[t], ap_inf)
        _require_interior(Ap[t], ap_inf, y_cut, f"extension t={t}: prime cut point")
        lo, hi = sorted((y_cut.x, ap_inf.x))
        target = y_cut.x + sigma * (ap_inf.x - y_cut.x)
        Ap[t + 1] = _point_on_line_at_x(
            Ap[t], ap_inf, dyadic_between(lo, hi, target), f"a'_{t + 1}"
        )
        _verify_sr_properties(A, Ap, a_inf, ap_inf, rot, t + 1)

    aux = {
        "a_inf": a_inf, "ap_inf": ap_inf,
        "b_inf": b_inf, "bp_inf": rot(ap_inf),
        "c_inf": rot(b_inf), "cp_inf": rot(rot(ap_inf)),
    }
    return A, Ap, aux, rot, rot_inv


def _abs_slope(p: Point, q: Point):
    """|slope| of line pq as a rational, or None for vertical."""
    if p.x == q.x:
        return None
    return abs((p.y - q.y) / (p.x - q.x))


def _certify_app_slopes(points, tags):
    """max |slope| over lines (A'' x non-double-prime-rotate) must stay
    below min |slope| over lines avoiding A''.  Returns (ok, max1, min2,
    blocking_is_far_independent)."""
    app = [i for i, t in enumerate(tags) if t == "A''"]
    bpp_cpp = {i for i, t in enumerate(tags) if t in ("B''", "C''")}
    others = [i for i in range(len(points)) if i not in app]
    max1 = R(0)
    for i in app:
        for j in range(len(points)):
            if j == i or j in bpp_cpp:
                continue
            s = _abs_slope(points[i], points[j])
            if s is None:
                return False, None, None, False
            if s > max1:
                max1 = s
    min2 = None
    min2_inner = True
    for a, b in combinations(others, 2):
        s = _abs_slope(points[a], points[b])
        if s is None:
            continue
        if min2 is None or s < min2:
            min2 = s
            min2_inner = not ({a, b} & bpp_cpp)
    ok = min2 is not None and max1 < min2
    return ok, max1, min2, min2_inner


def _assemble_sr(A, Ap, app, rot, r):
    """Raw point list in letter-major order: all A-letter points, then
    their rotations, then the double rotations."""
    base = (
        [A[i] for i in range(1, r + 1)]
        + [Ap[i] for i in range(1, r + 1)]
        + list(app)
    )
    tags_a = ["A"] * r + ["A'"] * r + ["A''"] * r
    pts, tags = list(base), list(tags_a)
    for letter in ("b", "c"):
        base = [rot(p, p.label and p.label.replace("a", letter).replace("b", letter)) for p in base]
        pts += base
        tags += [t.replace("A", letter.upper()) for t in tags_a]
    return pts, tags


def _line_key(p: Point, q: Point):
    a, b = q.y - p.y, p.x - q.x  # normal of the direction
    c = a * p.x + b * p.y
    if a != 0:
        return (R(1), b / a, c / a)
    return (R(0), R(1), c / b)


def perturb_collinear_families(points, epsilon):
    """Break every maximal collinear family: its i-th point (ordered along
    the line) moves off the line by i*epsilon, directed away from the
    configuration's centroid.  Exactness of the off-line displacement is
    what the downstream predicates certify."""
    triples = collinear_triples(points)
    if not triples:
        return list(points)
    groups: dict = {}
    for i, j, _k in triples:
        groups.setdefault(_line_key(points[i], points[j]), set()).update((i, j, _k))
    member_of = {}
    for key, members in groups.items():
        for i in members:
            if i in member_of:
                raise VerificationError(
                    f"point {i} lies on two collinear families; cannot perturb independently"
                )
            member_of[i] = key
    n = len(points)
    cx = sum((p.x for p in points), R(0)) / n
    cy = sum((p.y for p in points), R(0)) / n
    eps = R(epsilon)
    out = list(points)
    for key, members in groups.items():
        ordered = sorted(members, key=lambda i: (points[i].x, points[i].y))
        first, second = points[ordered[0]], points[ordered[1]]
        dx, dy = second.x - first.x, second.y - first.y
        scale = max(abs(dx), abs(dy))
        perp = (-dy / scale, dx / scale)
        for rank, i in enumerate(ordered, start=1):
            p = points[i]
            side = (p.x - cx) * perp[0] + (p.y - cy) * perp[1]
            sign = -1 if side < 0 else 1
            off = sign * rank * eps
            out[i] = Point(p.x + perp[0] * off, p.y + perp[1] * off, p.label)
    return out


def build_sr(cfg: SrConfig) -> SrResult:
    """Build and certify the 9r-point family.

    Escalation ladder: the perturbation shrinks by 1/1000 on a failed
    count check (up to 5 times), the flat-family offset doubles until the
    slope certificate passes (up to 60 times), and the rotation precision
    squares on any structural failure (up to 4 rounds)."""
    last_err = None
    precision = cfg.precision
    for _ in range(4):
        try:
            return _build_sr_once(cfg, precision)
        except (VerificationError, InputError) as exc:
            # A degenerate intersection mid-build means the rotation was too
            # coarse; treat it like any other certificate failure.
            last_err = exc
            precision = precision * precision
    raise VerificationError(
        f"S_{cfg.r} could not be certified after precision escalation: {last_err}"
    )


def _build_sr_once(cfg: SrConfig, precision: int) -> SrResult:
    r = cfg.r
    n = 9 * r
    A, Ap, aux, rot, rot_inv = _build_sr_family(r, cfg.segment_choice, precision)

    inner = [A[i] for i in range(1, r + 1)] + [Ap[i] for i in range(1, r + 1)]
    inner += [rot(p) for p in inner] + [rot(rot(p)) for p in inner[: 2 * r]]
    min_inner_x = min(p.x for p in inner)

    far = R(cfg.far_factor)
    certified = None
    for _ in range(60):
        app = [
            Point(-(far * (1 << (r - i))) / 1, R(0), f"a''_{i}") for i in range(1, r + 1)
        ]
        if not max(p.x for p in app) < min_inner_x:
            far = far * 2
            continue
        pts, tags = _assemble_sr(A, Ap, app, rot, r)
        ok, max1, min2, inner_block = _certify_app_slopes(pts, tags)
        if ok:
            certified = (pts, tags, max1, min2)
            break
        if min2 is not None and min2 == 0 and inner_block:
            # A horizontal line between two far-independent points can never
            # be out-sloped; only a finer rotation can remove it.
            raise VerificationError(
                "slope certificate blocked by a horizontal line avoiding the flat family"
            )
        far = far * 2
    if certified is None:
        raise VerificationError("slope certificate failed after 60 doublings")
    pts, tags, max1, min2 = certified

    raw = LabeledPointSet(PointSet(pts), tuple(tags))
    expected = {k: sr_expected_leq(r, k) for k in range(4 * r)}
    expected_bi = {k: sr_expected_bichromatic(r, k) for k in range(4 * r)}
    expected_mono = {k: sr_expected_monochromatic(r, k) for k in range(4 * r)}

    eps = R(cfg.perturbation_epsilon)
    failure = None
    for _ in range(5):
        moved = perturb_collinear_families(pts, eps)
        ps = PointSet(moved)
        if not ps.general_position:
            failure = "perturbed set still has collinear triples"
            eps = eps / 1000
            continue
        ev = edge_vector_bruteforce(ps)
        levels = pair_levels(ps)
        lps = LabeledPointSet(ps, tuple(tags))
        bad = None
        for k in range(4 * r):
            if ev.leq(k) != expected[k]:
                bad = f"E_<= {k}: got {ev.leq(k)}, want {expected[k]}"
                break
            bi, mono = count_bichromatic_monochromatic(lps, k, levels)
            if (bi, mono) != (expected_bi[k], expected_mono[k]):
                bad = f"split at k={k}: got {(bi, mono)}, want {(expected_bi[k], expected_mono[k])}"
                break
        if bad is None:
            used = replace(cfg, far_factor=far, perturbation_epsilon=eps, precision=precision)
            return SrResult(raw, lps, aux, used, (max1, min2), ev)
        failure = bad
        eps = eps / 1000
    raise VerificationError(f"S_{r} count verification failed: {failure}")


# ---------------------------------------------------------------------------
# Equality constructions
# ---------------------------------------------------------------------------


def _ring(q: int, scale: int, phase: float):
    """Integer approximations of q equally spaced unit vectors * scale."""
    out = []
    for i in range(q):
        ang = 2 * math.pi * i / q + phase
        out.append((round(math.cos(ang) * scale), round(math.sin(ang) * scale)))
    return out


def build_polygon_center(k: int, n: int, precision: int = 10**6) -> PointSet:
    """2k+1 regular-polygon vertices plus n-2k-1 points near the center.

    Certified properties: E_j = 2k+1 for every j < k, E_{>=k} =
    C(n-2k-1,2) + (2k+1)(n-2k-1), s(k, pi) = n-2k-1, and equality
    E_{>=k} = (n-2k-1) E_{k-1} + C(s,2)."""
    if k < 1:
        raise InputError("k >= 1 required")
    if n < 2 * k + 3:
        raise InputError(f"need n >= 2k+3 central room, got n={n}, k={k}")
    q, c = 2 * k + 1, n - 2 * k - 1
    last = None
    for attempt in range(6):
        scale = precision * 10**attempt
        ring = _ring(q, scale, phase=1.0 / (7 + attempt))
        pts = [Point(R(x), R(y), f"v_{i}") for i, (x, y) in enumerate(ring)]
        pts += [Point(R(j), R(j * j), f"c_{j}") for j in range(1, c + 1)]
        try:
            ps = PointSet(pts).require_general_position()
            ev = edge_vector_bruteforce(ps)
            if any(ev.counts[j] != q for j in range(k)):
                raise VerificationError(f"outer edge counts wrong: {ev.counts[:k]}")
            if ev.geq(k) != comb2(c) + q * c:
                raise VerificationError(f"E_>=k = {ev.geq(k)}, want {comb2(c) + q * c}")
            s = compute_s(halfperiod_from_points(ps, tie_break=True), k).s_value
            if s != c:
                raise VerificationError(f"s = {s}, want {c}")
            if ev.geq(k) != (n - 2 * k - 1) * ev.counts[k - 1] + comb2(s):
                raise VerificationError("equality case failed")
            return ps
        except (VerificationError, InputError) as exc:
            last = exc
    raise VerificationError(f"polygon-center construction failed: {last}")


def build_cluster_polygon(t: int, m: int, precision: int = 10**6) -> PointSet:
    """(2t+1)-gon with each vertex replaced by m points on a small segment
    pointing at the center.  With n = (2t+1)m and k = tm, certifies
    E_{k-1} = n, E_{>=k} = 2(2t+1) C(m,2) = (n-2k-1) E_{k-1}, s = 0."""
    if t < 1 or m < 1:
        raise InputError("t >= 1, m >= 1 required")
    q, n, k = 2 * t + 1, (2 * t + 1) * m, t * m
    last = None
    for attempt in range(6):
        scale = precision * 10**attempt
        ring = _ring(q, scale, phase=1.0 / (11 + attempt))
        shrink = R(1, 100 * (attempt + 1))
        wobble = R(1, 10**4)
        pts = []
        for i, (x, y) in enumerate(ring):
            vx, vy = R(x), R(y)
            for j in range(m):
                radial = 1 - j * shrink
                px = vx * radial - vy * (j * j) * wobble / scale
                py = vy * radial + vx * (j * j) * wobble / scale
                pts.append(Point(px, py, f"v_{i}.{j}"))
        try:
            ps = PointSet(pts).require_general_position()
            ev = edge_vector_bruteforce(ps)
            if ev.counts[k - 1] != n:
                raise VerificationError(f"E_(k-1) = {ev.counts[k - 1]}, want {n}")
            if ev.geq(k) != 2 * q * comb2(m):
                raise VerificationError(f"E_>=k = {ev.geq(k)}, want {2 * q * comb2(m)}")
            s = compute_s(halfperiod_from_points(ps, tie_break=True), k).s_value
            if s != 0:
                raise VerificationError(f"s = {s}, want 0")
            return ps
        except (VerificationError, InputError) as exc:
            last = exc
    raise VerificationError(f"cluster-polygon construction failed: {last}")


# ---------------------------------------------------------------------------
# 3-decomposability
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition3Witness:
    """For each part index 0/1/2, a projection direction showing that part
    between the other two (directions are exact rational vectors)."""

    directions: tuple  # ((dx, dy), (dx, dy), (dx, dy))


def _angular_directions(ps: PointSet):
    """Distinct spanned-line normals in the upper half plane, sorted by
    angle, plus midpoint directions of consecutive angular gaps."""
    dirs = []
    for i, j in combinations(range(ps.n), 2):
        dx, dy = ps[j].x - ps[i].x, ps[j].y - ps[i].y
        a, b = -dy, dx
        if b < 0 or (b == 0 and a < 0):
            a, b = -a, -b
        dirs.append((a, b))

    def cmp(u, v):
        cr = u[0] * v[1] - u[1] * v[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    dirs.sort(key=functools.cmp_to_key(cmp))
    uniq = [dirs[0]]
    for d in dirs[1:]:
        if cmp(uniq[-1], d) != 0:
            uniq.append(d)
    mids = []
    for u, v in zip(uniq, uniq[1:]):
        mids.append((u[0] + v[0], u[1] + v[1]))
    u, v = uniq[-1], uniq[0]
    mids.append((u[0] - v[0], u[1] - v[1]))  # wrap gap: between last and first+pi
    return mids


def _between_pattern(order_letters, target):
    """True iff the letters split into three contiguous blocks with
    `target` in the middle."""
    blocks = []
    for x in order_letters:
        if not blocks or blocks[-1] != x:
            blocks.append(x)
    return len(blocks) == 3 and blocks[1] == target


def check_3decomposable(ps: PointSet, partition):
    """Witness directions for a 3-decomposition of ps under `partition`
    (three equal, disjoint index groups), or None.

    The projection order of the points changes only at spanned-line
    normals, so testing one direction per angular gap is exhaustive."""
    groups = [set(g) for g in partition]
    if len(groups) != 3:
        raise InputError("partition must have exactly three parts")
    if ps.n % 3 != 0 or any(len(g) != ps.n // 3 for g in groups):
        raise InputError("parts must have equal size n/3")
    if set().union(*groups) != set(range(ps.n)) or sum(len(g) for g in groups) != ps.n:
        raise InputError("parts must be disjoint and cover all indices")
    part_of = {}
    for gi, g in enumerate(groups):
        for i in g:
            part_of[i] = gi

    found = {}
    for d in _angular_directions(ps):
        keys = [(p.x * d[0] + p.y * d[1], i) for i, p in enumerate(ps)]
        keys.sort()
        if any(keys[a][0] == keys[a + 1][0] for a in range(len(keys) - 1)):
            continue  # degenerate direction; gaps elsewhere still cover all orders
        letters = [part_of[i] for _, i in keys]
        for gi in range(3):
            if gi not in found and _between_pattern(letters, gi):
                found[gi] = d
        if len(found) == 3:
            break
    if len(found) < 3:
        return None
    return Decomposition3Witness((found[0], found[1], found[2]))


def sr_letter_partition(r: int):
    """Index partition of an S_r point list (letter-major order) into the
    three rotation classes."""
    size = 3 * r
    return (
        tuple(range(0, size)),
        tuple(range(size, 2 * size)),
        tuple(range(2 * size, 3 * size)),
    )
