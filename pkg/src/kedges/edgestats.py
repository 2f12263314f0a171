"""k-edge vectors, halving lines, and rectilinear crossing numbers.

Two independent routes are kept available at all times:

* brute force over point sets (side counts per pair for E_k, convex
  4-subsets for cr) -- the ground-truth oracle, O(n^3) and O(n^4);
* the halfperiod route (transposition positions for E_k, the classical
  identity linking cr to the edge vector) -- the fast path.

The identity evaluated in both closed forms:

    cr = 3 C(n,4) - sum_k k (n-k-2) E_k
       = sum_{k<=n/2-2} (n-2k-3) E_{<=k} - (3/4) C(n,3)
         + (1 + (-1)^(n+1)) (1/8) C(n,2)
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .circseq import Halfperiod, halfperiod_from_points, require_valid
from .errors import InputError
from .geom import PointSet, orientation
from .rat import R, as_int


@dataclass(frozen=True)
class EdgeVector:
    """Counts (E_0, ..., E_{floor(n/2)-1}).

    Invariants: sum of counts = C(n,2) (every pair spans exactly one
    j-edge) and the last entry is the halving-line count h.
    """

    n: int
    counts: tuple[int, ...]

    def validate(self) -> "EdgeVector":
        if self.n < 2:
            raise InputError("edge vector needs n >= 2")
        if len(self.counts) != self.n // 2:
            raise InputError(
                f"edge vector for n={self.n} must have {self.n // 2} entries, "
                f"got {len(self.counts)}"
            )
        if any(c < 0 for c in self.counts):
            raise InputError("negative edge count")
        if sum(self.counts) != comb(self.n, 2):
            raise InputError(
                f"edge counts sum to {sum(self.counts)}, expected C({self.n},2) = {comb(self.n, 2)}"
            )
        return self

    def leq(self, k: int) -> int:
        return sum(self.counts[: k + 1])

    def geq(self, k: int) -> int:
        return sum(self.counts[k:])

    @property
    def e_leq(self) -> tuple[int, ...]:
        out, acc = [], 0
        for c in self.counts:
            acc += c
            out.append(acc)
        return tuple(out)

    @property
    def halving(self) -> int:
        return self.counts[-1]


def min_side_level(pts, i: int, j: int) -> int:
    """The k for which line (pts[i], pts[j]) is a k-edge: points strictly
    on the smaller side, exact orientation per point."""
    left = 0
    a, b = pts[i], pts[j]
    for t, p in enumerate(pts):
        if t == i or t == j:
            continue
        o = orientation(a, b, p)
        if o == 0:
            raise InputError(f"collinear triple ({i}, {j}, {t})")
        if o > 0:
            left += 1
    return min(left, len(pts) - 2 - left)


def pair_levels(ps: PointSet) -> dict[tuple[int, int], int]:
    """k-edge level of every unordered pair; the workhorse for labeled
    counts (bichromatic splits) and for the brute-force edge vector."""
    ps.require_general_position()
    pts = ps.points
    return {
        (i, j): min_side_level(pts, i, j)
        for i, j in combinations(range(len(pts)), 2)
    }


def edge_vector_bruteforce(ps: PointSet) -> EdgeVector:
    """E_k by exhaustive side counting. O(n^3)."""
    n = ps.n
    if n < 2:
        raise InputError("need at least 2 points")
    counts = [0] * (n // 2)
    for level in pair_levels(ps).values():
        counts[level] += 1
    return EdgeVector(n, tuple(counts)).validate()


def edge_vector_from_halfperiod(h: Halfperiod) -> EdgeVector:
    """E_k from transposition positions: a swap at slots (j, j+1) is a
    (min(j, n-j) - 1)-edge, so E_k counts positions k+1 and n-k-1 (the
    central position n/2 of an even n counts once)."""
    require_valid(h)
    n = h.n
    counts = [0] * (n // 2)
    for t in h.transpositions:
        level = min(t.position, n - t.position) - 1
        counts[level] += 1
    return EdgeVector(n, tuple(counts)).validate()


def _convex_quadrilaterals(pts, first_indices) -> int:
    count = 0
    npts = len(pts)
    for i in first_indices:
        for j in range(i + 1, npts):
            for k in range(j + 1, npts):
                o_ijk = orientation(pts[i], pts[j], pts[k])
                for l in range(k + 1, npts):
                    # Convex position <=> no point inside the triangle of
                    # the other three; equivalently the four triangle
                    # orientations do not come out 3:1.
                    o1 = o_ijk
                    o2 = orientation(pts[i], pts[j], pts[l])
                    o3 = orientation(pts[i], pts[k], pts[l])
                    o4 = orientation(pts[j], pts[k], pts[l])
                    if 0 in (o1, o2, o3, o4):
                        raise InputError("collinear points in crossing count")
                    s = o1 + o2 + o3 + o4
                    if s in (-4, 4, 0):
                        # 4:0 or 2:2 sign split -> convex
                        count += 1
    return count


def crossings_bruteforce(ps: PointSet, jobs: int = 1) -> int:
    """Number of crossing segment pairs = number of 4-point subsets in
    convex position. O(n^4) exact orientation tests.

    jobs > 1 splits the outer index range over threads; the reduction is
    an order-independent integer sum, so the result is deterministic.
    """
    ps.require_general_position()
    n = ps.n
    if n < 4:
        return 0
    pts = ps.points
    if jobs <= 1:
        return _convex_quadrilaterals(pts, range(n))
    chunks = [range(i, n, jobs) for i in range(jobs)]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(lambda ch: _convex_quadrilaterals(pts, ch), chunks))


def identity_leq_form(n: int, leq_values) -> object:
    """The E_{<=k} form of the identity as an exact rational:

        sum_{k=0}^{floor(n/2)-2} (n-2k-3) L_k - (3/4) C(n,3)
        + (1 + (-1)^(n+1)) (1/8) C(n,2)

    where L_k are the supplied values for E_{<=k}.  Also used by the bounds
    pipeline with per-k lower bounds in place of true counts.
    """
    top = n // 2 - 2
    leq_values = list(leq_values)
    if len(leq_values) < top + 1:
        raise InputError(f"need E_<=k values for k = 0..{top}")
    total = R(0)
    for k in range(top + 1):
        total += (n - 2 * k - 3) * R(leq_values[k])
    total -= R(3, 4) * comb(n, 3)
    if n % 2 == 1:
        total += R(comb(n, 2), 4)
    return total


def crossings_from_edge_vector(v: EdgeVector) -> tuple[int, int]:
    """Both closed forms of the identity, evaluated exactly; they agree on
    every valid edge vector."""
    v.validate()
    n = v.n
    form1 = 3 * comb(n, 4) - sum(
        k * (n - k - 2) * ek for k, ek in enumerate(v.counts)
    )
    form2 = as_int(identity_leq_form(n, v.e_leq))
    return form1, form2


@dataclass(frozen=True)
class CrossingReport:
    """Crossing number by all available routes plus the edge vector.

    cr_bruteforce is None when the input was an abstract halfperiod (the
    4-subset count needs coordinates); the two identity forms must agree
    in every case, and all three must agree for point sets.
    """

    n: int
    cr_bruteforce: int | None
    cr_identity_form1: int
    cr_identity_form2: int
    edge_vector: EdgeVector

    @property
    def consistent(self) -> bool:
        if self.cr_identity_form1 != self.cr_identity_form2:
            return False
        if self.cr_bruteforce is not None and self.cr_bruteforce != self.cr_identity_form1:
            return False
        return True

    @property
    def crossings(self) -> int:
        return self.cr_identity_form1

    @property
    def halving_lines(self) -> int:
        return self.edge_vector.halving


def summarize(obj, jobs: int = 1) -> CrossingReport:
    """CrossingReport for a PointSet or a Halfperiod.

    For point sets the halfperiod route is cross-checked against brute
    force; any disagreement raises (it would mean a kernel bug, not bad
    input)."""
    if isinstance(obj, PointSet):
        v = edge_vector_bruteforce(obj)
        v2 = edge_vector_from_halfperiod(halfperiod_from_points(obj, tie_break=True))
        if v != v2:
            raise AssertionError(
                f"edge vector mismatch between brute force {v.counts} and sweep {v2.counts}"
            )
        cr_bf = crossings_bruteforce(obj, jobs=jobs)
    elif isinstance(obj, Halfperiod):
        v = edge_vector_from_halfperiod(obj)
        cr_bf = None
    else:
        raise InputError(f"cannot summarize {type(obj).__name__}")
    f1, f2 = crossings_from_edge_vector(v)
    report = CrossingReport(v.n, cr_bf, f1, f2, v)
    if not report.consistent:
        raise AssertionError(
            f"crossing identity mismatch: brute={cr_bf} form1={f1} form2={f2}"
        )
    return report
