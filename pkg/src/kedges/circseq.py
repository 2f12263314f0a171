"""Circular sequences and abstract simple allowable sequences.

A halfperiod records the C(n,2)+1 projection orders a point set runs
through as the projection direction rotates by pi: consecutive orders
differ by one adjacent transposition and every unordered pair of labels
swaps exactly once, ending at the reverse of the initial permutation.
Abstract halfperiods (not derived from points) are first-class: every
downstream statistic consumes a Halfperiod, so the machinery applies to
allowable sequences whether or not they are stretchable.

A transposition acting on slots (j, j+1) encodes a (min(j, n-j) - 1)-edge;
that correspondence is what turns sweep combinatorics into edge counts.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from math import comb

from .errors import DirectionTieError, InputError
from .geom import PointSet


@dataclass(frozen=True)
class Transposition:
    """One adjacent swap: slots (position, position+1), 1-based.

    `pair` is (left_label, right_label) as they stood immediately before
    the swap; step is the 1-based index within the halfperiod.
    """

    step: int
    position: int
    pair: tuple[int, int]

    @property
    def pair_set(self) -> frozenset:
        return frozenset(self.pair)


@dataclass(frozen=True)
class Halfperiod:
    """n, an initial permutation of 1..n, and C(n,2) transpositions.

    Construction does not enforce the allowable-sequence axioms; use
    validate_allowable to obtain the violation report (empty iff valid).
    Factories in this module only return validated instances.
    """

    n: int
    initial: tuple[int, ...]
    transpositions: tuple[Transposition, ...]

    def walk(self):
        """Yield (step_index, permutation_after) pairs; step 0 is initial."""
        perm = list(self.initial)
        yield 0, tuple(perm)
        for t in self.transpositions:
            j = t.position - 1
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
            yield t.step, tuple(perm)

    def permutation(self, i: int) -> tuple[int, ...]:
        """The i-th permutation pi_i, 0 <= i <= C(n,2)."""
        if not 0 <= i <= len(self.transpositions):
            raise InputError(f"permutation index {i} out of range")
        perm = list(self.initial)
        for t in self.transpositions[:i]:
            j = t.position - 1
            perm[j], perm[j + 1] = perm[j + 1], perm[j]
        return tuple(perm)

    @property
    def final(self) -> tuple[int, ...]:
        perm = self.permutation(len(self.transpositions))
        return perm


def validate_allowable(h: Halfperiod) -> list[str]:
    """Check the simple-allowable-sequence axioms; returns the list of
    violations (empty iff h is a valid halfperiod).

    Violations are data, not errors: axioms checked are slot adjacency of
    the recorded pairs, every pair swapped exactly once, the expected
    transposition count, and final permutation = reverse of initial.
    """
    report = []
    n = h.n
    if sorted(h.initial) != list(range(1, n + 1)):
        report.append(f"initial is not a permutation of 1..{n}")
        return report
    expected = comb(n, 2)
    if len(h.transpositions) != expected:
        report.append(
            f"expected C({n},2) = {expected} transpositions, found {len(h.transpositions)}"
        )
    perm = list(h.initial)
    seen: dict[frozenset, int] = {}
    for idx, t in enumerate(h.transpositions):
        if not 1 <= t.position <= n - 1:
            report.append(f"step {idx + 1}: position {t.position} out of range 1..{n - 1}")
            continue
        j = t.position - 1
        here = (perm[j], perm[j + 1])
        if set(here) != set(t.pair):
            report.append(
                f"step {idx + 1}: recorded pair {t.pair} but slots hold {here}"
            )
        key = frozenset(here)
        if key in seen:
            report.append(
                f"step {idx + 1}: pair {tuple(sorted(key))} swapped again (first at step {seen[key]})"
            )
        else:
            seen[key] = idx + 1
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
    if perm != list(reversed(h.initial)):
        report.append("final permutation is not the reverse of the initial one")
    return report


def require_valid(h: Halfperiod) -> Halfperiod:
    report = validate_allowable(h)
    if report:
        raise InputError("invalid halfperiod: " + "; ".join(report[:3]))
    return h


# ---------------------------------------------------------------------------
# Sweep construction from a point set
# ---------------------------------------------------------------------------


def _event_direction(dx, dy):
    """Perpendicular of (dx, dy) normalized into the closed upper half plane
    (angle in [0, pi)): returns (a, b) with b > 0, or b == 0 and a > 0."""
    a, b = -dy, dx
    if b < 0 or (b == 0 and a < 0):
        a, b = -a, -b
    return a, b


def _angle_cmp(e1, e2) -> int:
    """Exact angular order on upper-half-plane vectors (cross-product sign)."""
    cross = e1[0] * e2[1] - e1[1] * e2[0]
    if cross > 0:
        return -1
    if cross < 0:
        return 1
    return 0


def halfperiod_from_points(ps: PointSet, tie_break: bool = False) -> Halfperiod:
    """Halfperiod of the circular sequence of a point set.

    The sweep starts just below the smallest event angle: the initial
    permutation sorts the points by projection onto the first event
    direction, ties broken by the order just before that event.  Labels
    1..n are assigned in that initial order, so `initial` is the identity.

    Point pairs spanning parallel lines swap at the same direction; by
    default that is a hard error listing the clashing pairs (silently
    picking an order could in principle be observable), `tie_break=True`
    opts into lexicographic-by-pair-index order, which is sound because
    general position forces simultaneously swapping pairs to be disjoint
    and slot-disjoint.
    """
    ps.require_general_position()
    n = ps.n
    if n < 2:
        raise InputError("need at least 2 points")
    pts = ps.points

    events = []  # (direction, i, j)
    for i in range(n):
        for j in range(i + 1, n):
            d = _event_direction(pts[j].x - pts[i].x, pts[j].y - pts[i].y)
            events.append((d, i, j))

    def cmp(ev1, ev2):
        c = _angle_cmp(ev1[0], ev2[0])
        if c:
            return c
        if ev1[1:] < ev2[1:]:
            return -1
        if ev1[1:] > ev2[1:]:
            return 1
        return 0

    events.sort(key=functools.cmp_to_key(cmp))

    if not tie_break:
        groups = []
        run = [events[0]]
        for ev in events[1:]:
            if _angle_cmp(run[-1][0], ev[0]) == 0:
                run.append(ev)
            else:
                if len(run) > 1:
                    groups.append(tuple((i, j) for _, i, j in run))
                run = [ev]
        if len(run) > 1:
            groups.append(tuple((i, j) for _, i, j in run))
        if groups:
            raise DirectionTieError(
                f"{len(groups)} group(s) of point pairs span parallel lines "
                f"(first group: {groups[0]}); pass tie_break=True to order them by pair index",
                groups=groups,
            )

    # Initial order: projections onto the first event direction, tie-broken
    # by the clockwise-rotated direction (the order just before the event).
    e1 = events[0][0]
    tiebreak_dir = (e1[1], -e1[0])

    def sort_key(idx):
        p = pts[idx]
        return (p.x * e1[0] + p.y * e1[1], p.x * tiebreak_dir[0] + p.y * tiebreak_dir[1])

    order = sorted(range(n), key=sort_key)
    label_of = {pt_index: lab + 1 for lab, pt_index in enumerate(order)}

    perm = list(range(1, n + 1))
    slot_of = {lab: i for i, lab in enumerate(perm)}
    trans = []
    for step, (_, i, j) in enumerate(events, start=1):
        la, lb = label_of[i], label_of[j]
        sa, sb = slot_of[la], slot_of[lb]
        if sa > sb:
            la, lb, sa, sb = lb, la, sb, sa
        if sb != sa + 1:
            raise InputError(
                f"sweep inconsistency at step {step}: labels {la},{lb} not adjacent "
                "(unexpected degeneracy)"
            )
        trans.append(Transposition(step, sa + 1, (la, lb)))
        perm[sa], perm[sb] = perm[sb], perm[sa]
        slot_of[la], slot_of[lb] = sb, sa

    h = Halfperiod(n, tuple(range(1, n + 1)), tuple(trans))
    return require_valid(h)


def rotate_halfperiod(h: Halfperiod, steps: int = 1) -> Halfperiod:
    """Halfperiod of the same circular sequence starting `steps` events
    later: each shifted transposition reappears at the mirrored position
    n - j acting on the advanced initial permutation."""
    require_valid(h)
    n = h.n
    steps %= len(h.transpositions)
    initial = list(h.initial)
    moved = []
    for t in h.transpositions[:steps]:
        j = t.position - 1
        initial[j], initial[j + 1] = initial[j + 1], initial[j]
        moved.append(t)
    seq = list(h.transpositions[steps:]) + [
        Transposition(0, n - t.position, (t.pair[1], t.pair[0])) for t in moved
    ]
    seq = [Transposition(i + 1, t.position, t.pair) for i, t in enumerate(seq)]
    return require_valid(Halfperiod(n, tuple(initial), tuple(seq)))


def reverse_halfperiod(h: Halfperiod) -> Halfperiod:
    """The reversed sweep: transpositions in reverse order at mirrored
    positions j -> n - j, starting from the same initial permutation."""
    require_valid(h)
    n = h.n
    seq = [
        Transposition(i + 1, n - t.position, (t.pair[1], t.pair[0]))
        for i, t in enumerate(reversed(h.transpositions))
    ]
    return require_valid(Halfperiod(n, h.initial, tuple(seq)))


# ---------------------------------------------------------------------------
# k-centers and s(k, pi)
# ---------------------------------------------------------------------------


def _check_k(n: int, k: int):
    if not (1 <= k and 2 * k < n):
        raise InputError(f"k out of range: need 1 <= k < n/2, got k={k}, n={n}")


def k_center(h: Halfperiod, i: int, k: int) -> frozenset:
    """Labels in the middle n-2k slots of permutation pi_i."""
    _check_k(h.n, k)
    perm = h.permutation(i)
    return frozenset(perm[k : h.n - k])


@dataclass(frozen=True)
class KCenterTrace:
    """|C_0 ∩ C(k, pi_i)| for every i, and its minimum s(k, pi)."""

    k: int
    sizes: tuple[int, ...]
    s_value: int


def compute_s(h: Halfperiod, k: int) -> KCenterTrace:
    """Trace of the k-center's overlap with C_0 over the halfperiod.

    Maintained incrementally: only k-critical transpositions (positions k
    or n-k) change center membership.  s(k, pi) <= n-2k-1 always, since
    the first k-critical transposition evicts a C_0 element.
    """
    _check_k(h.n, k)
    require_valid(h)
    n = h.n
    c0 = frozenset(h.initial[k : n - k])
    perm = list(h.initial)
    in_center_count = len(c0)  # |C_0 ∩ center| at step 0
    sizes = [in_center_count]
    for t in h.transpositions:
        j = t.position - 1
        if t.position == k:
            entering, leaving = perm[j], perm[j + 1]
            in_center_count += (entering in c0) - (leaving in c0)
        elif t.position == n - k:
            entering, leaving = perm[j + 1], perm[j]
            in_center_count += (entering in c0) - (leaving in c0)
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
        sizes.append(in_center_count)
    return KCenterTrace(k, tuple(sizes), min(sizes))


# ---------------------------------------------------------------------------
# Halfperiod file format: line 1 "n"; line 2 the initial permutation;
# then C(n,2) lines "step position labelA labelB".
# ---------------------------------------------------------------------------


def read_halfperiod(path) -> Halfperiod:
    with open(path, "r", encoding="utf-8") as fh:
        rows = [ln.strip() for ln in fh]
    rows = [(i + 1, ln) for i, ln in enumerate(rows) if ln and not ln.startswith("#")]
    if len(rows) < 2:
        raise InputError("halfperiod file too short")
    try:
        n = int(rows[0][1])
        initial = tuple(int(t) for t in rows[1][1].split())
    except ValueError as exc:
        raise InputError(f"bad halfperiod header: {exc}") from None
    trans = []
    for no, ln in rows[2:]:
        toks = ln.split()
        if len(toks) != 4:
            raise InputError(f"line {no}: expected 'step position labelA labelB'")
        try:
            step, pos, la, lb = (int(t) for t in toks)
        except ValueError:
            raise InputError(f"line {no}: non-integer field") from None
        trans.append(Transposition(step, pos, (la, lb)))
    return Halfperiod(n, initial, tuple(trans))


def write_halfperiod(path, h: Halfperiod):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{h.n}\n")
        fh.write(" ".join(str(x) for x in h.initial) + "\n")
        for t in h.transpositions:
            fh.write(f"{t.step} {t.position} {t.pair[0]} {t.pair[1]}\n")
