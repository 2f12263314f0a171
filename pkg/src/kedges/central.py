"""Block decomposition, transposition classification, rearrangement, and
verification of the central inequality

    E_{>=k} <= (n-2k-1) E_{k-1} - (s/2) (E_{k-1} - n + 1),

where s = s(k, pi) is the minimum overlap of the initial k-center C_0 with
the k-center over the halfperiod.

Terminology (for a fixed k, writing K = E_{k-1}):

* k-critical transpositions sit at positions k or n-k; they are the only
  swaps that change k-center membership, and they cut the halfperiod into
  K+1 blocks B_0..B_K.  p_j is the label entering the center at tau_j.
* center transpositions sit at positions k+1..n-k-1 (they are the
  (>=k+1)-critical ones, i.e. the (>=k)-edges being bounded); outer
  transpositions sit below k or above n-k and never matter here.
* a center transposition in B_j (j >= 1) is essential if it involves p_j;
  everything before tau_1 is essential by convention.  The rearrangement
  produces an equivalent halfperiod with no nonessential transpositions,
  preserving E_0..E_{k-1} (outer and boundary positions are untouched)
  and hence E_{>=k}.
* classes of tau_j: arriving (p_j in C_0; m-augmenting when the C_0
  overlap rises to m, neutral otherwise), returning (p_j re-entering from
  the far region), departing (p_j leaving its starting region; cutting
  when its next critical involvement is on the opposite boundary,
  stalling otherwise).
* weight w(tau_j) = number of center transpositions in B_j not joining
  two C_0 labels; light means w <= n-2k-1-s.

The verifier recomputes everything from scratch on each call and checks
the inequality together with the per-class weight bounds, the cutting
bound 2C <= 4k + K - n + s, the augmenting coverage, and the two summed
inequalities the final calculation rests on.  All of these must hold on
every valid halfperiod; a violation indicates a bug, never bad data.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .circseq import Halfperiod, Transposition, compute_s, require_valid, validate_allowable
from .edgestats import edge_vector_from_halfperiod
from .errors import InputError, RearrangementError
from .rat import R


def _check_k(n: int, k: int):
    if not (1 <= k and 2 * k < n):
        raise InputError(f"k out of range: need 1 <= k < n/2, got k={k}, n={n}")


@dataclass(frozen=True)
class Block:
    """Transpositions [start, end) of the halfperiod; block j >= 1 opens
    with the k-critical tau_j that lets `entering` into the k-center."""

    index: int
    start: int
    end: int
    entering: int | None
    boundary: str | None  # "k" or "n-k" for j >= 1


@dataclass(frozen=True)
class TranspositionRecord:
    step: int
    position: int
    pair: tuple[int, int]
    block_index: int
    kind: str  # "k-critical" | "center" | "outer"
    cls: str   # class for k-criticals, "non-critical" otherwise
    entering: int | None = None
    boundary: str | None = None
    aug_m: int | None = None
    weight: int | None = None
    heavy: bool | None = None
    essential: bool = True


def blocks(h: Halfperiod, k: int) -> list[Block]:
    """The K+1 blocks delimited by the k-critical transpositions."""
    _check_k(h.n, k)
    require_valid(h)
    n = h.n
    cuts = []  # (index, entering, boundary)
    perm = list(h.initial)
    for idx, t in enumerate(h.transpositions):
        j = t.position - 1
        if t.position == k:
            cuts.append((idx, perm[j], "k"))
        elif t.position == n - k:
            cuts.append((idx, perm[j + 1], "n-k"))
        perm[j], perm[j + 1] = perm[j + 1], perm[j]
    out = [Block(0, 0, cuts[0][0] if cuts else len(h.transpositions), None, None)]
    for bi, (idx, entering, boundary) in enumerate(cuts, start=1):
        end = cuts[bi][0] if bi < len(cuts) else len(h.transpositions)
        out.append(Block(bi, idx, end, entering, boundary))
    return out


def classify(h: Halfperiod, k: int, s_value: int | None = None) -> list[TranspositionRecord]:
    """Per-transposition records: block membership, class, weight, and
    essentiality, straight from the definitions.

    Heaviness needs s(k, pi); it is computed here unless the caller passes
    it in (verify_central reuses the original halfperiod's value, which
    rearrangement provably preserves).
    """
    _check_k(h.n, k)
    require_valid(h)
    n = h.n
    if s_value is None:
        s_value = compute_s(h, k).s_value
    c0 = frozenset(h.initial[k : n - k])
    l0 = frozenset(h.initial[:k])

    blks = blocks(h, k)
    block_of = {}
    for b in blks:
        for idx in range(b.start, b.end):
            block_of[idx] = b.index

    # Per-label timeline of k-critical involvements, for the cutting test.
    involvements: dict[int, list[tuple[int, str]]] = {}
    c0_in_center_after = {}
    leaving_at = {}
    perm = list(h.initial)
    cnt = len(c0)
    for idx, t in enumerate(h.transpositions):
        j = t.position - 1
        if t.position in (k, n - k):
            if t.position == k:
                entering, leaving = perm[j], perm[j + 1]
            else:
                entering, leaving = perm[j + 1], perm[j]
            cnt += (entering in c0) - (leaving in c0)
            c0_in_center_after[idx] = cnt
            leaving_at[idx] = leaving
            involvements.setdefault(entering, []).append((idx, "enter"))
            involvements.setdefault(leaving, []).append((idx, "leave"))
        perm[j], perm[j + 1] = perm[j + 1], perm[j]

    # Weights: center transpositions in each block not joining two C_0 labels.
    weight_of_block = {b.index: 0 for b in blks}
    for idx, t in enumerate(h.transpositions):
        if k + 1 <= t.position <= n - k - 1:
            if not (t.pair[0] in c0 and t.pair[1] in c0):
                weight_of_block[block_of[idx]] += 1

    records = []
    for idx, t in enumerate(h.transpositions):
        bi = block_of[idx]
        if t.position in (k, n - k):
            b = blks[bi]
            assert b.start == idx
            p = b.entering
            boundary = b.boundary
            w = weight_of_block[bi]
            aug_m = None
            if p in c0:
                if leaving_at[idx] in c0:
                    cls = "arriving-neutral"
                else:
                    cls = "arriving-augmenting"
                    aug_m = c0_in_center_after[idx]
            else:
                going_home = (boundary == "k") == (p not in l0)
                if going_home:
                    cls = "returning"
                else:
                    nxt = _next_involvement(involvements, p, idx, h, k)
                    cls = "departing-cutting" if nxt == "opposite" else "departing-stalling"
            records.append(
                TranspositionRecord(
                    step=t.step, position=t.position, pair=t.pair, block_index=bi,
                    kind="k-critical", cls=cls, entering=p, boundary=boundary,
                    aug_m=aug_m, weight=w, heavy=w > n - 2 * k - 1 - s_value,
                    essential=True,
                )
            )
        elif k + 1 <= t.position <= n - k - 1:
            if bi == 0:
                essential = True
            else:
                essential = blks[bi].entering in t.pair
            records.append(
                TranspositionRecord(
                    step=t.step, position=t.position, pair=t.pair, block_index=bi,
                    kind="center", cls="non-critical", essential=essential,
                )
            )
        else:
            records.append(
                TranspositionRecord(
                    step=t.step, position=t.position, pair=t.pair, block_index=bi,
                    kind="outer", cls="non-critical", essential=True,
                )
            )
    return records


def _next_involvement(involvements, p, idx, h, k) -> str:
    """'opposite' if p's next k-critical involvement after idx sits on the
    other boundary than the one at idx, 'same' or 'none' otherwise."""
    n = h.n
    here = h.transpositions[idx].position
    for later_idx, _role in involvements.get(p, []):
        if later_idx > idx:
            there = h.transpositions[later_idx].position
            return "opposite" if there != here else "same"
    return "none"


# ---------------------------------------------------------------------------
# Rearrangement
# ---------------------------------------------------------------------------


def _apply(perm, pos):
    j = pos - 1
    perm[j], perm[j + 1] = perm[j + 1], perm[j]


def rearrange_essential(h: Halfperiod, k: int) -> Halfperiod:
    """Equivalent halfperiod with every center transposition essential.

    Repeatedly rebuilds the last block containing nonessential
    transpositions: its nonessential swaps are replayed immediately before
    tau_j (they join the previous block; the entering label's wire is
    absent there, so the same pair order stays adjacent-realizable), then
    tau_j, then the essential swaps replayed as p_j walks monotonically
    across the center, then the outer-track swaps in original order.
    Block-final permutations are preserved exactly, and so are all
    transposition positions outside k+1..n-k-1, hence E_0..E_{k-1} and
    E_{>=k}.  Outcome invariants are re-validated; violations raise
    RearrangementError.
    """
    _check_k(h.n, k)
    require_valid(h)
    n = h.n
    seq = [(t.position, t.pair) for t in h.transpositions]
    initial = list(h.initial)

    rounds = 0
    while True:
        rounds += 1
        if rounds > len(seq) + 2:
            raise RearrangementError("rearrangement did not converge")
        target = _last_bad_block(seq, initial, n, k)
        if target is None:
            break
        start, end, p_entering, boundary = target
        prefix, block, suffix = seq[:start], seq[start:end], seq[end:]

        perm0 = list(initial)
        for pos, _ in prefix:
            _apply(perm0, pos)
        perm_end = list(perm0)
        for pos, _ in block:
            _apply(perm_end, pos)

        tau_pos, tau_pair = block[0]
        nonessential, essential_pairs, outer = [], [], []
        for pos, pair in block[1:]:
            if k + 1 <= pos <= n - k - 1:
                if p_entering in pair:
                    essential_pairs.append(frozenset(pair))
                else:
                    nonessential.append(pair)
            else:
                outer.append((pos, pair))

        perm = list(perm0)
        slot = {lab: i for i, lab in enumerate(perm)}
        rebuilt = []

        def swap_slots(j):
            a, b = perm[j], perm[j + 1]
            rebuilt.append((j + 1, (a, b)))
            perm[j], perm[j + 1] = b, a
            slot[a], slot[b] = j + 1, j

        for pair in nonessential:
            a, b = pair
            ja, jb = slot[a], slot[b]
            if abs(ja - jb) != 1:
                raise RearrangementError(
                    f"nonessential pair {pair} not adjacent while replaying block"
                )
            swap_slots(min(ja, jb))

        jt = tau_pos - 1
        if {perm[jt], perm[jt + 1]} != set(tau_pair):
            raise RearrangementError("boundary transposition displaced by replay")
        swap_slots(jt)

        partner_sets = set(essential_pairs)
        direction = 1 if boundary == "k" else -1
        for _ in range(len(essential_pairs)):
            jp = slot[p_entering]
            jn = jp + direction
            pair_here = frozenset((p_entering, perm[jn]))
            if pair_here not in partner_sets:
                raise RearrangementError(
                    f"essential replay out of order at slot {jp + 1}"
                )
            partner_sets.discard(pair_here)
            swap_slots(min(jp, jn))

        for pos, pair in outer:
            j = pos - 1
            if {perm[j], perm[j + 1]} != set(pair):
                raise RearrangementError(f"outer-track pair {pair} displaced")
            swap_slots(j)

        if perm != perm_end:
            raise RearrangementError("block-final permutation changed by replay")
        seq = prefix + rebuilt + suffix

    out = Halfperiod(
        n,
        h.initial,
        tuple(Transposition(i + 1, pos, pair) for i, (pos, pair) in enumerate(seq)),
    )
    report = validate_allowable(out)
    if report:
        raise RearrangementError("rearranged halfperiod invalid: " + report[0])
    ev_in = edge_vector_from_halfperiod(h)
    ev_out = edge_vector_from_halfperiod(out)
    if ev_in.counts[: k - 1] != ev_out.counts[: k - 1] or ev_in.geq(k) != ev_out.geq(k):
        raise RearrangementError(
            f"rearrangement changed protected edge counts: {ev_in.counts} -> {ev_out.counts}"
        )
    return out


def _last_bad_block(seq, initial, n, k):
    """(start, end, entering, boundary) of the last block with a
    nonessential center transposition, or None."""
    cuts = []
    perm = list(initial)
    for idx, (pos, _pair) in enumerate(seq):
        if pos == k:
            cuts.append((idx, perm[pos - 1], "k"))
        elif pos == n - k:
            cuts.append((idx, perm[pos], "n-k"))
        _apply(perm, pos)
    for bi in range(len(cuts) - 1, -1, -1):
        start, entering, boundary = cuts[bi]
        end = cuts[bi + 1][0] if bi + 1 < len(cuts) else len(seq)
        for pos, pair in seq[start + 1 : end]:
            if k + 1 <= pos <= n - k - 1 and entering not in pair:
                return start, end, entering, boundary
    return None


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CentralReport:
    k: int
    s: int
    K: int
    tallies: dict  # A, N, R, C, S_light, S_heavy
    E_geq_k: int
    bound_value: object  # exact rational
    holds: bool
    aux_checks: dict  # name -> bool, on the rearranged halfperiod

    @property
    def all_ok(self) -> bool:
        return self.holds and all(self.aux_checks.values())


_CLASS_KEYS = {
    "arriving-augmenting": "A",
    "arriving-neutral": "N",
    "returning": "R",
    "departing-cutting": "C",
}


def verify_central(h: Halfperiod, k: int) -> CentralReport:
    """Check the central inequality on h and the proof-level inequalities
    on its rearranged (all-essential) companion.

    The main inequality is evaluated on the original halfperiod; the
    classification-level checks run on the rearranged one, where the
    class/weight bounds are actually asserted by the argument.  E_{k-1},
    E_{>=k} and s agree between the two (asserted)."""
    _check_k(h.n, k)
    n = h.n
    ev = edge_vector_from_halfperiod(h)
    K = ev.counts[k - 1]
    E_geq = ev.geq(k)
    s = compute_s(h, k).s_value
    bound = (n - 2 * k - 1) * R(K) - R(s, 2) * (K - n + 1)
    holds = R(E_geq) <= bound

    lam = rearrange_essential(h, k)
    if compute_s(lam, k).s_value != s:
        raise RearrangementError("rearrangement changed s(k, pi)")
    records = [r for r in classify(lam, k, s_value=s) if r.kind == "k-critical"]

    tallies = {"A": 0, "N": 0, "R": 0, "C": 0, "S_light": 0, "S_heavy": 0}
    for r in records:
        if r.cls == "departing-stalling":
            tallies["S_heavy" if r.heavy else "S_light"] += 1
        else:
            tallies[_CLASS_KEYS[r.cls]] += 1

    width = n - 2 * k
    checks = {}
    checks["tally-total"] = sum(tallies.values()) == K
    checks["weight-overall"] = all(r.weight <= width - 1 for r in records)
    checks["weight-neutral"] = all(
        r.weight <= width - s for r in records if r.cls == "arriving-neutral"
    )
    checks["weight-augmenting"] = all(
        r.weight <= width - r.aug_m for r in records if r.cls == "arriving-augmenting"
    )
    checks["weight-returning"] = all(
        r.weight <= width - 1 - s for r in records if r.cls == "returning"
    )
    checks["weight-light-stalling"] = all(
        r.weight <= width - 1 - s
        for r in records
        if r.cls == "departing-stalling" and not r.heavy
    )
    C = tallies["C"]
    checks["cutting-lower"] = C >= 2 * k
    checks["cutting-upper"] = 2 * C <= 4 * k + K - n + s
    # at least n-2k-s arrivals and 2k departures force E_{k-1} >= n-s >= 2k+1
    checks["min-edge-count"] = K >= n - s and K >= 2 * k + 1
    aug_ms = {r.aug_m for r in records if r.cls == "arriving-augmenting"}
    checks["augmenting-coverage"] = all(m in aug_ms for m in range(s + 1, width + 1))
    total_weight = sum(r.weight for r in records)
    checks["degrees-inequality"] = E_geq <= comb(width, 2) - tallies["N"] + total_weight
    heavy_aug_weight = sum(
        r.weight
        for r in records
        if r.cls == "arriving-augmenting"
        or (r.cls == "departing-stalling" and r.heavy)
    )
    checks["augmenting-heavy-stalling"] = heavy_aug_weight <= (width - 1 - s) * (
        tallies["A"] + tallies["S_heavy"]
    ) - comb(width - s, 2)

    return CentralReport(
        k=k, s=s, K=K, tallies=tallies, E_geq_k=E_geq,
        bound_value=bound, holds=bool(holds), aux_checks=checks,
    )
