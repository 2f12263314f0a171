"""Lower-bound formulas for E_{<=k}(n) and the crossing-number pipelines.

Everything here is exact: the recursions run over big rationals with exact
ceilings, and every comparison against a square root is decided by signed
squaring, never by floating point.  The ceiling/floor boundaries are
off-by-one sensitive (n = 29 hits the halving formula exactly at
1926/18 = 107), which is why no float is trusted anywhere.

Bound inventory:

* aichholzer_bound   -- the closed-form 3-binomial bound,
                        3 C(k+2,2) + 3 C(k+2-floor(n/3),2)
                        - max(0, (k+1-floor(n/3)) (n-3 floor(n/3))).
* u_sequence         -- the recursive improvement, seeded at
                        m-1 = ceil((4n-11)/9) - 1 with the exact-n/3
                        correction term, then
                        u_k = ceil((C(n,2) + (n-2k-3) u_{k-1})/(n-2k-2)).
* explicit_bound     -- the asymptotic closed form
                        C(n,2) - (1/9) sqrt(1-(2k+2)/n) (5n^2+19n-31).
* halving_upper_bound-- floor(n(n+30)/24 - 3) (even) /
                        floor((n-3)(n+45)/18 + 1/9) (odd), n >= 8.
* cr_lower_bound     -- the identity pipeline, either the halving-augmented
                        variant ("table1") or pointwise max(closed form,
                        recursion) ("section5").
* u_prime_sequence   -- the 3-regular variant seeded at m = 17n/36 with a
                        third binomial term 18 C(m+1-floor(4n/9),2).
* series_bound       -- the 3-decomposable series with coefficients
                        c_j = 1/2 - 1/(3j(j+1)), truncated.
* asymptotic_constants, lemma_brackets, comparison_bounds -- numeric and
  exact consistency checks around the asymptotic story.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, pi

from .edgestats import identity_leq_form
from .errors import InputError
from .rat import R, as_int, ceil_div, rat_floor, to_float

# ---------------------------------------------------------------------------
# Small helpers
# ---------------------------------------------------------------------------


def comb2(x: int) -> int:
    """C(x,2) with C(x,2) = 0 for x < 2."""
    return x * (x - 1) // 2 if x >= 2 else 0


def comb2_rat(x):
    """Generalized x(x-1)/2 for rational x, clamped to 0 for x < 1.

    The clamp point x = 1 keeps the term continuous and nonnegative; it
    only matters for the series evaluator, whose upper arguments can be
    fractional."""
    one = R(1)
    if x < one:
        return R(0)
    return x * (x - 1) / 2


@dataclass(frozen=True)
class SqrtExpr:
    """Exact value a - b*sqrt(r) with a, b, r rational, b, r >= 0.

    Comparisons against rationals square the root away, so boundary cases
    are decided exactly."""

    a: object
    b: object
    r: object

    def to_float(self) -> float:
        return to_float(self.a) - to_float(self.b) * (to_float(self.r) ** 0.5)

    def le(self, q) -> bool:
        """self <= q, exactly."""
        diff = self.a - R(q)  # need diff <= b sqrt(r)
        if diff <= 0:
            return True
        return diff * diff <= self.b * self.b * self.r

    def ge(self, q) -> bool:
        """self >= q, exactly."""
        diff = self.a - R(q)  # need b sqrt(r) <= diff
        if diff < 0:
            return False
        return self.b * self.b * self.r <= diff * diff


# ---------------------------------------------------------------------------
# Closed-form and recursive lower bounds
# ---------------------------------------------------------------------------


def _check_nk(n: int, k: int):
    if n < 2:
        raise InputError(f"n too small: {n}")
    if not 0 <= k <= n // 2 - 1:
        raise InputError(f"k out of range: need 0 <= k <= floor(n/2)-1, got k={k}, n={n}")


def aichholzer_bound(n: int, k: int) -> int:
    """Closed-form lower bound on E_{<=k}(n); exact integer."""
    _check_nk(n, k)
    q = n // 3
    return 3 * comb2(k + 2) + 3 * comb2(k + 2 - q) - max(0, (k + 1 - q) * (n - 3 * q))


def m_start(n: int) -> int:
    """ceil((4n-11)/9), the first index the recursion improves from."""
    return ceil_div(4 * n - 11, 9)


def u_sequence(n: int) -> dict[int, int]:
    """u_k for m-1 <= k <= floor((n-3)/2), as exact integers.

    The seed term 3 (m - floor(n/3)) (n/3 - floor(n/3)) uses the exact
    rational n/3; it reduces to (m - floor(n/3)) (n mod 3), so the seed is
    always integral (asserted)."""
    if n < 3:
        raise InputError(f"n too small for the recursion: {n}")
    m = m_start(n)
    q = n // 3
    seed = 3 * comb2(m + 1) + 3 * comb2(m + 1 - q) - as_int(3 * (m - q) * (R(n, 3) - q))
    out = {m - 1: seed}
    top = (n - 3) // 2
    for k in range(m, top + 1):
        out[k] = ceil_div(comb(n, 2) + (n - 2 * k - 3) * out[k - 1], n - 2 * k - 2)
    return out


def explicit_bound(n: int, k: int) -> SqrtExpr:
    """C(n,2) - (1/9) sqrt(1 - (2k+2)/n) (5n^2 + 19n - 31), exact."""
    if k < m_start(n) - 1:
        raise InputError(f"k below range: need k >= {m_start(n) - 1}, got {k}")
    if 2 * k > n - 2:
        raise InputError(f"k above range: need k <= (n-2)/2, got {k}")
    return SqrtExpr(R(comb(n, 2)), R(5 * n * n + 19 * n - 31, 9), R(n - 2 * k - 2, n))


def halving_upper_bound(n: int) -> int:
    """Upper bound on the halving-line count, exact floor arithmetic."""
    if n < 8:
        raise InputError(f"halving bound needs n >= 8, got {n}")
    if n % 2 == 0:
        return rat_floor(R(n * (n + 30), 24) - 3)
    return rat_floor(R((n - 3) * (n + 45), 18) + R(1, 9))


@dataclass(frozen=True)
class CrBoundResult:
    n: int
    value: int
    per_k_bounds_used: tuple  # (k, bound, source) triples
    pipeline: str


def leq_lower_bounds(n: int, pipeline: str) -> list[tuple[int, int, str]]:
    """Per-k lower bounds on E_{<=k} for k = 0..floor(n/2)-2.

    table1:   closed form for k <= floor(n/2)-3, then C(n,2) - h_max(n) at
              the last index (the halving bound flipped through the total).
    section5: pointwise max(closed form, u_k) wherever u is defined.
    """
    top = n // 2 - 2
    rows = []
    if pipeline == "table1":
        for k in range(top):
            rows.append((k, aichholzer_bound(n, k), "aichholzer"))
        rows.append((top, comb(n, 2) - halving_upper_bound(n), "halving"))
    elif pipeline == "section5":
        useq = u_sequence(n)
        for k in range(top + 1):
            a = aichholzer_bound(n, k)
            u = useq.get(k)
            if u is not None and u > a:
                rows.append((k, u, "u_k"))
            else:
                rows.append((k, a, "aichholzer"))
    else:
        raise InputError(f"unknown pipeline {pipeline!r}")
    return rows


def cr_lower_bound(n: int, pipeline: str = "section5") -> CrBoundResult:
    """Crossing-number lower bound by plugging per-k E_{<=k} lower bounds
    into the E_{<=k} form of the identity."""
    if n < 8:
        raise InputError(f"cr bound needs n >= 8, got {n}")
    rows = leq_lower_bounds(n, pipeline)
    value = as_int(identity_leq_form(n, [b for _, b, _ in rows]))
    return CrBoundResult(n, value, tuple(rows), pipeline)


def u_prime_sequence(n: int) -> dict[int, int]:
    """The 3-regular-set recursion, seeded at m = 17n/36; requires 36 | n
    (m must be integral; the seed formula is stated for multiples of 18,
    and 36 | n covers both constraints)."""
    if n % 36 != 0:
        raise InputError(f"u' sequence needs 36 | n, got {n}")
    m = 17 * n // 36
    q3, q49 = n // 3, (4 * n) // 9
    seed = 3 * comb2(m + 1) + 3 * comb2(m + 1 - q3) + 18 * comb2(m + 1 - q49)
    out = {m - 1: seed}
    top = (n - 3) // 2
    for k in range(m, top + 1):
        out[k] = ceil_div(comb(n, 2) + (n - 2 * k - 3) * out[k - 1], n - 2 * k - 2)
    return out


def series_coefficient(j: int):
    """c_j = 1/2 - 1/(3j(j+1))."""
    return R(1, 2) - R(1, 3 * j * (j + 1))


def series_bound(n: int, k: int, terms: int):
    """Truncated 3-decomposable series bound, exact rational:

        3 C(k+2,2) + 3 C(k+2-n/3,2)
        + 3 sum_{j=2}^{terms} j(j+1) C(k+2-c_j n, 2)

    with the generalized clamped binomial; terms = 1 keeps only the first
    two terms.  Nondecreasing in `terms`."""
    if terms < 1:
        raise InputError("terms must be >= 1")
    _check_nk(n, k)
    total = 3 * comb2_rat(R(k + 2)) + 3 * comb2_rat(R(k + 2) - R(n, 3))
    for j in range(2, terms + 1):
        total += 3 * j * (j + 1) * comb2_rat(R(k + 2) - series_coefficient(j) * n)
    return total


# ---------------------------------------------------------------------------
# Asymptotic constants
# ---------------------------------------------------------------------------


def asymptotic_constants(tol: float = 1e-9) -> dict:
    """Numerically integrate the two pieces of the asymptotic crossing
    constant and compare with their exact values 86/243 and 19/729
    (sum 277/729); also evaluate the 3-decomposable constant
    (2/27)(15 - pi^2)."""
    from scipy.integrate import quad

    def f1(x):
        return 24 * 1.5 * (1 - 2 * x) * (x * x + max(0.0, x - 1 / 3) ** 2)

    def f2(x):
        return 24 * (1 - 2 * x) * (0.5 - (5 / 9) * (1 - 2 * x) ** 0.5)

    i1, _ = quad(f1, 0, 4 / 9, epsabs=1e-13, epsrel=1e-13)
    i2, _ = quad(f2, 4 / 9, 0.5, epsabs=1e-13, epsrel=1e-13)
    t1, t2 = 86 / 243, 19 / 729
    total = 277 / 729
    three_decomp = (2 / 27) * (15 - pi * pi)
    return {
        "integral1": i1,
        "integral1_target": t1,
        "integral1_ok": abs(i1 - t1) < tol,
        "integral2": i2,
        "integral2_target": t2,
        "integral2_ok": abs(i2 - t2) < tol,
        "sum": i1 + i2,
        "sum_target": total,
        "sum_ok": abs(i1 + i2 - total) < tol,
        "crossing_constant": total,
        "crossing_constant_exceeds_0.379972": total > 0.379972,
        "three_decomposable_constant": three_decomp,
        "three_decomposable_exceeds_0.380029": three_decomp > 0.380029,
    }


# ---------------------------------------------------------------------------
# Bracket lemmas (exact restatement)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaBracketReport:
    n: int
    checked_k: tuple[int, ...]
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_brackets(n: int) -> LemmaBracketReport:
    """Exact verification of the two growth-estimate brackets:

      (i)  3 sqrt(1-(2k+9/2)/n) < (C(n,2)-u_k)/(C(n,2)-u_{m-1})
                                <= 3 sqrt(1-(2k+2)/n)
           for m-1 <= k <= (n-5)/2;
      (ii) 3 sqrt(1-(2k+9/2)/n) (C(n,2)-u_{m-1}) >= (n-1)(n-2k-3)
           for m <= k <= (n-5)/2.

    Empty ranges pass vacuously.  All comparisons by exact squaring."""
    if n < 6:
        raise InputError("bracket check needs n >= 6")
    m = m_start(n)
    useq = u_sequence(n)
    total = comb(n, 2)
    d0 = total - useq[m - 1]
    top = (n - 5) // 2
    violations = []
    checked = []
    for k in range(m - 1, top + 1):
        checked.append(k)
        lo_sq = 9 * R(n - 2 * k, 1) - R(81, 2)  # 9n(1-(2k+9/2)/n) = 9(n-2k) - 81/2
        lo_sq = lo_sq / n
        hi_sq = R(9 * (n - 2 * k - 2), n)
        ratio = R(total - useq[k], d0) if d0 > 0 else None
        if ratio is None or d0 <= 0:
            violations.append(f"k={k}: seed bound reaches C(n,2)")
            continue
        if not (ratio > 0 and lo_sq < ratio * ratio):
            violations.append(f"k={k}: lower bracket fails")
        if not (ratio * ratio <= hi_sq):
            violations.append(f"k={k}: upper bracket fails")
        if k >= m:
            rhs = (n - 1) * (n - 2 * k - 3)
            if not (lo_sq * d0 * d0 >= R(rhs) * rhs):
                violations.append(f"k={k}: estimate lemma fails")
    return LemmaBracketReport(n, tuple(checked), tuple(violations))


# ---------------------------------------------------------------------------
# Comparison with the earlier near-halving bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    k: int
    envelope_f1: float
    envelope_f2: float
    explicit: float
    f1_le_f2: bool
    f1_le_explicit: bool
    f2_le_explicit: bool


def comparison_bounds(n: int, k: int) -> ComparisonReport:
    """Compare the two published near-halving envelopes

        F1: C(n,2) - (sqrt(2)/2)   n^(3/2) sqrt(n-2k)
        F2: C(n,2) - (13 sqrt3/36) n^(3/2) sqrt(n-2k)

    against the explicit bound, deciding every inequality by exact
    squaring.  Valid for n/3 <= k <= n/2; past k = (n-2)/2 the explicit
    bound is taken at its domain-end value C(n,2)."""
    if not (3 * k >= n and 2 * k <= n):
        raise InputError(f"k out of range: need n/3 <= k <= n/2, got k={k}, n={n}")
    total = comb(n, 2)
    x_sq = R(n) ** 3 * (n - 2 * k)  # X^2 for X = n^(3/2) sqrt(n-2k)
    c1_sq, c2_sq = R(1, 2), R(169, 432)  # (sqrt2/2)^2, (13 sqrt3/36)^2
    if 2 * k <= n - 2:
        expl = explicit_bound(n, k)
        b_sq = expl.b * expl.b * expl.r  # B^2 for B = (1/9) sqrt(...) (5n^2+..)
        expl_float = expl.to_float()
    else:
        b_sq = R(0)
        expl_float = float(total)
    xf = to_float(x_sq) ** 0.5
    return ComparisonReport(
        n=n,
        k=k,
        envelope_f1=total - (0.5 ** 0.5) * xf,
        envelope_f2=total - (13 * 3 ** 0.5 / 36) * xf,
        explicit=expl_float,
        f1_le_f2=bool(c1_sq >= c2_sq or x_sq == 0),
        f1_le_explicit=bool(c1_sq * x_sq >= b_sq),
        f2_le_explicit=bool(c2_sq * x_sq >= b_sq),
    )


# ---------------------------------------------------------------------------
# Per-n bound table
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BoundTableRow:
    k: int
    aichholzer: int
    u_k: int | None
    u_prime_k: int | None
    explicit: float | None
    best: int
    source: str


@dataclass(frozen=True)
class BoundTable:
    n: int
    rows: tuple[BoundTableRow, ...]


def bound_table(n: int, with_u_prime: bool = False) -> BoundTable:
    """Per-k table of all lower bounds for E_{<=k}(n).

    `best` is the max of the unconditional bounds (closed form and u_k);
    u'_k applies only to 3-regular sets and is reported as a reference
    column, never folded into `best`."""
    useq = u_sequence(n)
    upseq = u_prime_sequence(n) if (with_u_prime and n % 36 == 0) else {}
    m = m_start(n)
    rows = []
    for k in range(n // 2):
        a = aichholzer_bound(n, k)
        u = useq.get(k)
        if u is not None and u > a:
            best, source = u, "u_k"
        else:
            best, source = a, "aichholzer"
        expl = None
        if m - 1 <= k and 2 * k <= n - 2:
            expl = explicit_bound(n, k).to_float()
        rows.append(BoundTableRow(k, a, u, upseq.get(k), expl, best, source))
    return BoundTable(n, tuple(rows))
