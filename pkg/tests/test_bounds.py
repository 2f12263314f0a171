"""Bound formulas, recursions, pipelines, and exact bracket checks."""

from math import comb

import pytest

from kedges.bounds import (
    aichholzer_bound,
    asymptotic_constants,
    bound_table,
    comparison_bounds,
    cr_lower_bound,
    explicit_bound,
    halving_upper_bound,
    lemma_brackets,
    m_start,
    series_bound,
    series_coefficient,
    u_prime_sequence,
    u_sequence,
)
from kedges.errors import InputError
from kedges.rat import R


def test_aichholzer_anchors():
    assert aichholzer_bound(24, 8) == 138
    assert aichholzer_bound(24, 9) == 174
    assert aichholzer_bound(20, 6) == 84 + 3 - 2 == 85
    assert aichholzer_bound(9, 0) == 3
    with pytest.raises(InputError):
        aichholzer_bound(24, 12)
    with pytest.raises(InputError):
        aichholzer_bound(24, -1)


def test_u_sequence_anchors():
    u = u_sequence(27)
    assert m_start(27) == 11
    assert (u[10], u[11], u[12]) == (207, 255, 351)
    assert u[12] == comb(27, 2)
    u = u_sequence(28)
    assert (u[11], u[12]) == (249, 314)
    u = u_sequence(20)
    assert (u[7], u[8]) == (113, 152)


def test_u_sequence_properties():
    for n in range(9, 120):
        u = u_sequence(n)
        ks = sorted(u)
        assert ks[0] == m_start(n) - 1
        assert ks[-1] == (n - 3) // 2
        # nondecreasing, capped by C(n,2), seed equals the closed form
        assert all(u[a] <= u[b] for a, b in zip(ks, ks[1:]))
        assert all(v <= comb(n, 2) for v in u.values())
        assert u[ks[0]] == aichholzer_bound(n, ks[0])
        # the recursion dominates the closed form on its whole range
        assert all(u[k] >= aichholzer_bound(n, k) for k in ks)
        if n % 2 == 1:
            assert u[ks[-1]] == comb(n, 2)


def test_explicit_bound_values():
    e = explicit_bound(27, 11)
    assert abs(e.to_float() - (351 - 4127 / 27)) < 1e-9
    assert e.le(u_sequence(27)[11])  # 255
    assert not e.ge(256)
    # radicand 0 at k = (n-2)/2 for even n: the bound reaches C(n,2)
    e = explicit_bound(30, 14)
    assert e.le(comb(30, 2)) and e.ge(comb(30, 2))
    assert explicit_bound(36, 16).le(u_prime_sequence(36)[16])
    with pytest.raises(InputError, match="below range"):
        explicit_bound(27, 5)
    with pytest.raises(InputError, match="above range"):
        explicit_bound(27, 13)


def test_halving_upper_bound_anchors():
    table1 = {14: 22, 16: 27, 18: 33, 20: 38, 22: 44, 23: 75,
              24: 51, 25: 85, 26: 57, 27: 96}
    for n, v in table1.items():
        assert halving_upper_bound(n) == v
    table2 = {28: 64, 29: 107, 30: 72, 31: 118, 32: 79, 33: 130}
    for n, v in table2.items():
        assert halving_upper_bound(n) == v
    # n = 29 lands exactly on 1926/18 = 107: the floor boundary case
    assert R(26 * 74, 18) + R(1, 9) == 107
    with pytest.raises(InputError):
        halving_upper_bound(7)


def test_cr_lower_bound_anchors():
    assert cr_lower_bound(24, "table1").value == 3699
    assert cr_lower_bound(23, "table1").value == 3077
    assert cr_lower_bound(20, "table1").value == 1657
    assert cr_lower_bound(28, "section5").value == 7233
    assert cr_lower_bound(50, "section5").value == 84146
    assert cr_lower_bound(99, "section5").value == 1402932
    with pytest.raises(InputError):
        cr_lower_bound(24, "nope")


def test_cr_bound_sources():
    res = cr_lower_bound(28, "section5")
    by_k = {k: src for k, _, src in res.per_k_bounds_used}
    assert by_k[0] == "aichholzer"
    assert by_k[12] == "u_k"
    res = cr_lower_bound(24, "table1")
    assert res.per_k_bounds_used[-1][2] == "halving"
    assert res.per_k_bounds_used[-1][1] == comb(24, 2) - 51


def test_u_prime_sequence():
    assert u_prime_sequence(36) == {16: 522}
    up = u_prime_sequence(72)
    assert up[33] == 3 * comb(35, 2) + 3 * comb(11, 2) + 18 * comb(3, 2) == 2004
    with pytest.raises(InputError, match="36"):
        u_prime_sequence(27)


def test_series_bound():
    assert series_coefficient(2) == R(4, 9)
    assert series_bound(36, 15, 2) == 438  # matches the 3-regular third-binomial value
    assert series_bound(45, 10, 5) == 3 * comb(12, 2)  # early k: only the first term
    vals = [series_bound(54, 25, t) for t in range(1, 10)]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    with pytest.raises(InputError):
        series_bound(36, 15, 0)


def test_asymptotic_constants():
    rep = asymptotic_constants()
    assert abs(rep["integral1"] - 86 / 243) < 1e-9
    assert abs(rep["integral2"] - 19 / 729) < 1e-9
    assert abs(rep["sum"] - 277 / 729) < 1e-9
    assert rep["crossing_constant_exceeds_0.379972"]
    assert rep["three_decomposable_exceeds_0.380029"]


def test_lemma_brackets_spot():
    assert lemma_brackets(27).ok
    assert lemma_brackets(41).ok
    for n in range(6, 41):
        # small-n range is empty or a single k; both must pass
        assert lemma_brackets(n).ok


def test_comparison_bounds():
    rep = comparison_bounds(900, 430)
    assert rep.f1_le_f2 and rep.f1_le_explicit and rep.f2_le_explicit
    assert rep.envelope_f1 < rep.envelope_f2 < rep.explicit
    rep = comparison_bounds(90, 40)
    assert rep.f1_le_f2 and rep.f1_le_explicit and rep.f2_le_explicit
    rep = comparison_bounds(90, 45)  # boundary: radicands vanish
    assert rep.envelope_f1 == rep.envelope_f2 == rep.explicit == comb(90, 2)
    with pytest.raises(InputError):
        comparison_bounds(90, 20)


def test_bound_table_structure():
    table = bound_table(27)
    assert [r.k for r in table.rows] == list(range(13))
    best = [r.best for r in table.rows]
    assert all(a <= b for a, b in zip(best, best[1:]))
    assert best[11] == 255 and table.rows[11].source == "u_k"
    assert best[10] == 207
    t36 = bound_table(36, with_u_prime=True)
    assert t36.rows[16].u_prime_k == 522
    # the conditional 3-regular column never feeds `best`
    assert t36.rows[16].best == max(t36.rows[16].aichholzer, t36.rows[16].u_k)
