import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ramwalk.chebyshev import (
    apply_q_spectrally,
    ball_sum_row,
    cheb_scalar,
    cheb_values,
    q_values,
    r_values,
    safe_walk_t_max,
    walk_row,
    walk_row_bruteforce,
    walk_table,
    walk_total,
)
from ramwalk.generate import gen_fixture
from ramwalk.graphs import girth


def trig_t(ell, x):
    return math.cos(ell * math.acos(x))


def trig_u(ell, x):
    theta = math.acos(x)
    if theta == 0.0 or theta == math.pi:
        return float((ell + 1) * (1 if theta == 0.0 else (-1) ** ell))
    return math.sin((ell + 1) * theta) / math.sin(theta)


def test_scalar_values_small_degree():
    assert cheb_scalar("T", 3, 0.5) == pytest.approx(-1.0, abs=1e-15)  # 4x^3 - 3x
    assert cheb_scalar("U", 3, 0.5) == pytest.approx(-1.0, abs=1e-15)  # 8x^3 - 4x
    assert cheb_scalar("T", 0, 0.3) == 1.0
    assert cheb_scalar("U", 1, 0.3) == pytest.approx(0.6)


@pytest.mark.parametrize("ell", [1, 2, 5, 17, 40])
def test_recurrence_matches_trig_forms(ell):
    for x in np.linspace(-0.999, 0.999, 57):
        assert cheb_scalar("T", ell, x) == pytest.approx(trig_t(ell, x), abs=1e-10)
        assert cheb_scalar("U", ell, x) == pytest.approx(trig_u(ell, x), abs=1e-8)


def test_recurrence_finite_at_endpoints():
    # the trig form for U is singular at

    # x = +-1; the recurrence gives the limit values (ell+1) and (-1)^ell (ell+1)
    for ell in range(12):
        assert cheb_scalar("U", ell, 1.0) == ell + 1
        assert cheb_scalar("U", ell, -1.0) == (-1) ** ell * (ell + 1)
        assert cheb_scalar("T", ell, 1.0) == 1.0


def test_second_kind_mixing_identity_grid():
    # U_t = U_{t-2} + 2 T_t on a 100-point grid, relative 1e-9
    xs = np.linspace(-1.0, 1.0, 100)
    for t in range(2, 61):
        lhs = cheb_values("U", t, xs)
        rhs = cheb_values("U", t - 2, xs) + 2.0 * cheb_values("T", t, xs)
        denom = np.maximum(np.abs(lhs), 1.0)
        assert (np.abs(lhs - rhs) / denom).max() < 1e-9


@settings(max_examples=60, deadline=None)
@given(st.floats(-1.0, 1.0), st.integers(2, 50))
def test_second_kind_mixing_identity_property(x, t):
    lhs = cheb_scalar("U", t, x)
    rhs = cheb_scalar("U", t - 2, x) + 2.0 * cheb_scalar("T", t, x)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_p_at_trivial_eigenvalue(p):
    # P_ell(d) = (p^(ell+1) - 1) / (p - 1), the ball size in the p+1 regular tree
    for ell in range(0, 18):
        expected = (p ** (ell + 1) - 1) // (p - 1)
        assert cheb_scalar("P", ell, float(p + 1), p=p) == pytest.approx(expected, rel=1e-12)


def test_p_is_scaled_second_kind():
    p = 3
    for ell in range(0, 15):
        for lam in np.linspace(-2 * math.sqrt(p), 2 * math.sqrt(p), 11):
            direct = cheb_scalar("P", ell, lam, p=p)
            scaled = p ** (ell / 2.0) * cheb_scalar("U", ell, lam / (2 * math.sqrt(p)))
            assert direct == pytest.approx(scaled, rel=1e-10, abs=1e-9)


@pytest.mark.parametrize("p", [2, 5])
def test_q_at_trivial_eigenvalue_is_walk_total(p):
    # Q_t(d) = (p+1) p^(t-1) = N(t) for t >= 1
    for t in range(1, 14):
        assert cheb_scalar("Q", t, float(p + 1), p=p) == pytest.approx(walk_total(p, t), rel=1e-12)
    assert cheb_scalar("Q", 0, float(p + 1), p=p) == pytest.approx((p + 1) / p)


def test_q_parity():
    lams = np.linspace(-3, 3, 13)
    for t in range(1, 9):
        assert np.allclose(q_values(-lams, 2, t), (-1.0) ** t * q_values(lams, 2, t), atol=1e-9)


def test_r_matches_q_on_the_bulk():
    p = 5
    thetas = np.linspace(0.0, math.pi, 41)
    lams = 2.0 * math.sqrt(p) * np.cos(thetas)
    for t in range(1, 12):
        assert np.allclose(
            p ** (t / 2.0) * r_values(thetas, p, t), q_values(lams, p, t), atol=1e-8
        )


def test_bad_kind_and_args():
    with pytest.raises(ValueError, match="unknown kind"):
        cheb_scalar("X", 1, 0.5)
    with pytest.raises(ValueError, match="requires integer p"):
        cheb_scalar("P", 1, 0.5)
    with pytest.raises(ValueError, match="degree"):
        cheb_scalar("T", -1, 0.5)


# ---------------------------------------------------------------------------
# walk rows
# ---------------------------------------------------------------------------

def test_walk_row_k4_small_t():
    g = gen_fixture("k4")
    assert walk_row(g, 0, 0).counts.tolist() == [1, 0, 0, 0]
    assert walk_row(g, 0, 1).counts.tolist() == [0, 1, 1, 1]
    r2 = walk_row(g, 0, 2)
    assert r2.counts.tolist() == [0, 2, 2, 2]
    assert r2.total == 6 == walk_total(2, 2)


def test_walk_totals_every_fixture(small_graphs):
    for g in small_graphs.values():
        for x in range(g.n):
            table = walk_table(g, x, 10)
            for t in range(11):
                assert int(table[t].sum()) == walk_total(g.p, t)
                assert (table[t] >= 0).all()


def test_tree_range_counts_are_indicator(small_graphs):
    # two distinct paths of length t to one endpoint close a cycle of length
    # <= 2t, so counts stay 0/1 exactly while 2t < girth
    for g in small_graphs.values():
        gg = girth(g)
        for t in range((gg + 1) // 2):
            row = walk_row(g, 0, t)
            assert set(np.unique(row.counts)).issubset({0, 1})


def test_counts_can_exceed_one_at_double_girth():
    # Heawood has girth 6: at t = 3 each antipodal vertex on a 6-cycle
    # through the start already collects 3 walks
    g = gen_fixture("heawood")
    assert sorted(set(walk_row(g, 0, 3).counts.tolist())) == [0, 3]


def test_bruteforce_matches_recurrence(small_graphs):
    for g in small_graphs.values():
        for x in (0, g.n // 2):
            for t in range(7):
                assert np.array_equal(
                    walk_row(g, x, t).counts, walk_row_bruteforce(g, x, t).counts
                )


def test_bruteforce_total_petersen():
    g = gen_fixture("petersen")
    assert walk_row_bruteforce(g, 0, 5).total == 48  # 3 * 2^4


def test_bruteforce_budget():
    g = gen_fixture("petersen")
    with pytest.raises(ValueError, match="budget"):
        walk_row_bruteforce(g, 0, 40)


def test_walk_overflow_reports_safe_t():
    g = gen_fixture("k4")
    safe = safe_walk_t_max(2)
    with pytest.raises(OverflowError, match=f"largest safe t is {safe}"):
        walk_row(g, 0, safe + 1)
    # producing row t forms intermediate sums up to (p+1) N(t-1)
    assert (2 + 1) * walk_total(2, safe - 1) < 2**63
    assert (2 + 1) * walk_total(2, safe) >= 2**63


def test_ball_sum_identity(small_graphs):
    # P_ell(A) e_x equals the stacked walk rows of matching parity, exactly
    for g in small_graphs.values():
        for x in (0, 1):
            for ell in range(11):
                expected = sum(
                    walk_row(g, x, ell - 2 * j).counts for j in range(ell // 2 + 1)
                )
                assert np.array_equal(ball_sum_row(g, x, ell), expected)


def test_ball_sum_row_is_ball_indicator_in_tree_range():
    # while 2*ell < girth the ball is tree-like and P_ell(A) e_x is the 0/1
    # indicator of vertices at distance <= ell with matching parity
    g = gen_fixture("heawood")  # girth 6
    from ramwalk.graphs import bfs_distances

    dist = bfs_distances(g, 0).dist
    for ell in range(3):
        row = ball_sum_row(g, 0, ell)
        expected = ((dist <= ell) & ((dist % 2) == (ell % 2))).astype(np.int64)
        assert np.array_equal(row, expected)


def test_apply_q_spectrally_matches_rows(small_spectra, small_graphs):
    for tok, g in small_graphs.items():
        s = small_spectra[tok]
        for t in range(1, 9):
            row = walk_row(g, 0, t).counts
            approx = apply_q_spectrally(s, g.p, t, 0)
            assert np.abs(approx - row).max() < 1e-6


def test_apply_q_t1_is_adjacency_row(small_spectra, small_graphs):
    for tok, g in small_graphs.items():
        approx = apply_q_spectrally(small_spectra[tok], g.p, 1, 2)
        assert np.abs(approx - g.adjacency_matrix()[2]).max() < 1e-8


def test_walk_row_csv(tmp_path):
    g = gen_fixture("k4")
    path = tmp_path / "row.csv"
    walk_row(g, 0, 2).to_csv(path)
    assert path.read_text() == "vertex,count\n0,0\n1,2\n2,2\n3,2\n"


def test_exact_rational_q_at_d_equals_total():
    # integer-recurrence cross-check of the walk totals, exact arithmetic
    for p in (2, 5):
        d = Fraction(p + 1)
        P = [Fraction(1), d]
        for _ in range(2, 13):
            P.append(d * P[-1] - p * P[-2])
        for t in range(2, 13):
            assert P[t] - P[t - 2] == walk_total(p, t)
