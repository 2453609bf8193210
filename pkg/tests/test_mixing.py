import math
from fractions import Fraction

import numpy as np
import pytest

from ramwalk.chebyshev import walk_row, walk_table, walk_total
from ramwalk.checks import INAPPLICABLE, PASS
from ramwalk.generate import gen_fixture, gen_random_regular
from ramwalk.graphs import girth
from ramwalk.mixing import (
    girth_mixing_bound_check,
    l2_tv_check,
    mixing_profile,
    profile_csv,
    t_mix,
    tv_from_row,
    unreached_mass_check,
)
from ramwalk.spectral import classify, eigendecompose, parametrize_thetas
from ramwalk.variance import variance_spectral


def tv_oracle_exact(counts, total, n):
    """Rational total-variation, summed term by term."""
    return sum(abs(Fraction(int(c), total) - Fraction(1, n)) for c in counts) / 2


def test_tv_k4_t2_is_quarter():
    g = gen_fixture("k4")
    row = walk_row(g, 0, 2)
    assert tv_from_row(row.counts, row.total, 4) == pytest.approx(0.25, abs=1e-15)
    assert tv_oracle_exact(row.counts, row.total, 4) == Fraction(1, 4)


def test_tv_uniform_row_is_zero():
    counts = np.full(6, 4, dtype=np.int64)
    assert tv_from_row(counts, 24, 6) == 0.0


def test_tv_equals_unreached_fraction_when_sparse(small_graphs):
    # with N(t) <= n every positive count already exceeds uniform mass
    for g in small_graphs.values():
        for t in range(0, 8):
            if walk_total(g.p, t) > g.n:
                break
            row = walk_row(g, 0, t)
            unreached = g.n - int(np.count_nonzero(row.counts))
            assert tv_from_row(row.counts, row.total, g.n) == pytest.approx(
                unreached / g.n, abs=1e-14
            )


def test_profile_k4_values():
    g = gen_fixture("k4")
    prof = mixing_profile(g, 1, 6)
    r1 = prof.row(1)
    assert r1.d_max == pytest.approx(0.25, abs=1e-15)
    assert r1.n_t == 3
    assert all(0.0 <= r.d_max <= 1.0 for r in prof.rows)
    assert all(r.d_mean <= r.d_max + 1e-15 for r in prof.rows)
    # K4 reaches exact uniformity at t = 4: walks spread evenly
    assert prof.row(4).d_max == 0.0
    assert prof.row(4).d2 == 0.0


def test_profile_lower_bound_field():
    g = gen_fixture("petersen")
    prof = mixing_profile(g, 1, 6)
    for r in prof.rows:
        assert r.lower_bound == max(0.0, 1.0 - r.n_t / g.n)
        if r.n_t <= g.n:
            assert r.d_max >= r.lower_bound - 1e-15


def test_unreached_mass_exact_integers(small_graphs):
    for g in small_graphs.values():
        prof = mixing_profile(g, 1, 8)
        assert unreached_mass_check(g, prof).status == PASS


def test_t_mix_eta_one_returns_t_min():
    g = gen_fixture("petersen")
    prof = mixing_profile(g, 2, 6)
    assert t_mix(prof, 1.0).t_mix == 2


def test_t_mix_k4():
    # d(1) = 1/2 (1/4 + 3 |1/3 - 1/4|) = 1/4 exactly, so the strict
    # minimum over {t : d(t) <= 1/4} is already t = 1
    g = gen_fixture("k4")
    prof = mixing_profile(g, 1, 6)
    assert prof.row(1).d_max == pytest.approx(0.25, abs=1e-15)
    assert t_mix(prof, 0.25).t_mix == 1
    assert t_mix(prof, 0.2).t_mix == 4


def test_t_mix_unreachable_raises():
    g = gen_fixture("heawood")  # bipartite: d(t) >= 1/2 forever
    prof = mixing_profile(g, 1, 8)
    with pytest.raises(ValueError, match="larger t_max"):
        t_mix(prof, 0.25)


def test_t_mix_eta_validation():
    g = gen_fixture("k4")
    prof = mixing_profile(g, 1, 3)
    with pytest.raises(ValueError, match="eta"):
        t_mix(prof, 0.0)


def test_bipartite_profile_flags_parity():
    g = gen_fixture("heawood")
    prof = mixing_profile(g, 1, 9)
    assert prof.parity_warning
    assert all(r.d_max >= 0.5 - 1e-12 for r in prof.rows)
    g2 = gen_fixture("petersen")
    assert not mixing_profile(g2, 1, 3).parity_warning


def test_cauchy_schwarz_chain_direct(small_graphs):
    # 4 d_x(t)^2 <= n ||P^t_x - U||_2^2, straight from the row counts
    for g in small_graphs.values():
        for x in range(g.n):
            table = walk_table(g, x, 8)
            for t in range(1, 9):
                n_t = walk_total(g.p, t)
                d_x = tv_from_row(table[t], n_t, g.n)
                l2 = float(np.sum((table[t] / n_t - 1.0 / g.n) ** 2))
                assert 4.0 * d_x * d_x <= g.n * l2 * (1 + 1e-9) + 1e-15


def test_l2_tv_check_passes(small_graphs, small_spectra):
    for tok, g in small_graphs.items():
        for t in (1, 3, 5):
            assert l2_tv_check(g, small_spectra[tok], t).status == PASS


def test_l2_identity_links_profile_to_variance(small_graphs, small_spectra):
    for tok, g in small_graphs.items():
        prof = mixing_profile(g, 1, 8)
        s = small_spectra[tok]
        for r in prof.rows:
            w2 = variance_spectral(s, g.p, r.t) / r.n_t**2
            if max(r.d2, w2) <= 1e-16:
                continue  # exactly uniform rows on complete graphs
            assert abs(r.d2 - w2) / max(r.d2, w2) < 1e-8


def test_monotone_tail_bound_nonbipartite(small_graphs, small_spectra):
    # d(t) <= 2 (1 + 10/delta) sqrt(n / p^t) over the upper mixing window
    for tok in ("k4", "petersen"):
        g = small_graphs[tok]
        cls = classify(small_spectra[tok], g.p)
        assert cls.is_ramanujan and not cls.bipartite
        log_p_n = math.log(g.n, g.p)
        delta = girth(g) / log_p_n
        prof = mixing_profile(g, 1, min(10, int(2 * log_p_n) + 1))
        for r in prof.rows:
            if log_p_n <= r.t <= 2 * log_p_n:
                bound = 2.0 * (1.0 + 10.0 / delta) * math.sqrt(g.n / g.p**r.t)
                assert r.d_max <= bound * (1 + 1e-9)


def test_girth_mixing_bound_petersen(small_graphs, small_spectra):
    g = small_graphs["petersen"]
    prof = mixing_profile(g, 1, 10)
    res = girth_mixing_bound_check(g, small_spectra["petersen"], prof, 0.25)
    assert res.status == PASS
    assert res.observed <= math.ceil(res.bound)


def test_girth_mixing_bound_gates(small_graphs, small_spectra):
    heawood = small_graphs["heawood"]
    prof = mixing_profile(heawood, 1, 6)
    res = girth_mixing_bound_check(heawood, small_spectra["heawood"], prof, 0.25)
    assert res.status == INAPPLICABLE

    g = gen_random_regular(16, 3, 7)
    s = eigendecompose(g, want_vectors=True)
    parametrize_thetas(s, 2)
    if not classify(s, 2).is_ramanujan:
        prof = mixing_profile(g, 1, 6)
        assert girth_mixing_bound_check(g, s, prof, 0.25).status == INAPPLICABLE


def test_sampled_starts_lower_bound():
    g = gen_fixture("petersen")
    full = mixing_profile(g, 1, 6, starts="all")
    sub = mixing_profile(g, 1, 6, starts="sample")
    assert sub.sampled and not full.sampled
    for rf, rs in zip(full.rows, sub.rows):
        assert rs.d_max <= rf.d_max + 1e-15


def test_explicit_start_list():
    g = gen_fixture("petersen")
    prof = mixing_profile(g, 1, 4, starts=[0, 3, 7])
    assert prof.starts.tolist() == [0, 3, 7]
    assert prof.sampled


def test_profile_csv(tmp_path):
    g = gen_fixture("k4")
    prof = mixing_profile(g, 1, 4)
    path = tmp_path / "prof.csv"
    profile_csv(prof, path)
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "t,d_max,d_mean,d2,N_t,lower_bound"
    assert len(lines) == 5


def test_per_start_detail():
    g = gen_fixture("petersen")
    prof = mixing_profile(g, 1, 3, keep_per_start=True)
    assert set(prof.per_start) == {1, 2, 3}
    assert prof.per_start[2].shape == (10,)
    assert prof.per_start[2].max() == pytest.approx(prof.row(2).d_max)
