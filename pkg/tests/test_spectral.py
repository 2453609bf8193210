import math

import numpy as np
import pytest

from ramwalk.generate import gen_fixture, gen_random_regular
from ramwalk.spectral import (
    classify,
    density_curve,
    eigendecompose,
    exceptional_tail_sum,
    parametrize_thetas,
    spectrum_from_dict,
    synthetic_spectrum,
)


def test_k4_spectrum_exact():
    s = eigendecompose(gen_fixture("k4"))
    assert np.allclose(s.eigenvalues, [3, -1, -1, -1], atol=1e-12)


def test_petersen_spectrum_multiplicities():
    s = eigendecompose(gen_fixture("petersen"))
    assert abs(s.eigenvalues[0] - 3) < 1e-9
    assert np.abs(s.eigenvalues[1:6] - 1).max() < 1e-9
    assert np.abs(s.eigenvalues[6:] + 2).max() < 1e-9


def test_cube3_spectrum_tensor_oracle():
    # Q3 eigenvalues are 3 - 2*popcount(mask) over the 8 vertex masks
    oracle = sorted((3 - 2 * bin(m).count("1") for m in range(8)), reverse=True)
    s = eigendecompose(gen_fixture("cube3"))
    assert np.allclose(s.eigenvalues, oracle, atol=1e-10)


def test_heawood_spectrum_oracle():
    g = gen_fixture("heawood")
    s = eigendecompose(g)
    oracle = np.sort(np.linalg.eigvalsh(g.adjacency_matrix()))[::-1]
    assert np.abs(s.eigenvalues - oracle).max() < 1e-9
    inner = np.abs(s.eigenvalues[1:-1])
    assert np.allclose(inner, math.sqrt(2), atol=1e-9)


def test_lapack_oracle_agreement(small_graphs):
    for g in small_graphs.values():
        s = eigendecompose(g)
        oracle = np.sort(np.linalg.eigvalsh(g.adjacency_matrix()))[::-1]
        assert np.abs(s.eigenvalues - oracle).max() < 1e-9


def test_eigendecompose_deterministic():
    g = gen_fixture("petersen")
    s1 = eigendecompose(g, want_vectors=True)
    s2 = eigendecompose(g, want_vectors=True)
    assert np.array_equal(s1.eigenvalues, s2.eigenvalues)
    assert np.array_equal(s1.eigenvectors, s2.eigenvectors)


def test_trace_and_second_moment(small_spectra, small_graphs):
    for tok, s in small_spectra.items():
        g = small_graphs[tok]
        assert abs(s.eigenvalues.sum()) <= 1e-10 * g.n * g.d
        assert abs((s.eigenvalues**2).sum() - g.n * g.d) <= 1e-6 * g.n * g.d


def test_orthonormality_and_pointwise_sum(small_spectra):
    for s in small_spectra.values():
        v = s.eigenvectors
        gram = v.T @ v
        assert np.abs(gram - np.eye(s.n)).max() <= 1e-8
        # delta expansion: sum_j f_j(x)^2 = 1 at every vertex
        assert np.abs((v**2).sum(axis=1) - 1.0).max() <= 1e-8


def test_constant_eigenvector_for_connected(small_spectra, small_graphs):
    for tok, s in small_spectra.items():
        f0 = s.eigenvectors[:, 0]
        expected = np.full(s.n, 1.0 / math.sqrt(s.n))
        assert min(np.abs(f0 - expected).max(), np.abs(f0 + expected).max()) < 1e-7


def test_dense_limit():
    g = gen_fixture("petersen")
    with pytest.raises(ValueError, match="dense eigensolver limit"):
        eigendecompose(g, dense_limit=5)


def test_parametrization_round_trip(small_spectra):
    for s in small_spectra.values():
        p = s.p
        edge = 2.0 * math.sqrt(p)
        for j in range(s.n):
            lam = s.eigenvalues[j]
            if not math.isnan(s.theta[j]):
                assert abs(edge * math.cos(s.theta[j]) - lam) < 1e-9
            elif not math.isnan(s.phi[j]):
                assert abs(edge * math.cosh(s.phi[j] * math.log(p)) - lam) < 1e-9
            else:
                assert abs(-edge * math.cosh(s.psi[j] * math.log(p)) - lam) < 1e-9


def test_trivial_eigenvalue_parameter_is_half(small_spectra):
    for s in small_spectra.values():
        assert s.phi[0] == 0.5


def test_boundary_values():
    p = 2
    s = synthetic_spectrum([3.0, 2.0 * math.sqrt(p), 0.0, -2.0 * math.sqrt(p)], d=3)
    parametrize_thetas(s, p)
    assert s.theta[1] == 0.0  # exactly at the bulk edge
    assert s.theta[2] == pytest.approx(math.pi / 2)
    assert s.theta[3] == pytest.approx(math.pi)


def test_wrong_p_rejected():
    s = eigendecompose(gen_fixture("k4"))
    with pytest.raises(ValueError, match="p must equal d - 1 = 2"):
        parametrize_thetas(s, 1)


def test_classify_fixtures(small_spectra):
    cases = {
        "k4": (1.0, False),
        "petersen": (2.0, False),
        "heawood": (math.sqrt(2), True),
        "cube3": (1.0, True),
    }
    for tok, (lam, bip) in cases.items():
        cls = classify(small_spectra[tok], 2)
        assert cls.lambda_bound == pytest.approx(lam, abs=1e-9)
        assert cls.bipartite is bip
        assert cls.is_ramanujan
        if bip:
            assert cls.excluded_index == small_spectra[tok].n - 1


def test_density_curve_ramanujan_is_zero(small_spectra):
    for s in small_spectra.values():
        curve = density_curve(s, [0.0, 0.1, 0.25, 0.49])
        assert curve.counts.tolist() == [0, 0, 0, 0]


def test_density_curve_planted_exceptional():
    p = 2
    phi1 = 0.3
    lam1 = 2.0 * math.sqrt(p) * math.cosh(phi1 * math.log(p))
    s = synthetic_spectrum([3.0, lam1, 0.5, 0.0, -0.5, -1.0], d=3)
    parametrize_thetas(s, p)
    curve = density_curve(s, [0.0, phi1 / 2, phi1, 0.49])
    assert curve.counts.tolist() == [1, 1, 1, 0]
    # counts are monotone non-increasing and capped by n
    assert (np.diff(curve.counts) <= 0).all()
    assert (curve.counts <= s.n).all()
    assert curve.exponents[0] == pytest.approx(0.0)  # log_n 1


def test_density_curve_alpha_validation():
    s = synthetic_spectrum([3.0, 0.0, 0.0, -1.0], d=3)
    parametrize_thetas(s, 2)
    with pytest.raises(ValueError, match="alpha grid"):
        density_curve(s, [0.0, 0.5])


def test_tail_sum_examples():
    # single exceptional phi = 0.3 at p = 2, t = 10: 2^(-0.2 * 20) = 1/16
    p = 2
    lam = lambda phi: 2.0 * math.sqrt(p) * math.cosh(phi * math.log(p))
    s = synthetic_spectrum([3.0, lam(0.3), 0.0, 0.0, 0.0, -1.0], d=3)
    parametrize_thetas(s, p)
    assert exceptional_tail_sum(s, 10) == pytest.approx(0.0625, rel=1e-12)

    s2 = synthetic_spectrum([3.0, lam(0.4), lam(0.3), 0.0, 0.0, -1.0], d=3)
    parametrize_thetas(s2, p)
    assert exceptional_tail_sum(s2, 10) == pytest.approx(0.3125, rel=1e-12)


def test_tail_sum_zero_for_ramanujan(small_spectra):
    for s in small_spectra.values():
        assert exceptional_tail_sum(s, 7) == 0.0


def test_tail_sum_decreasing_in_t():
    p = 2
    lam = 2.0 * math.sqrt(p) * math.cosh(0.3 * math.log(p))
    s = synthetic_spectrum([3.0, lam, 0.0, -1.0], d=3)
    parametrize_thetas(s, p)
    vals = [exceptional_tail_sum(s, t) for t in range(1, 12)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_bipartite_minus_d_gets_psi_half(small_spectra):
    s = small_spectra["heawood"]
    assert s.bipartite and s.excluded_index == s.n - 1
    assert s.psi[-1] == pytest.approx(0.5, abs=1e-9)
    # and it is excluded from the exceptional statistics
    assert len(s.exceptional_indices()) == 0


def test_spectrum_dict_round_trip(small_spectra):
    s = small_spectra["petersen"]
    data = s.to_dict()
    s2 = spectrum_from_dict(data)
    assert np.array_equal(s2.eigenvalues, s.eigenvalues)
    assert s2.p == s.p
    assert np.allclose(
        np.nan_to_num(s2.theta, nan=-1), np.nan_to_num(s.theta, nan=-1)
    )


def test_random_graph_connected_classification():
    g = gen_random_regular(10, 3, 1)
    s = eigendecompose(g)
    parametrize_thetas(s, 2)
    cls = classify(s, 2)
    assert cls.lambda_bound < 3.0
    oracle = np.sort(np.abs(np.linalg.eigvalsh(g.adjacency_matrix()))[:-1])[-1]
    assert cls.lambda_bound == pytest.approx(float(oracle), abs=1e-9)
