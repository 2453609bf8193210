import pytest

from ramwalk.generate import gen_fixture, gen_lps, gen_random_regular
from ramwalk.spectral import eigendecompose, parametrize_thetas

SMALL_FIXTURES = ("k4", "petersen", "heawood", "cube3")


def make_graph(token):
    if token == "random10":
        return gen_random_regular(10, 3, 1)
    return gen_fixture(token)


@pytest.fixture(scope="session")
def small_graphs():
    return {tok: make_graph(tok) for tok in SMALL_FIXTURES + ("random10",)}


@pytest.fixture(scope="session")
def small_spectra(small_graphs):
    out = {}
    for tok, g in small_graphs.items():
        s = eigendecompose(g, want_vectors=True)
        parametrize_thetas(s, g.p)
        out[tok] = s
    return out


@pytest.fixture(scope="session")
def lps11():
    return gen_lps(5, 11)


@pytest.fixture(scope="session")
def lps11_spectrum(lps11):
    s = eigendecompose(lps11, want_vectors=True)
    parametrize_thetas(s, 5)
    return s
