"""Dense symmetric eigendecomposition and eigenvalue parametrization.

The eigensolver is a cyclic Jacobi sweep with a fixed row-major rotation
order, so identical input yields bit-identical output on a fixed platform.
Eigenvalues lambda_j of a d-regular graph are re-expressed with p = d - 1 as

    lambda_j = 2 sqrt(p) cos(theta_j),  theta_j in [0, pi]   (bulk)
    lambda_j = +2 sqrt(p) cosh(phi_j ln p),  phi_j in (0, 1/2]    (above bulk)
    lambda_j = -2 sqrt(p) cosh(psi_j ln p),  psi_j in (0, 1/2]    (below bulk)

The trivial eigenvalue d always maps to phi_0 = 1/2 exactly.  For connected
bipartite graphs the single eigenvalue -d (psi = 1/2) is excluded from the
spectral-gap statistic, the exceptional counts and the decay sums; reports
carry that convention explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_sweeps
from .graphs import Graph

DENSE_LIMIT_DEFAULT = 5000
MAX_SWEEPS_DEFAULT = 100
BOUNDARY_TOL = 1e-9  # |lambda| this close to 2 sqrt(p) counts as bulk
BIPARTITE_TOL = 1e-8  # how close lambda_min must be to -d to flag bipartite


@dataclass
class Spectrum:
    """Full adjacency spectrum, descending, with optional orthonormal basis."""

    n: int
    d: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None
    sweeps: int = 0
    # filled by parametrize_thetas
    p: int | None = None
    theta: np.ndarray | None = None
    phi: np.ndarray | None = None
    psi: np.ndarray | None = None
    bipartite: bool = False
    excluded_index: int | None = None  # bipartite -d position, dropped from stats

    @property
    def parametrized(self) -> bool:
        return self.p is not None

    def exceptional_indices(self) -> np.ndarray:
        """Indices j >= 1 outside the bulk, minus the bipartite -d eigenvalue."""
        if not self.parametrized:
            raise ValueError("call parametrize_thetas first")
        mask = np.isnan(self.theta)
        mask[0] = False
        if self.excluded_index is not None:
            mask[self.excluded_index] = False
        return np.flatnonzero(mask)

    def to_dict(self, include_vectors: bool = False) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "sweeps": self.sweeps,
            "eigenvalues": [float(v) for v in self.eigenvalues],
        }
        if self.parametrized:
            out["p"] = self.p
            out["bipartite"] = self.bipartite
            out["excluded_index"] = self.excluded_index
            for name, arr in (("theta", self.theta), ("phi", self.phi), ("psi", self.psi)):
                out[name] = [None if math.isnan(v) else float(v) for v in arr]
        if include_vectors and self.eigenvectors is not None:
            out["eigenvectors"] = [[float(v) for v in row] for row in self.eigenvectors]
        return out


def spectrum_from_dict(data: dict) -> Spectrum:
    s = Spectrum(
        n=int(data["n"]),
        d=int(data["d"]),
        eigenvalues=np.asarray(data["eigenvalues"], dtype=np.float64),
        eigenvectors=(
            np.asarray(data["eigenvectors"], dtype=np.float64)
            if "eigenvectors" in data
            else None
        ),
        sweeps=int(data.get("sweeps", 0)),
    )
    if data.get("p") is not None:
        parametrize_thetas(s, int(data["p"]))
    return s


def synthetic_spectrum(eigenvalues, d: int | None = None) -> Spectrum:
    """Spectrum built from a plain eigenvalue list (for bound unit tests)."""
    vals = np.sort(np.asarray(eigenvalues, dtype=np.float64))[::-1].copy()
    if d is None:
        d = int(round(vals[0]))
    return Spectrum(n=len(vals), d=d, eigenvalues=vals)


def eigendecompose(
    g: Graph,
    want_vectors: bool = False,
    dense_limit: int = DENSE_LIMIT_DEFAULT,
    max_sweeps: int = MAX_SWEEPS_DEFAULT,
) -> Spectrum:
    """Full spectrum of the adjacency matrix by cyclic Jacobi rotations.

    Off-diagonal convergence threshold is 1e-12 * n * d.  Eigenvalues come
    back descending, ties broken by the position the rotation sweep left them
    in; eigenvector columns follow the same order.
    """
    if g.n > dense_limit:
        raise ValueError(f"n={g.n} exceeds dense eigensolver limit {dense_limit}")
    a = g.adjacency_matrix()
    eps = 1e-12 * g.n * g.d
    v = np.eye(g.n) if want_vectors else np.empty((1, 1))
    sweeps = jacobi_sweeps(a, v, want_vectors, eps, max_sweeps)
    if sweeps < 0:
        raise RuntimeError(f"Jacobi failed to converge in {max_sweeps} sweeps")
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    spectrum = Spectrum(
        n=g.n,
        d=g.d,
        eigenvalues=vals[order],
        eigenvectors=v[:, order] if want_vectors else None,
        sweeps=sweeps,
    )
    return spectrum


def parametrize_thetas(s: Spectrum, p: int) -> Spectrum:
    """Fill theta/phi/psi for every eigenvalue; validates p = d - 1.

    Eigenvalues within BOUNDARY_TOL of +-2 sqrt(p) are treated as bulk
    (theta = 0 or pi): solver output for graphs meeting the spectral bound
    may straddle the boundary by rounding.
    """
    if p != s.d - 1:
        raise ValueError(f"p must equal d - 1 = {s.d - 1}, got {p}")
    vals = s.eigenvalues
    edge = 2.0 * math.sqrt(p)
    lnp = math.log(p)
    n = s.n
    theta = np.full(n, np.nan)
    phi = np.full(n, np.nan)
    psi = np.full(n, np.nan)
    for j, lam in enumerate(vals):
        if j == 0:
            phi[0] = 0.5  # lambda_0 = d gives cosh(phi ln p) = (p+1)/(2 sqrt p)
            continue
        if abs(lam) <= edge + BOUNDARY_TOL:
            theta[j] = math.acos(min(1.0, max(-1.0, lam / edge)))
        elif lam > edge:
            phi[j] = math.acosh(lam / edge) / lnp
        else:
            psi[j] = math.acosh(-lam / edge) / lnp
    s.p = p
    s.theta = theta
    s.phi = phi
    s.psi = psi
    s.bipartite = bool(vals[-1] <= -s.d + BIPARTITE_TOL)
    s.excluded_index = n - 1 if s.bipartite else None
    return s


@dataclass(frozen=True)
class Classification:
    """Spectral-gap classification with the bipartite convention recorded."""

    lambda_bound: float
    is_ramanujan: bool
    bipartite: bool
    excluded_index: int | None
    tol: float

    def to_dict(self) -> dict:
        return {
            "lambda_bound": self.lambda_bound,
            "is_ramanujan": self.is_ramanujan,
            "bipartite": self.bipartite,
            "excluded_index": self.excluded_index,
            "tol": self.tol,
            "convention": "bipartite -d excluded from lambda and exceptional counts",
        }


def classify(s: Spectrum, p: int, tol: float = 1e-9) -> Classification:
    """lambda := max_{j != 0} |lambda_j| (bipartite -d excluded) vs 2 sqrt(p)."""
    if p != s.d - 1:
        raise ValueError(f"p must equal d - 1 = {s.d - 1}, got {p}")
    vals = s.eigenvalues
    bipartite = bool(vals[-1] <= -s.d + BIPARTITE_TOL)
    nontrivial = np.abs(vals[1:-1]) if bipartite else np.abs(vals[1:])
    lam = float(nontrivial.max()) if nontrivial.size else 0.0
    return Classification(
        lambda_bound=lam,
        is_ramanujan=lam <= 2.0 * math.sqrt(p) + tol,
        bipartite=bipartite,
        excluded_index=s.n - 1 if bipartite else None,
        tol=tol,
    )


@dataclass(frozen=True)
class DensityCurve:
    """Counts of exceptional parameters phi/psi >= alpha over a grid."""

    alphas: np.ndarray
    counts: np.ndarray
    exponents: np.ndarray  # log_n count where count > 0, else nan

    def to_dict(self) -> dict:
        return {
            "alphas": [float(a) for a in self.alphas],
            "counts": [int(c) for c in self.counts],
            "exponents": [None if math.isnan(e) else float(e) for e in self.exponents],
        }


def density_curve(s: Spectrum, alphas) -> DensityCurve:
    """M(alpha) = #{j : phi_j >= alpha} + #{j : psi_j >= alpha}, exceptional only.

    The trivial eigenvalue (phi_0 = 1/2) and the bipartite -d (psi = 1/2) are
    excluded: either would contribute a constant at every alpha < 1/2 and
    drown the expander reading of the count.
    """
    if not s.parametrized:
        raise ValueError("call parametrize_thetas first")
    alphas = np.asarray(sorted(float(a) for a in alphas))
    if alphas.size and (alphas[0] < 0 or alphas[-1] >= 0.5):
        raise ValueError("alpha grid must lie in [0, 1/2)")
    exc = s.exceptional_indices()
    params = np.concatenate([s.phi[exc][~np.isnan(s.phi[exc])], s.psi[exc][~np.isnan(s.psi[exc])]])
    counts = np.array([(params >= a).sum() for a in alphas], dtype=np.int64)
    with np.errstate(divide="ignore"):
        exponents = np.where(counts > 0, np.log(np.maximum(counts, 1)) / math.log(s.n), np.nan)
    return DensityCurve(alphas=alphas, counts=counts, exponents=exponents)


def exceptional_tail_sum(s: Spectrum, t: int) -> float:
    """sum over exceptional j of p^(-(1/2 - phi_j) 2t), phi and psi branches.

    Zero for graphs meeting the spectral bound; the dominant term of the
    density-based mixing estimate otherwise.
    """
    if not s.parametrized:
        raise ValueError("call parametrize_thetas first")
    if t < 1:
        raise ValueError("t must be >= 1")
    exc = s.exceptional_indices()
    total = 0.0
    for j in exc:
        for arr in (s.phi, s.psi):
            v = arr[j]
            if not math.isnan(v):
                total += float(s.p) ** (-(0.5 - v) * 2.0 * t)
    return total
