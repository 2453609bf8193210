"""Row-variance functionals, spectral-measure quadrature, and uniformity tables.

For a polynomial P the variance of row x of P(A) around its mean P(d)/n is

    W(P, x) = sum_y (P(A)(x, y) - P(d)/n)^2 = sum_{j != 0} P(lambda_j)^2 f_j(x)^2,

computed here by two independent routes: directly from exact integer walk
counts (P = Q_t gives the mean N(t)/n), and spectrally from eigenvalues and
eigenvectors.  W_2(t) is the start-averaged variance; W_2(t) / N(t) measures
how uniformly the N(t) walk endpoints spread over the graph, with limiting
value (p+1)/p for the second moment of R_t under the Kesten measure

    d nu_p = 2 (p+1) sin^2(theta) / (pi ((sqrt p + 1/sqrt p)^2 - 4 cos^2 theta)) d theta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre

from .chebyshev import cheb_values, q_values, r_values, walk_table, walk_total
from .checks import FAIL, INAPPLICABLE, PASS, BoundCheck
from .graphs import Graph, girth, is_bipartite
from .mixing import row_sumsq
from .spectral import Spectrum, classify

KESTEN_NODES_DEFAULT = 4096


# ---------------------------------------------------------------------------
# variance, two routes
# ---------------------------------------------------------------------------

def variance_direct_exact(g: Graph, x: int, t: int, row: np.ndarray | None = None) -> Fraction:
    """W(Q_t, x) as an exact rational: sum K^2 - N(t)^2 / n."""
    if row is None:
        row = walk_table(g, x, t)[t]
    n_t = walk_total(g.p, t)
    return Fraction(row_sumsq(row)) - Fraction(n_t * n_t, g.n)


def variance_direct(g: Graph, x: int, t: int, row: np.ndarray | None = None) -> float:
    """Float view of :func:`variance_direct_exact`."""
    return float(variance_direct_exact(g, x, t, row))


def _q_mixed(s: Spectrum, t: int) -> np.ndarray:
    """Q_t at every eigenvalue: p^{t/2} R_t(theta_j) in the bulk, direct
    recurrence at eigenvalues beyond it (where theta is imaginary)."""
    if not s.parametrized:
        raise ValueError("call parametrize_thetas first")
    p = s.p
    q = np.empty(s.n)
    bulk = ~np.isnan(s.theta)
    if bulk.any():
        q[bulk] = float(p) ** (t / 2.0) * r_values(s.theta[bulk], p, t)
    rest = np.flatnonzero(~bulk)
    if rest.size:
        q[rest] = q_values(s.eigenvalues[rest], p, t)
    return q


def variance_spectral(s: Spectrum, p: int, t: int, x: int | None = None) -> float:
    """Spectral route for W(Q_t, x), or the start average W_2(t) when x is None."""
    if p != s.p:
        raise ValueError(f"spectrum parametrized with p={s.p}, got {p}")
    q = _q_mixed(s, t)
    if x is None:
        return math.fsum((q[1:] ** 2).tolist()) / s.n
    if s.eigenvectors is None:
        raise ValueError("per-start variance needs eigenvectors")
    return math.fsum(((q[1:] ** 2) * (s.eigenvectors[x, 1:] ** 2)).tolist())


def w2_direct_exact(g: Graph, t: int) -> Fraction:
    """W_2(t) = (1/n) sum_x W(Q_t, x), exact from integer walk counts."""
    total_sq = 0
    for x in range(g.n):
        total_sq += row_sumsq(walk_table(g, x, t)[t])
    n_t = walk_total(g.p, t)
    return Fraction(total_sq, g.n) - Fraction(n_t * n_t, g.n)


@dataclass(frozen=True)
class VarianceReport:
    t: int
    n_t: int
    w2: float
    spectral_w2: float
    ratio: float  # w2 / N(t)
    w_max: float
    bound_tree_envelope: float  # p^t (t+1)^2
    bound_girth: float | None  # 12 (10/delta + 1)^2 p^t when in range
    w_per_x: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        out = {
            "t": self.t,
            "N_t": self.n_t,
            "W2": self.w2,
            "spectral_W2": self.spectral_w2,
            "ratio": self.ratio,
            "W_max": self.w_max,
            "bound_tree_envelope": self.bound_tree_envelope,
            "bound_girth": self.bound_girth,
            "claim": "walk-endpoint-variance",
        }
        if self.w_per_x is not None:
            out["W_per_x"] = list(self.w_per_x)
        return out


def variance_report(g: Graph, s: Spectrum, t: int, per_x: bool = False) -> VarianceReport:
    p = g.p
    n_t = walk_total(p, t)
    w_exact = [variance_direct_exact(g, x, t) for x in range(g.n)]
    w2 = float(sum(w_exact) / g.n)
    log_p_n = math.log(g.n, p)
    bound_girth = None
    if log_p_n <= t <= 2 * log_p_n and classify(s, p).is_ramanujan:
        delta = girth(g) / log_p_n
        bound_girth = 12.0 * (10.0 / delta + 1.0) ** 2 * float(p) ** t
    return VarianceReport(
        t=t,
        n_t=n_t,
        w2=w2,
        spectral_w2=variance_spectral(s, p, t),
        ratio=float(Fraction(sum(w_exact), g.n) / n_t),
        w_max=float(max(w_exact)),
        bound_tree_envelope=float(p) ** t * (t + 1) ** 2,
        bound_girth=bound_girth,
        w_per_x=tuple(float(w) for w in w_exact) if per_x else None,
    )


# ---------------------------------------------------------------------------
# variance bounds
# ---------------------------------------------------------------------------

def variance_envelope_check(g: Graph, t: int) -> BoundCheck:
    """Unconditional tree envelope W(Q_t, x) <= p^t (t+1)^2 for every start.

    Holds whenever all nontrivial eigenvalues sit inside the bulk, since
    |R_t| <= t + 1 there.
    """
    p = g.p
    bound = float(p) ** t * (t + 1) ** 2
    w_max = max(variance_direct(g, x, t) for x in range(g.n))
    status = PASS if w_max <= bound * (1.0 + 1e-9) else FAIL
    return BoundCheck(
        claim="variance-tree-envelope", status=status, observed=w_max, bound=bound,
        detail={"t": t},
    )


def girth_variance_check(g: Graph, s: Spectrum, t: int) -> BoundCheck:
    """W(Q_t, x) <= 12 (10/delta + 1)^2 p^t for log_p n <= t <= 2 log_p n.

    delta is the measured girth / log_p n; requires the optimal spectral
    bound, as the estimate splits t+1 into blocks handled inside the
    tree-like radius g/5.
    """
    p = g.p
    log_p_n = math.log(g.n, p)
    if not classify(s, p).is_ramanujan:
        return BoundCheck(
            claim="variance-girth-bound",
            status=INAPPLICABLE,
            detail={"reason": "graph does not meet the 2 sqrt(p) spectral bound"},
        )
    if not log_p_n <= t <= 2 * log_p_n:
        return BoundCheck(
            claim="variance-girth-bound",
            status=INAPPLICABLE,
            detail={"reason": f"t={t} outside [log_p n, 2 log_p n] = [{log_p_n:.3f}, {2 * log_p_n:.3f}]"},
        )
    delta = girth(g) / log_p_n
    bound = 12.0 * (10.0 / delta + 1.0) ** 2 * float(p) ** t
    w_max = max(variance_direct(g, x, t) for x in range(g.n))
    status = PASS if w_max <= bound * (1.0 + 1e-9) else FAIL
    return BoundCheck(
        claim="variance-girth-bound", status=status, observed=w_max, bound=bound,
        detail={"t": t, "delta": delta},
    )


def tree_energy_check(g: Graph, s: Spectrum, ell: int) -> BoundCheck:
    """max_x sum_{j != 0} U_ell(cos theta_j)^2 f_j(x)^2 <= 2 for ell <= girth/5.

    Within the tree-like radius the ball sums P_ell(A) e_x are 0/1 vectors,
    which caps the eigenvector-weighted U energy at p/(p-1) <= 2.  Needs all
    nontrivial eigenvalues in the bulk and a non-bipartite graph.
    """
    p = g.p
    if s.eigenvectors is None:
        raise ValueError("tree energy check needs eigenvectors")
    if not s.parametrized:
        raise ValueError("call parametrize_thetas first")
    if is_bipartite(g)[0]:
        return BoundCheck(
            claim="tree-range-energy-bound",
            status=INAPPLICABLE,
            detail={"reason": "bipartite graph: -d eigenvalue falls outside the bulk"},
        )
    if np.isnan(s.theta[1:]).any():
        return BoundCheck(
            claim="tree-range-energy-bound",
            status=INAPPLICABLE,
            detail={"reason": "exceptional eigenvalues present"},
        )
    g_girth = girth(g)
    if ell > g_girth / 5.0:
        return BoundCheck(
            claim="tree-range-energy-bound",
            status=INAPPLICABLE,
            detail={"reason": f"ell={ell} exceeds girth/5 = {g_girth / 5.0}"},
        )
    xs = np.clip(s.eigenvalues[1:] / (2.0 * math.sqrt(p)), -1.0, 1.0)
    u_sq = cheb_values("U", ell, xs) ** 2
    per_x = (s.eigenvectors[:, 1:] ** 2) @ u_sq
    observed = float(per_x.max())
    sharper = p / (p - 1.0)
    status = PASS if observed <= 2.0 + 1e-9 else FAIL
    return BoundCheck(
        claim="tree-range-energy-bound",
        status=status,
        observed=observed,
        bound=2.0,
        detail={"ell": ell, "girth": g_girth, "sharper_bound": sharper,
                "within_sharper": bool(observed <= sharper + 1e-9)},
    )


# ---------------------------------------------------------------------------
# Kesten measure quadrature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KestenQuadrature:
    """Gauss-Legendre rule on [0, pi] with the Kesten density attached."""

    p: int
    nodes: np.ndarray
    weights: np.ndarray  # Legendre weights times density values
    normalization_check: float

    def integrate(self, f) -> float:
        """Integral of f against the measure; f maps a node array to values."""
        return float(np.dot(self.weights, f(self.nodes)))


def kesten_density(p: int, thetas: np.ndarray) -> np.ndarray:
    thetas = np.asarray(thetas, dtype=np.float64)
    rp = math.sqrt(p)
    return (
        2.0 * (p + 1) * np.sin(thetas) ** 2
        / (math.pi * ((rp + 1.0 / rp) ** 2 - 4.0 * np.cos(thetas) ** 2))
    )


@lru_cache(maxsize=8)
def _legendre_rule(nodes: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights mapped to [0, pi]; p-independent."""
    x, w = roots_legendre(nodes)
    return 0.5 * math.pi * (x + 1.0), 0.5 * math.pi * w


@lru_cache(maxsize=16)
def kesten_quadrature(p: int, nodes: int = KESTEN_NODES_DEFAULT) -> KestenQuadrature:
    if p < 2:
        raise ValueError("p must be >= 2")
    theta, w = _legendre_rule(nodes)
    weights = w * kesten_density(p, theta)
    return KestenQuadrature(
        p=p, nodes=theta, weights=weights, normalization_check=float(weights.sum())
    )


def kesten_integral(p: int, f, nodes: int = KESTEN_NODES_DEFAULT) -> float:
    """Integral of f(theta) against the Kesten measure on [0, pi]."""
    return kesten_quadrature(p, nodes).integrate(f)


def kesten_r_moment(p: int, s: int, t: int, nodes: int = KESTEN_NODES_DEFAULT) -> float:
    """Integral of R_s R_t; equals (p+1)/p on the diagonal s = t >= 1, else 0."""
    quad = kesten_quadrature(p, nodes)
    return quad.integrate(lambda th: r_values(th, p, s) * r_values(th, p, t))


# ---------------------------------------------------------------------------
# endpoint-uniformity table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureRow:
    t: int
    n_t: int
    w2: float
    ratio: float  # W_2(t) / N(t); drifts toward 1 when endpoints spread uniformly
    mu_r2: float  # empirical second moment of R_t under the eigenvalue measure
    kesten_r2: float  # (p+1)/p reference value
    envelope: float  # p (t+1)^2 / (p+1), unconditional cap on the ratio

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "N_t": self.n_t,
            "W2": self.w2,
            "ratio": self.ratio,
            "mu_R2": self.mu_r2,
            "kesten_R2": self.kesten_r2,
            "envelope": self.envelope,
            "claim": "uniform-spread-ratio",
        }


def conjecture_report(g: Graph, s: Spectrum, t_max: int) -> list[ConjectureRow]:
    """Per-t endpoint-uniformity table for 1 <= t <= t_max.

    Purely empirical: the drift of W_2(t)/N(t) toward 1 is recorded, never
    asserted.  mu_R2 * p^t reproduces W_2 by construction of the spectral
    route; the direct W2 column comes from exact integer counts.
    """
    p = g.p
    rows = []
    for t in range(1, t_max + 1):
        w2_exact = w2_direct_exact(g, t)
        n_t = walk_total(p, t)
        spectral_w2 = variance_spectral(s, p, t)
        rows.append(
            ConjectureRow(
                t=t,
                n_t=n_t,
                w2=float(w2_exact),
                ratio=float(w2_exact / n_t),
                mu_r2=spectral_w2 / float(p) ** t,
                kesten_r2=(p + 1) / p,
                envelope=p * (t + 1) ** 2 / (p + 1),
            )
        )
    return rows


def conjecture_csv(rows: list[ConjectureRow], path) -> None:
    with open(path, "w") as fh:
        fh.write("t,W2,Nt,ratio,muR2,kestenR2\n")
        for r in rows:
            fh.write(f"{r.t},{r.w2!r},{r.n_t},{r.ratio!r},{r.mu_r2!r},{r.kesten_r2!r}\n")
