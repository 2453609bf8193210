"""Distance-tail bounds from first-kind Chebyshev test polynomials.

For an expander with nontrivial eigenvalues bounded by lam, the polynomial
T_m(x / lam) is at most 1 on the bulk while growing like b^m / 2 at the
trivial eigenvalue, where b = d/lam + sqrt((d/lam)^2 - 1).  Since a degree-m
polynomial of A cannot reach past distance m, the fraction of vertices
farther than m from any start obeys

    (1/n) N_x(m) <= 4 n / b^(2m),

which at m = ceil(log_b(n)/2 + xi) gives max_x N_x(m)/n <= 4 / b^(2 xi).
The test polynomial needs an integer degree, so thresholds are always
rounded up before the tail is measured; the tail at the raw real threshold
is recorded alongside for reference.  Graphs whose walk matrix has the
eigenvalue -d (bipartite ones) admit no such lam < d, and the tail claim is
reported without being asserted for them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chebyshev import cheb_scalar, cheb_values
from .checks import FAIL, INAPPLICABLE, PASS, BoundCheck
from .graphs import Graph, all_pairs_distances, bfs_distances, tail_count_from_dist
from .spectral import Spectrum, classify


def expansion_base(d: float, lam: float) -> float:
    """b = d/lam + sqrt((d/lam)^2 - 1); the growth rate of T at d/lam."""
    if not 0 < lam <= d:
        raise ValueError(f"need 0 < lam <= d, got lam={lam}, d={d}")
    r = d / lam
    return r + math.sqrt(r * r - 1.0)


def polynomial_tail_check(
    g: Graph, s: Spectrum, kind: str, degree: int, scale: float, x: int
) -> BoundCheck:
    """(P(d)/n)^2 N_x(degree) <= max_{j != 0} P(lambda_j)^2 for P = kind(x/scale)."""
    p_top = cheb_scalar(kind, degree, s.eigenvalues[0] / scale, p=g.p)
    rhs = float(np.max(cheb_values(kind, degree, s.eigenvalues[1:] / scale, p=g.p) ** 2))
    tail = tail_count_from_dist(bfs_distances(g, x).dist, degree)
    lhs = (p_top / g.n) ** 2 * tail
    status = PASS if lhs <= rhs * (1.0 + 1e-9) else FAIL
    return BoundCheck(
        claim="polynomial-tail-bound",
        status=status,
        observed=lhs,
        bound=rhs,
        detail={"kind": kind, "degree": degree, "scale": scale, "x": x, "tail": tail},
    )


def chebyshev_growth_check(ratio: float, ell: int) -> BoundCheck:
    """T_ell(ratio) >= b^ell / 2 for ratio >= 1."""
    if ratio < 1.0:
        raise ValueError("ratio must be >= 1")
    b = ratio + math.sqrt(ratio * ratio - 1.0)
    observed = cheb_scalar("T", ell, ratio)
    bound = b**ell / 2.0
    status = PASS if observed >= bound * (1.0 - 1e-12) else FAIL
    return BoundCheck(
        claim="chebyshev-growth-bound",
        status=status,
        observed=observed,
        bound=bound,
        detail={"ratio": ratio, "ell": ell, "b": b},
    )


@dataclass(frozen=True)
class DiameterReport:
    n: int
    d: int
    lam: float
    b: float
    bipartite: bool
    is_ramanujan: bool
    xi_grid: tuple[float, ...]
    thresholds: tuple[int, ...]  # ceil(log_b(n)/2 + xi), the certified degrees
    tail_fractions: tuple[float, ...]  # at the certified integer thresholds
    tail_fractions_raw: tuple[float, ...]  # at the raw real thresholds
    bound_values: tuple[float, ...]  # 4 / b^(2 xi)
    tail_check: BoundCheck
    ramanujan_thresholds: tuple[int, ...] | None
    ramanujan_tails: tuple[float, ...] | None
    ramanujan_bounds: tuple[float, ...] | None
    ramanujan_check: BoundCheck | None
    diameter_measured: int
    xi_star: float | None
    diameter_bound: float | None
    diameter_check: BoundCheck

    def to_dict(self) -> dict:
        out = {
            "n": self.n,
            "d": self.d,
            "lambda": self.lam,
            "b": self.b,
            "bipartite": self.bipartite,
            "is_ramanujan": self.is_ramanujan,
            "lambda_convention": "bipartite -d excluded",
            "xi_grid": list(self.xi_grid),
            "thresholds": list(self.thresholds),
            "tail_fractions": list(self.tail_fractions),
            "tail_fractions_raw": list(self.tail_fractions_raw),
            "bound_values": list(self.bound_values),
            "tail_check": self.tail_check.to_dict(),
            "diameter_measured": self.diameter_measured,
            "xi_star": self.xi_star,
            "diameter_bound": self.diameter_bound,
            "diameter_check": self.diameter_check.to_dict(),
        }
        if self.ramanujan_check is not None:
            out["ramanujan_thresholds"] = list(self.ramanujan_thresholds)
            out["ramanujan_tails"] = list(self.ramanujan_tails)
            out["ramanujan_bounds"] = list(self.ramanujan_bounds)
            out["ramanujan_check"] = self.ramanujan_check.to_dict()
        return out


def almost_diameter_report(
    g: Graph,
    s: Spectrum,
    xi_grid=(0.5, 1.0, 2.0, 3.0),
    distance_matrix: np.ndarray | None = None,
) -> DiameterReport:
    """Measured distance tails against the Chebyshev bounds, plus diameter.

    Requires a connected graph.  ``distance_matrix`` may be passed to reuse
    an existing all-pairs BFS.
    """
    p = g.p
    cls = classify(s, p)
    lam = cls.lambda_bound
    b = expansion_base(g.d, lam)
    xi_grid = tuple(float(x) for x in xi_grid)
    if any(x <= 0 for x in xi_grid):
        raise ValueError("xi grid must be positive")

    if distance_matrix is None:
        distance_matrix = all_pairs_distances(g)
    if (distance_matrix == -1).any():
        raise ValueError("graph must be connected for distance-tail analysis")

    half_log = 0.5 * math.log(g.n, b)
    thresholds = tuple(int(math.ceil(half_log + xi)) for xi in xi_grid)
    bounds = tuple(4.0 / b ** (2.0 * xi) for xi in xi_grid)
    tails = tuple(
        max(tail_count_from_dist(row, m) for row in distance_matrix) / g.n
        for m in thresholds
    )
    tails_raw = tuple(
        max(tail_count_from_dist(row, half_log + xi) for row in distance_matrix) / g.n
        for xi in xi_grid
    )
    if cls.bipartite:
        tail_check = BoundCheck(
            claim="expander-tail-bound",
            status=INAPPLICABLE,
            detail={
                "reason": "-d eigenvalue: no lam < d bounds all nontrivial eigenvalues",
                "tails": list(tails),
                "bounds": list(bounds),
            },
        )
    else:
        worst = max(t - bnd for t, bnd in zip(tails, bounds))
        tail_check = BoundCheck(
            claim="expander-tail-bound",
            status=PASS if all(t <= bnd * (1 + 1e-9) + 1e-15 for t, bnd in zip(tails, bounds)) else FAIL,
            observed=worst,
            bound=0.0,
            detail={"tails": list(tails), "bounds": list(bounds)},
        )

    ram_thresholds = ram_tails = ram_bounds = None
    ram_check = None
    if cls.is_ramanujan:
        log_p_n = math.log(g.n, p)
        ram_thresholds = tuple(int(math.ceil(log_p_n + xi)) for xi in xi_grid)
        ram_bounds = tuple(4.0 / float(p) ** xi for xi in xi_grid)
        ram_tails = tuple(
            max(tail_count_from_dist(row, m) for row in distance_matrix) / g.n
            for m in ram_thresholds
        )
        ram_check = BoundCheck(
            claim="ramanujan-tail-bound",
            status=PASS
            if all(t <= bnd * (1 + 1e-9) + 1e-15 for t, bnd in zip(ram_tails, ram_bounds))
            else FAIL,
            detail={"tails": list(ram_tails), "bounds": list(ram_bounds)},
        )

    diameter = int(distance_matrix.max())
    xi_star = next((xi for xi in xi_grid if 4.0 / b ** (2 * xi) < 0.5), None)
    if xi_star is None:
        diameter_bound = None
        diameter_check = BoundCheck(
            claim="diameter-upper-bound",
            status=INAPPLICABLE,
            detail={"reason": "no grid xi with 4 b^(-2 xi) < 1/2"},
        )
    else:
        diameter_bound = math.log(g.n, b) + 2.0 * xi_star
        diameter_check = BoundCheck(
            claim="diameter-upper-bound",
            status=PASS if diameter <= diameter_bound else FAIL,
            observed=float(diameter),
            bound=diameter_bound,
            detail={"xi_star": xi_star},
        )

    return DiameterReport(
        n=g.n,
        d=g.d,
        lam=lam,
        b=b,
        bipartite=cls.bipartite,
        is_ramanujan=cls.is_ramanujan,
        xi_grid=xi_grid,
        thresholds=thresholds,
        tail_fractions=tails,
        tail_fractions_raw=tails_raw,
        bound_values=bounds,
        tail_check=tail_check,
        ramanujan_thresholds=ram_thresholds,
        ramanujan_tails=ram_tails,
        ramanujan_bounds=ram_bounds,
        ramanujan_check=ram_check,
        diameter_measured=diameter,
        xi_star=xi_star,
        diameter_bound=diameter_bound,
        diameter_check=diameter_check,
    )


def distance_window_readout(
    g: Graph, f_value: float, distance_matrix: np.ndarray | None = None
) -> dict:
    """Fraction with |dist(x, y) - log_p n| > f versus 4 p^(-f); report only."""
    if f_value <= 0:
        raise ValueError("window width must be positive")
    if distance_matrix is None:
        distance_matrix = all_pairs_distances(g)
    log_p_n = math.log(g.n, g.p)
    off = np.abs(distance_matrix.astype(np.float64) - log_p_n) > f_value
    frac = float(off.sum(axis=1).max()) / g.n
    return {
        "claim": "distance-window-readout",
        "f": f_value,
        "log_p_n": log_p_n,
        "max_fraction_outside": frac,
        "reference_value": 4.0 * float(g.p) ** (-f_value),
    }
