"""Mixing bound from exceptional-eigenvalue statistics.

For a homogeneous expander, averaging the row variance over starts gives

    4 d_x(t)^2 <= n p^(-t) (t+1)^2 + 3 p^2 I(t),

where I(t) sums p^(-(1/2 - phi') 2t) over exceptional eigenvalue parameters
(phi above the bulk, psi below it).  With few or no exceptional eigenvalues
both terms decay past t = log_p n, which is the shortest possible mixing
schedule.  The averaging step needs vertex transitivity, so the inequality
is asserted only for graphs declared homogeneous (Cayley constructions carry
labels and count automatically); bipartite graphs never mix to uniform and
are reported without assertion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .checks import FAIL, INAPPLICABLE, PASS, BoundCheck
from .graphs import Graph, is_bipartite
from .mixing import mixing_profile
from .spectral import Spectrum, classify, exceptional_tail_sum


@dataclass(frozen=True)
class DensityCutoffRow:
    eta: float
    t: int
    d_max: float
    tail_sum: float  # I(t), the exceptional decay sum
    term_poly: float  # n p^(-t) (t+1)^2
    term_exceptional: float  # 3 p^2 I(t)
    tv_bound: float  # half the square root of the term sum
    w_envelope: float  # same bound at variance scale: p^t (t+1)^2 + 3 p^2 p^(2t) I(t) / n
    check: BoundCheck

    def to_dict(self) -> dict:
        return {
            "eta": self.eta,
            "t": self.t,
            "d_max": self.d_max,
            "I_t": self.tail_sum,
            "term_poly": self.term_poly,
            "term_exceptional": self.term_exceptional,
            "tv_bound": self.tv_bound,
            "W_envelope": self.w_envelope,
            "check": self.check.to_dict(),
        }


@dataclass(frozen=True)
class DensityCutoffReport:
    n: int
    d: int
    homogeneous: bool
    bipartite: bool
    is_ramanujan: bool
    lambda_bound: float
    delta_1: float | None  # measured 1/2 - max phi'; None without exceptionals
    rows: tuple[DensityCutoffRow, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "homogeneous": self.homogeneous,
            "bipartite": self.bipartite,
            "is_ramanujan": self.is_ramanujan,
            "lambda_bound": self.lambda_bound,
            "delta_1": self.delta_1,
            "rows": [r.to_dict() for r in self.rows],
        }


def density_cutoff_report(
    g: Graph,
    s: Spectrum,
    eta_grid=(0.25, 0.5, 1.0),
    homogeneous: bool | None = None,
) -> DensityCutoffReport:
    """Evaluate the density mixing bound at t = ceil((1 + eta) log_p n).

    ``homogeneous`` defaults to True exactly when the graph carries Cayley
    labels; pass True to assert it for a graph known to be vertex-transitive.
    d_max comes from the same profile code every other caller uses.
    """
    if not s.parametrized:
        raise ValueError("call parametrize_thetas first")
    p = g.p
    cls = classify(s, p)
    if homogeneous is None:
        homogeneous = g.labels is not None
    bipartite = is_bipartite(g)[0]
    log_p_n = math.log(g.n, p)

    exc = s.exceptional_indices()
    delta_1 = None
    if exc.size:
        vals = np.concatenate(
            [s.phi[exc][~np.isnan(s.phi[exc])], s.psi[exc][~np.isnan(s.psi[exc])]]
        )
        delta_1 = float(0.5 - vals.max())

    rows = []
    for eta in sorted(float(e) for e in eta_grid):
        if eta <= 0:
            raise ValueError("eta grid must be positive")
        t = int(math.ceil((1.0 + eta) * log_p_n))
        profile = mixing_profile(g, t, t)
        d_max = profile.rows[0].d_max
        tail = exceptional_tail_sum(s, t)
        term_poly = g.n * float(p) ** (-t) * (t + 1) ** 2
        term_exc = 3.0 * p * p * tail
        bound_sq = term_poly + term_exc
        if not homogeneous:
            check = BoundCheck(
                claim="density-mixing-bound",
                status=INAPPLICABLE,
                detail={"reason": "homogeneity not established for this graph"},
            )
        elif bipartite:
            check = BoundCheck(
                claim="density-mixing-bound",
                status=INAPPLICABLE,
                detail={"reason": "bipartite: the -d eigenvalue keeps d(t) >= 1/2"},
            )
        else:
            ok = 4.0 * d_max * d_max <= bound_sq * (1.0 + 1e-9)
            check = BoundCheck(
                claim="density-mixing-bound",
                status=PASS if ok else FAIL,
                observed=4.0 * d_max * d_max,
                bound=bound_sq,
                detail={"eta": eta, "t": t},
            )
        rows.append(
            DensityCutoffRow(
                eta=eta,
                t=t,
                d_max=d_max,
                tail_sum=tail,
                term_poly=term_poly,
                term_exceptional=term_exc,
                tv_bound=0.5 * math.sqrt(bound_sq),
                w_envelope=float(p) ** t * (t + 1) ** 2
                + 3.0 * p * p * float(p) ** (2 * t) * tail / g.n,
                check=check,
            )
        )
    return DensityCutoffReport(
        n=g.n,
        d=g.d,
        homogeneous=homogeneous,
        bipartite=bipartite,
        is_ramanujan=cls.is_ramanujan,
        lambda_bound=cls.lambda_bound,
        delta_1=delta_1,
        rows=tuple(rows),
    )
