"""Total-variation mixing machinery for the non-backtracking walk.

Per start x and walk length t the walk endpoint distribution is
P^t(x, .) = K_t(x, .) / N(t); this module tracks

    d_x(t)   total variation from uniform, 1/2 sum_y |P^t(x,y) - 1/n|
    d(t)     worst start, max_x d_x(t)
    d_2(t)   mean squared l2 distance, (1/n) sum_x ||P^t_x - U||_2^2
    t_mix    first t with d(t) <= eta

together with two unconditional inequalities: the unreached-mass lower bound
d(t) >= 1 - N(t)/n (exact, integer arithmetic), and the Cauchy-Schwarz upper
bound 4 d_x(t)^2 <= n W(Q_t, x) / N(t)^2 from the row variance.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._kernels import thread_count
from .chebyshev import q_values, walk_table, walk_total
from .checks import FAIL, INAPPLICABLE, PASS, BoundCheck
from .graphs import Graph, girth, is_bipartite
from .spectral import Spectrum

SAMPLE_THRESHOLD = 2048
SAMPLE_SIZE = 64


def row_sumsq(counts: np.ndarray) -> int:
    """Exact sum of squared counts (falls back to big ints when needed)."""
    m = int(counts.max(initial=0))
    if m * m * len(counts) < 2**63:
        return int(np.dot(counts, counts))
    return sum(int(c) * int(c) for c in counts)


def tv_from_row(counts: np.ndarray, total: int, n: int) -> float:
    """1/2 sum_y |counts_y / total - 1/n| with compensated summation."""
    if total <= 0:
        raise ValueError("row total must be positive")
    inv_n = 1.0 / n
    inv_total = 1.0 / total
    return 0.5 * math.fsum(abs(c * inv_total - inv_n) for c in counts.tolist())


@dataclass(frozen=True)
class MixingRow:
    t: int
    n_t: int
    d_max: float
    d_mean: float
    d2: float
    lower_bound: float
    l2_bound: float  # max_x of n W(Q_t, x) / N(t)^2, an upper bound on 4 d_x^2
    max_unreached: int

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "N_t": self.n_t,
            "d_max": self.d_max,
            "d_mean": self.d_mean,
            "d2": self.d2,
            "lower_bound": self.lower_bound,
            "l2_bound": self.l2_bound,
            "max_unreached": self.max_unreached,
        }


@dataclass(frozen=True)
class MixingProfile:
    n: int
    d: int
    t_min: int
    t_max: int
    rows: tuple[MixingRow, ...]
    starts: np.ndarray
    sampled: bool  # True when d_max is only a lower bound (sampled starts)
    parity_warning: bool  # bipartite graphs never mix to uniform
    per_start: dict[int, np.ndarray] | None = None

    def row(self, t: int) -> MixingRow:
        if not self.t_min <= t <= self.t_max:
            raise ValueError(f"t={t} outside profile range [{self.t_min}, {self.t_max}]")
        return self.rows[t - self.t_min]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "sampled_starts": self.sampled,
            "parity_warning": self.parity_warning,
            "num_starts": int(len(self.starts)),
            "rows": [r.to_dict() for r in self.rows],
        }


def _profile_starts(g: Graph, starts, sample_seed: int) -> tuple[np.ndarray, bool]:
    if isinstance(starts, str):
        if starts == "all":
            return np.arange(g.n), False
        if starts == "sample":
            rng = np.random.default_rng(sample_seed)
            return np.sort(rng.choice(g.n, size=min(SAMPLE_SIZE, g.n), replace=False)), True
        if starts == "auto":
            if g.n > SAMPLE_THRESHOLD:
                return _profile_starts(g, "sample", sample_seed)
            return np.arange(g.n), False
        raise ValueError(f"unknown starts mode {starts!r}")
    arr = np.asarray(sorted(int(s) for s in starts))
    return arr, bool(len(arr) < g.n)


def mixing_profile(
    g: Graph,
    t_min: int,
    t_max: int,
    starts="auto",
    sample_seed: int = 0,
    keep_per_start: bool = False,
) -> MixingProfile:
    """Exact mixing profile over t_min..t_max.

    ``starts`` is "all", "sample" (64 seeded starts, used automatically above
    n = 2048), or an explicit list.  With sampled starts d_max is only a lower
    bound on the true worst-start distance and the profile says so.
    """
    if not 0 <= t_min <= t_max:
        raise ValueError("need 0 <= t_min <= t_max")
    start_list, sampled = _profile_starts(g, starts, sample_seed)
    p = g.p
    totals = [walk_total(p, t) for t in range(t_max + 1)]

    def one_start(x: int):
        table = walk_table(g, int(x), t_max)
        tvs = np.empty(t_max - t_min + 1)
        unreached = np.empty(t_max - t_min + 1, dtype=np.int64)
        sumsq = []
        for t in range(t_min, t_max + 1):
            row = table[t]
            tvs[t - t_min] = tv_from_row(row, totals[t], g.n)
            unreached[t - t_min] = g.n - int(np.count_nonzero(row))
            sumsq.append(row_sumsq(row))
        return tvs, unreached, sumsq

    workers = min(thread_count(), len(start_list))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(one_start, start_list))
    else:
        results = [one_start(x) for x in start_list]

    parity_warning = is_bipartite(g)[0]
    rows = []
    per_start: dict[int, np.ndarray] = {}
    m = len(start_list)
    for t in range(t_min, t_max + 1):
        i = t - t_min
        tvs = np.array([res[0][i] for res in results])
        n_t = totals[t]
        # W(Q_t, x) = sum_y K^2 - N^2/n exactly; l2 figures stay rational.
        w_exact = [Fraction(res[2][i]) - Fraction(n_t * n_t, g.n) for res in results]
        d2 = float(sum(w_exact) / (m * n_t * n_t))
        l2_bound = float(max(w_exact) * g.n / (n_t * n_t))
        rows.append(
            MixingRow(
                t=t,
                n_t=n_t,
                d_max=float(tvs.max()),
                d_mean=float(math.fsum(tvs.tolist()) / m),
                d2=d2,
                lower_bound=max(0.0, 1.0 - n_t / g.n),
                l2_bound=l2_bound,
                max_unreached=int(max(res[1][i] for res in results)),
            )
        )
        if keep_per_start:
            per_start[t] = tvs
    return MixingProfile(
        n=g.n,
        d=g.d,
        t_min=t_min,
        t_max=t_max,
        rows=tuple(rows),
        starts=start_list,
        sampled=sampled,
        parity_warning=parity_warning,
        per_start=per_start if keep_per_start else None,
    )


@dataclass(frozen=True)
class MixResult:
    eta: float
    t_mix: int
    bound: BoundCheck | None = None

    def to_dict(self) -> dict:
        out = {"eta": self.eta, "t_mix": self.t_mix}
        if self.bound is not None:
            out["bound"] = self.bound.to_dict()
        return out


def t_mix(profile: MixingProfile, eta: float) -> MixResult:
    """Smallest t in the profile range with d_max(t) <= eta."""
    if not 0 < eta <= 1:
        raise ValueError("eta must be in (0, 1]")
    for row in profile.rows:
        if row.d_max <= eta:
            return MixResult(eta=eta, t_mix=row.t)
    raise ValueError(
        f"d_max never reached eta={eta} for t <= {profile.t_max}; rerun with larger t_max"
    )


def unreached_mass_check(g: Graph, profile: MixingProfile) -> BoundCheck:
    """Exact lower bound d(t) >= 1 - N(t)/n wherever N(t) <= n.

    When N(t) <= n every positive count already exceeds the uniform mass, so
    d_x(t) equals (number of unreached vertices)/n and the bound reduces to
    the integer statement max_x unreached >= n - N(t).
    """
    checked = []
    for row in profile.rows:
        if row.n_t > g.n:
            continue
        ok = row.max_unreached >= g.n - row.n_t
        checked.append((row.t, ok))
    if not checked:
        return BoundCheck(
            claim="unreached-mass-lower-bound",
            status=INAPPLICABLE,
            detail={"reason": f"N(t) > n for all t in [{profile.t_min}, {profile.t_max}]"},
        )
    bad = [t for t, ok in checked if not ok]
    return BoundCheck(
        claim="unreached-mass-lower-bound",
        status=FAIL if bad else PASS,
        detail={"t_checked": [t for t, _ in checked], "t_failed": bad},
    )


def l2_tv_check(g: Graph, s: Spectrum, t: int) -> BoundCheck:
    """Per-start Cauchy-Schwarz bound 4 d_x(t)^2 <= n W(Q_t, x) / N(t)^2.

    W is evaluated through the spectral route (eigenvector-weighted squares),
    tying the walk distribution to the eigendecomposition.
    """
    if s.eigenvectors is None:
        raise ValueError("spectrum was computed without eigenvectors")
    p = g.p
    n_t = walk_total(p, t)
    q = q_values(s.eigenvalues, p, t)
    worst_ratio = 0.0
    worst_x = 0
    scale = g.n / (n_t * n_t)
    for x in range(g.n):
        table = walk_table(g, x, t)
        d_x = tv_from_row(table[t], n_t, g.n)
        w_x = float(np.sum((q[1:] ** 2) * (s.eigenvectors[x, 1:] ** 2)))
        rhs = scale * w_x
        lhs = 4.0 * d_x * d_x
        ratio = lhs / rhs if rhs > 0 else math.inf
        if ratio > worst_ratio:
            worst_ratio, worst_x = ratio, x
    status = PASS if worst_ratio <= 1.0 + 1e-9 else FAIL
    return BoundCheck(
        claim="l2-tv-bound",
        status=status,
        observed=worst_ratio,
        bound=1.0,
        detail={"t": t, "worst_start": worst_x},
    )


def girth_mixing_bound_check(
    g: Graph,
    s: Spectrum,
    profile: MixingProfile,
    eps: float,
    classification=None,
) -> BoundCheck:
    """Mixing-time bound log_p n + 2 log_p(1/eps) + 2 log_p(2 + 20/delta).

    Applies to graphs meeting the spectral bound, with delta the measured
    girth / log_p n; the observed t_mix(eps) must not exceed the ceiling of
    the bound.
    """
    from .spectral import classify

    p = g.p
    cls = classification or classify(s, p)
    if not cls.is_ramanujan:
        return BoundCheck(
            claim="girth-window-mixing-bound",
            status=INAPPLICABLE,
            detail={"reason": "graph does not meet the 2 sqrt(p) spectral bound"},
        )
    if profile.parity_warning:
        return BoundCheck(
            claim="girth-window-mixing-bound",
            status=INAPPLICABLE,
            detail={"reason": "bipartite: walk distribution never approaches uniform"},
        )
    log_p_n = math.log(g.n, p)
    delta = girth(g) / log_p_n
    bound = log_p_n + 2 * math.log(1.0 / eps, p) + 2 * math.log(2.0 + 20.0 / delta, p)
    try:
        observed = t_mix(profile, eps).t_mix
    except ValueError as exc:
        return BoundCheck(
            claim="girth-window-mixing-bound",
            status=FAIL,
            bound=bound,
            detail={"eps": eps, "delta": delta, "error": str(exc)},
        )
    status = PASS if observed <= math.ceil(bound) else FAIL
    return BoundCheck(
        claim="girth-window-mixing-bound",
        status=status,
        observed=float(observed),
        bound=bound,
        detail={"eps": eps, "delta": delta, "ceil_bound": math.ceil(bound)},
    )


def profile_csv(profile: MixingProfile, path) -> None:
    with open(path, "w") as fh:
        fh.write("t,d_max,d_mean,d2,N_t,lower_bound\n")
        for r in profile.rows:
            fh.write(
                f"{r.t},{r.d_max!r},{r.d_mean!r},{r.d2!r},{r.n_t},{r.lower_bound!r}\n"
            )
