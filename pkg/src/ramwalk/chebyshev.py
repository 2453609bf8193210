"""Chebyshev-type polynomial evaluation and exact non-backtracking walk counts.

Five families, all evaluated by three-term recurrences (never by trig or
arccos forms, which lose accuracy or blow up at and beyond the interval
endpoints):

    T_l(x)           first kind,  T_{l+1} = 2x T_l - T_{l-1}
    U_l(x)           second kind, same recurrence, U_1 = 2x
    P_l(lam) = p^{l/2} U_l(lam / (2 sqrt p)),   P_{l+1} = lam P_l - p P_{l-1}
    Q_t(lam) = P_t(lam) - P_{t-2}(lam)          (Q_0 = (p+1)/p)
    R_t(theta) = (p-1)/p U_t(cos theta) + (2/p) T_t(cos theta)

Q_t(A) applied to a vertex indicator counts non-backtracking walks of length
t >= 1 exactly, which is why the same three-term recurrence drives the
integer walk kernels.  Note Q_t(d) = (p+1)p^{t-1}, the total walk count N(t).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import nb_walk_table
from .graphs import Graph

KINDS = ("T", "U", "P", "Q", "R")

_INT64_MAX = 2**63 - 1


def walk_total(p: int, t: int) -> int:
    """N(t): number of non-backtracking walks of length t from any start."""
    if t < 0:
        raise ValueError("walk length must be >= 0")
    if t == 0:
        return 1
    return (p + 1) * p ** (t - 1)


def safe_walk_t_max(p: int) -> int:
    """Largest t whose walk counts are safe in checked 64-bit arithmetic.

    The recurrence forms sums bounded by (p+1) * N(t-1) while producing the
    row for time t, so that product must stay below 2^63.
    """
    t = 1
    while (p + 1) * walk_total(p, t) < _INT64_MAX:
        t += 1
    return t


def _check_walk_range(p: int, t: int) -> None:
    if t < 0:
        raise ValueError("walk length must be >= 0")
    safe = safe_walk_t_max(p)
    if t > safe:
        raise OverflowError(
            f"walk counts for t={t} exceed 64-bit range at p={p}; largest safe t is {safe}"
        )


@dataclass(frozen=True)
class WalkRow:
    """Exact counts K_t(source, .) of non-backtracking walks of length t."""

    source: int
    t: int
    counts: np.ndarray
    total: int

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("vertex,count\n")
            for v, c in enumerate(self.counts):
                fh.write(f"{v},{int(c)}\n")


def cheb_scalar(kind: str, degree: int, x: float, p: int | None = None) -> float:
    """Evaluate one polynomial family member at a scalar argument.

    For kinds T/U/P/Q the argument is the polynomial variable; for kind R it
    is the angle theta in [0, pi] (the endpoint limits are finite because the
    cosine is fed through the recurrence, not a sine quotient).
    """
    return float(cheb_values(kind, degree, np.asarray([x], dtype=np.float64), p=p)[0])


def cheb_values(kind: str, degree: int, xs: np.ndarray, p: int | None = None) -> np.ndarray:
    """Vectorized counterpart of :func:`cheb_scalar`."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}, expected one of {KINDS}")
    if degree < 0:
        raise ValueError("degree must be >= 0")
    xs = np.asarray(xs, dtype=np.float64)
    if kind in ("P", "Q", "R") and (p is None or p < 2):
        raise ValueError(f"kind {kind} requires integer p >= 2")
    if kind == "T":
        return _cheb_tu(degree, xs, first_kind=True)
    if kind == "U":
        return _cheb_tu(degree, xs, first_kind=False)
    if kind == "P":
        return _p_values(degree, xs, p)
    if kind == "Q":
        return q_values(xs, p, degree)
    c = np.cos(xs)
    return (p - 1) / p * _cheb_tu(degree, c, first_kind=False) + (2.0 / p) * _cheb_tu(
        degree, c, first_kind=True
    )


def _cheb_tu(degree: int, xs: np.ndarray, first_kind: bool) -> np.ndarray:
    prev = np.ones_like(xs)
    if degree == 0:
        return prev
    cur = xs.copy() if first_kind else 2.0 * xs
    for _ in range(degree - 1):
        prev, cur = cur, 2.0 * xs * cur - prev
    return cur


def _p_values(degree: int, xs: np.ndarray, p: int) -> np.ndarray:
    prev = np.ones_like(xs)
    if degree == 0:
        return prev
    cur = xs.copy()
    for _ in range(degree - 1):
        prev, cur = cur, xs * cur - p * prev
    return cur


def q_values(lams: np.ndarray, p: int, t: int) -> np.ndarray:
    """Q_t at an array of polynomial arguments (eigenvalues, typically)."""
    lams = np.asarray(lams, dtype=np.float64)
    if t == 0:
        return np.full_like(lams, (p + 1) / p)
    if t == 1:
        return lams.copy()
    return _p_values(t, lams, p) - _p_values(t - 2, lams, p)


def r_values(thetas: np.ndarray, p: int, t: int) -> np.ndarray:
    """R_t at an array of angles."""
    return cheb_values("R", t, thetas, p=p)


def walk_table(g: Graph, x: int, t_max: int) -> np.ndarray:
    """Integer matrix of walk counts, rows 0..t_max, exact int64.

    Row recurrence: K_0 = e_x, K_1 = A e_x, K_2 = A K_1 - (p+1) K_0, and
    K_{s+1} = A K_s - p K_{s-1} afterwards.
    """
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    _check_walk_range(g.p, t_max)
    table = nb_walk_table(g.nbrs, g.p, x, t_max)
    totals = table.sum(axis=1)
    for t in range(t_max + 1):
        if int(totals[t]) != walk_total(g.p, t):
            raise RuntimeError(
                f"walk totals broke at t={t}: {int(totals[t])} != {walk_total(g.p, t)}"
            )
    return table


def walk_row(g: Graph, x: int, t: int) -> WalkRow:
    """Exact K_t(x, .) via the checked integer recurrence."""
    table = walk_table(g, x, t)
    return WalkRow(source=x, t=t, counts=table[t], total=walk_total(g.p, t))


def walk_row_bruteforce(g: Graph, x: int, t: int, budget: int = 10**7) -> WalkRow:
    """K_t(x, .) by depth-first enumeration of every non-backtracking path.

    Independent of the recurrence; used as the exact oracle for it.
    """
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    if t < 0:
        raise ValueError("walk length must be >= 0")
    if walk_total(g.p, t) > budget:
        raise ValueError(f"enumeration of {walk_total(g.p, t)} paths exceeds budget {budget}")
    counts = np.zeros(g.n, dtype=np.int64)
    if t == 0:
        counts[x] = 1
        return WalkRow(source=x, t=0, counts=counts, total=1)
    nbrs = g.nbrs

    def descend(prev: int, cur: int, remaining: int) -> None:
        if remaining == 0:
            counts[cur] += 1
            return
        for w in nbrs[cur]:
            if w != prev:
                descend(cur, int(w), remaining - 1)

    for w in nbrs[x]:
        descend(x, int(w), t - 1)
    total = int(counts.sum())
    if total != walk_total(g.p, t):
        raise RuntimeError(f"enumerated {total} paths, expected {walk_total(g.p, t)}")
    return WalkRow(source=x, t=t, counts=counts, total=total)


def ball_sum_row(g: Graph, x: int, ell: int) -> np.ndarray:
    """P_ell(A) e_x as exact integers: sums K_{ell-2j} over 0 <= j <= ell/2."""
    if not 0 <= x < g.n:
        raise ValueError(f"vertex {x} out of range")
    if ell < 0:
        raise ValueError("degree must be >= 0")
    _check_walk_range(g.p, ell)
    prev = np.zeros(g.n, dtype=np.int64)
    prev[x] = 1
    if ell == 0:
        return prev
    cur = np.zeros(g.n, dtype=np.int64)
    cur[g.nbrs[x]] = 1
    for _ in range(ell - 1):
        prev, cur = cur, cur[g.nbrs].sum(axis=1, dtype=np.int64) - g.p * prev
    return cur


def apply_q_spectrally(spectrum, p: int, t: int, x: int) -> np.ndarray:
    """Row x of Q_t(A) assembled from eigenvalues and eigenvectors.

    Floating-point route: sum_j Q_t(lambda_j) f_j(x) f_j(y).  Cross-validates
    the integer walk recurrence.
    """
    if spectrum.eigenvectors is None:
        raise ValueError("spectrum was computed without eigenvectors")
    q = q_values(spectrum.eigenvalues, p, t)
    vecs = spectrum.eigenvectors
    return vecs @ (q * vecs[x])
