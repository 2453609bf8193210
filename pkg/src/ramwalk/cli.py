"""Command-line surface: graph generation, spectra, mixing, variance,
uniformity, diameter, density, and the verification battery.

Artifacts are JSON (optionally CSV) with a run manifest embedded: argv,
package version, seeds, and the SHA-256 of any input graph file.  Identical
invocations produce byte-identical files; wall time goes to stderr only.
Exit codes: 0 success, 1 failed verification check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time

import numpy as np

from . import __version__
from .chebyshev import apply_q_spectrally, ball_sum_row, walk_row, walk_row_bruteforce
from .checks import FAIL, INAPPLICABLE, PASS, BoundCheck
from .density import density_cutoff_report
from .diameter import almost_diameter_report, chebyshev_growth_check, distance_window_readout, polynomial_tail_check
from .generate import gen_fixture, gen_lps, gen_random_regular
from .graphs import Graph, girth, load_graph
from .mixing import (
    girth_mixing_bound_check,
    l2_tv_check,
    mixing_profile,
    profile_csv,
    t_mix,
    unreached_mass_check,
)
from .spectral import classify, eigendecompose, parametrize_thetas, spectrum_from_dict
from .variance import (
    conjecture_csv,
    conjecture_report,
    girth_variance_check,
    kesten_quadrature,
    kesten_r_moment,
    tree_energy_check,
    variance_direct,
    variance_envelope_check,
    variance_report,
    variance_spectral,
)


def _sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(args, graph_path=None, seeds=None) -> dict:
    out = {"tool": "ramwalk", "version": __version__, "argv": list(args._argv)}
    if graph_path is not None:
        out["inputs"] = {"graph": {"path": str(graph_path), "sha256": _sha256(graph_path)}}
    if seeds:
        out["seeds"] = seeds
    return out


def _write_json(payload: dict, path, t0: float) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)
        fh.write("\n")
    print(f"[ramwalk] wrote {path} in {time.time() - t0:.2f}s", file=sys.stderr)


def _load_graph(path) -> Graph:
    try:
        return load_graph(path)
    except FileNotFoundError:
        raise SystemExit(f"ramwalk: graph file not found: {path}") from None


def _spectrum_for(g: Graph, want_vectors: bool = False):
    s = eigendecompose(g, want_vectors=want_vectors)
    parametrize_thetas(s, g.p)
    return s


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    t0 = time.time()
    seeds = None
    if args.mode == "fixture":
        g = gen_fixture(args.name)
    elif args.mode == "lps":
        g = gen_lps(args.p, args.q)
    else:
        g = gen_random_regular(args.n, args.d, args.seed, max_retries=args.max_retries)
        seeds = {"seed": args.seed}
    payload = g.to_dict()
    payload["manifest"] = _manifest(args, seeds=seeds)
    _write_json(payload, args.output, t0)
    return 0


def cmd_spectrum(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    s = _spectrum_for(g, want_vectors=args.vectors)
    payload = s.to_dict(include_vectors=args.vectors)
    payload["classification"] = classify(s, g.p).to_dict()
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    _write_json(payload, args.output, t0)
    return 0


def cmd_mix(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    profile = mixing_profile(g, args.t_min, args.t_max, starts=args.starts)
    payload = profile.to_dict()
    payload["lower_bound_claim"] = "unreached-mass-lower-bound"
    if args.eta is not None:
        try:
            payload["t_mix"] = t_mix(profile, args.eta).to_dict()
        except ValueError as exc:
            payload["t_mix"] = {"eta": args.eta, "t_mix": None, "error": str(exc)}
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    _write_json(payload, args.output, t0)
    if args.csv:
        profile_csv(profile, args.csv)
    return 0


def cmd_variance(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    s = _spectrum_for(g)
    report = variance_report(g, s, args.t, per_x=args.per_x)
    payload = report.to_dict()
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    _write_json(payload, args.output, t0)
    return 0


def cmd_conjecture(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    s = _spectrum_for(g)
    rows = conjecture_report(g, s, args.t_max)
    payload = {"rows": [r.to_dict() for r in rows]}
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    if args.output:
        _write_json(payload, args.output, t0)
    if args.csv:
        conjecture_csv(rows, args.csv)
    return 0


def cmd_diameter(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    s = _spectrum_for(g)
    xi = tuple(float(x) for x in args.xi.split(","))
    report = almost_diameter_report(g, s, xi_grid=xi)
    payload = report.to_dict()
    if args.window is not None:
        payload["window_readout"] = distance_window_readout(g, args.window)
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    _write_json(payload, args.output, t0)
    return 0


def cmd_density(args) -> int:
    t0 = time.time()
    g = _load_graph(args.graph)
    if args.spectrum:
        with open(args.spectrum) as fh:
            s = spectrum_from_dict(json.load(fh))
        if (s.n, s.d) != (g.n, g.d):
            raise ValueError(
                f"spectrum file is for n={s.n}, d={s.d}; graph has n={g.n}, d={g.d}"
            )
        if not s.parametrized:
            from .spectral import parametrize_thetas

            parametrize_thetas(s, g.p)
    else:
        s = _spectrum_for(g)
    eta = tuple(float(x) for x in args.eta.split(","))
    homogeneous = True if args.homogeneous else None
    report = density_cutoff_report(g, s, eta_grid=eta, homogeneous=homogeneous)
    payload = report.to_dict()
    payload["manifest"] = _manifest(args, graph_path=args.graph)
    _write_json(payload, args.output, t0)
    return 0


# ---------------------------------------------------------------------------
# verify battery
# ---------------------------------------------------------------------------

def _resolve_fixture(token: str) -> Graph:
    parts = token.split(":")
    if parts[0] == "random":
        n, d, seed = (int(x) for x in parts[1:4])
        return gen_random_regular(n, d, seed)
    if parts[0] == "lps":
        return gen_lps(int(parts[1]), int(parts[2]))
    return gen_fixture(token)


_KNOWN_TRANSITIVE = {"k4", "petersen", "heawood", "cube3"}


def _verify_fixture(token: str) -> list[BoundCheck]:
    g = _resolve_fixture(token)
    p = g.p
    s = eigendecompose(g, want_vectors=True)
    parametrize_thetas(s, p)
    cls = classify(s, p)
    checks: list[BoundCheck] = []

    # eigensolver sanity
    trace = float(abs(s.eigenvalues.sum()))
    checks.append(
        BoundCheck("spectral-trace", PASS if trace <= 1e-8 * g.n * g.d else FAIL, trace, 0.0)
    )
    moment = float(abs((s.eigenvalues**2).sum() - g.n * g.d))
    checks.append(
        BoundCheck("spectral-moment", PASS if moment <= 1e-6 * g.n * g.d else FAIL, moment, 0.0)
    )
    orth = float(np.abs(s.eigenvectors.T @ s.eigenvectors - np.eye(g.n)).max())
    checks.append(
        BoundCheck("eigenvector-orthonormality", PASS if orth <= 1e-8 else FAIL, orth, 1e-8)
    )
    checks.append(
        BoundCheck(
            "spectral-classification",
            PASS,
            cls.lambda_bound,
            2.0 * math.sqrt(p),
            detail={"is_ramanujan": cls.is_ramanujan, "bipartite": cls.bipartite},
        )
    )

    # walk oracles
    t_cap = min(6, 1 + int(2 * math.log(max(g.n, 4), p)))
    ok_walk = ok_spec = True
    for x in range(g.n):
        for t in range(t_cap + 1):
            row = walk_row(g, x, t)
            if not np.array_equal(row.counts, walk_row_bruteforce(g, x, t).counts):
                ok_walk = False
            if t >= 1:
                approx = apply_q_spectrally(s, p, t, x)
                if np.abs(approx - row.counts).max() > 1e-6:
                    ok_spec = False
    checks.append(BoundCheck("walk-count-oracle", PASS if ok_walk else FAIL, detail={"t_max": t_cap}))
    checks.append(BoundCheck("walk-polynomial-identity", PASS if ok_spec else FAIL, detail={"t_max": t_cap}))

    ok_ball = True
    for x in range(g.n):
        for ell in range(9):
            expected = sum(walk_row(g, x, ell - 2 * j).counts for j in range((ell // 2) + 1))
            if not np.array_equal(ball_sum_row(g, x, ell), expected):
                ok_ball = False
    checks.append(BoundCheck("ball-sum-identity", PASS if ok_ball else FAIL, detail={"ell_max": 8}))

    worst_rel = 0.0
    for x in range(g.n):
        for t in range(1, 9):
            direct = variance_direct(g, x, t)
            spectral = variance_spectral(s, p, t, x)
            worst_rel = max(worst_rel, abs(direct - spectral) / max(1.0, abs(direct)))
    checks.append(
        BoundCheck("dual-route-variance", PASS if worst_rel <= 1e-8 else FAIL, worst_rel, 1e-8)
    )

    # mixing profile plus exact lower bound and l2 identity
    t_hi = min(10, 2 + int(2 * math.log(max(g.n, 4), p)))
    profile = mixing_profile(g, 1, t_hi)
    checks.append(unreached_mass_check(g, profile))
    worst_d2 = 0.0
    for row in profile.rows:
        other = variance_spectral(s, p, row.t) / row.n_t**2
        if max(row.d2, other) <= 1e-16:  # exactly uniform rows: both are zero
            continue
        worst_d2 = max(worst_d2, abs(row.d2 - other) / max(row.d2, other))
    checks.append(BoundCheck("l2-identity", PASS if worst_d2 <= 1e-8 else FAIL, worst_d2, 1e-8))
    for t in (2, min(5, t_hi)):
        checks.append(l2_tv_check(g, s, t))
    checks.append(girth_mixing_bound_check(g, s, profile, 0.25))

    # variance bounds
    for t in (2, int(math.ceil(math.log(g.n, p)))):
        checks.append(variance_envelope_check(g, t))
    checks.append(girth_variance_check(g, s, int(math.ceil(math.log(g.n, p)))))
    checks.append(tree_energy_check(g, s, max(0, girth(g) // 5)))

    # quadrature
    quad = kesten_quadrature(p)
    norm_err = abs(quad.normalization_check - 1.0)
    checks.append(BoundCheck("kesten-normalization", PASS if norm_err <= 1e-10 else FAIL, norm_err, 1e-10))
    r2_err = max(abs(kesten_r_moment(p, t, t) - (p + 1) / p) for t in (1, 5, 20))
    checks.append(BoundCheck("kesten-r-squared", PASS if r2_err <= 1e-8 else FAIL, r2_err, 1e-8))
    cross = max(abs(kesten_r_moment(p, st, st + 3)) for st in (1, 4, 9))
    checks.append(BoundCheck("kesten-orthogonality", PASS if cross <= 1e-8 else FAIL, cross, 1e-8))

    # distance tails and diameter
    report = almost_diameter_report(g, s)
    checks.append(report.tail_check)
    if report.ramanujan_check is not None:
        checks.append(report.ramanujan_check)
    checks.append(report.diameter_check)
    checks.append(
        polynomial_tail_check(g, s, "T", max(1, int(0.5 * math.log(g.n, report.b))), max(cls.lambda_bound, 1e-9), 0)
    )
    checks.append(chebyshev_growth_check(g.d / max(cls.lambda_bound, 1e-9), 10))

    # density bound rows (homogeneity declared only for the named fixtures)
    homogeneous = token in _KNOWN_TRANSITIVE or g.labels is not None
    dens = density_cutoff_report(g, s, (0.5,), homogeneous=homogeneous)
    checks.append(dens.rows[0].check)

    return checks


def cmd_verify(args) -> int:
    t0 = time.time()
    tokens = [tok.strip() for tok in args.fixtures.split(",") if tok.strip()]
    all_rows = []
    failed = 0
    for token in tokens:
        for check in _verify_fixture(token):
            all_rows.append((token, check))
            if check.status == FAIL:
                failed += 1
    width = max(len(tok) for tok in tokens)
    print(f"{'fixture':<{width}}  {'claim':<34} status  observed / bound")
    for token, check in all_rows:
        obs = "" if check.observed is None else f"{check.observed:.6g}"
        bnd = "" if check.bound is None else f"{check.bound:.6g}"
        extra = f"{obs} / {bnd}" if obs or bnd else ""
        print(f"{token:<{width}}  {check.claim:<34} {check.status:<6}  {extra}")
    n_pass = sum(1 for _, c in all_rows if c.status == PASS)
    n_na = sum(1 for _, c in all_rows if c.status == INAPPLICABLE)
    print(f"\n{n_pass} passed, {failed} failed, {n_na} inapplicable "
          f"({time.time() - t0:.1f}s)")
    if args.json:
        payload = {
            "manifest": _manifest(args),
            "rows": [dict(fixture=tok, **c.to_dict()) for tok, c in all_rows],
        }
        _write_json(payload, args.json, t0)
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramwalk",
        description="non-backtracking walk mixing experiments on regular graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen_sub = gen.add_subparsers(dest="mode", required=True)
    gf = gen_sub.add_parser("fixture", help="named fixture graph")
    gf.add_argument("--name", required=True)
    gl = gen_sub.add_parser("lps", help="arithmetic Cayley expander")
    gl.add_argument("--p", type=int, required=True)
    gl.add_argument("--q", type=int, required=True)
    gr = gen_sub.add_parser("random", help="configuration-model regular graph")
    gr.add_argument("--n", type=int, required=True)
    gr.add_argument("--d", type=int, required=True)
    gr.add_argument("--seed", type=int, required=True)
    gr.add_argument("--max-retries", type=int, default=1000)
    for sp in (gf, gl, gr):
        sp.add_argument("-o", "--output", required=True)
        sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("spectrum", help="dense eigendecomposition")
    sp.add_argument("graph")
    sp.add_argument("--vectors", action="store_true")
    sp.add_argument("-o", "--output", required=True)
    sp.set_defaults(func=cmd_spectrum)

    mx = sub.add_parser("mix", help="total-variation mixing profile")
    mx.add_argument("graph")
    mx.add_argument("--t-min", type=int, default=1)
    mx.add_argument("--t-max", type=int, required=True)
    mx.add_argument("--eta", type=float, default=None)
    mx.add_argument("--starts", default="auto", help='"all", "sample", or "auto"')
    mx.add_argument("--csv", default=None)
    mx.add_argument("-o", "--output", required=True)
    mx.set_defaults(func=cmd_mix)

    va = sub.add_parser("variance", help="row variance at one walk length")
    va.add_argument("graph")
    va.add_argument("--t", type=int, required=True)
    va.add_argument("--per-x", action="store_true")
    va.add_argument("-o", "--output", required=True)
    va.set_defaults(func=cmd_variance)

    cj = sub.add_parser("conjecture", help="endpoint-uniformity ratio table")
    cj.add_argument("graph")
    cj.add_argument("--t-max", type=int, required=True)
    cj.add_argument("--csv", default=None)
    cj.add_argument("-o", "--output", default=None)
    cj.set_defaults(func=cmd_conjecture)

    dm = sub.add_parser("diameter", help="distance tails and diameter bounds")
    dm.add_argument("graph")
    dm.add_argument("--xi", default="0.5,1,2,3")
    dm.add_argument("--window", type=float, default=None)
    dm.add_argument("-o", "--output", required=True)
    dm.set_defaults(func=cmd_diameter)

    de = sub.add_parser("density", help="exceptional-eigenvalue mixing bound")
    de.add_argument("graph")
    de.add_argument("--eta", default="0.25,0.5,1.0")
    de.add_argument("--homogeneous", action="store_true")
    de.add_argument("--spectrum", default=None, help="reuse a spectrum JSON file")
    de.add_argument("-o", "--output", required=True)
    de.set_defaults(func=cmd_density)

    vf = sub.add_parser("verify", help="run the inequality battery over fixtures")
    vf.add_argument("--fixtures", default="k4,petersen,heawood,cube3")
    vf.add_argument("--json", default=None)
    vf.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = list(sys.argv[1:] if argv is None else argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise
    except FileNotFoundError as exc:
        print(f"ramwalk: file not found: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"ramwalk: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
