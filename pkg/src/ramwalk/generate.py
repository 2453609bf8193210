"""Graph constructors: named fixtures, random regular graphs, and arithmetic
Cayley expanders over PSL2/PGL2 of a prime field.

The Cayley construction takes a prime p = 1 (mod 4) and an odd prime
q != p with q > 2*sqrt(p).  Generators come from the p + 1 integer
quaternions a + bi + cj + dk with a^2 + b^2 + c^2 + d^2 = p, a > 0 odd and
b, c, d even, pushed into 2x2 matrices mod q through a pair (x, y) with
x^2 + y^2 = -1 (mod q):

    [[a + b*x - d*y,  c + b*y + d*x],
     [-c + b*y + d*x, a - b*x + d*y]]   (mod q).

When q = 1 (mod 4) the pair (x, 0) with the smallest square root x of -1
works and the map reduces to the classical [[a+xb, c+xd], [-c+xd, a-xb]].
When p is a quadratic residue mod q the determinants are squares, the
generators live in PSL2(F_q) and the graph is non-bipartite on q(q^2-1)/2
vertices; otherwise the graph is the bipartite Cayley graph of PGL2(F_q) on
q(q^2-1) vertices.  The resulting (p+1)-regular graphs meet the optimal
spectral bound 2*sqrt(p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .graphs import Graph, bfs_distances, is_bipartite


# ---------------------------------------------------------------------------
# named fixtures
# ---------------------------------------------------------------------------

def _complete(m: int) -> Graph:
    return Graph.from_edges(m, [(u, v) for u in range(m) for v in range(u + 1, m)])


def _petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def _heawood() -> Graph:
    # 14-cycle plus the [5, -5]^7 chord pattern.
    edges = [(i, (i + 1) % 14) for i in range(14)]
    edges += [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return Graph.from_edges(14, edges)


def _cube3() -> Graph:
    edges = [
        (u, u ^ (1 << b))
        for u in range(8)
        for b in range(3)
        if u < (u ^ (1 << b))
    ]
    return Graph.from_edges(8, edges)


_FIXTURES = {
    "petersen": _petersen,
    "heawood": _heawood,
    "cube3": _cube3,
}


def fixture_names() -> list[str]:
    return ["k4"] + sorted(_FIXTURES)


def gen_fixture(name: str) -> Graph:
    """Return a canonical named graph (k4, k5, ..., petersen, heawood, cube3)."""
    key = name.strip().lower()
    if key in _FIXTURES:
        return _FIXTURES[key]()
    if key.startswith("k") and key[1:].isdigit():
        m = int(key[1:])
        if m >= 4:
            return _complete(m)
    raise ValueError(f"unknown fixture name: {name!r} (known: {', '.join(fixture_names())})")


# ---------------------------------------------------------------------------
# configuration-model random regular graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RandomRegularParams:
    n: int
    d: int
    seed: int
    max_retries: int = 1000

    def __post_init__(self):
        if self.d < 3:
            raise ValueError("degree must be >= 3")
        if self.n <= self.d:
            raise ValueError("need n > d")
        if (self.n * self.d) % 2 != 0:
            raise ValueError(f"n*d must be even, got n={self.n}, d={self.d}")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")


def gen_random_regular(n: int, d: int, seed: int, max_retries: int = 1000) -> Graph:
    """Configuration-model sample with whole-graph rejection.

    Pairs a uniformly shuffled list of n*d half-edge stubs; any loop or
    repeated edge discards the entire matching and resamples.  Deterministic
    for a fixed seed.
    """
    params = RandomRegularParams(n=n, d=d, seed=seed, max_retries=max_retries)
    rng = np.random.default_rng(params.seed)
    stubs = np.repeat(np.arange(params.n), params.d)
    for _ in range(params.max_retries):
        shuffled = rng.permutation(stubs)
        pairs = shuffled.reshape(-1, 2)
        edges = set()
        ok = True
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                ok = False
                break
            key = (u, v) if u < v else (v, u)
            if key in edges:
                ok = False
                break
            edges.add(key)
        if ok:
            return Graph.from_edges(params.n, sorted(edges))
    raise RuntimeError(
        f"configuration model failed to produce a simple graph in "
        f"{params.max_retries} attempts (n={n}, d={d}, seed={seed})"
    )


# ---------------------------------------------------------------------------
# arithmetic Cayley expanders
# ---------------------------------------------------------------------------

def _is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def legendre_symbol(a: int, q: int) -> int:
    """(a|q) for odd prime q, via Euler's criterion."""
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else int(r)


def _sqrt_mod(a: int, q: int) -> int:
    """Smallest positive square root of a mod q (exhaustive; q is desk-scale)."""
    a %= q
    for s in range(1, q):
        if s * s % q == a:
            return s
    raise ValueError(f"{a} is not a quadratic residue mod {q}")


@dataclass(frozen=True)
class LpsParams:
    p: int
    q: int
    legendre: int = field(init=False)

    def __post_init__(self):
        for name, value in (("p", self.p), ("q", self.q)):
            if not _is_prime(value):
                raise ValueError(f"{name}={value} is not prime")
        # p = 1 (mod 4) makes the quaternion generator count exactly p + 1.
        if self.p % 4 != 1:
            raise ValueError(f"p={self.p} must be 1 mod 4")
        if self.q == 2:
            raise ValueError("q must be odd")
        if self.p == self.q:
            raise ValueError("p and q must be distinct")
        if self.q <= 2 * math.sqrt(self.p):
            raise ValueError(f"need q > 2*sqrt(p), got p={self.p}, q={self.q}")
        object.__setattr__(self, "legendre", legendre_symbol(self.p, self.q))


def _embedding_pair(q: int) -> tuple[int, int]:
    """Smallest (y, x) with x^2 + y^2 = -1 (mod q); y = 0 when q = 1 (mod 4)."""
    squares = {s * s % q for s in range(q)}
    for y in range(q):
        target = (-1 - y * y) % q
        if target in squares:
            x = 0 if target == 0 else _sqrt_mod(target, q)
            return x, y
    raise ValueError(f"no solution of x^2 + y^2 = -1 mod {q}")


def quaternion_generators(p: int) -> list[tuple[int, int, int, int]]:
    """All (a, b, c, d) with a^2+b^2+c^2+d^2 = p, a > 0 odd, b, c, d even."""
    limit = math.isqrt(p)
    odds = [a for a in range(1, limit + 1) if a % 2 == 1]
    evens = [b for b in range(-limit, limit + 1) if b % 2 == 0]
    sols = [
        (a, b, c, d)
        for a, b, c, d in product(odds, evens, evens, evens)
        if a * a + b * b + c * c + d * d == p
    ]
    return sols


def _mat_mult(m1, m2, q):
    a1, b1, c1, d1 = m1
    a2, b2, c2, d2 = m2
    return (
        (a1 * a2 + b1 * c2) % q,
        (a1 * b2 + b1 * d2) % q,
        (c1 * a2 + d1 * c2) % q,
        (c1 * b2 + d1 * d2) % q,
    )


def _canon_psl(m, q):
    """Scale a det-1 matrix so its first nonzero entry lies in 1..(q-1)/2."""
    for entry in m:
        if entry != 0:
            if entry <= (q - 1) // 2:
                return m
            return tuple((-x) % q for x in m)
    raise ValueError("zero matrix cannot be canonicalized")


def _canon_pgl(m, q):
    """Scale a matrix so its first nonzero entry equals 1."""
    for entry in m:
        if entry != 0:
            inv = pow(entry, q - 2, q)
            return tuple((inv * x) % q for x in m)
    raise ValueError("zero matrix cannot be canonicalized")


def _psl2_elements(q: int) -> list[tuple[int, int, int, int]]:
    """Canonical representatives of PSL2(F_q), q(q^2-1)/2 of them."""
    out = set()
    for a in range(1, q):
        inv_a = pow(a, q - 2, q)
        for b in range(q):
            for c in range(q):
                d = (1 + b * c) * inv_a % q
                out.add(_canon_psl((a, b, c, d), q))
    for b in range(1, q):
        c = (-pow(b, q - 2, q)) % q
        for d in range(q):
            out.add(_canon_psl((0, b, c, d), q))
    return sorted(out)


def _pgl2_elements(q: int) -> list[tuple[int, int, int, int]]:
    """Canonical representatives of PGL2(F_q), q(q^2-1) of them."""
    out = []
    for b in range(q):
        for c in range(q):
            for d in range(q):
                if d != b * c % q:
                    out.append((1, b, c, d))
    for c in range(1, q):
        for d in range(q):
            out.append((0, 1, c, d))
    return sorted(out)


def gen_lps(p: int, q: int) -> Graph:
    """Cayley expander on PSL2/PGL2(F_q) with quaternion generators.

    Returns a (p+1)-regular graph: non-bipartite on q(q^2-1)/2 vertices when
    (p|q) = +1, bipartite on q(q^2-1) vertices when (p|q) = -1.  Vertex labels
    carry the canonical matrix entries "a,b,c,d"; vertex order is the
    lexicographic order of those tuples, so output files are reproducible.
    """
    params = LpsParams(p=p, q=q)
    x, y = _embedding_pair(q)
    sols = quaternion_generators(p)
    if len(sols) != p + 1:
        raise RuntimeError(
            f"expected {p + 1} quaternion generators, found {len(sols)} (internal error)"
        )

    raw = [
        (
            (a + b * x - d * y) % q,
            (c + b * y + d * x) % q,
            (-c + b * y + d * x) % q,
            (a - b * x + d * y) % q,
        )
        for a, b, c, d in sols
    ]
    if params.legendre == 1:
        root_p = _sqrt_mod(p, q)
        inv_root = pow(root_p, q - 2, q)
        gens = {_canon_psl(tuple(inv_root * e % q for e in m), q) for m in raw}
        canon = _canon_psl
        elements = _psl2_elements(q)
    else:
        gens = {_canon_pgl(m, q) for m in raw}
        canon = _canon_pgl
        elements = _pgl2_elements(q)
    if len(gens) != p + 1:
        raise RuntimeError(
            f"generators collide after canonicalization: {len(gens)} != {p + 1}"
        )

    index = {m: i for i, m in enumerate(elements)}
    ordered_pairs = []
    for m, i in index.items():
        for gen in gens:
            w = canon(_mat_mult(m, gen, q), q)
            ordered_pairs.append((i, index[w]))
    edges = {(u, v) if u < v else (v, u) for u, v in ordered_pairs}
    if len(ordered_pairs) != 2 * len(edges):
        raise RuntimeError("Cayley multiplication produced loops or repeated edges")

    labels = [",".join(str(x) for x in m) for m in elements]
    g = Graph.from_edges(len(elements), sorted(edges), labels=labels)

    if g.d != p + 1:
        raise RuntimeError(f"Cayley graph degree {g.d} != {p + 1}")
    if bfs_distances(g, 0).reachable != g.n:
        raise RuntimeError("Cayley graph is not connected (internal error)")
    bip, _ = is_bipartite(g)
    if bip != (params.legendre == -1):
        raise RuntimeError(
            f"bipartiteness {bip} contradicts Legendre symbol {params.legendre}"
        )
    return g
