"""Shared test utilities: independent oracles and random-instance generators.

Oracles here are deliberately implemented with different algorithms and
libraries than the package code so agreement is meaningful.
"""

from __future__ import annotations

import random

import mpmath as mp

from hodgecover import PermutationCoverSpec
from hodgecover.surfaces import FIXTURES


# ---------------------------------------------------------------------------
# random consistent covers


def star_loops(K):
    """Cyclic orderings of the triangles around each vertex of a closed
    surface complex, as dual-edge loops."""
    assert K.dim == 2
    adj = K.facet_adjacencies()
    loops = []
    for (v,) in K.cells[0]:
        tris = [i for i, c in enumerate(K.cells[2]) if v in c]
        nbr = {t: [] for t in tris}
        for a in tris:
            for b in tris:
                if a < b and (a, b) in adj and v in adj[(a, b)]:
                    nbr[a].append(b)
                    nbr[b].append(a)
        for t in tris:
            assert len(nbr[t]) == 2, "vertex star is not a closed disc"
        loop = [tris[0]]
        prev = None
        while True:
            nxt = [x for x in nbr[loop[-1]] if x != prev][0]
            prev = loop[-1]
            loop.append(nxt)
            if loop[-1] == loop[0]:
                break
        loops.append(loop)
    return loops


def nullspace_mod_p(rows, ncols, p):
    M = [r[:] for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(M)) if M[i][c] % p), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        inv = pow(M[r][c], -1, p)
        M[r] = [(x * inv) % p for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] % p:
                f = M[i][c]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-M[i][fc]) % p
        basis.append(v)
    return basis


def random_cyclic_cover(K, p, rng: random.Random) -> PermutationCoverSpec:
    """Degree-p cyclic cover of a closed surface from random mod-p cocycle
    data on the dual graph (vertex-star loop sums forced to zero, which is
    exactly the consistency condition the builder validates)."""
    adj = K.facet_adjacencies()
    edges = sorted({(i, j) for (i, j) in adj if i < j})
    eidx = {e: k for k, e in enumerate(edges)}
    rows = []
    for loop in star_loops(K):
        row = [0] * len(edges)
        for a, b in zip(loop, loop[1:]):
            if a < b:
                row[eidx[(a, b)]] += 1
            else:
                row[eidx[(b, a)]] -= 1
        rows.append([x % p for x in row])
    basis = nullspace_mod_p(rows, len(edges), p)
    x = [0] * len(edges)
    for v in basis:
        c = rng.randrange(p)
        x = [(a + c * b) % p for a, b in zip(x, v)]
    perms = {e: tuple((s + x[eidx[e]]) % p for s in range(p)) for e in edges}
    return PermutationCoverSpec(K, p, perms)


def random_circle_cover(n: int, d: int, rng: random.Random) -> PermutationCoverSpec:
    """Arbitrary degree-d cover spec of the n-cycle graph; any permutation
    assignment is consistent in dimension one."""
    from hodgecover.surfaces import circle
    K = circle(n)
    adj = K.facet_adjacencies()
    perms = {}
    for (i, j) in adj:
        if i < j:
            p = list(range(d))
            rng.shuffle(p)
            perms[(i, j)] = tuple(p)
    return PermutationCoverSpec(K, d, perms)


def random_cover_specs(count: int, seed: int = 0):
    """Mixed stream of consistent random cover specs with their bases."""
    rng = random.Random(seed)
    surfaces = ["sphere", "torus", "klein_bottle", "genus2",
                "projective_plane"]
    out = []
    for k in range(count):
        if k % 2 == 0:
            K = FIXTURES[surfaces[(k // 2) % len(surfaces)]]()
            out.append(random_cyclic_cover(K, rng.choice([2, 3, 5]), rng))
        else:
            out.append(random_circle_cover(rng.randrange(3, 8),
                                           rng.randrange(1, 6), rng))
    return out


# ---------------------------------------------------------------------------
# analytic oracles


def moser_oracle(n, q, L, lam, terms=500):
    """Extended-precision truncated product for the sup-norm iteration
    constant, summed termwise in logs with mpmath."""
    mp.mp.dps = 60
    g = mp.mpf(n) / (n - 2)
    sphere = 2 * mp.pi ** ((n + 1) / mp.mpf(2)) / mp.gamma((n + 1) / mp.mpf(2))
    kap = mp.mpf(n) * (n - 2) / 4 * sphere ** (mp.mpf(2) / n)
    s = mp.mpf(0)
    for k in range(terms):
        br = (q * (n - q) + lam) * g ** k + mp.mpf(4) ** (k + 1) / (L * L)
        s += (mp.log(br) - mp.log(kap)) / g ** k
    return float(mp.e ** s)


def right_triangle_area_oracle(a, b):
    """Angle defect of the right triangle with legs a, b, from hyperbolic
    trigonometry (independent of the half-angle closed form)."""
    mp.mp.dps = 40
    c = mp.acosh(mp.cosh(a) * mp.cosh(b))
    A = mp.asin(mp.sinh(a) / mp.sinh(c))
    B = mp.asin(mp.sinh(b) / mp.sinh(c))
    return float(mp.pi - (A + B + mp.pi / 2))


def brute_force_diameter(adjacency):
    """All-pairs shortest paths by repeated relaxation (no BFS reuse)."""
    n = len(adjacency)
    INF = 10 ** 9
    dist = [[0 if i == j else INF for j in range(n)] for i in range(n)]
    for i, nbrs in enumerate(adjacency):
        for j in nbrs:
            dist[i][j] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i][k] + dist[k][j] < dist[i][j]:
                    dist[i][j] = dist[i][k] + dist[k][j]
    best = max(max(row) for row in dist)
    assert best < INF, "disconnected"
    return best
