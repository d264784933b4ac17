"""Brute-force reference implementations used only by the tests."""
from itertools import permutations, product

import numpy as np
import sympy


def all_paths(quiver, max_len):
    """Every path of length <= max_len as (source, target, arrow-id tuple)."""
    out = [(v, v, ()) for v in quiver.vertices]
    frontier = [(a.source, a.target, (a.id,)) for a in quiver.arrows]
    n = 1
    while frontier and n <= max_len:
        out.extend(frontier)
        nxt = []
        for s, t, p in frontier:
            for a in quiver.arrows:
                if a.source == t:
                    nxt.append((s, a.target, p + (a.id,)))
        frontier = nxt
        n += 1
    return out


def path_counts_by_adjacency(quiver, max_len):
    """Number of paths of each length <= max_len via powers of the adjacency matrix."""
    idx = {v: k for k, v in enumerate(quiver.vertices)}
    A = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for a in quiver.arrows:
        A[idx[a.source], idx[a.target]] += 1
    counts, P = [len(idx)], np.eye(len(idx), dtype=np.int64)
    for _ in range(max_len):
        P = P @ A
        counts.append(int(P.sum()))
    return counts


def quotient_dimensions(pres):
    """dim e_a (KQ/I) e_b for every pair, by dense ranks of the truncated ideal span."""
    q = pres.quiver
    cut = pres.bound if pres.truncate else pres.bound + 1
    paths = all_paths(q, cut - 1)
    dims = {}
    for a in q.vertices:
        for b in q.vertices:
            cols = [p for p in paths if p[0] == a and p[1] == b]
            col = {p[2]: k for k, p in enumerate(cols)}
            rows = []
            for r in pres.relations:
                for u in paths:
                    if u[0] != a or u[1] != r.source:
                        continue
                    for v in paths:
                        if v[0] != r.target or v[1] != b:
                            continue
                        vec = [0] * len(cols)
                        for c, p in r.terms:
                            w = u[2] + tuple(p.arrows) + v[2]
                            if len(w) < cut:
                                vec[col[w]] += c
                        if any(vec):
                            rows.append(vec)
            rk = sympy.Matrix(rows).rank() if rows else 0
            dims[(a, b)] = len(cols) - rk
    return dims


def brute_embeddings(quiver, pattern_quiver, constraints=None, injective=True):
    """Images (vertex set, arrow set) of all structure-preserving maps."""
    constraints = constraints or {}
    pv = list(pattern_quiver.vertices)
    amb = list(quiver.vertices)
    images = set()
    vmaps = permutations(amb, len(pv)) if injective else product(amb, repeat=len(pv))
    for img in vmaps:
        phi = dict(zip(pv, img))
        ok = True
        for v, (i, o) in constraints.items():
            w = phi[v]
            if (len(quiver.in_arrows(w)), len(quiver.out_arrows(w))) != (i, o):
                ok = False
        if not ok:
            continue
        choices = [[b.id for b in quiver.arrows if b.source == phi[a.source] and b.target == phi[a.target]]
                   for a in pattern_quiver.arrows]
        for pick in product(*choices):
            if injective:
                if len(set(pick)) != len(pick):
                    continue
            else:
                bad = False
                for key in ("source", "target"):
                    seen = {}
                    for a, b in zip(pattern_quiver.arrows, pick):
                        k = (getattr(a, key), b)
                        if k in seen:
                            bad = True
                        seen[k] = 1
                if bad:
                    continue
            images.add((frozenset(img), frozenset(pick)))
    return images


def _gl(n, p):
    for entries in product(range(p), repeat=n * n):
        m = sympy.Matrix(n, n, list(entries))
        if m.det() % p:
            yield m


def brute_isomorphic(M, N, p):
    """Exhaustive search for an isomorphism over GF(p) (tiny modules only)."""
    q = M.basis.quiver
    if M.dims != N.dims:
        return False

    def mat(rows, r, c):
        return sympy.Matrix(r, c, [int(x.v if hasattr(x, "v") else x) for row in rows for x in row])

    verts = list(q.vertices)
    spaces = [list(_gl(M.dims[v], p)) if M.dims[v] else [None] for v in verts]
    for pick in product(*spaces):
        F = dict(zip(verts, pick))
        ok = True
        for a in q.arrows:
            s, t = a.source, a.target
            if not M.dims[s] or not M.dims[t]:
                continue
            A = mat(M.maps[a.id], M.dims[s], M.dims[t])
            B = mat(N.maps[a.id], N.dims[s], N.dims[t])
            if ((A * F[t] - F[s] * B).applyfunc(lambda x: x % p)) != sympy.zeros(M.dims[s], M.dims[t]):
                ok = False
                break
        if ok:
            return True
    return False


def independent_block_check(quiver):
    """Biregular, and every 1-regular vertex is black in a glued V1 or V2 block."""
    ins = {v: [a for a in quiver.arrows if a.target == v] for v in quiver.vertices}
    outs = {v: [a for a in quiver.arrows if a.source == v] for v in quiver.vertices}
    reg = {}
    for v in quiver.vertices:
        i, o = len(ins[v]), len(outs[v])
        if i != o or i not in (1, 2):
            return False
        reg[v] = i
    for v in quiver.vertices:
        if reg[v] != 1:
            continue
        w1, w2 = ins[v][0].source, outs[v][0].target
        if w1 == v or w2 == v:
            return False
        if w1 == w2 and reg[w1] == 2:
            continue
        ok = False
        if reg[w1] == 2 and reg[w2] == 2:
            for k in quiver.vertices:
                if k in (v, w1, w2) or reg[k] != 1:
                    continue
                if ins[k][0].source == w2 and outs[k][0].target == w1:
                    ok = True
        if not ok:
            return False
    return True


def random_small_quiver(seed, max_vertices=6, max_arrows=12):
    """Seeded random quiver with loops and parallel arrows allowed."""
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, 8])))
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(0, max_arrows + 1))
    from quiverlab.quiver import Quiver
    verts = tuple(str(k + 1) for k in range(n))
    arrows = tuple(("e%d" % k, verts[int(rng.integers(n))], verts[int(rng.integers(n))]) for k in range(m))
    return Quiver(verts, arrows)
