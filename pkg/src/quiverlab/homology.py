"""Right modules over a bound quiver algebra, covers, syzygies and periods.

A module stores one vector space per vertex (by dimension) and, for every
arrow a: s -> t, a matrix of shape dim_s x dim_t acting on row vectors.
"""
from dataclasses import dataclass, field
from itertools import product

from .algebra import DimensionVector, cartan_matrix
from .linalg import determinant, left_nullspace, nullspace, rank, rref, solve_in_span
from .quiver import idkey


class ZeroModuleError(ValueError):
    pass


class InconclusiveIsomorphism(RuntimeError):
    pass


def _zeros(r, c, z):
    return [[z] * c for _ in range(r)]


@dataclass
class RightModule:
    basis: object             # the AlgebraBasis the module lives over
    dims: dict
    maps: dict                # arrow id -> matrix (dim source x dim target)

    def __post_init__(self):
        q = self.basis.quiver
        for a in q.arrows:
            m = self.maps.get(a.id)
            ds, dt = self.dims[a.source], self.dims[a.target]
            if m is None:
                self.maps[a.id] = _zeros(ds, dt, self.basis.field.zero)
            elif len(m) != ds or any(len(r) != dt for r in m):
                raise ValueError("matrix of arrow %s does not match the dimensions" % a.id)

    @property
    def field(self):
        return self.basis.field

    @property
    def dim(self):
        return sum(self.dims.values())

    def dimension_vector(self):
        vs = self.basis.quiver.vertices
        return DimensionVector(tuple(vs), tuple(self.dims[v] for v in vs))

    def act_path(self, vec, path):
        """Right action of a path (arrow sequence) on a row vector."""
        z = self.field.zero
        v = list(vec)
        for aid in path.arrows:
            m = self.maps[aid]
            n = len(m[0]) if m else self.dims[self.basis.quiver.arrow(aid).target]
            out = [z] * n
            for x, row in zip(v, m):
                if x != 0:
                    for j, y in enumerate(row):
                        if y != 0:
                            out[j] = out[j] + x * y
            v = out
        return v

    def relation_violations(self):
        """Relations (and bound paths) that do not act as zero."""
        bad = []
        pres = self.basis.pres
        for r in pres.relations:
            s, t = r.source, r.target
            for k in range(self.dims[s]):
                e = [self.field.one if j == k else self.field.zero for j in range(self.dims[s])]
                tot = [self.field.zero] * self.dims[t]
                for c, p in r.terms:
                    img = self.act_path(e, p)
                    tot = [a + self.field(c) * b for a, b in zip(tot, img)]
                if any(x != 0 for x in tot):
                    bad.append(r.name or str(r.terms[0][1]))
                    break
        return bad

    def is_zero(self):
        return self.dim == 0


@dataclass
class ModuleMap:
    source: RightModule
    target: RightModule
    mats: dict                # vertex -> matrix dim_source(v) x dim_target(v)

    def commutes(self):
        q = self.source.basis.quiver
        z = self.source.field.zero
        S, T = self.source, self.target

        def prod(a, b, r, k, c):
            return [[sum((a[i][t] * b[t][j] for t in range(k)), z) for j in range(c)] for i in range(r)]

        for a in q.arrows:
            s, t = a.source, a.target
            lhs = prod(S.maps[a.id], self.mats[t], S.dims[s], S.dims[t], T.dims[t])
            rhs = prod(self.mats[s], T.maps[a.id], S.dims[s], T.dims[s], T.dims[t])
            if lhs != rhs:
                return False
        return True

    def is_surjective(self):
        return all(rank(self.mats[v], self.target.dims[v]) == self.target.dims[v]
                   for v in self.target.dims if self.target.dims[v])


def simple_module(basis, i):
    q = basis.quiver
    return RightModule(basis, {v: int(v == i) for v in q.vertices}, {})


def projective_module(basis, i):
    """P_i = e_i L with basis the standard monomials starting at i."""
    q = basis.quiver
    z, one = basis.field.zero, basis.field.one
    cols = {v: basis.by_pair[(i, v)] for v in q.vertices}
    pos = {v: {b: k for k, b in enumerate(cols[v])} for v in q.vertices}
    maps = {}
    for a in q.arrows:
        m = _zeros(len(cols[a.source]), len(cols[a.target]), z)
        for r, b in enumerate(cols[a.source]):
            prod_ = basis.mul({b: one}, basis.arrow_element(a.id))
            for k, c in prod_.items():
                m[r][pos[a.target][k]] = c
        maps[a.id] = m
    mod = RightModule(basis, {v: len(cols[v]) for v in q.vertices}, maps)
    mod.generator_paths = {v: [basis.elements[b] for b in cols[v]] for v in q.vertices}
    return mod


def direct_sum(mods, basis):
    q = basis.quiver
    z = basis.field.zero
    dims = {v: sum(m.dims[v] for m in mods) for v in q.vertices}
    maps = {}
    for a in q.arrows:
        big = _zeros(dims[a.source], dims[a.target], z)
        r0 = c0 = 0
        for m in mods:
            for r, row in enumerate(m.maps[a.id]):
                for c, x in enumerate(row):
                    big[r0 + r][c0 + c] = x
            r0 += m.dims[a.source]
            c0 += m.dims[a.target]
        maps[a.id] = big
    return RightModule(basis, dims, maps)


def radical_images(M):
    """Per vertex, a spanning list of MJ at that vertex."""
    q = M.basis.quiver
    img = {v: [] for v in q.vertices}
    for a in q.arrows:
        img[a.target].extend(M.maps[a.id])
    return img


def top_vectors(M):
    """Per vertex, unit vectors completing a basis of MJ to one of M (a top basis)."""
    f = M.field
    out = {}
    for v, span in radical_images(M).items():
        n = M.dims[v]
        cur = [r for r in span if any(x != 0 for x in r)]
        base = rank(cur, n) if cur else 0
        chosen = []
        for k in range(n):
            if base + len(chosen) == n:
                break
            e = [f.one if j == k else f.zero for j in range(n)]
            if rank(cur + chosen + [e], n) > base + len(chosen):
                chosen.append(e)
        out[v] = chosen
    return out


@dataclass
class Cover:
    projective: RightModule
    surjection: ModuleMap
    multiplicities: dict      # vertex -> number of copies of P_v


def projective_cover(M):
    """Minimal projective cover, built from a top basis of M/MJ."""
    if M.is_zero():
        raise ZeroModuleError("the zero module has no projective cover")
    basis = M.basis
    q = basis.quiver
    tops = top_vectors(M)
    summands, gens = [], []
    for v in q.vertices:
        for t in tops[v]:
            summands.append(projective_module(basis, v))
            gens.append((v, t))
    P = direct_sum(summands, basis)
    mats = {w: [] for w in q.vertices}
    for (v, t), Pv in zip(gens, summands):
        for w in q.vertices:
            for path in Pv.generator_paths[w]:
                mats[w].append(M.act_path(t, path))
    for w in q.vertices:
        if not mats[w]:
            mats[w] = []
    mult = {v: len(tops[v]) for v in q.vertices}
    return Cover(P, ModuleMap(P, M, mats), mult)


def kernel(phi):
    """Kernel submodule of a module map."""
    S = phi.source
    basis = S.basis
    q = basis.quiver
    z = S.field.zero
    K = {}
    for v in q.vertices:
        n = S.dims[v]
        if n == 0:
            K[v] = []
        elif phi.target.dims[v] == 0:
            K[v] = [[S.field.one if i == j else z for j in range(n)] for i in range(n)]
        else:
            K[v] = left_nullspace(phi.mats[v], z)
    maps = {}
    for a in q.arrows:
        rows = []
        for k in K[a.source]:
            img = S.act_path(k, basis.quiver.path((a.id,)))
            coeffs = solve_in_span(K[a.target], img, z)
            if coeffs is None:
                raise ArithmeticError("kernel is not closed under arrow %s" % a.id)
            rows.append(coeffs)
        maps[a.id] = rows if rows else []
    dims = {v: len(K[v]) for v in q.vertices}
    for a in q.arrows:
        if not maps[a.id]:
            maps[a.id] = _zeros(dims[a.source], dims[a.target], z)
    mod = RightModule(basis, dims, maps)
    mod.embedding = K
    return mod


def syzygy(M):
    """Omega(M): kernel of the minimal projective cover (zero for M = 0)."""
    if M.is_zero():
        return M
    cov = projective_cover(M)
    om = kernel(cov.surjection)
    om.cover = cov
    return om


@dataclass
class SyzygyChain:
    vertex: str
    modules: list                             # Omega^0 = S_i, Omega^1, ...
    cover_dims: list = field(default_factory=list)
    period: int = None

    def dims(self):
        return [m.dim for m in self.modules]


def syzygy_chain(basis, i, kmax):
    """Omega^k(S_i) for k <= kmax, stopping at the first return to S_i or at zero."""
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    S = simple_module(basis, i)
    mods = [S]
    cov_dims = []
    period = None
    cur = S
    for k in range(1, kmax + 1):
        if cur.is_zero():
            break
        nxt = syzygy(cur)
        cov_dims.append(nxt.cover.projective.dim)
        mods.append(nxt)
        cur = nxt
        if isomorphism_verdict(nxt, S) == "isomorphic":
            period = k
            break
    return SyzygyChain(i, mods, cov_dims, period)


# --- Hom spaces and isomorphism ----------------------------------------------------

def hom_space(M, N):
    """Basis of Hom(M, N) as dicts vertex -> matrix."""
    q = M.basis.quiver
    f = M.field
    z = f.zero
    var = {}
    for v in q.vertices:
        for r in range(M.dims[v]):
            for c in range(N.dims[v]):
                var[(v, r, c)] = len(var)
    nvar = len(var)
    if nvar == 0:
        return []
    eqs = []
    for a in q.arrows:
        s, t = a.source, a.target
        A, B = M.maps[a.id], N.maps[a.id]
        # (A F_t - F_s B)[r][c] = 0
        for r in range(M.dims[s]):
            for c in range(N.dims[t]):
                row = [z] * nvar
                for k in range(M.dims[t]):
                    if A[r][k] != 0:
                        row[var[(t, k, c)]] = row[var[(t, k, c)]] + A[r][k]
                for k in range(N.dims[s]):
                    if B[k][c] != 0:
                        row[var[(s, r, k)]] = row[var[(s, r, k)]] - B[k][c]
                if any(x != 0 for x in row):
                    eqs.append(row)
    sols = nullspace(eqs, nvar, z)
    out = []
    for sv in sols:
        mats = {}
        for v in q.vertices:
            mats[v] = [[sv[var[(v, r, c)]] for c in range(N.dims[v])] for r in range(M.dims[v])]
        out.append(mats)
    return out


LADDER_BOUND = 3
LADDER_TRIALS = 20000


def _ladder(d, bound):
    """Coefficient vectors in {-b..b}^d ordered by max-norm, skipping zero."""
    for b in range(1, bound + 1):
        vals = list(range(-b, b + 1))
        vals.sort(key=lambda x: (abs(x), -x))
        for c in product(vals, repeat=d):
            if max(abs(x) for x in c) == b:
                yield c


def isomorphism_verdict(M, N, bound=LADDER_BOUND, max_trials=LADDER_TRIALS):
    """'isomorphic', 'not_isomorphic' or 'inconclusive'.

    Dimension vectors and Hom/End dimensions are compared first; then an
    invertible element of Hom(M, N) is searched for along a deterministic
    coefficient ladder (exhaustively over a prime field when small enough).
    """
    if M.dimension_vector() != N.dimension_vector():
        return "not_isomorphic"
    if M.dim == 0:
        return "isomorphic"
    H = hom_space(M, N)
    if not H:
        return "not_isomorphic"
    if len(H) != len(hom_space(M, M)) or len(hom_space(N, M)) != len(H):
        return "not_isomorphic"
    f = M.field
    z = f.zero
    q = M.basis.quiver
    verts = [v for v in q.vertices if M.dims[v]]
    d = len(H)

    def invertible(coeffs):
        for v in verts:
            m = [[sum((c * h[v][r][k] for c, h in zip(coeffs, H) if c != 0), z)
                  for k in range(M.dims[v])] for r in range(M.dims[v])]
            if determinant(m, z) == 0:
                return False
        return True

    exhaustive = False
    if hasattr(f, "p") and f.p ** d <= max_trials:
        cands = (c for c in product(range(f.p), repeat=d) if any(c))
        exhaustive = True
    else:
        cands = _ladder(d, bound)
        # a nonzero polynomial of degree < |grid side| cannot vanish on the grid
        exhaustive = (2 * bound + 1) > M.dim and (2 * bound + 1) ** d <= max_trials
    for n, c in enumerate(cands):
        if n >= max_trials:
            exhaustive = False
            break
        if invertible([f(x) for x in c]):
            return "isomorphic"
    return "not_isomorphic" if exhaustive else "inconclusive"


def is_isomorphic(M, N, bound=LADDER_BOUND, max_trials=LADDER_TRIALS):
    v = isomorphism_verdict(M, N, bound, max_trials)
    if v == "inconclusive":
        raise InconclusiveIsomorphism("coefficient ladder exhausted without a decision")
    return v == "isomorphic"


def period_of_simple(basis, i, kmax):
    """Least d <= kmax with Omega^d(S_i) isomorphic to S_i, else None."""
    return syzygy_chain(basis, i, kmax).period


# --- the period-four exact sequence -----------------------------------------------

@dataclass
class Period4Report:
    vertex: str
    period: object
    p_plus: DimensionVector
    p_minus: DimensionVector
    p_i: DimensionVector
    balanced: bool
    out_arrows: list
    in_arrows: list
    generators: list          # columns of M_i as {out-arrow id: element of L}
    left_identity: bool       # (alpha alpha') . M_i = 0
    valid_choices: list       # in-arrow orders for which M_i . (gamma, gamma*)^T = 0
    margin: int               # |p_hat| - |p_i|
    findings: list = field(default_factory=list)

    @property
    def right_identity(self):
        return bool(self.valid_choices)


def _block_sum(basis, targets):
    cart = cartan_matrix(basis)
    tot = DimensionVector.zero(cart.vertices)
    for t in targets:
        tot = tot + cart.row(t)
    return tot


def period4_diagnostics(basis, i, override=False, kmax=4, seed_trials=24):
    """Check the identities attached to the exact sequence of a period-four simple."""
    import random
    q = basis.quiver
    f = basis.field
    z, one = f.zero, f.one
    period = period_of_simple(basis, i, kmax)
    findings = []
    if period != 4 and not override:
        raise ValueError("S_%s does not have period 4 (found %r); pass override=True" % (i, period))
    outs = sorted(q.out_arrows(i), key=lambda a: idkey(a.id))
    ins = sorted(q.in_arrows(i), key=lambda a: idkey(a.id))
    p_plus = _block_sum(basis, [a.target for a in outs])
    p_minus = _block_sum(basis, [a.source for a in ins])
    p_i = cartan_matrix(basis).row(i)
    balanced = p_plus == p_minus
    if not balanced:
        findings.append("p_plus differs from p_minus")
    # Omega^2(S_i) = kernel of d1 : sum_alpha P_t(alpha) -> P_i, (u_alpha) -> sum alpha u_alpha
    comps = []                      # (out arrow, ambient basis index) coordinates
    for a in outs:
        for b in q.vertices:
            for k in basis.by_pair[(a.target, b)]:
                comps.append((a, k))
    cols_images = []
    for a, k in comps:
        cols_images.append(basis.mul(basis.arrow_element(a.id), {k: one}))
    keys = sorted({k for im in cols_images for k in im})
    eq = [[im.get(k, z) for im in cols_images] for k in keys]
    kern = nullspace(eq, len(comps), z) if comps else []

    def as_element(vec):
        el = {a.id: {} for a in outs}
        for (a, k), c in zip(comps, vec):
            if c != 0:
                el[a.id][k] = el[a.id].get(k, z) + c
        return el

    def times(el, x):
        return {aid: basis.mul(u, x) for aid, u in el.items()}

    def flat(el):
        return [el[a.id].get(k, z) for a, k in comps]

    # split the kernel by the vertex at which its elements end
    by_vertex = {v: [] for v in q.vertices}
    for vec in kern:
        for v in q.vertices:
            part = [c if basis.endpoints(k)[1] == v else z for (a, k), c in zip(comps, vec)]
            if any(c != 0 for c in part):
                by_vertex[v].append(part)
    K = {}
    for v in q.vertices:
        red, _ = rref(by_vertex[v]) if by_vertex[v] else ([], [])
        K[v] = red
    # radical of the kernel: K * arrows
    KJ = {v: [] for v in q.vertices}
    for v in q.vertices:
        for vec in K[v]:
            el = as_element(vec)
            for a in q.out_arrows(v):
                img = flat(times(el, basis.arrow_element(a.id)))
                if any(c != 0 for c in img):
                    KJ[a.target].append(img)
    top_dim = {v: len(K[v]) - (rank(KJ[v]) if KJ[v] else 0) for v in q.vertices}
    need = {}
    for g in ins:
        need[g.source] = need.get(g.source, 0) + 1
    if any(top_dim[v] != need.get(v, 0) for v in q.vertices):
        findings.append("generators of the second syzygy do not match the arrows ending at %s" % i)
    # generators: for each in-arrow, an element of K at its source; choose by solving
    # sum_k phi_k * gamma_k = 0 and keeping a choice whose tops form a basis
    rng = random.Random(0)
    valid, chosen = [], None
    orders = [tuple(ins)]
    if len(ins) == 2 and ins[0].source == ins[1].source:
        orders.append((ins[1], ins[0]))
    for order in orders:
        blocks = [K[g.source] for g in order]
        nvars = sum(len(b) for b in blocks)
        cols = []
        for g, blk in zip(order, blocks):
            gel = basis.arrow_element(g.id)
            for vec in blk:
                cols.append(flat(times(as_element(vec), gel)))
        if nvars == 0:
            continue
        eqs = [[c[r] for c in cols] for r in range(len(comps))]
        sol = nullspace([e for e in eqs if any(x != 0 for x in e)], nvars, z)
        if not sol:
            continue
        found = None
        for trial in range(seed_trials):
            coeffs = [f(rng.randint(-50, 50)) if trial else one for _ in sol]
            combo = [sum((c * s[j] for c, s in zip(coeffs, sol)), z) for j in range(nvars)]
            phis, off = [], 0
            for blk in blocks:
                part = combo[off:off + len(blk)]
                off += len(blk)
                phis.append([sum((c * blk[r][j] for r, c in enumerate(part)), z)
                             for j in range(len(comps))])
            ok = True
            for v in set(g.source for g in order):
                mine = [p for p, g in zip(phis, order) if g.source == v]
                base = KJ[v]
                rb = rank(base) if base else 0
                if rank(base + mine, len(comps)) != rb + len(mine) or rb + len(mine) != len(K[v]):
                    ok = False
            if ok:
                found = phis
                break
        if found is not None:
            valid.append(tuple(g.id for g in order))
            if chosen is None:
                chosen = found
    generators = []
    left_ok = True
    if chosen is not None:
        for phi in chosen:
            el = as_element(phi)
            generators.append(el)
            tot = {}
            for a in outs:
                for k, c in basis.mul(basis.arrow_element(a.id), el[a.id]).items():
                    tot[k] = tot.get(k, z) + c
            if any(c != 0 for c in tot.values()):
                left_ok = False
    else:
        findings.append("no arrow choice satisfies the d3 identity")
    margin = p_plus.size - p_i.size
    return Period4Report(i, period, p_plus, p_minus, p_i, balanced,
                         [a.id for a in outs], [a.id for a in ins], generators,
                         left_ok and chosen is not None, valid, margin, findings)
