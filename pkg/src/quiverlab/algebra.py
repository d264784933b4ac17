"""Bound quiver algebras KQ/I: normal forms, basis, Cartan data, socles.

Paths compose left to right (`a.b` means a then b).  The ideal is generated
by the relations together with all paths of length m (the declared bound).
Elements of the algebra are sparse dicts {basis index: coefficient}.
"""
import functools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .fields import QQ
from .linalg import SparseEchelon
from .quiver import Path, Quiver, idkey


class PresentationError(ValueError):
    pass


class NotFiniteDimensional(PresentationError):
    pass


class Inadmissible(PresentationError):
    pass


class NonMinimalPresentationWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Relation:
    """A linear combination sum(coef * path) of parallel paths of length >= 2."""
    terms: tuple
    name: str = ""

    def __post_init__(self):
        terms = tuple((Fraction(c), p) for c, p in self.terms)
        if not terms:
            raise PresentationError("relation %s has no terms" % self.name)
        paths = [p for _, p in terms]
        if len(set(paths)) != len(paths):
            raise PresentationError("relation %s repeats a path" % self.name)
        for c, p in terms:
            if c == 0:
                raise PresentationError("relation %s has a zero coefficient" % self.name)
            if p.length < 2:
                raise PresentationError("relation %s has a path of length < 2" % self.name)
        ends = {(p.source, p.target) for p in paths}
        if len(ends) != 1:
            raise PresentationError("relation %s is non-parallel" % self.name)
        object.__setattr__(self, "terms", terms)

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target

    def paths(self):
        return [p for _, p in self.terms]


@dataclass(frozen=True)
class Presentation:
    """Quiver, relation generators and nilpotency bound m.

    With truncate=False the bound is a claim that the relations already kill
    every path of length m (certified when the basis is built).  With
    truncate=True all paths of length m are added to the ideal explicitly.
    """
    quiver: Quiver
    relations: tuple = ()
    bound: int = 2
    truncate: bool = False

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        if self.bound < 2:
            raise Inadmissible("the nilpotency bound must be at least 2")
        for r in self.relations:
            for _, p in r.terms:
                self.quiver.path(p.arrows)


def relation(quiver, spec, name=""):
    """Build a Relation from [(coef, "a.b.c"), ...] or a single path string."""
    if isinstance(spec, str):
        spec = [(1, spec)]
    terms = []
    for c, p in spec:
        arrows = tuple(p.split(".")) if isinstance(p, str) else tuple(p)
        terms.append((Fraction(c), quiver.path(arrows)))
    return Relation(tuple(terms), name)


def path_order_key(p):
    return (p.length, tuple(idkey(a) for a in p.arrows), idkey(p.source))


def _paths_below(quiver, bound):
    """All paths of length < bound, sorted by length then lexicographically."""
    out = [Path(v, v, ()) for v in quiver.vertices]
    layer = list(out)
    for _ in range(1, bound):
        nxt = []
        for p in layer:
            for a in quiver.out_arrows(p.target):
                nxt.append(Path(p.source, a.target, p.arrows + (a.id,)))
        out.extend(nxt)
        layer = nxt
    out.sort(key=path_order_key)
    return out


def _ideal_span(pres, bound, field_, paths=None, skip=None, include_bound_paths=False):
    """Span of u*rho*v (|u|+|v| >= 0) truncated below `bound`."""
    q = pres.quiver
    if paths is None:
        paths = _paths_below(q, bound)
    index = {p: k for k, p in enumerate(paths)}
    ending = {v: [] for v in q.vertices}
    starting = {v: [] for v in q.vertices}
    for p in paths:
        ending[p.target].append(p)
        starting[p.source].append(p)
    ech = SparseEchelon()
    one = field_.one
    for r in pres.relations:
        terms = [(field_(c), p) for c, p in r.terms]
        lmin = min(p.length for _, p in terms)
        for u in ending[r.source]:
            if u.length + lmin >= bound:
                continue
            for v in starting[r.target]:
                if skip is not None and not skip(r, u, v):
                    continue
                if u.length + lmin + v.length >= bound:
                    continue
                vec = {}
                for c, w in terms:
                    if u.length + w.length + v.length >= bound:
                        continue
                    full = Path(u.source, v.target, u.arrows + w.arrows + v.arrows)
                    k = index[full]
                    vec[k] = vec.get(k, 0) + c
                ech.add(vec)
    if include_bound_paths:
        for p in paths:
            if p.length == pres.bound:
                ech.add({index[p]: one})
    return ech, paths, index


@dataclass
class AlgebraBasis:
    pres: Presentation
    field: object
    elements: list            # standard monomials (Paths), position = basis index
    by_pair: dict             # (a, b) -> list of basis indices spanning e_a L e_b
    echelon: SparseEchelon = field(repr=False)
    paths: list = field(repr=False)
    path_index: dict = field(repr=False)
    cut: int = 0              # paths of length >= cut are zero
    _col_to_basis: dict = field(default_factory=dict, repr=False)
    _table: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self):
        return len(self.elements)

    @property
    def quiver(self):
        return self.pres.quiver

    def vertex_index(self, v):
        return self._col_to_basis[self.path_index[Path(v, v, ())]]

    def reduce_path_vector(self, vec):
        """Normal form of a combination {path: coef} as {basis index: coef}."""
        cols = {}
        for p, c in vec.items():
            if p.length >= self.cut or c == 0:
                continue
            k = self.path_index[p]
            cols[k] = cols.get(k, 0) + c
        red = self.echelon.reduce(cols)
        return {self._col_to_basis[k]: c for k, c in red.items()}

    def normal_form(self, path):
        if isinstance(path, (list, tuple, str)):
            arrows = tuple(path.split(".")) if isinstance(path, str) else tuple(path)
            path = self.quiver.path(arrows)
        return self.reduce_path_vector({path: self.field.one})

    def mul_basis(self, i, j):
        key = (i, j)
        if key not in self._table:
            p, q = self.elements[i], self.elements[j]
            if p.target != q.source:
                res = {}
            else:
                res = self.reduce_path_vector(
                    {Path(p.source, q.target, p.arrows + q.arrows): self.field.one})
            self._table[key] = res
        return self._table[key]

    def mul(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul_basis(i, j).items():
                    nv = out.get(k, 0) + a * b * c
                    if nv == 0:
                        out.pop(k, None)
                    else:
                        out[k] = nv
        return out

    def table(self):
        """Full structure constants {(i, j): {k: c}} (nonzero products only)."""
        full = {}
        for i in range(self.dim):
            for j in range(self.dim):
                r = self.mul_basis(i, j)
                if r:
                    full[(i, j)] = dict(r)
        return full

    def element(self, i):
        return {i: self.field.one}

    def unit(self):
        return {self.vertex_index(v): self.field.one for v in self.quiver.vertices}

    def arrow_element(self, aid):
        return self.normal_form((aid,))

    def endpoints(self, i):
        p = self.elements[i]
        return p.source, p.target

    def label(self, i):
        return str(self.elements[i])

    def format(self, x):
        if not x:
            return "0"
        parts = []
        for k in sorted(x):
            c = x[k]
            parts.append(("%s*%s" % (c, self.label(k))) if c != 1 else self.label(k))
        return " + ".join(parts)


def compute_basis(pres, field=QQ):
    """Basis of KQ/I by degree-bounded elimination of the ideal span.

    Without truncation the span is built modulo paths of length m+1 and every
    path of length m must reduce to zero, which certifies the bound;
    otherwise NotFiniteDimensional is raised.
    """
    q = pres.quiver
    cut = pres.bound if pres.truncate else pres.bound + 1
    ech, paths, index = _ideal_span(pres, cut, field)
    for col in ech.pivots():
        if paths[col].length < 2:
            raise Inadmissible("path %s of length < 2 lies in the ideal" % paths[col])
    if not pres.truncate:
        alive = [p for p in paths if p.length == pres.bound and {index[p]: field.one} not in ech]
        if alive:
            raise NotFiniteDimensional(
                "relations do not kill the path %s of length %d; raise the bound or truncate"
                % (alive[0], pres.bound))
    pivots = set(ech.pivots())
    elements, col_to_basis = [], {}
    for k, p in enumerate(paths):
        if k not in pivots and p.length < pres.bound:
            col_to_basis[k] = len(elements)
            elements.append(p)
    by_pair = {(a, b): [] for a in q.vertices for b in q.vertices}
    for i, p in enumerate(elements):
        by_pair[(p.source, p.target)].append(i)
    return AlgebraBasis(pres, field, elements, by_pair, ech, paths, index, cut, col_to_basis)


@dataclass(frozen=True)
class DimensionVector:
    vertices: tuple
    entries: tuple

    def __getitem__(self, v):
        return self.entries[self.vertices.index(v)]

    def __add__(self, other):
        return DimensionVector(self.vertices, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other):
        return DimensionVector(self.vertices, tuple(a - b for a, b in zip(self.entries, other.entries)))

    @property
    def size(self):
        return sum(self.entries)

    @classmethod
    def zero(cls, vertices):
        return cls(tuple(vertices), (0,) * len(vertices))

    @classmethod
    def unit(cls, vertices, v):
        vertices = tuple(vertices)
        return cls(vertices, tuple(int(w == v) for w in vertices))

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


@dataclass(frozen=True)
class CartanMatrix:
    vertices: tuple
    entries: tuple     # rows indexed by a, columns by b: dim e_a L e_b

    def __getitem__(self, ab):
        a, b = ab
        return self.entries[self.vertices.index(a)][self.vertices.index(b)]

    def as_lists(self):
        return [list(r) for r in self.entries]

    def row(self, a):
        return DimensionVector(self.vertices, self.entries[self.vertices.index(a)])

    def is_symmetric(self):
        n = len(self.vertices)
        return all(self.entries[i][j] == self.entries[j][i] for i in range(n) for j in range(n))

    def submatrix(self, vs):
        return [[self[(a, b)] for b in vs] for a in vs]


def cartan_matrix(basis):
    vs = basis.quiver.vertices
    return CartanMatrix(tuple(vs), tuple(tuple(len(basis.by_pair[(a, b)]) for b in vs) for a in vs))


def projective_dimension_vector(basis, v):
    return cartan_matrix(basis).row(v)


# --- the summand predicate and minimality -------------------------------------

def summand_paths(pres):
    return frozenset(p.arrows for r in pres.relations for _, p in r.terms)


def minimality_check(pres, basis=None, field=QQ):
    """Per relation: 'minimal' or 'redundant'.

    A relation is redundant when it lies in the span of the other generators
    plus J*I + I*J, computed modulo paths of length m+1 (which lie in J*I).
    """
    q = pres.quiver
    cut = pres.bound + 1
    paths = _paths_below(q, cut)
    verdicts = []
    for r in pres.relations:
        def keep(rel, u, v, r=r):
            return rel is not r or (u.length + v.length) > 0
        ech, _, index = _ideal_span(pres, cut, field, paths=paths, skip=keep,
                                    include_bound_paths=pres.truncate)
        vec = {}
        for c, p in r.terms:
            if p.length < cut:
                vec[index[p]] = vec.get(index[p], 0) + field(c)
        verdicts.append((r.name, "redundant" if vec in ech else "minimal"))
    return verdicts


@functools.lru_cache(maxsize=256)
def _nonminimal(pres):
    return tuple(n for n, v in minimality_check(pres) if v == "redundant")


def precedes_I(pres, path):
    """True iff `path` is a summand of one of the given relation generators.

    The answer depends on the chosen generators.  A warning is issued when
    some generator is redundant, since the predicate presumes minimality.
    """
    if isinstance(path, Path):
        arrows = path.arrows
    elif isinstance(path, str):
        arrows = tuple(path.split("."))
    else:
        arrows = tuple(path)
    bad = _nonminimal(pres)
    if bad:
        warnings.warn("non-minimal presentation: redundant relations %s" % ", ".join(bad),
                      NonMinimalPresentationWarning, stacklevel=2)
    return arrows in summand_paths(pres)


def precedes_predicate(pres):
    """A plain callable on arrow tuples, without the minimality warning."""
    summ = summand_paths(pres)
    return lambda arrows: tuple(arrows) in summ


# --- radical, socle, symmetry --------------------------------------------------

def _span(vectors):
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v)
    return ech


def _is_zero(x):
    return not x


@dataclass
class SocleRadical:
    radical_powers: list      # J^k as lists of sparse vectors (reduced rows), k = 1, 2, ...
    loewy_length: int
    right_socle: dict         # vertex -> basis of soc(e_i L)
    left_socle: dict          # vertex -> basis of soc(L e_i)


def radical_filtration(basis):
    """Bases of J, J^2, ... until zero (each as reduced sparse rows)."""
    powers = []
    k = 1
    while True:
        gens = [basis.reduce_path_vector({p: basis.field.one})
                for p in basis.paths if p.length >= k and p.length < basis.cut]
        ech = _span(g for g in gens if g)
        if len(ech) == 0:
            break
        powers.append([dict(r) for _, r in sorted(ech.rows.items())])
        k += 1
    return powers


def _annihilator(basis, indices, act):
    """Vectors in span(indices) killed by act(vec, arrow) for all arrows."""
    from .linalg import nullspace
    q = basis.quiver
    if not indices:
        return []
    cols = []
    for a in q.arrows:
        a_el = basis.arrow_element(a.id)
        imgs = [act(basis.element(i), a_el) for i in indices]
        keys = sorted({k for im in imgs for k in im})
        for k in keys:
            cols.append([im.get(k, basis.field.zero) for im in imgs])
    if not cols:
        ns = [[basis.field.one if r == c else basis.field.zero for c in range(len(indices))]
              for r in range(len(indices))]
    else:
        ns = nullspace(cols, len(indices), basis.field.zero)
    return [{indices[k]: c for k, c in enumerate(v) if c != 0} for v in ns]


def socle_and_radical(basis):
    q = basis.quiver
    powers = radical_filtration(basis)
    right, left = {}, {}
    for v in q.vertices:
        row = [i for b in q.vertices for i in basis.by_pair[(v, b)]]
        col = [i for a in q.vertices for i in basis.by_pair[(a, v)]]
        right[v] = _annihilator(basis, row, lambda x, a: basis.mul(x, a))
        left[v] = _annihilator(basis, col, lambda x, a: basis.mul(a, x))
    return SocleRadical(powers, len(powers) + 1, right, left)


def _vertices_of(basis, vecs, side):
    out = set()
    for vec in vecs:
        for k in vec:
            s, t = basis.endpoints(k)
            out.add(t if side == "target" else s)
    return out


def symmetry_diagnostics(basis, socle=None):
    """Necessary conditions for symmetry; passing does not prove symmetry."""
    q = basis.quiver
    soc = socle or socle_and_radical(basis)
    cart = cartan_matrix(basis)
    checks = {}
    checks["cartan_symmetric"] = (cart.is_symmetric(), [])
    bad_dim = [v for v in q.vertices if len(soc.right_socle[v]) != 1]
    checks["simple_socle"] = (not bad_dim, bad_dim)
    bad_top = [v for v in q.vertices
               if len(soc.right_socle[v]) == 1 and _vertices_of(basis, soc.right_socle[v], "target") != {v}]
    checks["socle_matches_top"] = (not bad_dim and not bad_top, bad_dim + bad_top)
    return SymmetryReport(checks)


@dataclass
class SymmetryReport:
    checks: dict

    @property
    def passed(self):
        return all(ok for ok, _ in self.checks.values())

    def failed(self):
        return [k for k, (ok, _) in self.checks.items() if not ok]


# --- idempotent algebras --------------------------------------------------------

@dataclass
class IdempotentAlgebra:
    vertices: tuple
    basis: AlgebraBasis       # the ambient algebra
    elements: list            # ambient basis indices spanning eLe
    radical: list             # ambient basis indices spanning eJe
    gabriel: dict             # (a, b) -> number of arrows a -> b
    table: dict               # structure constants on positions in `elements`

    @property
    def dim(self):
        return len(self.elements)

    def cartan(self):
        return [[len(self.basis.by_pair[(a, b)]) for b in self.vertices] for a in self.vertices]

    def gabriel_quiver(self):
        arrows = []
        for (a, b), n in sorted(self.gabriel.items(), key=lambda kv: (idkey(kv[0][0]), idkey(kv[0][1]))):
            for k in range(n):
                arrows.append(("g_%s_%s_%d" % (a, b, k), a, b))
        return Quiver(self.vertices, tuple(arrows))

    def product(self, *words):
        """Product in L of the normal forms of the given paths (strings)."""
        out = self.basis.normal_form(words[0])
        for w in words[1:]:
            out = self.basis.mul(out, self.basis.normal_form(w))
        return out


def idempotent_algebra(pres, basis, vertices):
    """The algebra eLe for e the sum of e_v over the given vertex subset."""
    E = tuple(v for v in pres.quiver.vertices if v in set(vertices))
    if not E:
        raise ValueError("the vertex subset must be nonempty")
    elements = [i for a in E for b in E for i in basis.by_pair[(a, b)]]
    radical = [i for i in elements if basis.elements[i].length >= 1]
    pos = {i: k for k, i in enumerate(elements)}
    table = {}
    sq = {}
    for i in elements:
        for j in elements:
            r = basis.mul_basis(i, j)
            if r:
                table[(pos[i], pos[j])] = {pos[k]: c for k, c in r.items()}
    for i in radical:
        for j in radical:
            r = basis.mul_basis(i, j)
            if r:
                s, t = basis.endpoints(i)[0], basis.endpoints(j)[1]
                sq.setdefault((s, t), SparseEchelon()).add(r)
    gab = {}
    for a in E:
        for b in E:
            rad_ab = [i for i in basis.by_pair[(a, b)] if basis.elements[i].length >= 1]
            n = len(rad_ab) - (len(sq[(a, b)]) if (a, b) in sq else 0)
            if n:
                gab[(a, b)] = n
    return IdempotentAlgebra(E, basis, elements, radical, gab, table)
