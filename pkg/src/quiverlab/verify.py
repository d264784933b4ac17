"""Necessary-condition checks on presentations and the 1-vertex block classification.

Every check returns CheckResult records.  A pass means the input is
consistent with the condition; it never certifies tameness or periodicity.
Checks that need relation data are skipped when only a quiver is given.
"""
from dataclasses import dataclass, field

from .algebra import (Inadmissible, NotFiniteDimensional, cartan_matrix,
                      compute_basis, idempotent_algebra, precedes_predicate)
from .homology import period_of_simple
from .patterns import MUST, PatternSpec, match_pattern
from .quiver import Quiver, degree_profile, find_blocks, idkey, is_biregular

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


class NonBiregularQuiver(ValueError):
    def __init__(self, offenders):
        super().__init__("quiver is not biregular; offending vertices: %s" % ", ".join(offenders))
        self.offenders = list(offenders)


@dataclass
class CheckResult:
    check: str
    verdict: str
    witnesses: list = field(default_factory=list)
    anchor: str = ""
    note: str = ""

    def __post_init__(self):
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing check needs a witness")

    def record(self):
        return {"check": self.check, "verdict": self.verdict,
                "witnesses": [str(w) for w in self.witnesses], "anchor": self.anchor}


def _split(pres):
    if isinstance(pres, Quiver):
        return pres, None
    return pres.quiver, pres


def _prec(pres):
    return None if pres is None else precedes_predicate(pres)


def _sorted_arrows(arrows):
    return sorted(arrows, key=lambda a: idkey(a.id))


def _path(*arrows):
    return ".".join(a.id for a in arrows)


def _triangles(q):
    """Quiver triangles (gamma: x->i, alpha: i->j, beta: j->x) on three distinct vertices."""
    out = []
    for al in _sorted_arrows(q.arrows):
        i, j = al.source, al.target
        if i == j:
            continue
        for be in _sorted_arrows(q.out_arrows(j)):
            x = be.target
            if x in (i, j):
                continue
            for ga in _sorted_arrows(q.arrows_between(x, i)):
                out.append((ga, al, be))
    return out


def _skip(name, anchor, why):
    return CheckResult(name, SKIPPED, [], anchor, why)


# --- infinite type --------------------------------------------------------------

def _basis_or_none(pres, basis):
    if basis is not None or pres is None:
        return basis
    try:
        return compute_basis(pres)
    except (NotFiniteDimensional, Inadmissible):
        return None


def infinite_type_margin(basis, i):
    """(|p_hat_i| - |p_i|, |p_hat_i|, |p_i|) with p_hat_i the sum of p_t over arrows leaving i."""
    q = basis.quiver
    cart = cartan_matrix(basis)
    p_hat = sum(cart.row(a.target).size for a in q.out_arrows(i))
    return p_hat - cart.row(i).size, p_hat, cart.row(i).size


def check_infinite_type_conditions(pres, basis=None, chains=None, kmax=4, force=False):
    """Strict growth |p_hat_i| > |p_i| per period-four vertex, and the isolated-arrow scan."""
    q, pres = _split(pres)
    out = []
    name, anchor = "infinite-type-inequality", "infinite-type-inequality"
    basis = _basis_or_none(pres, basis)
    if basis is None:
        out.append(_skip(name, anchor, "no finite-dimensional presentation available"))
    else:
        for v in q.vertices:
            per = None
            if chains is not None and v in chains:
                c = chains[v]
                per = getattr(c, "period", c)
            else:
                per = period_of_simple(basis, v, kmax)
            if not force and (per is None or 4 % per):
                out.append(CheckResult("%s[%s]" % (name, v), SKIPPED, [], anchor,
                                       "no evidence that S_%s has period dividing 4" % v))
                continue
            margin, hat, own = infinite_type_margin(basis, v)
            if margin > 0:
                out.append(CheckResult("%s[%s]" % (name, v), PASS, [], anchor,
                                       "|p_hat|=%d > |p|=%d" % (hat, own)))
            else:
                out.append(CheckResult("%s[%s]" % (name, v), FAIL,
                                       ["vertex %s: |p_hat|=%d, |p|=%d, margin %d" % (v, hat, own, margin)],
                                       anchor, "consistent with finite type"))
    bad = []
    for a in _sorted_arrows(q.arrows):
        if len(q.out_arrows(a.source)) == 1 and len(q.in_arrows(a.target)) == 1:
            bad.append("%s: %s -> %s" % (a.id, a.source, a.target))
    out.append(CheckResult("no-isolated-arrow", FAIL if bad else PASS, bad, "no-isolated-arrow"))
    return out


# --- triangles -----------------------------------------------------------------

def check_triangle_closure(pres):
    """Every alpha.beta occurring in a relation closes to a triangle."""
    q, pres = _split(pres)
    name = anchor = "triangle-closure"
    if pres is None:
        return _skip(name, anchor, "relation data unavailable")
    prec = _prec(pres)
    bad = []
    for a in _sorted_arrows(q.arrows):
        for b in _sorted_arrows(q.out_arrows(a.target)):
            if prec((a.id, b.id)) and not q.arrows_between(b.target, a.source):
                bad.append("(%s,%s)" % (a.id, b.id))
    return CheckResult(name, FAIL if bad else PASS, bad, anchor)


def check_triangle_propagation(pres):
    q, pres = _split(pres)
    name = anchor = "triangle-propagation"
    if pres is None:
        return [_skip(name, anchor, "relation data unavailable")]
    prec = _prec(pres)
    out = []
    seen = set()
    for ga, al, be in _triangles(q):
        key = (al.id, be.id)
        if key in seen or not prec(key):
            continue
        seen.add(key)
        gammas = _sorted_arrows(q.arrows_between(be.target, al.source))
        label = "%s[%s.%s]" % (name, al.id, be.id)
        if len(gammas) == 1:
            g = gammas[0]
            miss = [p for p in ((g.id, al.id), (be.id, g.id)) if not prec(p)]
            out.append(CheckResult(label, FAIL if miss else PASS, [".".join(p) for p in miss], anchor))
        elif len(gammas) == 2:
            ok = [g.id for g in gammas if prec((g.id, al.id)) and prec((be.id, g.id))]
            wit = [] if ok else ["neither %s nor %s propagates" % (gammas[0].id, gammas[1].id)]
            out.append(CheckResult(label, PASS if ok else FAIL, wit, anchor))
        else:
            out.append(_skip(label, anchor, "%d parallel arrows closing the triangle" % len(gammas)))
    if not out:
        out.append(CheckResult(name, PASS, [], anchor, "no triangle with a relation on alpha.beta"))
    return out


def _one_vertex_triangles(q):
    prof = degree_profile(q)
    res = []
    for v in sorted(q.vertices, key=idkey):
        if prof[v].regularity != "one_regular":
            continue
        g, = q.in_arrows(v)
        a, = q.out_arrows(v)
        x, j = g.source, a.target
        if len({x, v, j}) < 3:
            continue
        betas = _sorted_arrows(q.arrows_between(j, x))
        if betas:
            res.append((v, g, a, betas))
    return res


def check_one_vertex_neighbors(pres):
    q, _ = _split(pres)
    name = anchor = "one-vertex-neighbours"
    prof = degree_profile(q)
    out = []
    for v, g, a, _ in _one_vertex_triangles(q):
        bad = [w for w in (g.source, a.target)
               if not (prof[w].in_degree == prof[w].out_degree == 2)]
        out.append(CheckResult("%s[%s]" % (name, v), FAIL if bad else PASS,
                               ["neighbour %s of %s is not a 2-vertex" % (w, v) for w in bad], anchor))
    if not out:
        out.append(CheckResult(name, PASS, [], anchor, "no 1-vertex lies in a triangle"))
    return out


def check_length_three(pres):
    q, pres = _split(pres)
    forced, square = "length-three-forced-arrow", "length-three-square"
    if pres is None:
        return [_skip(forced, forced, "relation data unavailable"),
                _skip(square, square, "relation data unavailable")]
    prec = _prec(pres)
    bad6, bad7 = [], []
    for a in _sorted_arrows(q.arrows):
        unique_a = len(q.arrows_between(a.source, a.target)) == 1
        for b in _sorted_arrows(q.out_arrows(a.target)):
            for c in _sorted_arrows(q.out_arrows(b.target)):
                if not prec((a.id, b.id, c.id)):
                    continue
                i, j = a.source, c.target
                if unique_a and not prec((a.id, b.id)) and not q.arrows_between(j, i):
                    bad6.append("%s: no arrow %s -> %s" % (_path(a, b, c), j, i))
                deltas = q.arrows_between(j, i)
                if len(deltas) == 1 and not prec((b.id, c.id)):
                    d = deltas[0]
                    if not prec((b.id, c.id, d.id)):
                        bad7.append("square %s with %s: %s not in a relation" % (_path(a, b, c), d.id, _path(b, c, d)))
    return [CheckResult(forced, FAIL if bad6 else PASS, bad6, forced),
            CheckResult(square, FAIL if bad7 else PASS, bad7, square)]


# --- forbidden configurations ----------------------------------------------------

def _figure(name, arrows, constraints, must=()):
    q = Quiver.from_arrows(arrows)
    return PatternSpec(name, q, constraints, tuple((tuple(p.split(".")), MUST) for p in must))


TWO_TRIANGLES = _figure("two-triangles",
                        [("gamma", "x", "i"), ("alpha", "i", "j"), ("delta", "j", "x"), ("delta_b", "j", "y"),
                         ("alpha_p", "y", "is"), ("alpha_s", "is", "j")],
                        {"i": (1, 1), "is": (1, 1)})
FIVE_VERTEX = _figure("five-vertex-figure",
                      [("beta_s", "a", "x"), ("eta", "a", "ib"), ("gamma", "x", "i"), ("gamma_b", "x", "ib"),
                       ("alpha", "i", "j"), ("beta", "j", "x"), ("beta_b", "j", "a"), ("alpha_s", "ib", "j"),
                       ("sigma", "ib", "a")],
                      {"i": (1, 1), "x": (2, 2), "a": (2, 2), "j": (2, 2), "ib": (2, 2)}, must=("gamma.alpha",))
DOUBLE_ARROW = _figure("double-arrow-figure",
                       [("gamma", "x", "i"), ("alpha", "i", "j"), ("gamma_b", "x", "a"), ("alpha_s", "a", "j"),
                        ("beta", "j", "x"), ("beta_b", "j", "x")],
                       {"i": (1, 1)}, must=("gamma.alpha",))


def _figure_result(spec, q, prec):
    rep = match_pattern(q, spec, prec)
    wits = [e.describe() for e in rep.hits]
    return CheckResult(spec.name, FAIL if wits else PASS, wits, spec.name)


def check_two_vertex_cartan(pres, basis=None):
    """Pairs {x, j} whose corner algebra has one arrow x -> j, two arrows j -> x and constant Cartan matrix."""
    q, pres = _split(pres)
    name = anchor = "two-vertex-cartan"
    basis = _basis_or_none(pres, basis)
    if basis is None:
        return _skip(name, anchor, "no finite-dimensional presentation available")
    wits, shaped = [], 0
    vs = sorted(q.vertices, key=idkey)
    for x in vs:
        for j in vs:
            if x == j:
                continue
            A = idempotent_algebra(pres, basis, [x, j])
            g = A.gabriel
            if g.get((x, j), 0) != 1 or g.get((j, x), 0) != 2 or g.get((x, x), 0) or g.get((j, j), 0):
                continue
            shaped += 1
            C = A.cartan()
            vals = {C[0][0], C[0][1], C[1][0], C[1][1]}
            if len(vals) == 1:
                wits.append("{%s,%s}: Cartan %s" % (x, j, C))
    if not shaped:
        return _skip(name, anchor, "no vertex pair has the two-vertex Gabriel shape")
    return CheckResult(name, FAIL if wits else PASS, wits, anchor)


def check_forbidden_configs(pres, basis=None):
    q, p = _split(pres)
    prec = _prec(p)
    out = [_figure_result(TWO_TRIANGLES, q, lambda _: False)]
    out.append(check_two_vertex_cartan(pres, basis))
    for spec in (FIVE_VERTEX, DOUBLE_ARROW):
        if prec is None:
            out.append(_skip(spec.name, spec.name, "relation data unavailable"))
        else:
            out.append(_figure_result(spec, q, prec))
    return out


# --- blocks ---------------------------------------------------------------------

def _triangle_block_problems(q, v, g, a, betas):
    prof = degree_profile(q)
    x, j = g.source, a.target
    probs = []
    for w in (x, j):
        if not (prof[w].in_degree == prof[w].out_degree == 2):
            probs.append("%s is not a 2-vertex" % w)
    partners = [w for w in q.vertices if w not in (v, x, j)
                and prof[w].regularity == "one_regular"
                and q.arrows_between(j, w) and q.arrows_between(w, x)]
    if not partners:
        probs.append("no 1-vertex on a path %s -> ? -> %s" % (j, x))
    opposite = [w for w in q.vertices if w not in (v, x, j) and w not in partners
                and q.arrows_between(x, w) and q.arrows_between(w, j)]
    if not opposite:
        probs.append("no second triangle vertex on a path %s -> ? -> %s" % (x, j))
    return probs, partners, opposite


def check_triangle_block(pres):
    """1-vertices in a triangle sit in a V2 block glued to a triangle through its outlets."""
    q, _ = _split(pres)
    name = anchor = "triangle-block"
    out = []
    for v, g, a, betas in _one_vertex_triangles(q):
        probs, partners, opposite = _triangle_block_problems(q, v, g, a, betas)
        note = "" if probs else "partner %s, opposite vertex %s" % (partners[0], opposite[0])
        out.append(CheckResult("%s[%s]" % (name, v), FAIL if probs else PASS,
                               ["%s: %s" % (v, p) for p in probs], anchor, note))
    if not out:
        out.append(CheckResult(name, PASS, [], anchor, "no 1-vertex lies in a triangle"))
    return out


@dataclass
class MainTheoremReport:
    assignments: dict         # 1-vertex -> Block (V1 or V2)
    alternatives: dict        # 1-vertex -> all V1/V2 blocks containing it
    violations: list
    cross_references: list    # failing checks when there are violations
    blocks: object = None

    @property
    def verdict(self):
        return FAIL if self.violations else PASS

    def results(self):
        out = []
        for v, b in self.assignments.items():
            out.append(CheckResult("block-classification[%s]" % v, PASS, [b.describe()],
                                   "block-classification"))
        for v in self.violations:
            out.append(CheckResult("block-classification[%s]" % v, FAIL,
                                   ["%s lies in no V1 or V2 block" % v] +
                                   ["failed: %s" % c for c in self.cross_references],
                                   "block-classification"))
        return out


def main_theorem_report(pres):
    q, _ = _split(pres)
    bi = is_biregular(q)
    if not bi.ok:
        raise NonBiregularQuiver(bi.offenders)
    found = find_blocks(q)
    prof = degree_profile(q)
    ones = sorted((v for v in q.vertices if prof[v].regularity == "one_regular"), key=idkey)
    assign, alts, viol = {}, {}, []
    for v in ones:
        cands = [b for b in found.of_kind("V1", "V2") if v in b.black]
        if cands:
            assign[v] = cands[0]
            alts[v] = cands
        else:
            viol.append(v)
    refs = []
    if viol:
        battery = (check_infinite_type_conditions(q) + check_one_vertex_neighbors(q)
                   + check_triangle_block(q) + [check_forbidden_configs(q)[0]])
        for r in battery:
            if r.verdict == FAIL and r.check not in refs:
                refs.append(r.check)
    return MainTheoremReport(assign, alts, viol, refs, found)


def full_battery(pres, basis=None):
    """Every check in a fixed order."""
    q, p = _split(pres)
    basis = _basis_or_none(p, basis)
    out = list(check_infinite_type_conditions(pres, basis))
    out.append(check_triangle_closure(pres))
    out.extend(check_triangle_propagation(pres))
    out.extend(check_one_vertex_neighbors(pres))
    out.extend(check_length_three(pres))
    out.extend(check_forbidden_configs(pres, basis))
    out.extend(check_triangle_block(pres))
    return out
