"""Subquiver pattern matching and the registry of forbidden configurations."""
from dataclasses import dataclass, field

from .quiver import Quiver, idkey

MUST = "must_precede"
MUST_NOT = "must_not_precede"


class MissingPredicate(ValueError):
    pass


@dataclass(frozen=True)
class PatternSpec:
    name: str
    quiver: Quiver
    constraints: dict = field(default_factory=dict)   # vertex -> (in, out) exact ambient degrees
    annotations: tuple = ()                          # ((arrow ids), MUST | MUST_NOT)
    description: str = ""
    in_covering: bool = False
    min_vertices: int = 0

    def __post_init__(self):
        object.__setattr__(self, "annotations", tuple((tuple(p), k) for p, k in self.annotations))
        for v in self.constraints:
            if v not in self.quiver.vertices:
                raise ValueError("constraint on unknown pattern vertex %r" % v)
        for p, kind in self.annotations:
            if kind not in (MUST, MUST_NOT):
                raise ValueError("unknown annotation kind %r" % kind)
            self.quiver.path(p)

    def summary(self):
        q = self.quiver
        s = "%s: %d vertices, %d arrows" % (self.name, len(q.vertices), len(q.arrows))
        if self.constraints:
            s += ", %d degree constraints" % len(self.constraints)
        if self.annotations:
            s += ", %d relation annotations" % len(self.annotations)
        if self.in_covering:
            s += ", covering figure"
        return s


@dataclass(frozen=True)
class Embedding:
    vertex_map: dict
    arrow_map: dict
    verdicts: tuple = ()      # (pattern path, kind, satisfied)

    @property
    def satisfied(self):
        return all(ok for _, _, ok in self.verdicts)

    def image(self):
        return (frozenset(self.vertex_map.values()), frozenset(self.arrow_map.values()))

    def describe(self):
        vm = ", ".join("%s->%s" % kv for kv in self.vertex_map.items())
        am = ", ".join("%s->%s" % kv for kv in self.arrow_map.items())
        return "{%s} {%s}" % (vm, am)


@dataclass
class MatchReport:
    pattern: str
    embeddings: list
    heuristic: bool = False
    annotated: bool = False

    @property
    def hits(self):
        return [e for e in self.embeddings if e.satisfied]

    def __bool__(self):
        return bool(self.hits)


def _pattern_order(pq):
    """Pattern vertices in a connected, high-degree-first order."""
    deg = {v: len(pq.out_arrows(v)) + len(pq.in_arrows(v)) for v in pq.vertices}
    left = set(pq.vertices)
    order = []
    while left:
        start = max(sorted(left, key=idkey), key=lambda v: deg[v])
        stack = [start]
        while stack:
            v = stack.pop(0)
            if v not in left:
                continue
            left.discard(v)
            order.append(v)
            nbrs = {a.target for a in pq.out_arrows(v)} | {a.source for a in pq.in_arrows(v)}
            stack.extend(sorted((n for n in nbrs if n in left), key=lambda n: (-deg[n], idkey(n))))
    return order


def _vertex_maps(quiver, spec, injective):
    pq = spec.quiver
    order = _pattern_order(pq)
    amb = sorted(quiver.vertices, key=idkey)
    loops = {v: len(pq.arrows_between(v, v)) for v in pq.vertices}
    cons = spec.constraints
    plen = {v: (len(pq.in_arrows(v)), len(pq.out_arrows(v))) for v in pq.vertices}
    amb_deg = {v: (len(quiver.in_arrows(v)), len(quiver.out_arrows(v))) for v in amb}
    phi = {}
    used = set()

    def fits(v, w):
        if v in cons and amb_deg[w] != tuple(cons[v]):
            return False
        if len(quiver.arrows_between(w, w)) < loops[v]:
            return False
        if injective:
            if amb_deg[w][0] < plen[v][0] or amb_deg[w][1] < plen[v][1]:
                return False
        # already mapped neighbours need enough parallel arrows
        for a in pq.out_arrows(v):
            if a.target in phi and a.target != v:
                if len(quiver.arrows_between(w, phi[a.target])) < len(pq.arrows_between(v, a.target)):
                    return False
        for a in pq.in_arrows(v):
            if a.source in phi and a.source != v:
                if len(quiver.arrows_between(phi[a.source], w)) < len(pq.arrows_between(a.source, v)):
                    return False
        return True

    def rec(k):
        if k == len(order):
            yield dict(phi)
            return
        v = order[k]
        for w in amb:
            if injective and w in used:
                continue
            if fits(v, w):
                phi[v] = w
                used.add(w)
                yield from rec(k + 1)
                del phi[v]
                used.discard(w)

    yield from rec(0)


def _arrow_maps(quiver, spec, phi, injective):
    pq = spec.quiver
    parrows = sorted(pq.arrows, key=lambda a: idkey(a.id))
    psi = {}
    used = set()
    used_out = {}
    used_in = {}

    def rec(k):
        if k == len(parrows):
            yield dict(psi)
            return
        a = parrows[k]
        for b in sorted(quiver.arrows_between(phi[a.source], phi[a.target]), key=lambda b: idkey(b.id)):
            if injective:
                if b.id in used:
                    continue
            else:
                if b.id in used_out.setdefault(a.source, set()) or b.id in used_in.setdefault(a.target, set()):
                    continue
            psi[a.id] = b.id
            used.add(b.id)
            used_out.setdefault(a.source, set()).add(b.id)
            used_in.setdefault(a.target, set()).add(b.id)
            yield from rec(k + 1)
            del psi[a.id]
            used.discard(b.id)
            used_out[a.source].discard(b.id)
            used_in[a.target].discard(b.id)

    yield from rec(0)


def match_pattern(quiver, spec, precedes=None, immersion=False, distinct=True):
    """All embeddings of spec into quiver.

    By default embeddings are injective on vertices and arrows.  With
    immersion=True the vertex map is arbitrary and arrows are only required to
    be distinct at each pattern vertex, which is how a covering figure maps to
    its base quiver.  With distinct=True embeddings with the same image are
    reported once, keeping an annotation-satisfying one when there is any.
    """
    if spec.annotations and precedes is None:
        raise MissingPredicate("pattern %s carries relation annotations; a precedes predicate is required"
                               % spec.name)
    found = []
    if len(quiver.vertices) >= spec.min_vertices:
        for phi in _vertex_maps(quiver, spec, not immersion):
            for psi in _arrow_maps(quiver, spec, phi, not immersion):
                verdicts = []
                for p, kind in spec.annotations:
                    img = tuple(psi[x] for x in p)
                    holds = bool(precedes(img))
                    verdicts.append((".".join(p), kind, holds if kind == MUST else not holds))
                found.append(Embedding(phi, psi, tuple(verdicts)))
    if distinct:
        best = {}
        for e in found:
            key = e.image()
            if key not in best or (e.satisfied and not best[key].satisfied):
                best[key] = e
        kept = set(id(e) for e in best.values())
        found = [e for e in found if id(e) in kept]
    return MatchReport(spec.name, found, heuristic=spec.in_covering, annotated=bool(spec.annotations))


class ScanReport(list):
    """Reports with hits; patterns skipped for want of a predicate are in .skipped."""

    def __init__(self, items=(), skipped=()):
        super().__init__(items)
        self.skipped = list(skipped)


def scan_forbidden(quiver, precedes=None, registry=None):
    reg = REGISTRY if registry is None else registry
    hits, skipped = [], []
    for spec in reg.values():
        if spec.annotations and precedes is None:
            skipped.append(spec.name)
            continue
        rep = match_pattern(quiver, spec, precedes, immersion=spec.in_covering)
        if rep.hits:
            hits.append(rep)
    return ScanReport(hits, skipped)


def registry_list():
    return [(name, spec.summary()) for name, spec in REGISTRY.items()]


# --- the shipped registry -----------------------------------------------------------

def _spec(name, arrows, description, constraints=None, must=(), must_not=(),
          in_covering=False, min_vertices=0, vertices=None):
    q = Quiver.from_arrows(arrows, vertices)
    ann = [(tuple(p.split(".")), MUST) for p in must] + [(tuple(p.split(".")), MUST_NOT) for p in must_not]
    return PatternSpec(name, q, dict(constraints or {}), tuple(ann), description, in_covering, min_vertices)


_SPECS = [
    _spec("K2_plus", [("a1", "m", "l"), ("a2", "m", "l"), ("b", "m", "r")],
          "source m with a double arrow to l and one arrow to r"),
    _spec("K2_minus", [("a1", "l", "m"), ("a2", "l", "m"), ("b", "r", "m")],
          "sink m receiving a double arrow from l and one arrow from r"),
    _spec("triple_arrow", [("a1", "u", "v"), ("a2", "u", "v"), ("a3", "u", "v")],
          "three parallel arrows u -> v"),
    _spec("double_loop", [("x", "v", "v"), ("y", "v", "v")],
          "two loops at one vertex of a quiver with more than one vertex", min_vertices=2),
    _spec("double_arrow_loop_source", [("l", "u", "u"), ("a1", "u", "v"), ("a2", "u", "v")],
          "double arrow u -> v with a loop at u"),
    _spec("double_arrow_loop_target", [("a1", "u", "v"), ("a2", "u", "v"), ("l", "v", "v")],
          "double arrow u -> v with a loop at v"),
    _spec("K2_star_out", [("alpha", "u", "v"), ("alpha_b", "u", "v"), ("beta", "v", "w")],
          "double arrow u -> v followed by v -> w with both composites outside the relations",
          must_not=("alpha.beta", "alpha_b.beta")),
    _spec("K2_star_in", [("beta", "u", "v"), ("alpha", "v", "w"), ("alpha_b", "v", "w")],
          "arrow u -> v followed by a double arrow v -> w with both composites outside the relations",
          must_not=("beta.alpha", "beta.alpha_b")),
    _spec("Dtt4", [("delta", "a", "x"), ("delta_s", "b", "x"), ("gamma", "x", "i"),
                   ("gamma_b", "x", "ib"), ("alpha", "i", "j")],
          "two arrows into x, two out of x, one more step from i; all drawn composites are zero",
          must_not=("delta.gamma", "delta.gamma_b", "delta_s.gamma", "delta_s.gamma_b", "gamma.alpha",
                    "delta.gamma.alpha", "delta_s.gamma.alpha"), in_covering=True),
    _spec("Dtt6", [("omega", "o", "ib"), ("gamma_b", "x", "ib"), ("gamma", "x", "i"), ("alpha", "i", "j"),
                   ("beta", "j", "x"), ("alpha_s", "is", "j")],
          "triangle x -> i -> j -> x with extra arms at ib and is; composites along the tree are zero",
          must_not=("beta.gamma_b", "beta.gamma", "beta.gamma.alpha", "beta.gamma.alpha.beta", "gamma.alpha",
                    "gamma.alpha.beta", "alpha.beta", "alpha_s.beta"), in_covering=True),
    _spec("Ett6", [("gamma", "x", "i"), ("gamma_b", "x", "ib"), ("beta_s", "a", "x2"), ("eta", "a", "ib"),
                   ("sigma_s", "b", "ib"), ("zeta", "b", "a2"), ("eta_s", "ib2", "a2")],
          "covering tree with eight vertices and no composable arrows", in_covering=True),
    _spec("RiII", [("sigma", "o1", "a1"), ("beta", "j1", "x1"), ("beta_b", "j1", "a1"), ("beta_s", "a1", "x2"),
                   ("eta", "a1", "o2"), ("beta2", "j2", "x2"), ("beta_b2", "j2", "a2")],
          "covering of the five-arrow figure on j, x, a, ib", must=("sigma.eta",),
          must_not=("beta_b.beta_s", "beta_b.eta", "sigma.beta_s"), in_covering=True),
    _spec("RiVI", [("omega", "i2", "ib"), ("delta", "a", "x"), ("gamma_b", "x", "ib"), ("gamma", "x", "i"),
                   ("alpha", "i", "j"), ("alpha_s", "is", "j"), ("tau", "is", "i3"), ("delta_s", "b", "x")],
          "two arrows into x and two out, the arm i -> j met by is -> j",
          must=("delta_s.gamma_b",),
          must_not=("delta.gamma_b", "delta.gamma", "delta_s.gamma", "gamma.alpha",
                    "delta.gamma.alpha", "delta_s.gamma.alpha"), in_covering=True),
    _spec("RiIX", [("omega", "z", "o1"), ("sigma", "z", "b"), ("sigma_p", "b", "z2"), ("delta_s", "b", "x"),
                   ("gamma", "x", "i"), ("delta", "a", "x"), ("eta", "y", "a"), ("omega2", "y", "o2")],
          "one-relation configuration through b and x", must=("sigma.sigma_p",),
          must_not=("sigma.delta_s", "delta_s.gamma", "delta.gamma", "eta.delta", "eta.delta.gamma",
                    "sigma.delta_s.gamma"), in_covering=True),
    _spec("RiVIII", [("omega", "is", "o1"), ("alpha_s", "is", "j"), ("alpha", "i", "j"), ("omega2", "o2", "a"),
                     ("nu", "j", "a"), ("nu_b", "j", "d"), ("zeta", "d", "d1"), ("omega3", "d2", "d1")],
          "two arrows into j and two out of j", must=("alpha_s.nu",),
          must_not=("alpha_s.nu_b", "alpha.nu", "alpha.nu_b", "nu_b.zeta", "alpha.nu_b.zeta",
                    "alpha_s.nu_b.zeta"), in_covering=True),
    _spec("RiXIII", [("alpha", "i", "j"), ("alpha_s", "is", "j"), ("psi", "is", "z"), ("psi_p", "z", "z1"),
                     ("xi", "z2", "z1"), ("eta", "y", "a"), ("nu", "j", "a"), ("nu_b", "j", "d"),
                     ("omega", "d1", "d")],
          "two arrows into j and two out; the position of the single relation is inferred from "
          "the surrounding argument and recorded as alpha_s.nu_b",
          must=("alpha_s.nu_b",), must_not=("alpha.nu", "alpha.nu_b", "alpha_s.nu", "psi.psi_p"),
          in_covering=True),
    _spec("RiXVIII", [("omega", "b", "o1"), ("delta_s", "b", "x"), ("gamma", "x", "i"), ("delta", "a", "x"),
                      ("eta_p", "a", "is"), ("xi", "is", "z"), ("mu", "d", "is"), ("omega2", "d", "o2"),
                      ("omega3", "o3", "z")],
          "configuration through x and is; the relation position is inferred from the surrounding "
          "argument and recorded as mu.xi",
          must=("mu.xi",), must_not=("eta_p.xi", "delta_s.gamma", "delta.gamma"), in_covering=True),
]

REGISTRY = {s.name: s for s in _SPECS}
