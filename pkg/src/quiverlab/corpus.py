"""Block glueings, named example algebras and seeded random biregular quivers.

Random draws use numpy's Philox counter-based bit generator seeded through
SeedSequence, so a seed fixes the output independently of platform.
"""
from dataclasses import dataclass, field

import numpy as np

from .algebra import Presentation, relation
from .quiver import Quiver, degree_profile, idkey, is_biregular


class GlueError(ValueError):
    pass


# local vertices, local arrows (id, source, target), outlets
BLOCK_TEMPLATES = {
    "I": (("w",), (("loop", "w", "w"),), ("w",)),
    "II": (("b", "w"), (("loop", "b", "b"), ("out", "b", "w"), ("in", "w", "b")), ("w",)),
    "II-gabriel": (("b", "w"), (("out", "b", "w"), ("in", "w", "b")), ("w",)),
    "III": (("w1", "w2", "w3"), (("a", "w1", "w2"), ("b", "w2", "w3"), ("c", "w3", "w1")),
            ("w1", "w2", "w3")),
    "V1": (("b", "w"), (("in", "w", "b"), ("out", "b", "w")), ("w",)),
    "V2": (("b1", "b2", "w1", "w2"),
           (("in1", "w1", "b1"), ("out1", "b1", "w2"), ("in2", "w2", "b2"), ("out2", "b2", "w1")),
           ("w1", "w2")),
}


@dataclass(frozen=True)
class GlueSpec:
    blocks: tuple             # ((kind, name), ...)
    matching: tuple           # (((name, outlet), (name, outlet)), ...)

    def outlets(self):
        out = []
        for kind, name in self.blocks:
            out.extend((name, o) for o in BLOCK_TEMPLATES[kind][2])
        return out

    def __str__(self):
        bl = ",".join("%s:%s" % b for b in self.blocks)
        mt = ",".join("%s.%s=%s.%s" % (a + b) for a, b in self.matching)
        return "%s;%s" % (bl, mt)


def parse_glue_spec(text):
    """'V2:A,V2:B;A.w1=B.w2,A.w2=B.w1' -> GlueSpec."""
    try:
        blocks_txt, match_txt = text.split(";")
        blocks = tuple(tuple(p.strip().split(":")) for p in blocks_txt.split(",") if p.strip())
        matching = []
        for p in match_txt.split(","):
            if not p.strip():
                continue
            lhs, rhs = p.split("=")
            matching.append((tuple(lhs.strip().split(".")), tuple(rhs.strip().split("."))))
    except ValueError:
        raise GlueError("cannot parse glue string %r" % text)
    for b in blocks:
        if len(b) != 2:
            raise GlueError("block entries look like KIND:NAME")
    return GlueSpec(blocks, tuple(matching))


def glue_blocks(spec):
    """Assemble the quiver, identifying each matched pair of outlets."""
    names = set()
    for kind, name in spec.blocks:
        if kind not in BLOCK_TEMPLATES:
            raise GlueError("unknown block kind %r" % kind)
        if name in names:
            raise GlueError("duplicate block name %r" % name)
        names.add(name)
    outlets = set(spec.outlets())
    seen = {}
    for pair in spec.matching:
        if len(pair) != 2 or pair[0] == pair[1]:
            raise GlueError("an outlet must be matched with a different outlet")
        for o in pair:
            if o not in outlets:
                raise GlueError("unknown outlet %s.%s" % o)
            if o in seen:
                raise GlueError("outlet %s.%s is matched more than once" % o)
            seen[o] = pair
    missing = sorted(outlets - set(seen), key=lambda o: (idkey(o[0]), idkey(o[1])))
    if missing:
        raise GlueError("unmatched outlets: %s" % ", ".join("%s.%s" % o for o in missing))

    parent = {}

    def find(v):
        while parent.get(v, v) != v:
            v = parent[v]
        return v

    for a, b in spec.matching:
        va, vb = find("%s_%s" % a), find("%s_%s" % b)
        if va != vb:
            lo, hi = sorted((va, vb), key=idkey)
            parent[hi] = lo
    verts, arrows = [], []
    for kind, name in spec.blocks:
        lv, la, _ = BLOCK_TEMPLATES[kind]
        for v in lv:
            r = find("%s_%s" % (name, v))
            if r not in verts:
                verts.append(r)
        for aid, s, t in la:
            arrows.append(("%s_%s" % (name, aid), find("%s_%s" % (name, s)), find("%s_%s" % (name, t))))
    return Quiver(tuple(verts), tuple(arrows))


def glue_report(spec):
    q = glue_blocks(spec)
    return q, degree_profile(q), is_biregular(q)


def _rng(seed):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))


RANDOM_KINDS = ("I", "II", "II-gabriel", "III", "V1", "V2")


def random_glue_spec(seed, n_blocks=None, kinds=RANDOM_KINDS):
    """A legal GlueSpec: random block kinds, then a random perfect matching of outlets."""
    rng = _rng(seed)
    if n_blocks is None:
        n_blocks = int(rng.integers(1, 7))
    chosen = [kinds[int(rng.integers(len(kinds)))] for _ in range(n_blocks)]
    total = sum(len(BLOCK_TEMPLATES[k][2]) for k in chosen)
    if total % 2:
        odd = [k for k in kinds if len(BLOCK_TEMPLATES[k][2]) % 2]
        chosen.append(odd[int(rng.integers(len(odd)))])
    blocks = tuple((k, "B%d" % n) for n, k in enumerate(chosen))
    spec = GlueSpec(blocks, ())
    outs = spec.outlets()
    perm = rng.permutation(len(outs))
    matching = tuple((outs[int(perm[k])], outs[int(perm[k + 1])]) for k in range(0, len(outs), 2))
    return GlueSpec(blocks, matching)


def random_biregular(n_vertices, seed, one_regular=None):
    """Random quiver with every vertex 1- or 2-regular, by stub matching.

    one_regular optionally fixes how many vertices get degree one.
    """
    if n_vertices < 1:
        raise ValueError("no biregular quiver has %d vertices" % n_vertices)
    if one_regular is not None and not 0 <= one_regular <= n_vertices:
        raise ValueError("cannot make %d of %d vertices 1-regular" % (one_regular, n_vertices))
    rng = _rng(seed)
    verts = [str(k + 1) for k in range(n_vertices)]
    if one_regular is None:
        degs = [int(d) for d in rng.integers(1, 3, size=n_vertices)]
    else:
        ones = set(int(k) for k in rng.permutation(n_vertices)[:one_regular])
        degs = [1 if k in ones else 2 for k in range(n_vertices)]
    outs = [v for v, d in zip(verts, degs) for _ in range(d)]
    ins = [v for v, d in zip(verts, degs) for _ in range(d)]
    perm = rng.permutation(len(ins))
    arrows = [("a%d" % (k + 1), s, ins[int(perm[k])]) for k, s in enumerate(outs)]
    return Quiver(tuple(verts), tuple(arrows))


# --- named examples ---------------------------------------------------------------

SPHERICAL_SPEC = GlueSpec((("V2", "A"), ("V2", "B")),
                          ((("A", "w1"), ("B", "w2")), (("A", "w2"), ("B", "w1"))))


def spherical_quiver():
    return glue_blocks(SPHERICAL_SPEC)


def _pres(arrows, rels, bound, truncate=False):
    q = Quiver.from_arrows(arrows)
    return Presentation(q, tuple(relation(q, r, "r%d" % (k + 1)) for k, r in enumerate(rels)),
                        bound, truncate)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    value: object             # Presentation or Quiver
    tags: frozenset = field(default_factory=frozenset)
    description: str = ""


def _entries():
    quat = _pres([("x", "1", "1"), ("y", "1", "1")],
                 [[(1, "x.x"), (-1, "y.x.y")], [(1, "y.y"), (-1, "x.y.x")], "x.x.y", "y.x.x"], 5)
    return [
        CorpusEntry("loop_x2", _pres([("x", "1", "1")], ["x.x"], 2),
                    frozenset({"symmetric", "finite_type"}), "K[x]/(x^2)"),
        CorpusEntry("two_cycle_len3", _pres([("a", "1", "2"), ("b", "2", "1")], ["a.b.a", "b.a.b"], 3),
                    frozenset({"symmetric", "finite_type"}), "2-cycle with all paths of length 3 zero"),
        CorpusEntry("three_cycle_len4",
                    _pres([("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")],
                          ["a.b.c.a", "b.c.a.b", "c.a.b.c"], 4),
                    frozenset({"symmetric", "finite_type"}), "3-cycle with all paths of length 4 zero"),
        CorpusEntry("quaternion_local", quat, frozenset({"symmetric", "period_four"}),
                    "local algebra of quaternion type"),
        CorpusEntry("spherical_quiver", spherical_quiver(), frozenset({"positive"}),
                    "two V2 blocks glued crosswise"),
        CorpusEntry("lemma41_figure",
                    Quiver.from_arrows([("gamma", "x", "i"), ("alpha", "i", "j"), ("delta", "j", "x"),
                                        ("delta_b", "j", "y"), ("alpha_p", "y", "is"),
                                        ("alpha_s", "is", "j")]),
                    frozenset({"forbidden:two-triangles"}), "two triangles with 1-regular apexes sharing j"),
        CorpusEntry("five_vertex_figure",
                    _pres([("beta_s", "a", "x"), ("eta", "a", "ib"), ("gamma", "x", "i"),
                           ("gamma_b", "x", "ib"), ("alpha", "i", "j"), ("beta", "j", "x"),
                           ("beta_b", "j", "a"), ("alpha_s", "ib", "j"), ("sigma", "ib", "a")],
                          [[(1, "gamma.alpha"), (-1, "gamma_b.alpha_s")]], 3, truncate=True),
                    frozenset({"forbidden:five-vertex-figure"}), "five-vertex figure with gamma.alpha in a relation"),
        CorpusEntry("double_arrow_figure",
                    _pres([("gamma", "x", "i"), ("alpha", "i", "j"), ("gamma_b", "x", "a"),
                           ("alpha_s", "a", "j"), ("beta", "j", "x"), ("beta_b", "j", "x")],
                          [[(1, "gamma.alpha"), (-1, "gamma_b.alpha_s")]], 3, truncate=True),
                    frozenset({"forbidden:double-arrow-figure"}), "double arrows j -> x beside a 1-vertex i"),
        CorpusEntry("two_vertex_cartan",
                    _pres([("gamma", "x", "j"), ("beta", "j", "x"), ("beta_b", "j", "x")],
                          ["gamma.beta_b", "beta_b.gamma", "beta.gamma.beta"], 4),
                    frozenset({"forbidden:two-vertex-cartan"}), "one arrow x -> j, two back, Cartan [[2,2],[2,2]]"),
    ]


def named_corpus():
    return [(e.name, e.value) for e in _entries()]


def corpus_entries():
    return _entries()


def corpus_entry(name):
    for e in _entries():
        if e.name == name:
            return e
    raise KeyError("no corpus entry named %r" % name)
