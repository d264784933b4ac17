"""Finite quivers, degree profiles, paths and black/white blocks."""
import re
from dataclasses import dataclass, field
from typing import NamedTuple


def idkey(x):
    """Sort key: lexicographic, but digit runs compare numerically."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t)
                 for t in re.findall(r"\d+|\D+", str(x)))


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple = ()

    @property
    def length(self):
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        if not self.arrows:
            return "e_%s" % self.source
        return ".".join(self.arrows)


@dataclass(frozen=True)
class VertexProfile:
    vertex: str
    in_degree: int
    out_degree: int
    regularity: str


@dataclass(frozen=True)
class Block:
    kind: str
    black: frozenset
    white: frozenset
    arrows: frozenset
    flags: tuple = ()

    def describe(self):
        return "%s black={%s} white={%s}%s" % (
            self.kind, ",".join(sorted(self.black, key=idkey)),
            ",".join(sorted(self.white, key=idkey)),
            (" [" + ",".join(self.flags) + "]") if self.flags else "")


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()
    _out: dict = field(default=None, compare=False, hash=False, repr=False)
    _in: dict = field(default=None, compare=False, hash=False, repr=False)
    _by_id: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        verts = tuple(str(v) for v in self.vertices)
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(str(a[0]), str(a[1]), str(a[2]))
                       for a in self.arrows)
        if len(set(verts)) != len(verts):
            raise QuiverError("duplicate vertex identifier")
        vs = set(verts)
        seen = {}
        for a in arrows:
            if a.id in seen:
                raise QuiverError("duplicate arrow identifier %r" % a.id)
            if a.source not in vs or a.target not in vs:
                raise QuiverError("arrow %r has an endpoint outside the vertex set" % a.id)
            seen[a.id] = a
        out = {v: [] for v in verts}
        inn = {v: [] for v in verts}
        for a in arrows:
            out[a.source].append(a)
            inn[a.target].append(a)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "arrows", arrows)
        object.__setattr__(self, "_out", out)
        object.__setattr__(self, "_in", inn)
        object.__setattr__(self, "_by_id", seen)

    @classmethod
    def from_arrows(cls, arrows, vertices=None):
        """Build from (id, source, target) triples; vertices default to endpoints."""
        arrows = [tuple(map(str, a)) for a in arrows]
        if vertices is None:
            vertices = []
            for _, s, t in arrows:
                for v in (s, t):
                    if v not in vertices:
                        vertices.append(v)
        return cls(tuple(vertices), tuple(arrows))

    def arrow(self, aid):
        return self._by_id[aid]

    def has_arrow(self, aid):
        return aid in self._by_id

    def out_arrows(self, v):
        return self._out[v]

    def in_arrows(self, v):
        return self._in[v]

    def arrows_between(self, u, v):
        return [a for a in self._out[u] if a.target == v]

    def path(self, arrow_ids, source=None):
        arrow_ids = tuple(arrow_ids)
        if not arrow_ids:
            if source is None:
                raise QuiverError("a trivial path needs its vertex")
            return Path(source, source, ())
        arrs = [self._by_id[a] if a in self._by_id else None for a in arrow_ids]
        for aid, a in zip(arrow_ids, arrs):
            if a is None:
                raise QuiverError("unknown arrow %r" % aid)
        for a, b in zip(arrs, arrs[1:]):
            if a.target != b.source:
                raise QuiverError("arrows %s and %s do not compose" % (a.id, b.id))
        if source is not None and source != arrs[0].source:
            raise QuiverError("path does not start at %r" % source)
        return Path(arrs[0].source, arrs[-1].target, arrow_ids)

    def trivial(self, v):
        return Path(v, v, ())

    def components(self):
        """Connected components of the underlying undirected graph."""
        seen, comps = set(), []
        for v in self.vertices:
            if v in seen:
                continue
            comp, stack = [], [v]
            seen.add(v)
            while stack:
                u = stack.pop()
                comp.append(u)
                for a in self._out[u] + self._in[u]:
                    w = a.target if a.source == u else a.source
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(sorted(comp, key=idkey))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def without_arrow(self, aid):
        return Quiver(self.vertices, tuple(a for a in self.arrows if a.id != aid))

    def with_arrow(self, aid, source, target):
        return Quiver(self.vertices, self.arrows + (Arrow(aid, source, target),))

    def relabel(self, vmap, amap=None):
        amap = amap or {}
        return Quiver(tuple(vmap[v] for v in self.vertices),
                      tuple(Arrow(amap.get(a.id, a.id), vmap[a.source], vmap[a.target])
                            for a in self.arrows))


def degree_profile(quiver):
    """Map each vertex to its in/out degree and regularity class."""
    prof = {}
    for v in quiver.vertices:
        i, o = len(quiver.in_arrows(v)), len(quiver.out_arrows(v))
        if i == o == 1:
            reg = "one_regular"
        elif i == o == 2:
            reg = "two_regular"
        else:
            reg = "non_regular"
        prof[v] = VertexProfile(v, i, o, reg)
    return prof


class Biregularity(NamedTuple):
    ok: bool
    offenders: list


def is_biregular(quiver):
    prof = degree_profile(quiver)
    bad = sorted((v for v, p in prof.items() if p.regularity == "non_regular"), key=idkey)
    return Biregularity(not bad, bad)


def one_regular_vertices(quiver):
    prof = degree_profile(quiver)
    return sorted((v for v, p in prof.items() if p.regularity == "one_regular"), key=idkey)


def enumerate_paths(quiver, max_len, source=None, target=None):
    """All paths of length <= max_len, ordered lexicographically by arrow ids."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    starts = [source] if source is not None else list(quiver.vertices)
    found = []

    def grow(v0, v, seq):
        if target is None or v == target:
            found.append(Path(v0, v, tuple(seq)))
        if len(seq) == max_len:
            return
        for a in quiver.out_arrows(v):
            seq.append(a.id)
            grow(v0, a.target, seq)
            seq.pop()

    for s in starts:
        grow(s, s, [])
    found.sort(key=lambda p: (tuple(idkey(a) for a in p.arrows), idkey(p.source)))
    return found


# --- blocks -----------------------------------------------------------------

def _incident(quiver, v):
    return {a.id for a in quiver.out_arrows(v)} | {a.id for a in quiver.in_arrows(v)}


def validate_block(quiver, block):
    """Problems with `block` as a block of `quiver` (empty list if valid)."""
    probs = []
    if block.black & block.white:
        probs.append("black and white vertex sets overlap")
    for aid in block.arrows:
        if not quiver.has_arrow(aid):
            probs.append("unknown arrow %s" % aid)
            return probs
    for b in block.black:
        missing = _incident(quiver, b) - block.arrows
        if missing:
            probs.append("arrows %s at black vertex %s lie outside the block"
                         % (",".join(sorted(missing, key=idkey)), b))
    arrs = [quiver.arrow(a) for a in block.arrows]
    verts = block.black | block.white
    for a in arrs:
        if a.source not in verts or a.target not in verts:
            probs.append("arrow %s leaves the block" % a.id)
    prof = degree_profile(quiver)
    k = block.kind
    nb, nw, na = len(block.black), len(block.white), len(arrs)
    loops = [a for a in arrs if a.source == a.target]
    if k == "I":
        if not (nb == 0 and nw == 1 and na == 1 and len(loops) == 1):
            probs.append("type I needs one white vertex with one loop")
    elif k == "II":
        ok = nb == 1 and nw == 1 and na == 3 and len(loops) == 1
        if ok:
            b, = block.black
            w, = block.white
            ok = loops[0].source == b and any(a.source == b and a.target == w for a in arrs) \
                and any(a.source == w and a.target == b for a in arrs)
        if not ok:
            probs.append("type II needs a black vertex with a loop and a 2-cycle to a white vertex")
    elif k == "III":
        ok = nb == 0 and nw == 3 and na == 3 and not loops
        if ok:
            ok = all(sum(1 for a in arrs if a.source == v) == 1 and
                     sum(1 for a in arrs if a.target == v) == 1 for v in block.white)
        if not ok:
            probs.append("type III needs a 3-cycle of white vertices")
    elif k == "V1":
        ok = nb == 1 and nw == 1 and na == 2
        if ok:
            b, = block.black
            w, = block.white
            ok = prof[b].regularity == "one_regular" and \
                sorted((a.source, a.target) for a in arrs) == sorted([(b, w), (w, b)])
        if not ok:
            probs.append("type V1 needs a 2-cycle through a 1-regular black vertex")
    elif k == "V2":
        ok = nb == 2 and 1 <= nw <= 2 and na == 4
        if ok:
            ok = all(prof[b].regularity == "one_regular" for b in block.black)
            for b in block.black:
                ins = [a for a in arrs if a.target == b]
                outs = [a for a in arrs if a.source == b]
                ok = ok and len(ins) == 1 and len(outs) == 1 and \
                    ins[0].source in block.white and outs[0].target in block.white
            ok = ok and (nw == 2 or "coinciding_outlets" in block.flags)
            if nw == 2:
                b1, b2 = sorted(block.black)
                t1 = [a.target for a in arrs if a.source == b1]
                s1 = [a.source for a in arrs if a.target == b1]
                ok = ok and t1 != s1
        if not ok:
            probs.append("type V2 needs a 4-cycle with two opposite 1-regular black vertices")
    else:
        probs.append("unknown block kind %r" % k)
    return probs


@dataclass
class BlockSearch:
    """Outcome of `find_blocks`; iterating yields the blocks found."""
    blocks: list
    uncovered: list    # 1-regular vertices in no V1/V2 block
    unglued: list      # closed V1/V2 shapes rejected because an outlet is 1-regular

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __getitem__(self, k):
        return self.blocks[k]

    def of_kind(self, *kinds):
        return [b for b in self.blocks if b.kind in kinds]

    def containing(self, v):
        return [b for b in self.blocks if v in b.black and b.kind in ("V1", "V2")]


def _block_sort_key(b):
    return ("I II III V1 V2".split().index(b.kind),
            tuple(sorted(map(idkey, b.black))), tuple(sorted(map(idkey, b.arrows))))


def find_blocks(quiver):
    """Identify blocks of kinds I, II, III, V1, V2.

    Each 1-regular vertex is tried as a black vertex of a V1 or V2 block.  A
    candidate whose white outlet is itself 1-regular is closed but never glued
    to anything, so it goes to `unglued` instead of `blocks`.
    """
    prof = degree_profile(quiver)
    one = {v for v, p in prof.items() if p.regularity == "one_regular"}
    found, unglued = {}, {}

    def put(b, glued=True):
        (found if glued else unglued).setdefault((b.kind, b.black, b.arrows), b)

    for a in quiver.arrows:
        if a.source == a.target:
            put(Block("I", frozenset(), frozenset([a.source]), frozenset([a.id])))

    for b in quiver.vertices:
        if not (prof[b].in_degree == prof[b].out_degree == 2):
            continue
        loops = [a for a in quiver.out_arrows(b) if a.target == b]
        if len(loops) != 1:
            continue
        out = [a for a in quiver.out_arrows(b) if a.target != b][0]
        back = [a for a in quiver.in_arrows(b) if a.source != b][0]
        if out.target == back.source:
            put(Block("II", frozenset([b]), frozenset([out.target]),
                      frozenset([loops[0].id, out.id, back.id]), ("virtual_loop",)))

    for a in quiver.arrows:
        for b in quiver.out_arrows(a.target):
            for c in quiver.out_arrows(b.target):
                if c.target != a.source:
                    continue
                vs = {a.source, b.source, c.source}
                if len(vs) == 3:
                    put(Block("III", frozenset(), frozenset(vs), frozenset([a.id, b.id, c.id])))

    for i in sorted(one, key=idkey):
        into, = quiver.in_arrows(i)
        outof, = quiver.out_arrows(i)
        w1, w2 = into.source, outof.target
        if w1 == w2 and w1 != i:
            blk = Block("V1", frozenset([i]), frozenset([w1]), frozenset([into.id, outof.id]))
            put(blk, w1 not in one)
        if w1 == i or w2 == i:
            continue
        for c in quiver.out_arrows(w2):
            k = c.target
            if k in (i, w1, w2) or k not in one:
                continue
            d, = quiver.out_arrows(k)
            if d.target != w1:
                continue
            flags = ("coinciding_outlets",) if w1 == w2 else ()
            blk = Block("V2", frozenset([i, k]), frozenset([w1, w2]),
                        frozenset([into.id, outof.id, c.id, d.id]), flags)
            put(blk, w1 not in one and w2 not in one)

    blocks = sorted(found.values(), key=_block_sort_key)
    covered = {v for b in blocks if b.kind in ("V1", "V2") for v in b.black}
    uncovered = sorted(one - covered, key=idkey)
    return BlockSearch(blocks, uncovered, sorted(unglued.values(), key=_block_sort_key))
