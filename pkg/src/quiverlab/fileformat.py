"""Text format for quivers, presentations and pattern specs, plus dot export.

    # comment
    quiver
    vertex 1
    arrow a: 1 -> 2
    relations
    rel r1: 1*a.b - 2/3*c.d
    bound 3 [truncate]

Pattern files add `constraint <v> exact <in> <out>` and
`annotate <path> must_precede|must_not_precede` lines.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Presentation, PresentationError, Relation
from .patterns import MUST, MUST_NOT, PatternSpec
from .quiver import Quiver, QuiverError, degree_profile

IDENT = r"[A-Za-z0-9_'*+-]+"
_ID = re.compile(IDENT + r"$")
_ARROW = re.compile(r"arrow\s+(" + IDENT + r")\s*:\s*(" + IDENT + r")\s*->\s*(" + IDENT + r")\s*$")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z0-9_'*]+(?:\.[A-Za-z0-9_'*]+)*)\s*")


class ParseError(ValueError):
    def __init__(self, msg, line, col):
        super().__init__("line %d, column %d: %s" % (line, col, msg))
        self.line, self.col, self.msg = line, col, msg


@dataclass
class InputDocument:
    value: object                             # Presentation, Quiver or PatternSpec
    locations: dict = field(default_factory=dict)
    source: str = "<input>"

    @property
    def quiver(self):
        return self.value.quiver if hasattr(self.value, "quiver") else self.value

    @property
    def presentation(self):
        return self.value if isinstance(self.value, Presentation) else None


def _strip(line):
    k = line.find("#")
    return line if k < 0 else line[:k]


def _col(raw, token):
    k = raw.find(token)
    return (k if k >= 0 else 0) + 1


def _terms(body, lineno, offset):
    pos, terms = 0, []
    while pos < len(body):
        m = _TERM.match(body, pos)
        if not m or m.end() == pos:
            raise ParseError("malformed relation term", lineno, offset + pos + 1)
        sign, coef, path = m.groups()
        if terms and sign is None:
            raise ParseError("expected '+' or '-' between terms", lineno, offset + m.start(2 if coef else 3) + 1)
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        terms.append((c, tuple(path.split(".")), offset + m.start(3) + 1))
        pos = m.end()
    if not terms:
        raise ParseError("relation without terms", lineno, offset + 1)
    return terms


def parse_input(text, source="<input>", pattern=False):
    """Parse a document; pattern=True also allows constraint/annotate lines."""
    verts, arrows, rels = [], [], []
    bound, truncate, saw_rel = None, False, False
    constraints, annotations, name = {}, [], None
    loc = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip(raw).strip()
        if not line:
            continue
        head = line.split()[0]
        if head in ("quiver", "relations") and len(line.split()) == 1:
            saw_rel = saw_rel or head == "relations"
            continue
        if head == "vertex":
            parts = line.split()
            if len(parts) != 2 or not _ID.match(parts[1]):
                raise ParseError("expected 'vertex <id>'", lineno, _col(raw, "vertex"))
            if parts[1] in verts:
                raise ParseError("duplicate vertex %r" % parts[1], lineno, _col(raw, parts[1]))
            verts.append(parts[1])
            loc[("vertex", parts[1])] = (lineno, _col(raw, parts[1]))
        elif head == "arrow":
            m = _ARROW.match(line)
            if not m:
                raise ParseError("expected 'arrow <id>: <src> -> <tgt>'", lineno, _col(raw, "arrow"))
            aid, s, t = m.groups()
            for v in (s, t):
                if v not in verts:
                    raise ParseError("unknown vertex %r" % v, lineno, raw.find(v, raw.find(":")) + 1)
            if any(a[0] == aid for a in arrows):
                raise ParseError("duplicate arrow %r" % aid, lineno, _col(raw, aid))
            arrows.append((aid, s, t))
            loc[("arrow", aid)] = (lineno, _col(raw, aid))
        elif head == "rel":
            m = re.match(r"rel\s+(" + IDENT + r")\s*:", line)
            if not m:
                raise ParseError("expected 'rel <name>: <terms>'", lineno, _col(raw, "rel"))
            offset = raw.find(":") + 1
            terms = _terms(raw[offset:len(_strip(raw))].rstrip(), lineno, offset)
            rels.append((m.group(1), terms, lineno))
            loc[("rel", m.group(1))] = (lineno, _col(raw, m.group(1)))
            saw_rel = True
        elif head == "bound":
            parts = line.split()
            if len(parts) not in (2, 3) or not parts[1].isdigit() or (len(parts) == 3 and parts[2] != "truncate"):
                raise ParseError("expected 'bound <m> [truncate]'", lineno, _col(raw, "bound"))
            bound, truncate = int(parts[1]), len(parts) == 3
        elif pattern and head == "pattern":
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("expected 'pattern <name>'", lineno, 1)
            name = parts[1]
        elif pattern and head == "constraint":
            parts = line.split()
            if len(parts) != 5 or parts[2] != "exact" or not (parts[3].isdigit() and parts[4].isdigit()):
                raise ParseError("expected 'constraint <v> exact <in> <out>'", lineno, _col(raw, "constraint"))
            if parts[1] not in verts:
                raise ParseError("unknown vertex %r" % parts[1], lineno, _col(raw, parts[1]))
            constraints[parts[1]] = (int(parts[3]), int(parts[4]))
        elif pattern and head == "annotate":
            parts = line.split()
            if len(parts) != 3 or parts[2] not in (MUST, MUST_NOT):
                raise ParseError("expected 'annotate <path> must_precede|must_not_precede'", lineno, _col(raw, "annotate"))
            annotations.append((tuple(parts[1].split(".")), parts[2], lineno, _col(raw, parts[1])))
        else:
            raise ParseError("unknown directive %r" % head, lineno, _col(raw, head))
    try:
        q = Quiver(tuple(verts), tuple(arrows))
    except QuiverError as e:
        raise ParseError(str(e), 1, 1)
    if pattern:
        for p, kind, ln, col in annotations:
            try:
                q.path(p)
            except QuiverError as e:
                raise ParseError(str(e), ln, col)
        spec = PatternSpec(name or "custom", q, constraints, tuple((p, k) for p, k, _, _ in annotations))
        return InputDocument(spec, loc, source)
    if not saw_rel and bound is None:
        return InputDocument(q, loc, source)
    if bound is None:
        raise ParseError("relations need a 'bound <m>' line", len(text.splitlines()) or 1, 1)
    built = []
    for rname, terms, ln in rels:
        tt = []
        for c, p, col in terms:
            for aid in p:
                if not q.has_arrow(aid):
                    raise ParseError("unknown arrow %r" % aid, ln, col)
            try:
                tt.append((c, q.path(p)))
            except QuiverError as e:
                raise ParseError("%s (non-composable path)" % e, ln, col)
        try:
            built.append(Relation(tuple(tt), rname))
        except PresentationError as e:
            raise ParseError(str(e), ln, terms[0][2])
    try:
        pres = Presentation(q, tuple(built), bound, truncate)
    except (PresentationError, ValueError) as e:
        raise ParseError(str(e), len(text.splitlines()) or 1, 1)
    return InputDocument(pres, loc, source)


def _fmt_coef(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else "%d/%d" % (c.numerator, c.denominator)


def print_document(doc):
    """Inverse of parse_input (for quivers, presentations and pattern specs)."""
    v = doc.value if isinstance(doc, InputDocument) else doc
    q = v.quiver if hasattr(v, "quiver") else v
    lines = []
    if isinstance(v, PatternSpec):
        lines.append("pattern %s" % v.name)
    lines.append("quiver")
    lines.extend("vertex %s" % x for x in q.vertices)
    lines.extend("arrow %s: %s -> %s" % (a.id, a.source, a.target) for a in q.arrows)
    if isinstance(v, PatternSpec):
        for x, (i, o) in v.constraints.items():
            lines.append("constraint %s exact %d %d" % (x, i, o))
        for p, kind in v.annotations:
            lines.append("annotate %s %s" % (".".join(p), kind))
    if isinstance(v, Presentation):
        lines.append("relations")
        for k, r in enumerate(v.relations):
            parts = []
            for n, (c, p) in enumerate(r.terms):
                c = Fraction(c)
                sign = "-" if c < 0 else "+"
                body = "%s*%s" % (_fmt_coef(abs(c)), ".".join(p.arrows))
                parts.append(("-" + body) if (n == 0 and c < 0) else (body if n == 0 else "%s %s" % (sign, body)))
            lines.append("rel %s: %s" % (r.name or "r%d" % (k + 1), " ".join(parts)))
        lines.append("bound %d%s" % (v.bound, " truncate" if v.truncate else ""))
    return "\n".join(lines) + "\n"


def to_dot(quiver, name="Q"):
    """Graphviz source; 1-regular vertices are drawn filled black."""
    prof = degree_profile(quiver)
    out = ["digraph %s {" % name]
    for v in quiver.vertices:
        if prof[v].regularity == "one_regular":
            out.append('  "%s" [style=filled, fillcolor=black, fontcolor=white];' % v)
        else:
            out.append('  "%s";' % v)
    for a in quiver.arrows:
        out.append('  "%s" -> "%s" [label="%s"];' % (a.source, a.target, a.id))
    out.append("}")
    return "\n".join(out) + "\n"
