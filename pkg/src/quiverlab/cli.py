"""Command-line entry point.

Exit status: 0 success / all checks pass, 1 violations found, 2 usage or
parse error.  `--format structured` prints JSON; check-style commands emit a
list of {check, verdict, witnesses, anchor} records.
"""
import argparse
import json
import sys

from .algebra import (NotFiniteDimensional, Inadmissible, PresentationError, cartan_matrix,
                      compute_basis, idempotent_algebra, precedes_predicate)
from .corpus import GlueError, corpus_entries, corpus_entry, glue_blocks, parse_glue_spec, random_glue_spec
from .fields import field_from_name
from .fileformat import ParseError, parse_input, print_document, to_dot
from .homology import period4_diagnostics, syzygy_chain
from .patterns import registry_list, scan_forbidden
from .quiver import degree_profile, find_blocks, is_biregular
from .verify import FAIL, NonBiregularQuiver, full_battery, main_theorem_report


class UsageError(Exception):
    pass


def _load(arg):
    if arg.startswith("corpus:"):
        try:
            return corpus_entry(arg[len("corpus:"):]).value
        except KeyError as e:
            raise UsageError(str(e))
    try:
        text = sys.stdin.read() if arg == "-" else open(arg).read()
    except OSError as e:
        raise UsageError(str(e))
    return parse_input(text, arg).value


def _need_pres(obj, cmd):
    if not hasattr(obj, "relations"):
        raise UsageError("%s needs a presentation (relations and bound)" % cmd)
    return obj


def _quiver(obj):
    return obj.quiver if hasattr(obj, "relations") else obj


class Out:
    def __init__(self, fmt, stream):
        self.fmt, self.stream, self.lines, self.data = fmt, stream, [], None

    def text(self, s=""):
        self.lines.append(s)

    def flush(self):
        if self.fmt == "structured":
            self.stream.write(json.dumps(self.data, indent=2, sort_keys=False) + "\n")
        else:
            self.stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def _records(out, results):
    out.data = [r.record() for r in results]
    for r in results:
        line = "%-8s %s" % (r.verdict.upper(), r.check)
        if r.note:
            line += "  (%s)" % r.note
        out.text(line)
        for w in r.witnesses:
            out.text("         - %s" % w)
    return 1 if any(r.verdict == FAIL for r in results) else 0


def cmd_analyze(a, out):
    q = _quiver(_load(a.input))
    prof = degree_profile(q)
    bi = is_biregular(q)
    blocks = find_blocks(q)
    out.data = {"vertices": list(q.vertices), "arrows": len(q.arrows),
                "profile": {v: [p.in_degree, p.out_degree, p.regularity] for v, p in prof.items()},
                "biregular": bi.ok, "offenders": list(bi.offenders),
                "blocks": [b.describe() for b in blocks], "uncovered": list(blocks.uncovered),
                "unglued": [b.describe() for b in blocks.unglued]}
    out.text("%d vertices, %d arrows" % (len(q.vertices), len(q.arrows)))
    for v, p in prof.items():
        out.text("  %s: in %d, out %d, %s" % (v, p.in_degree, p.out_degree, p.regularity))
    out.text("biregular: %s%s" % ("yes" if bi.ok else "no",
                                  "" if bi.ok else " (offenders: %s)" % ", ".join(bi.offenders)))
    out.text("blocks:")
    for b in blocks:
        out.text("  " + b.describe())
    for b in blocks.unglued:
        out.text("  unglued " + b.describe())
    if blocks.uncovered:
        out.text("1-vertices without a V1/V2 block: %s" % ", ".join(blocks.uncovered))
    return 0


def cmd_scan(a, out):
    obj = _load(a.input)
    pred = precedes_predicate(obj) if hasattr(obj, "relations") else None
    reps = scan_forbidden(_quiver(obj), pred)
    out.data = {"hits": [{"pattern": r.pattern, "heuristic": r.heuristic,
                          "embeddings": [e.describe() for e in r.hits]} for r in reps],
                "skipped": reps.skipped}
    for r in reps:
        out.text("%s: %d embedding(s)%s" % (r.pattern, len(r.hits), " [covering figure, heuristic]" if r.heuristic else ""))
        for e in r.hits:
            out.text("  " + e.describe())
    if reps.skipped:
        out.text("skipped (no relation data): %s" % ", ".join(reps.skipped))
    if not reps:
        out.text("no forbidden pattern found")
    return 1 if reps else 0


def _basis(a, pres):
    try:
        return compute_basis(pres, field_from_name(a.field))
    except (NotFiniteDimensional, Inadmissible) as e:
        raise UsageError(str(e))


def cmd_cartan(a, out):
    pres = _need_pres(_load(a.input), "cartan")
    B = _basis(a, pres)
    C = cartan_matrix(B)
    out.data = {"vertices": list(C.vertices), "dimension": B.dim, "cartan": C.as_lists()}
    out.text("dimension %d" % B.dim)
    out.text("vertices: " + " ".join(C.vertices))
    for v, row in zip(C.vertices, C.as_lists()):
        out.text("  %s: %s" % (v, " ".join(str(x) for x in row)))
    return 0


def cmd_syzygy(a, out):
    pres = _need_pres(_load(a.input), "syzygy")
    B = _basis(a, pres)
    if a.simple not in pres.quiver.vertices:
        raise UsageError("unknown vertex %r" % a.simple)
    ch = syzygy_chain(B, a.simple, a.kmax)
    out.data = {"vertex": a.simple, "dimension_vectors": [str(m.dimension_vector()) for m in ch.modules],
                "period": ch.period}
    for k, m in enumerate(ch.modules):
        out.text("Omega^%d(S_%s): %s" % (k, a.simple, m.dimension_vector()))
    out.text("period: %s" % (ch.period if ch.period is not None else "not found up to %d" % a.kmax))
    return 0


def cmd_period(a, out):
    pres = _need_pres(_load(a.input), "period")
    B = _basis(a, pres)
    verts = [a.simple] if a.simple else list(pres.quiver.vertices)
    res = {v: syzygy_chain(B, v, a.kmax).period for v in verts}
    out.data = res
    for v, p in res.items():
        out.text("S_%s: %s" % (v, p if p is not None else "none up to %d" % a.kmax))
    return 0


def cmd_diag4(a, out):
    pres = _need_pres(_load(a.input), "diag4")
    B = _basis(a, pres)
    try:
        r = period4_diagnostics(B, a.simple, override=a.override)
    except ValueError as e:
        raise UsageError(str(e))
    ok = r.balanced and r.left_identity and r.right_identity
    out.data = {"vertex": r.vertex, "period": r.period, "p_plus": str(r.p_plus), "p_minus": str(r.p_minus),
                "p": str(r.p_i), "balanced": r.balanced, "left_identity": r.left_identity,
                "valid_arrow_orders": [list(c) for c in r.valid_choices], "margin": r.margin,
                "findings": r.findings}
    out.text("S_%s period %s" % (r.vertex, r.period))
    out.text("p+ = %s, p- = %s, p = %s, margin %d" % (r.p_plus, r.p_minus, r.p_i, r.margin))
    out.text("(alpha alpha')M = 0: %s" % r.left_identity)
    out.text("M(gamma, gamma*)^T = 0 for orders: %s" % (r.valid_choices or "none"))
    for f in r.findings:
        out.text("finding: " + f)
    return 0 if ok else 1


def cmd_check(a, out):
    obj = _load(a.input)
    B = None
    if hasattr(obj, "relations"):
        try:
            B = compute_basis(obj, field_from_name(a.field))
        except (NotFiniteDimensional, Inadmissible):
            B = None
    return _records(out, full_battery(obj, B))


def cmd_main_theorem(a, out):
    q = _quiver(_load(a.input))
    try:
        rep = main_theorem_report(q)
    except NonBiregularQuiver as e:
        out.data = [{"check": "biregularity", "verdict": FAIL, "witnesses": e.offenders,
                     "anchor": "block-classification"}]
        out.text("FAIL     biregularity")
        for v in e.offenders:
            out.text("         - %s" % v)
        return 1
    code = _records(out, rep.results())
    out.text("overall: %s" % rep.verdict)
    return code


def cmd_gen(a, out):
    try:
        spec = parse_glue_spec(a.blocks) if a.blocks else random_glue_spec(a.seed)
        q = glue_blocks(spec)
    except GlueError as e:
        raise UsageError(str(e))
    out.data = {"spec": str(spec), "vertices": list(q.vertices),
                "arrows": [[x.id, x.source, x.target] for x in q.arrows], "biregular": is_biregular(q).ok}
    out.text((to_dot(q) if a.dot else print_document(q)).rstrip("\n"))
    return 0


def cmd_corpus(a, out):
    if a.list or not a.name:
        out.data = [{"name": e.name, "tags": sorted(e.tags), "description": e.description} for e in corpus_entries()]
        for e in corpus_entries():
            out.text("%-20s %s" % (e.name, e.description))
        return 0
    try:
        e = corpus_entry(a.name)
    except KeyError as err:
        raise UsageError(str(err))
    out.data = {"name": e.name, "document": print_document(e.value)}
    out.text(print_document(e.value).rstrip("\n"))
    return 0


def cmd_idem(a, out):
    pres = _need_pres(_load(a.input), "idem")
    B = _basis(a, pres)
    vs = [v.strip() for v in a.vertices.split(",") if v.strip()]
    bad = [v for v in vs if v not in pres.quiver.vertices]
    if bad or not vs:
        raise UsageError("unknown or empty vertex set: %s" % ", ".join(bad))
    A = idempotent_algebra(pres, B, vs)
    gq = {"%s->%s" % k: n for k, n in A.gabriel.items()}
    out.data = {"vertices": list(A.vertices), "dimension": A.dim, "gabriel": gq, "cartan": A.cartan()}
    out.text("eLe on %s: dimension %d" % (",".join(A.vertices), A.dim))
    out.text("Gabriel quiver: " + (", ".join("%s x%d" % kv for kv in gq.items()) or "no arrows"))
    out.text("Cartan: %s" % A.cartan())
    return 0


def cmd_dot(a, out):
    q = _quiver(_load(a.input))
    out.data = {"dot": to_dot(q)}
    out.text(to_dot(q).rstrip("\n"))
    return 0


def cmd_patterns(a, out):
    lst = registry_list()
    out.data = [{"name": n, "summary": s} for n, s in lst]
    for _, s in lst:
        out.text(s)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="quiverlab", description="Bound quiver algebra structure checks")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--field", default="rational", help="'rational' or a prime modulus")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_input=True, help_=""):
        sp = sub.add_parser(name, help=help_)
        if needs_input:
            sp.add_argument("input", help="file path, '-' for stdin, or corpus:<name>")
        sp.set_defaults(fn=fn)
        return sp

    add("analyze", cmd_analyze, help_="degrees, biregularity and blocks")
    add("scan", cmd_scan, help_="forbidden pattern scan")
    add("cartan", cmd_cartan, help_="dimension and Cartan matrix")
    sp = add("syzygy", cmd_syzygy, help_="syzygies of a simple module")
    sp.add_argument("--simple", required=True)
    sp.add_argument("--kmax", type=int, default=4)
    sp = add("period", cmd_period, help_="periods of simple modules")
    sp.add_argument("--kmax", type=int, default=4)
    sp.add_argument("--simple")
    sp = add("diag4", cmd_diag4, help_="period-four exact sequence diagnostics")
    sp.add_argument("--simple", required=True)
    sp.add_argument("--override", action="store_true")
    add("check", cmd_check, help_="full battery of necessary conditions")
    add("main-theorem", cmd_main_theorem, help_="V1/V2 block classification of 1-vertices")
    sp = add("gen", cmd_gen, needs_input=False, help_="glue blocks into a quiver")
    sp.add_argument("--blocks", help="e.g. 'V2:A,V2:B;A.w1=B.w2,A.w2=B.w1'")
    sp.add_argument("--seed", type=int, default=0, help="random legal glueing when --blocks is absent")
    sp.add_argument("--dot", action="store_true")
    sp = add("corpus", cmd_corpus, needs_input=False, help_="list or print named corpus entries")
    sp.add_argument("--name")
    sp.add_argument("--list", action="store_true")
    sp = add("idem", cmd_idem, help_="idempotent algebra eLe")
    sp.add_argument("--vertices", required=True, help="comma-separated vertex ids")
    add("dot", cmd_dot, help_="graphviz export")
    add("patterns", cmd_patterns, needs_input=False, help_="list the pattern registry")
    return p


def run_command(argv, stream=None):
    stream = sys.stdout if stream is None else stream
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        field_from_name(a.field)
    except ValueError as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    out = Out(a.format, stream)
    try:
        code = a.fn(a, out)
    except (ParseError, UsageError, PresentationError) as e:
        sys.stderr.write("error: %s\n" % e)
        return 2
    out.flush()
    return code


def main():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
