"""qkm command line.

Exit status: 0 success, 1 a verification failed (witnesses are printed), 2 bad input.
"""
import argparse
import json
import sys

from . import catalog, classify, datafile, engine
from .datum import validate, dynkin, theta, canonical_generators, xy_matrices, GeneratorError
from .exact_core import to_text

VERIFY = ("serre", "coupling", "connectivity", "chevalley", "oracle", "structure")


class InputError(Exception):
    pass


class Source:
    def __init__(self, datum, entry=None):
        self.datum = datum
        self.entry = entry


def _source(args):
    if bool(args.catalog) == bool(args.datum):
        raise InputError("give exactly one of --catalog or --datum")
    if args.catalog:
        try:
            e = catalog.get(args.catalog)
        except KeyError as ex:
            raise InputError(str(ex.args[0]))
        return Source(e.datum, e)
    try:
        d = datafile.load(args.datum)
    except OSError as ex:
        raise InputError(f"{args.datum}: {ex.strerror}")
    except datafile.DatumFormatError as ex:
        raise InputError(f"{args.datum}: {ex}")
    rep = validate(d)
    if not rep.ok:
        raise InputError(f"{args.datum}: datum fails validation: {rep.failures}")
    return Source(d)


def _table(src, args):
    if args.height is None or args.height < 1:
        raise InputError("--height must be >= 1")
    try:
        return engine.build(src.datum, args.height)
    except engine.MemoryGuardError as ex:
        raise InputError(str(ex))
    except ValueError as ex:
        raise InputError(f"cannot build: {ex}")


def _s(x):
    return to_text(x) if hasattr(x, "_c") else str(x)


def _root_records(t):
    for th in sorted(t.spaces, key=lambda x: (abs(engine.height(x)), engine.height(x) < 0, x)):
        ev, od = t.sdim(th)
        yield {"root": list(th), "height": engine.height(th), "sdim": [ev, od],
               "weight": [_s(x) for x in t.weight(th).coords]}


class Out:
    def __init__(self):
        self.lines = []

    def __call__(self, s=""):
        self.lines.append(s)

    def text(self):
        return "\n".join(self.lines) + ("\n" if self.lines else "")


# verbs

def cmd_catalog(args, out):
    if args.action == "list":
        for nm in catalog.names():
            e = catalog.get(nm)
            d = e.datum
            out(f"{nm:18} n={d.n} h=({d.h.dim_t}|{d.h.dim_odd})  {e.notes}")
        return 0
    if not args.name:
        raise InputError("catalog emit needs an entry name")
    try:
        e = catalog.get(args.name)
    except KeyError as ex:
        raise InputError(str(ex.args[0]))
    out.lines.append(datafile.dumps(e.datum).rstrip("\n"))
    return 0


def cmd_build(args, out):
    src = _source(args)
    t = _table(src, args)
    if args.format == "json-lines":
        for rec in _root_records(t):
            out(json.dumps(rec, sort_keys=True))
    else:
        out(engine.export(t).rstrip("\n"))
    status = 0
    for what in args.verify or ():
        status = max(status, _verify(what, src, t, out))
    return status


def cmd_roots(args, out):
    src = _source(args)
    t = _table(src, args)
    if args.format == "json-lines":
        for rec in _root_records(t):
            out(json.dumps(rec, sort_keys=True))
        return 0
    names = src.datum.h.t_names
    out(f"{'root':>16}  {'ht':>3}  {'sdim':>7}  weight")
    for rec in _root_records(t):
        w = ", ".join(f"{nm}:{x}" for nm, x in zip(names, rec["weight"]) if x != "0")
        sd = f"({rec['sdim'][0]}|{rec['sdim'][1]})"
        out(f"{' '.join(map(str, rec['root'])):>16}  {rec['height']:>3}  {sd:>7}  {w}")
    return 0


def cmd_dynkin(args, out):
    src = _source(args)
    try:
        D = dynkin(src.datum)
    except GeneratorError as ex:
        raise InputError(f"no Dynkin diagram: {ex}")
    th = theta(D)
    if args.format == "json-lines":
        out(json.dumps({"markers": D.markers,
                        "edges": [[i, j, _s(a), _s(b)] for (i, j), (a, b) in sorted(D.edges.items())]}))
        return 0
    out(D.text())
    out("Theta: " + " ".join(f"{i}:{v}" for i, v in enumerate(th["vertices"])))
    return 0


def cmd_classify(args, out):
    src = _source(args)
    d = src.datum
    status = 0
    for i in range(d.n):
        try:
            rt = classify.classify_one_root(d, None, i)
            out(f"root {i + 1}: {rt.tag} (rk {rt.rank}, string {list(rt.shape)})")
        except classify.ClassificationError as ex:
            out(f"root {i + 1}: unclassified: {ex}")
            status = 1
    if d.n > 1:
        status = max(status, _verify("connectivity", src, None, out))
        try:
            gens = canonical_generators(d)
        except GeneratorError as ex:
            out(f"coupling: not applicable ({ex})")
            return status
        a = classify.coupling_theorem_audit(gens)
        out(f"coupling: {a.tag}")
        for (i, j), c in sorted(a.cases.items()):
            out(f"  pair ({i + 1}, {j + 1}): case {c}")
        for n in a.notes:
            out(f"  {n}")
        for v in a.violations:
            out(f"  violation: {v}")
        if a.violations:
            status = 1
        if a.tag == "completely uncoupled":
            A = xy_matrices(gens).A
            for tri, lhs, rhs, eq in classify.triangle_relation(A):
                out(f"  triangle {tri}: {_s(lhs)} vs {_s(rhs)} ({'equal' if eq else 'differ'}, logged)")
    return status


def _verify(what, src, t, out):
    d = src.datum
    if what == "serre":
        rep = engine.serre_check(t)
        out.lines.extend(rep.lines())
        return 0 if rep.ok else 1
    if what == "structure":
        rep = engine.verify_structure(t)
        out.lines.extend(rep.lines())
        return 0 if rep.ok else 1
    if what == "chevalley":
        rep = engine.chevalley_report(t)
        out.lines.extend(rep.lines())
        return 0 if rep.ok else 1
    if what == "connectivity":
        rep = classify.connectivity_audit(d, t)
        out(f"connectivity: {'ok' if rep.ok else 'FAILED'}")
        for v in rep.violations:
            out(f"  {v}")
        return 0 if rep.ok else 1
    if what == "coupling":
        try:
            gens = canonical_generators(d)
        except GeneratorError as ex:
            raise InputError(f"coupling needs (1|1) simple roots: {ex}")
        a = classify.coupling_theorem_audit(gens)
        out(f"coupling: {a.tag}: {'ok' if a.ok else 'FAILED'}")
        for v in a.violations:
            out(f"  {v}")
        return 0 if a.ok else 1
    if what == "oracle":
        if src.entry is None or src.entry.oracle is None:
            raise InputError("no oracle for this datum (use a catalog entry with a realization)")
        rep = engine.compare_with_oracle(t, src.entry.oracle, src.entry.genmap)
        out.lines.extend(rep.lines())
        return 0 if rep.ok else 1
    raise InputError(f"unknown check {what!r}")


def cmd_verify(args, out):
    src = _source(args)
    t = None if args.check in ("coupling", "connectivity") and args.height is None else _table(src, args)
    return _verify(args.check, src, t, out)


def cmd_growth(args, out):
    src = _source(args)
    t = _table(src, args)
    g = engine.growth_profile(t)
    if args.format == "json-lines":
        out(json.dumps({"dims": g.dims, "tag": g.tag}))
        return 0
    for k, x in enumerate(g.dims, 1):
        out(f"height {k}: {x}")
    out(f"tag: {g.tag} (heuristic)")
    return 0


def cmd_compare(args, out):
    src = _source(args)
    t = _table(src, args)
    return _verify("oracle", src, t, out)


def parser():
    p = argparse.ArgumentParser(prog="qkm", description="Build and analyze queer Kac-Moody superalgebras.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, height=True):
        sp.add_argument("--catalog", help="catalog entry name")
        sp.add_argument("--datum", help="path to a datum file")
        if height:
            sp.add_argument("--height", type=int, help="height cutoff N")
        sp.add_argument("--format", choices=("table", "json-lines"), default="table")
        sp.add_argument("--out", help="write the report here instead of stdout")

    c = sub.add_parser("catalog", help="list entries or emit one as a datum file")
    c.add_argument("action", choices=("list", "emit"))
    c.add_argument("name", nargs="?")
    c.add_argument("--out")
    b = sub.add_parser("build", help="build root spaces and print the table")
    common(b)
    b.add_argument("--verify", action="append", choices=VERIFY)
    common(sub.add_parser("roots", help="roots with weights and superdimensions"))
    common(sub.add_parser("dynkin", help="Dynkin diagram of a qKM datum"), height=False)
    common(sub.add_parser("classify", help="root types, connectivity and coupling"), height=False)
    v = sub.add_parser("verify", help="run one verification")
    v.add_argument("check", choices=VERIFY)
    common(v)
    common(sub.add_parser("growth", help="per-height dimensions"))
    common(sub.add_parser("compare", help="compare with the catalog oracle"))
    return p


VERBS = {"catalog": cmd_catalog, "build": cmd_build, "roots": cmd_roots, "dynkin": cmd_dynkin,
         "classify": cmd_classify, "verify": cmd_verify, "growth": cmd_growth, "compare": cmd_compare}


def run(argv):
    """Return (status, report text, error text)."""
    try:
        args = parser().parse_args(argv)
    except SystemExit as ex:
        return (0 if ex.code == 0 else 2), "", ""
    out = Out()
    try:
        status = VERBS[args.verb](args, out)
    except InputError as ex:
        return 2, out.text(), f"qkm: error: {ex}\n"
    text = out.text()
    if getattr(args, "out", None):
        try:
            with open(args.out, "w") as f:
                f.write(text)
        except OSError as ex:
            return 2, "", f"qkm: error: {args.out}: {ex.strerror}\n"
        text = ""
    return status, text, ""


def main(argv=None):
    status, text, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    sys.stderr.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
