"""Line-oriented text format for Cartan data.

    # qkm datum
    NAME q3
    ALGEBRA
    t: h1 h2 h3
    odd: H1 H2 H3
    bracket H1 H1: h1 = 2; h3 = 1/2*i
    WEIGHTS
    alpha 1: h1 = 1; h2 = -1
    MODULE +1
    weight: h1 = 1; h2 = -1
    parities: 0 1
    action H1: (0,1) = 1; (1,0) = 1
    PAIRING 1
    (0,0): h1 = 1; h2 = -1

Indices of roots are 1-based in the file; basis indices inside modules are 0-based.
Scalars use the canonical exact_core text, so `dumps(loads(s)) == s` for any output of dumps.
"""
import re

from .exact_core import ZERO, Matrix, parse, to_text
from .quasitoral import QuasitoralAlgebra, Weight, HModule
from .datum import CartanDatum

HEADER = "# qkm datum"
_NAME_OK = re.compile(r"^[^\s:;=(),]+$")


class DatumFormatError(ValueError):
    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}" if lineno else msg)
        self.lineno = lineno


def _vec_text(names, vec):
    parts = [f"{names[k]} = {to_text(x)}" for k, x in enumerate(vec) if x]
    return "; ".join(parts) if parts else "0"


def _check_names(names):
    for nm in names:
        if not _NAME_OK.match(nm):
            raise ValueError(f"basis name {nm!r} cannot be written (no spaces or :;=(),)")
    if len(set(names)) != len(names):
        raise ValueError("duplicate basis names")


def dumps(d):
    h = d.h
    _check_names(h.t_names + h.odd_names)
    hn = h.t_names + h.odd_names
    out = [HEADER, f"NAME {d.name}" if d.name else "NAME", "ALGEBRA",
           "t: " + " ".join(h.t_names), "odd: " + " ".join(h.odd_names)]
    for (a, b), v in h.bracket_entries():
        out.append(f"bracket {h.odd_names[a]} {h.odd_names[b]}: {_vec_text(h.t_names, v)}")
    out.append("WEIGHTS")
    for i, r in enumerate(d.roots):
        out.append(f"alpha {i + 1}: {_vec_text(h.t_names, r.coords)}")
    for i in range(d.n):
        for sign, M in (("+", d.pos[i]), ("-", d.neg[i])):
            out.append(f"MODULE {sign}{i + 1}")
            out.append(f"weight: {_vec_text(h.t_names, M.weight.coords)}")
            out.append("parities: " + " ".join(str(p) for p in M.parities))
            for c, A in enumerate(M.action):
                if A.entries:
                    ents = "; ".join(f"({r},{k}) = {to_text(x)}" for (r, k), x in sorted(A.entries.items()))
                    out.append(f"action {h.odd_names[c]}: {ents}")
    for i in range(d.n):
        out.append(f"PAIRING {i + 1}")
        for (a, b), v in sorted(d.pairings[i].items()):
            if any(v):
                out.append(f"({a},{b}): {_vec_text(hn, v)}")
    return "\n".join(out) + "\n"


class _Parser:
    def __init__(self, text):
        self.lines = text.splitlines()
        self.k = 0

    def error(self, msg):
        raise DatumFormatError(self.k, msg)

    def scalar(self, s):
        try:
            return parse(s)
        except (ValueError, ZeroDivisionError) as e:
            self.error(f"bad scalar {s!r}: {e}")

    def vector(self, names, body):
        vec = [ZERO] * len(names)
        if body.strip() == "0":
            return vec
        for part in body.split(";"):
            if "=" not in part:
                self.error(f"expected 'name = value', got {part.strip()!r}")
            nm, val = part.split("=", 1)
            nm = nm.strip()
            if nm not in names:
                self.error(f"unknown basis name {nm!r}")
            vec[names.index(nm)] = self.scalar(val)
        return vec

    def field(self, line, key):
        if not line.startswith(key + ":"):
            self.error(f"expected '{key}:'")
        return line[len(key) + 1:].strip()


def _pair(p, s):
    m = re.fullmatch(r"\((\d+),(\d+)\)", s.strip())
    if not m:
        p.error(f"expected '(a,b)', got {s.strip()!r}")
    return int(m.group(1)), int(m.group(2))


def loads(text):
    p = _Parser(text)
    rows = []
    for k, raw in enumerate(p.lines, 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            rows.append((k, line))
    if not rows:
        raise DatumFormatError(0, "empty datum file")
    it = iter(rows)
    state = {"name": "", "bracket": {}, "roots": [], "mods": {}, "pair": {}}
    section, cur = None, None
    t_names = odd_names = None
    for k, line in it:
        p.k = k
        head = line.split()[0]
        if head == "NAME":
            state["name"] = line[4:].strip()
            continue
        if head == "ALGEBRA":
            section = "ALGEBRA"
            continue
        if head == "WEIGHTS":
            if t_names is None:
                p.error("WEIGHTS before the t: line")
            section = "WEIGHTS"
            continue
        if head in ("MODULE", "PAIRING"):
            if t_names is None:
                p.error(f"{head} before ALGEBRA")
            m = re.fullmatch(r"(MODULE) ([+-])(\d+)|(PAIRING) (\d+)", line)
            if not m:
                p.error(f"bad section header {line!r}")
            if m.group(1):
                cur = (m.group(2), int(m.group(3)))
                if cur in state["mods"]:
                    p.error(f"duplicate module {line[7:]}")
                state["mods"][cur] = {"weight": None, "parities": None, "action": {}, "line": k}
                section = "MODULE"
            else:
                cur = int(m.group(5))
                state["pair"][cur] = {}
                section = "PAIRING"
            continue
        if section == "ALGEBRA":
            if line.startswith("t:"):
                t_names = p.field(line, "t").split()
            elif line.startswith("odd:"):
                odd_names = p.field(line, "odd").split()
            elif head == "bracket":
                if t_names is None or odd_names is None:
                    p.error("bracket before t: and odd:")
                lhs, _, body = line[len("bracket"):].partition(":")
                ab = lhs.split()
                if len(ab) != 2 or any(x not in odd_names for x in ab):
                    p.error(f"bracket needs two odd basis names, got {lhs.strip()!r}")
                state["bracket"][tuple(ab)] = p.vector(t_names, body)
            else:
                p.error(f"unexpected line in ALGEBRA: {line!r}")
        elif section == "WEIGHTS":
            m = re.fullmatch(r"alpha (\d+):(.*)", line)
            if not m:
                p.error(f"expected 'alpha <n>: ...', got {line!r}")
            if int(m.group(1)) != len(state["roots"]) + 1:
                p.error(f"roots must be numbered 1, 2, ... in order")
            state["roots"].append(p.vector(t_names, m.group(2)))
        elif section == "MODULE":
            mod = state["mods"][cur]
            if line.startswith("weight:"):
                mod["weight"] = p.vector(t_names, p.field(line, "weight"))
            elif line.startswith("parities:"):
                toks = p.field(line, "parities").split()
                if any(x not in ("0", "1") for x in toks):
                    p.error("parities must be 0 or 1")
                mod["parities"] = [int(x) for x in toks]
            elif head == "action":
                lhs, _, body = line[len("action"):].partition(":")
                c = lhs.strip()
                if c not in (odd_names or []):
                    p.error(f"unknown odd basis name {c!r}")
                ents = {}
                for part in body.split(";"):
                    if "=" not in part:
                        p.error(f"expected '(r,c) = value', got {part.strip()!r}")
                    key, val = part.split("=", 1)
                    ents[_pair(p, key)] = p.scalar(val)
                mod["action"][odd_names.index(c)] = ents
            else:
                p.error(f"unexpected line in MODULE: {line!r}")
        elif section == "PAIRING":
            key, _, body = line.partition(":")
            state["pair"][cur][_pair(p, key)] = p.vector(t_names + (odd_names or []), body)
        else:
            p.error(f"line outside any section: {line!r}")
    if t_names is None:
        raise DatumFormatError(0, "missing ALGEBRA section")
    odd_names = odd_names or []
    try:
        h = QuasitoralAlgebra(t_names, odd_names, state["bracket"])
    except ValueError as e:
        raise DatumFormatError(0, f"ALGEBRA: {e}")
    n = len(state["roots"])
    if n == 0:
        raise DatumFormatError(0, "no simple roots in WEIGHTS")
    extra = [m for m in state["mods"] if not 1 <= m[1] <= n] + [i for i in state["pair"] if not 1 <= i <= n]
    if extra:
        raise DatumFormatError(0, f"modules or pairings for undeclared roots: {extra}")
    pos, neg = [], []
    for i in range(1, n + 1):
        for sign, dest in (("+", pos), ("-", neg)):
            mod = state["mods"].get((sign, i))
            if mod is None:
                raise DatumFormatError(0, f"missing MODULE {sign}{i}")
            if mod["weight"] is None or mod["parities"] is None:
                raise DatumFormatError(mod["line"], f"MODULE {sign}{i} needs weight: and parities:")
            dim = len(mod["parities"])
            acts = []
            for c in range(len(odd_names)):
                ents = mod["action"].get(c, {})
                if any(r >= dim or q >= dim for r, q in ents):
                    raise DatumFormatError(mod["line"], f"MODULE {sign}{i}: action index out of range")
                acts.append(Matrix(dim, dim, ents))
            dest.append(HModule(h, Weight(mod["weight"]), mod["parities"], acts))
    pairings = []
    for i in range(1, n + 1):
        if i not in state["pair"]:
            raise DatumFormatError(0, f"missing PAIRING {i}")
        pr = state["pair"][i]
        for (a, b) in pr:
            if a >= pos[i - 1].dim or b >= neg[i - 1].dim:
                raise DatumFormatError(0, f"PAIRING {i}: index ({a},{b}) out of range")
        pairings.append(pr)
    return CartanDatum(h, [Weight(r) for r in state["roots"]], pos, neg, pairings, state["name"])


def load(path):
    with open(path) as f:
        return loads(f.read())


def dump(d, path):
    with open(path, "w") as f:
        f.write(dumps(d))
