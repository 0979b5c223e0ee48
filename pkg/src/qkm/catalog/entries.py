"""Named Cartan data, each built from (or checked against) a concrete realization."""
from __future__ import annotations

from ..exact_core import Scalar, ZERO, ONE, I, scalar, Matrix, Reducer, vadd, vscale, rank
from ..quasitoral import (QuasitoralAlgebra, Weight, HModule, clifford_module, dual_twist,
                          parity_shift, tensor, radical, submodule_closure, hom_space)
from ..datum import CartanDatum, SL2, OSP, SL11
from .oracles import (SCA, BASES, takiff_sca, q_sca, sq_sca, psq_sca, q_odd_form, odd_affinize)


class CatalogEntry:
    """A datum plus optional oracle realizations.

    oracles is a list of (label, oracle, genmap); genmap has keys 'h', 'pos',
    'neg' giving the oracle vector of every datum basis vector.
    """

    def __init__(self, name, datum, oracles=(), notes="", root_type=None, ckm=None):
        self.name = name
        self.datum = datum
        self.oracles = list(oracles)
        self.notes = notes
        self.root_type = root_type      # expected one-root type label, if one root
        self.ckm = ckm                  # expected Clifford Kac-Moody flag

    @property
    def oracle(self):
        return self.oracles[0][1] if self.oracles else None

    @property
    def genmap(self):
        return self.oracles[0][2] if self.oracles else None

    def __repr__(self):
        return f"CatalogEntry({self.name!r})"


# from an oracle to a datum

def _ratio(w, v):
    """lam with w = lam * v, or None."""
    if not w:
        return ZERO
    k = next(iter(v))
    lam = w.get(k, ZERO) / v[k]
    return lam if vscale(v, lam) == w else None


def _parity(oracle, v):
    ps = {oracle.parity(k) for k in v}
    if len(ps) != 1:
        raise ValueError("oracle vector is not homogeneous")
    return ps.pop()


def datum_from_oracle(oracle, t_vecs, odd_vecs, pos, neg, t_names, odd_names, name=""):
    """Read off the Cartan datum spanned inside a concrete superalgebra.

    Returns (datum, genmap).  Raises ValueError if the chosen vectors do not
    form a quasi-toral h with root modules.
    """
    hv = list(t_vecs) + list(odd_vecs)
    red = Reducer()
    for v in hv:
        if not red.add(v):
            raise ValueError("h basis vectors are dependent")
    dt = len(t_vecs)

    def hcoords(w):
        c = red.express(w)
        if c is None:
            raise ValueError("bracket leaves h")
        return [c.get(k, ZERO) for k in range(len(hv))]

    for a, x in enumerate(hv):
        for b, y in enumerate(hv):
            if (a < dt or b < dt) and oracle.bracket(x, y):
                raise ValueError("h is not quasi-toral: even part not central in h")
    odd_br = {}
    for a in range(len(odd_vecs)):
        for b in range(a, len(odd_vecs)):
            c = hcoords(oracle.bracket(odd_vecs[a], odd_vecs[b]))
            if any(c[dt:]):
                raise ValueError("odd bracket has an odd component")
            if any(c[:dt]):
                odd_br[(a, b)] = c[:dt]
    h = QuasitoralAlgebra(t_names, odd_names, odd_br)

    def module(vecs):
        mred = Reducer()
        for v in vecs:
            if not mred.add(v):
                raise ValueError("root vectors are dependent")
        lam = []
        for t in t_vecs:
            vals = {_ratio(oracle.bracket(t, v), v) for v in vecs}
            if None in vals or len(vals) != 1:
                raise ValueError("t does not act by a scalar on a root space")
            lam.append(vals.pop())
        action = []
        n = len(vecs)
        for X in odd_vecs:
            ent = {}
            for j, v in enumerate(vecs):
                c = mred.express(oracle.bracket(X, v))
                if c is None:
                    raise ValueError("root space not stable under h")
                for i, x in c.items():
                    ent[(i, j)] = x
            action.append(Matrix(n, n, ent))
        return HModule(h, Weight(lam), [_parity(oracle, v) for v in vecs], action)

    P = [module(v) for v in pos]
    N = [module(v) for v in neg]
    pairings = []
    for ps, ns in zip(pos, neg):
        phi = {}
        for a, x in enumerate(ps):
            for b, y in enumerate(ns):
                c = hcoords(oracle.bracket(x, y))
                if any(c):
                    phi[(a, b)] = c
        pairings.append(phi)
    d = CartanDatum(h, [M.weight for M in P], P, N, pairings, name)
    genmap = {"h": hv, "pos": [list(p) for p in pos], "neg": [list(n) for n in neg]}
    return d, genmap


# q(n), sq(n), psq(n)

def q_family(n, variant="q"):
    if variant not in ("q", "sq", "psq"):
        raise ValueError(f"unknown variant {variant!r}")
    if n < 2:
        raise ValueError(f"{variant}(n) needs n >= 2")
    if variant == "q":
        sca = q_sca(n)
        ts = [f"A{k}{k}" for k in range(1, n + 1)]
        odd = [f"B{k}{k}" for k in range(1, n + 1)]
    elif variant == "sq":
        sca = sq_sca(n)
        ts = [f"A{k}{k}" for k in range(1, n + 1)]
        odd = [f"H{k}" for k in range(1, n)]
    else:
        sca = psq_sca(n)
        ts = [f"A{k}{k}" for k in range(1, n + 1) if f"A{k}{k}" in sca.names]
        odd = [f"H{k}" for k in range(1, n)]
    pos = [[sca.vec(f"A{k}{k + 1}"), sca.vec(f"B{k}{k + 1}")] for k in range(1, n)]
    neg = [[sca.vec(f"A{k + 1}{k}"), sca.vec(f"B{k + 1}{k}")] for k in range(1, n)]
    name = f"{variant}{n}"
    d, gm = datum_from_oracle(sca, [sca.vec(t) for t in ts], [sca.vec(x) for x in odd], pos, neg,
                              ts, odd, name)
    ckm = variant == "q" or n >= 3
    return CatalogEntry(name, d, [(f"{variant}({n}) block matrices", sca, gm)],
                        notes=f"{variant}({n}) with its diagonal Cartan subalgebra", ckm=ckm)


# Takiff superalgebras

_TAK_TYPES = {"sl2": SL2, "osp12": OSP, "sl11": SL11}


def takiff(base, variant="T", with_d=True):
    """Takiff datum over base in {sl2, osp12, sl11, sl3, sl4}.

    variant T keeps c and z = [d, d]; t drops z; pt drops c and z.  The odd
    derivation d stays in h unless with_d is False (the literal s (x) C[xi] + c).
    """
    if variant not in ("T", "t", "pt"):
        raise ValueError(f"unknown Takiff variant {variant!r}")
    b = BASES[base]()
    sca = takiff_sca(b, with_d=with_d, with_c=variant != "pt", with_z=variant == "T")
    ts = [f"{x}" for x in b.torus] + [x for x in ("c", "z") if x in sca.names]
    odd = [f"{x}*xi" for x in b.torus] + (["d"] if with_d else [])
    pos, neg = [], []
    for e, f in zip(b.pos, b.neg):
        pos.append([sca.vec(e), sca.vec(f"{e}*xi")])
        neg.append([sca.vec(f), sca.vec(f"{f}*xi")])
    name = f"takiff-{base}-{variant}" + ("" if with_d else "-nod")
    d, gm = datum_from_oracle(sca, [sca.vec(t) for t in ts], [sca.vec(x) for x in odd], pos, neg,
                              ts, odd, name)
    oracles = [(f"{variant} {base} Takiff bracket", sca, gm)]
    if base == "sl2" and variant == "T" and with_d:
        oracles.append(("q(2) with c = z", q_sca(2), _takiff_sl2_into_q2(sca, d)))
    rt = _TAK_TYPES.get(base) if len(b.pos) == 1 else None
    return CatalogEntry(name, d, oracles, notes=f"{variant} {base}: s (x) C[xi] with c, z, d as kept",
                        root_type=rt, ckm=True)


def _takiff_sl2_into_q2(tak, d):
    """Images in q(2) of the T sl(2) datum basis: d -> (0, I/2), c, z -> I/2."""
    q = q_sca(2)
    half = Scalar(1) / 2
    img = {
        "h": q.vec("A11", (-1, "A22")),
        "c": q.vec((half, "A11"), (half, "A22")),
        "z": q.vec((half, "A11"), (half, "A22")),
        "h*xi": q.vec("B11", (-1, "B22")),
        "d": q.vec((half, "B11"), (half, "B22")),
    }
    hv = [img[x] for x in d.h.t_names + d.h.odd_names]
    return {"h": hv, "pos": [[q.vec("A12"), q.vec("B12")]], "neg": [[q.vec("A21"), q.vec("B21")]]}


# rank-0 one-root data

def one_root(base):
    """sl2, osp12 or sl11 (on the torus of gl(1|1)) as a rank-0 one-root datum."""
    b = BASES[base]()
    s = b.sca
    d, gm = datum_from_oracle(s, [s.vec(t) for t in b.torus], [], [[s.vec(b.pos[0])]],
                              [[s.vec(b.neg[0])]], list(b.torus), [], base)
    labels = {"sl2": "sl(2)", "osp12": "osp(1|2)", "sl11": "sl(1|1)"}
    return CatalogEntry(base, d, [(f"{base} structure constants", s, gm)],
                        notes=f"{base} with a one-dimensional root space", root_type=labels[base], ckm=True)


# Heisenberg data

def heisenberg(n, pi_variant="plain"):
    """he(n) or he(n)^Pi: root modules C_1 and its twisted dual, h a quotient of their tensor product."""
    if n < 0:
        raise ValueError("rank must be >= 0")
    if pi_variant not in ("plain", "Pi"):
        raise ValueError(f"unknown variant {pi_variant!r}")
    odd_names = [f"X{a + 1}" for a in range(n)]
    h0 = QuasitoralAlgebra(["c"], odd_names, {(a, a): [ONE] for a in range(n)})
    C1 = clifford_module(h0, [ONE])
    P = parity_shift(C1) if pi_variant == "Pi" else C1
    N = dual_twist(C1)
    M = tensor(P, N)
    odd_rad = [v for v in radical(M) if M.parities[next(iter(v))] == 1]
    S = submodule_closure(M, odd_rad)
    red = Reducer()
    for v in S:
        red.add(v)
    pivots = {p for _, p, _ in red.rows}
    keep = [k for k in range(M.dim) if k not in pivots]
    qeven = [k for k in keep if M.parities[k] == 0]
    qodd = [k for k in keep if M.parities[k] == 1]

    def project(v):
        w, _ = red.reduce(v)
        return w

    # t = c + Q_even, odd = X + Q_odd
    t_names = ["c"] + [f"q{k}" for k in qeven]
    o_names = odd_names + [f"Q{k}" for k in qodd]
    dt = len(t_names)
    tpos = {k: 1 + a for a, k in enumerate(qeven)}
    opos = {k: dt + n + a for a, k in enumerate(qodd)}
    dim = dt + len(o_names)

    def hvec(w):
        out = [ZERO] * dim
        for k, x in w.items():
            out[tpos[k] if k in tpos else opos[k]] = x
        return out

    br = {}
    for a in range(n):
        br[(a, a)] = [ONE] + [ZERO] * (dt - 1)
        for k in qodd:
            w = project(M.action[a].apply({k: ONE}))
            v = hvec(w)
            if any(v[dt:]):
                raise ArithmeticError("odd element of Q maps to an odd element")
            if any(v):
                br[(a, opos[k] - dt)] = v[:dt]
    for a in range(n):
        for k in qeven:
            if project(M.action[a].apply({k: ONE})):
                raise ArithmeticError("X does not kill the even part of the quotient")
    h = QuasitoralAlgebra(t_names, o_names, br)
    alpha = Weight([ONE] + [ZERO] * (dt - 1))
    extra = len(qodd)

    def extend(mod, lam):
        zero = Matrix.zero(mod.dim, mod.dim)
        return HModule(h, lam, mod.parities, list(mod.action) + [zero] * extra)

    Ph, Nh = extend(P, alpha), extend(N, -alpha)
    phi = {}
    for a in range(P.dim):
        for b in range(N.dim):
            v = hvec(project({a * N.dim + b: ONE}))
            if any(v):
                phi[(a, b)] = v
    name = f"he{n}" + ("-pi" if pi_variant == "Pi" else "")
    d = CartanDatum(h, [alpha], [Ph], [Nh], [phi], name)
    if n == 0:
        label = "he(0)^Pi" if pi_variant == "Pi" else "he(0)"
    elif n == 2 and pi_variant == "plain":
        label = SL11
    else:
        label = f"H_{n}"
    return CatalogEntry(name, d, [], notes=f"Heisenberg datum of rank {n}", root_type=label, ckm=True)


# data given by X, Y and coroots

def xy_datum(name, t_names, roots, kinds, X, Y, hvecs, cvecs):
    """Two or more rank-2 roots with [H_j, e_i] = x_ji E_i, [H_j, E_i] = y_ji e_i.

    hvecs, cvecs: t-coordinates of h_i and c_i.  [H_i, H_j] = x_ij c_j + y_ij h_j.
    Pairings follow the generator conventions: f = e^v, F = i E^v for sl2 type,
    f = i e^v, F = E^v otherwise.
    """
    n = len(roots)
    X = [[scalar(x) for x in r] for r in X]
    Y = [[scalar(y) for y in r] for r in Y]
    hvecs = [[scalar(x) for x in v] for v in hvecs]
    cvecs = [[scalar(x) for x in v] for v in cvecs]
    odd_names = [f"H{i + 1}" for i in range(n)]
    br = {}
    for i in range(n):
        for j in range(i, n):
            a = [X[i][j] * c + Y[i][j] * hh for c, hh in zip(cvecs[j], hvecs[j])]
            b = [X[j][i] * c + Y[j][i] * hh for c, hh in zip(cvecs[i], hvecs[i])]
            if i == j:
                a = [X[i][i] * x for x in cvecs[i]]
            elif a != b:
                raise ValueError(f"[H{i + 1}, H{j + 1}] is not symmetric")
            br[(i, j)] = a
    h = QuasitoralAlgebra(t_names, odd_names, br)
    dt = len(t_names)
    pos, neg, pairings = [], [], []
    for i in range(n):
        # basis: sl2 type (e even, E odd); otherwise (E even, e odd); index 0 even
        sl2 = kinds[i] == SL2
        ie, iE = (0, 1) if sl2 else (1, 0)
        action = []
        for j in range(n):
            ent = {(iE, ie): X[j][i], (ie, iE): Y[j][i]}
            action.append(Matrix(2, 2, ent))
        P = HModule(h, Weight(roots[i]), [0, 1], action)
        N = dual_twist(P)
        hv = hvecs[i] + [ZERO] * n
        cv = cvecs[i] + [ZERO] * n
        Hv = [ZERO] * dt + [ONE if k == i else ZERO for k in range(n)]
        # phi(x, y^v) in terms of the values on (e, f), (e, F), (E, f), (E, F)
        if sl2:
            vals = {(ie, ie): hv, (ie, iE): [-I * x for x in Hv],
                    (iE, ie): Hv, (iE, iE): [-I * x for x in cv]}
        else:
            vals = {(ie, ie): [-I * x for x in hv], (ie, iE): Hv,
                    (iE, ie): [-I * x for x in Hv], (iE, iE): cv}
        pos.append(P)
        neg.append(N)
        pairings.append({k: v for k, v in vals.items() if any(v)})
    return CartanDatum(h, roots, pos, neg, pairings, name)


def a22(s):
    """The two-root data q^+(2,2) (s = 1) and q^-(2,2) (s = -1)."""
    if s not in (1, -1):
        raise ValueError("s must be +1 or -1")
    y21, y12 = 1, s
    x12, x21 = (2, 2) if s == 1 else (1, 0)
    X = [[2, x12], [x21, 2]]
    Y = [[0, y12], [y21, 0]]
    A = [[2, -2, 0], [-2, 2, 1], [0, 1, 0]]     # rows h1, h2, h3; columns alpha_1, alpha_2, extra
    roots = [[A[k][0] for k in range(3)], [A[k][1] for k in range(3)]]
    h1, h2, h3 = [1, 0, 0], [0, 1, 0], [0, 0, 1]
    c1 = [x12 * y12 * x for x in h3]
    c2 = [Scalar(x21 * a + y21 * b - y12 * c) / x12 for a, b, c in zip(c1, h1, h2)]
    name = "a22+" if s == 1 else "a22-"
    d = xy_datum(name, ["h1", "h2", "h3"], roots, [SL2, SL2], X, Y, [h1, h2], [c1, c2])
    return CatalogEntry(name, d, [], notes=f"q^{'+' if s == 1 else '-'}(2,2) with x12 x21 = {x12 * x21}", ckm=True)


def x_coupled(case):
    """The three X-coupled two-root families: h1 = -h2, h1 = -2 h2 (sl2) and h1 = -2 h2 (osp)."""
    if case not in (1, 2, 3):
        raise ValueError("case must be 1, 2 or 3")
    t = ["h1", "c1", "c2", "d"]
    h1 = [1, 0, 0, 0]
    if case == 1:
        X, Y, k2, a21, kinds = [[2, 0], [0, 2]], [[0, -1], [1, 0]], -1, -2, [SL2, SL2]
    elif case == 2:
        X, Y, k2, a21, kinds = [[2, 0], [0, 2]], [[0, -2], [1, 0]], Scalar(-1) / 2, -4, [SL2, SL2]
    else:
        X, Y, k2, a21, kinds = [[2, 0], [0, 1]], [[0, -2], [1, 0]], Scalar(-1) / 2, -2, [SL2, OSP]
    h2 = [k2 * x for x in h1]
    roots = [[2, 0, 0, 0], [a21, 0, 0, 1]]
    d = xy_datum(f"xc{case}", t, roots, kinds, X, Y, [h1, h2], [[0, 1, 0, 0], [0, 0, 1, 0]])
    return CatalogEntry(f"xc{case}", d, [], notes=f"X-coupled pair, case {case}", ckm=True)


# odd affinization of psq(n)

def affine_psq(n=3):
    """The uncoupled A(n-1)^(1) datum inside the odd affinization of psq(n)."""
    base = psq_sca(n)
    L = odd_affinize(base, q_odd_form(base, n))
    ts = [f"A{k}{k}" for k in range(1, n + 1) if f"A{k}{k}" in base.names]
    odd = [f"H{k}" for k in range(1, n)]
    t_vecs = [L.loop(base.vec(x), 0) for x in ts] + [{L.D: ONE}]
    o_vecs = [L.loop(base.vec(x), 0) for x in odd] + [{L.K: ONE}]
    pos = [[L.loop(base.vec(f"A{n}1"), 1), L.loop(base.vec(f"B{n}1"), 1)]]
    neg = [[L.loop(base.vec(f"A1{n}"), -1), L.loop(base.vec(f"B1{n}"), -1)]]
    for k in range(1, n):
        pos.append([L.loop(base.vec(f"A{k}{k + 1}"), 0), L.loop(base.vec(f"B{k}{k + 1}"), 0)])
        neg.append([L.loop(base.vec(f"A{k + 1}{k}"), 0), L.loop(base.vec(f"B{k + 1}{k}"), 0)])
    name = f"affine-a{n - 1}"
    d, gm = datum_from_oracle(L, t_vecs, o_vecs, pos, neg, ts + ["d"], odd + ["K"], name)
    return CatalogEntry(name, d, [(f"odd affinization of psq({n})", L, gm)],
                        notes=f"A({n - 1})^(1) from psq({n}) (x) C[t, 1/t] + K + d", ckm=True)


# purely even reference data

def kac_moody_datum(A, name="km"):
    """Even datum of a generalized Cartan matrix: t = coroots h_i plus d_i with alpha_j(d_i) = delta_ij."""
    n = len(A)
    t = [f"h{i + 1}" for i in range(n)] + [f"d{i + 1}" for i in range(n)]
    h = QuasitoralAlgebra(t, [])
    roots, pos, neg, pairings = [], [], [], []
    for j in range(n):
        lam = Weight([A[i][j] for i in range(n)] + [1 if i == j else 0 for i in range(n)])
        roots.append(lam)
        pos.append(HModule(h, lam, [0], []))
        neg.append(HModule(h, -lam, [0], []))
        pairings.append({(0, 0): [ONE if k == j else ZERO for k in range(2 * n)]})
    return CartanDatum(h, roots, pos, neg, pairings, name)


def direct_sum(d1, d2, name=None):
    """Datum with h = h1 + h2 and the roots of both, acting trivially across."""
    h1, h2 = d1.h, d2.h
    t = [f"{x}'" for x in h1.t_names] + [f"{x}''" for x in h2.t_names]
    o = [f"{x}'" for x in h1.odd_names] + [f"{x}''" for x in h2.odd_names]
    t1, t2, o1, o2 = h1.dim_t, h2.dim_t, h1.dim_odd, h2.dim_odd
    br = {}
    for (a, b), v in h1.bracket_entries():
        br[(a, b)] = list(v) + [ZERO] * t2
    for (a, b), v in h2.bracket_entries():
        br[(o1 + a, o1 + b)] = [ZERO] * t1 + list(v)
    h = QuasitoralAlgebra(t, o, br)

    def embed_vec(v, first):
        ts, os_ = v[:(t1 if first else t2)], v[(t1 if first else t2):]
        if first:
            return list(ts) + [ZERO] * t2 + list(os_) + [ZERO] * o2
        return [ZERO] * t1 + list(ts) + [ZERO] * o1 + list(os_)

    roots, pos, neg, pairings = [], [], [], []
    for d, first in ((d1, True), (d2, False)):
        for i in range(d.n):
            lam = list(d.roots[i].coords)
            lam = lam + [ZERO] * t2 if first else [ZERO] * t1 + lam
            lam = Weight(lam)
            mods = []
            for M, w in ((d.pos[i], lam), (d.neg[i], -lam)):
                zero = Matrix.zero(M.dim, M.dim)
                acts = (list(M.action) + [zero] * o2) if first else ([zero] * o1 + list(M.action))
                mods.append(HModule(h, w, M.parities, acts))
            roots.append(lam)
            pos.append(mods[0])
            neg.append(mods[1])
            pairings.append({k: embed_vec(v, first) for k, v in d.pairings[i].items()})
    return CartanDatum(h, roots, pos, neg, pairings, name or f"{d1.name}+{d2.name}")


# registry

def _registry():
    reg = {}
    for n in (2, 3, 4):
        for v in ("q", "sq", "psq"):
            reg[f"{v}{n}"] = (lambda n=n, v=v: q_family(n, v))
    for base in ("sl2", "osp12", "sl11", "sl3"):
        for v in ("T", "t", "pt"):
            reg[f"takiff-{base}-{v}"] = (lambda b=base, v=v: takiff(b, v))
    for base in ("sl2", "osp12", "sl11"):
        reg[base] = (lambda b=base: one_root(b))
    for n in range(0, 4):
        reg[f"he{n}"] = (lambda n=n: heisenberg(n, "plain"))
        reg[f"he{n}-pi"] = (lambda n=n: heisenberg(n, "Pi"))
    reg["a22+"] = lambda: a22(1)
    reg["a22-"] = lambda: a22(-1)
    for c in (1, 2, 3):
        reg[f"xc{c}"] = (lambda c=c: x_coupled(c))
    reg["affine-a2"] = lambda: affine_psq(3)
    return reg


REGISTRY = _registry()


def names():
    return list(REGISTRY)


def get(name):
    try:
        return REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}") from None


ONE_ROOT_ENTRIES = ["sl2", "osp12", "sl11", "he0", "he0-pi",
                    "takiff-sl2-t", "takiff-sl2-pt", "takiff-osp12-t", "takiff-osp12-pt",
                    "takiff-sl11-t", "takiff-sl11-pt", "he1", "he2-pi", "he3"]
