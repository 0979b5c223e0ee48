"""Cartan data, their validation, canonical generators and derived invariants."""
from __future__ import annotations

from .exact_core import Scalar, ZERO, ONE, I, scalar, adjoin_sqrt, Matrix, rank, span_basis, Reducer
from .quasitoral import (Weight, HModule, dual_twist, find_isomorphism, hom_image,
                         pairing_kernels, weight_rank)

SL2, OSP, SL11 = "Tak(sl(2))", "Tak(osp(1|2))", "Tak(sl(1|1))"
MARKERS = {SL2: "<>", OSP: "<#>", SL11: "<x>"}


class CartanDatum:
    """h, simple weights, root modules g_{+a_i}, g_{-a_i} and pairings.

    pairings[i] maps (a, b) -> h-vector: the bracket [v_a, w_b] of the a-th
    basis vector of g_{a_i} with the b-th basis vector of g_{-a_i}.
    """

    def __init__(self, h, roots, pos, neg, pairings, name=""):
        self.h = h
        self.roots = [r if isinstance(r, Weight) else Weight(r) for r in roots]
        self.pos = list(pos)
        self.neg = list(neg)
        self.pairings = [{k: [scalar(x) for x in v] for k, v in p.items()} for p in pairings]
        self.name = name

    @property
    def n(self):
        return len(self.roots)

    def module(self, i, sign):
        return self.pos[i] if sign > 0 else self.neg[i]

    def pair(self, i, x, y):
        """[x, y] for x in g_{a_i}, y in g_{-a_i} given as sparse dicts."""
        out = [ZERO] * self.h.dim
        for a, xa in x.items():
            for b, yb in y.items():
                v = self.pairings[i].get((a, b))
                if v is None:
                    continue
                c = xa * yb
                for k, z in enumerate(v):
                    if z:
                        out[k] = out[k] + c * z
        return out

    def coroot_space(self, i):
        vecs = [{k: x for k, x in enumerate(v) if x} for v in self.pairings[i].values()]
        keep = span_basis(vecs)
        return [vecs[k] for k in keep]

    def subdatum(self, indices, name=None):
        indices = list(indices)
        return CartanDatum(self.h, [self.roots[i] for i in indices], [self.pos[i] for i in indices],
                           [self.neg[i] for i in indices], [self.pairings[i] for i in indices],
                           name or f"{self.name}{indices}")

    def __repr__(self):
        return f"CartanDatum({self.name!r}, n={self.n}, h=({self.h.dim_t}|{self.h.dim_odd}))"


def _hvec(v, dim):
    out = [ZERO] * dim
    for k, x in v.items():
        out[k] = x
    return out


def _sparse(v):
    return {k: x for k, x in enumerate(v) if x}


def weights_independent(roots):
    if not roots:
        return True
    M = Matrix.from_rows([list(r.coords) for r in roots])
    return rank(M) == len(roots)


class ValidationReport:
    def __init__(self):
        self.failures = []

    def fail(self, axiom, msg):
        self.failures.append((axiom, msg))

    @property
    def ok(self):
        return not self.failures

    def __repr__(self):
        return "ValidationReport(ok)" if self.ok else f"ValidationReport({self.failures})"


def equivariance_defects(d, i):
    """Triples (c, a, b) where phi_i(X a (x) b) + (-1)^{|a|} phi_i(a (x) X b) != [X, phi_i(a (x) b)]."""
    h, P, N, phi = d.h, d.pos[i], d.neg[i], d.pairings[i]
    bad = []
    for c in range(h.dim_odd):
        for a in range(P.dim):
            for b in range(N.dim):
                lhs = d.pair(i, P.action[c].apply({a: ONE}), {b: ONE})
                rhs2 = d.pair(i, {a: ONE}, N.action[c].apply({b: ONE}))
                sg = -1 if P.parities[a] else 1
                lhs = [x + y * sg for x, y in zip(lhs, rhs2)]
                rhs = h.ad_odd(c, phi.get((a, b), h.zero()))
                if lhs != rhs:
                    bad.append((c, a, b))
    return bad


def validate(d):
    rep = ValidationReport()
    h = d.h
    if not h.is_symmetric():
        rep.fail("quasitoral", "odd bracket table is not symmetric")
    for r in d.roots:
        if len(r) != h.dim_t:
            rep.fail("shape", f"weight {r} has wrong length")
    if not weights_independent(d.roots):
        rep.fail("independence", "simple weights are linearly dependent")
    if not (len(d.pos) == len(d.neg) == len(d.pairings) == d.n):
        rep.fail("shape", "one module pair and pairing per simple root required")
        return rep
    for i in range(d.n):
        for sign, M in ((1, d.pos[i]), (-1, d.neg[i])):
            tag = f"g_{'+' if sign > 0 else '-'}{i}"
            if M.algebra is not h and M.algebra.dim != h.dim:
                rep.fail("shape", f"{tag} lives over a different h")
                continue
            want = d.roots[i] if sign > 0 else -d.roots[i]
            if M.weight != want:
                rep.fail("weight", f"{tag} has weight {M.weight}, expected {want}")
            if M.clifford_defects():
                rep.fail("clifford", f"{tag} violates the Clifford relation at {M.clifford_defects()[:3]}")
            if M.parity_defects():
                rep.fail("parity", f"{tag} odd action preserves parity at {M.parity_defects()[:3]}")
        P, N = d.pos[i], d.neg[i]
        for (a, b), v in d.pairings[i].items():
            if not (0 <= a < P.dim and 0 <= b < N.dim) or len(v) != h.dim:
                rep.fail("shape", f"pairing {i} has a bad entry at {(a, b)}")
                return rep
            p = (P.parities[a] + N.parities[b]) % 2
            if any(x for k, x in enumerate(v) if h.parity(k) != p):
                rep.fail("parity", f"pairing {i} is not even at {(a, b)}")
        bad = equivariance_defects(d, i)
        if bad:
            rep.fail("equivariance", f"pairing {i} is not h-equivariant at {bad[:3]}")
        phi = d.pairings[i]
        if not any(any(v) for v in phi.values()):
            rep.fail("nondegeneracy", f"pairing {i} is zero")
        else:
            left, right = pairing_kernels(phi, P, N, h)
            if left or right:
                rep.fail("nondegeneracy", f"pairing {i} has a nonzero kernel submodule")
    return rep


# root types and generators

class RootGenerators:
    def __init__(self, kind, e, E, f, F, h, c, H, e_parity):
        self.kind = kind
        self.e, self.E, self.f, self.F = e, E, f, F
        self.h, self.c, self.H = h, c, H
        self.e_parity = e_parity

    def __repr__(self):
        return f"RootGenerators({self.kind})"


class QkmGenerators:
    def __init__(self, datum, roots):
        self.datum = datum
        self.roots = roots

    @property
    def types(self):
        return [r.kind for r in self.roots]

    def __getitem__(self, i):
        return self.roots[i]

    def __len__(self):
        return len(self.roots)


class GeneratorError(ValueError):
    pass


def _basis_by_parity(M):
    ev = [k for k in range(M.dim) if M.parities[k] == 0]
    od = [k for k in range(M.dim) if M.parities[k] == 1]
    return ev, od


def _dual_iso(d, i):
    P, N = d.pos[i], d.neg[i]
    return find_isomorphism(dual_twist(P), N)


def _vscale(v, c):
    return {k: x * c for k, x in v.items()} if c else {}


def _hscale(v, c):
    return [x * c for x in v]


def root_generators(d, i):
    """Pure generators of one rank-2 simple root (before cross-root rescaling)."""
    h = d.h
    P, N = d.pos[i], d.neg[i]
    lam = d.roots[i]
    if P.sdim() != (1, 1) or N.sdim() != (1, 1):
        raise GeneratorError(f"root {i}: modules must have superdimension (1|1)")
    T = _dual_iso(d, i)
    if T is None:
        raise GeneratorError(f"root {i}: g_- is not isomorphic to the dual of g_+")
    (k0,), (k1,) = _basis_by_parity(P)
    v0, v1 = {k0: ONE}, {k1: ONE}
    w0, w1 = T.apply(v0), T.apply(v1)
    a0 = lam(d.pair(i, v0, w0)[:h.dim_t])
    a1 = lam(d.pair(i, v1, w1)[:h.dim_t])
    if a0 and a1:
        raise GeneratorError(f"root {i}: both pure even coroots act nontrivially")
    if a0:
        kind, e, E, ep = SL2, v0, v1, 0
        f0, F0 = T.apply(e), _vscale(T.apply(E), I)
        target = Scalar(2)
    else:
        kind = OSP if a1 else SL11
        e, E, ep = v1, v0, 1
        f0, F0 = _vscale(T.apply(e), I), T.apply(E)
        target = Scalar(1)
    h0 = d.pair(i, e, f0)
    if kind == SL11:
        nz = [x for x in h0 if x]
        if not nz:
            raise GeneratorError(f"root {i}: [e, f] vanishes")
        mu = nz[0].inverse()
    else:
        mu = target / lam(h0[:h.dim_t])
    f, F = _vscale(f0, mu), _vscale(F0, mu)
    hh = d.pair(i, e, f)
    c = d.pair(i, E, F)
    H = d.pair(i, E, f)
    H2 = d.pair(i, e, F)
    if H != H2:
        raise GeneratorError(f"root {i}: [E, f] != [e, F]")
    if not any(H):
        raise GeneratorError(f"root {i}: odd coroot H vanishes")
    return RootGenerators(kind, e, E, f, F, hh, c, H, ep)


def _proportion(w, v):
    """Scalar x with w = x v (v nonzero), or raise."""
    if not w:
        return ZERO
    k = next(iter(v))
    x = w.get(k, ZERO) / v[k]
    if {kk: y * x for kk, y in v.items()} != w:
        raise GeneratorError("image is not proportional to the expected generator")
    return x


def raw_xy(d, gens):
    n = d.n
    X = [[ZERO] * n for _ in range(n)]
    Y = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        P = d.pos[i]
        gi = gens[i]
        for j in range(n):
            Hj = gens[j].H
            A = P.act(Hj)
            X[j][i] = _proportion(A.apply(gi.e), gi.E)
            Y[j][i] = _proportion(A.apply(gi.E), gi.e)
    return X, Y


def cartan_matrix(d, gens):
    dt = d.h.dim_t
    return [[d.roots[j](gens[i].h[:dt]) for j in range(d.n)] for i in range(d.n)]


def _connected(A, i, j):
    return bool(A[i][j] * A[j][i])


def _canonical_scales(X, Y, A):
    """Scale factors for E_i fixing the rescaling freedom (see module docs)."""
    n = len(A)
    kappa = [None] * n
    expo = [0] * n
    seen = [False] * n
    tree = set()
    order = []
    for root in range(n):
        if seen[root]:
            continue
        kappa[root], expo[root] = ONE, 1
        seen[root] = True
        stack = [root]
        comp = [root]
        while stack:
            p = stack.pop()
            for c in range(n):
                if c == p or seen[c] or not _connected(A, p, c):
                    continue
                if Y[c][p]:
                    kappa[c] = (kappa[p] * Y[c][p]).inverse()
                    expo[c] = -expo[p]
                elif X[p][c]:
                    kappa[c] = kappa[p] * X[p][c] / A[p][c]
                    expo[c] = expo[p]
                else:
                    kappa[c], expo[c] = ONE, 1
                seen[c] = True
                tree.add((min(p, c), max(p, c)))
                stack.append(c)
                comp.append(c)
        order.append(comp)
    lam = list(kappa)
    for comp in order:
        t = None
        for a in comp:
            for b in comp:
                if a >= b or (a, b) in tree or not _connected(A, a, b):
                    continue
                if Y[a][b] and expo[a] + expo[b]:
                    e = expo[a] + expo[b]
                    base = kappa[a] * kappa[b] * Y[a][b]
                    t2 = base.inverse() if e > 0 else base
                    t = adjoin_sqrt(t2)
                    break
            if t is not None:
                break
        if t is not None:
            for a in comp:
                lam[a] = kappa[a] * (t if expo[a] > 0 else t.inverse())
    return lam


class XYMatrices:
    def __init__(self, X, Y, A, types):
        self.X, self.Y, self.A = X, Y, A
        self.types = types

    @property
    def n(self):
        return len(self.A)

    def as_text(self):
        def fmt(M):
            return "[" + "; ".join(", ".join(str(x) for x in row) for row in M) + "]"
        return f"X = {fmt(self.X)}\nY = {fmt(self.Y)}\nA = {fmt(self.A)}"


def rescale(gens, lam, signs=None):
    """Rescale E_i, F_i by lam_i and (e_i, f_i) by signs_i."""
    out = []
    for i, g in enumerate(gens.roots):
        l = scalar(lam[i])
        s = scalar(signs[i]) if signs else ONE
        out.append(RootGenerators(g.kind, _vscale(g.e, s), _vscale(g.E, l), _vscale(g.f, s),
                                  _vscale(g.F, l), g.h, _hscale(g.c, l * l),
                                  _hscale(g.H, l * s), g.e_parity))
    return QkmGenerators(gens.datum, out)


def canonical_generators(d, canonical=True):
    gens = QkmGenerators(d, [root_generators(d, i) for i in range(d.n)])
    if not canonical or d.n < 2:
        return gens
    X, Y = raw_xy(d, gens)
    A = cartan_matrix(d, gens)
    lam = _canonical_scales(X, Y, A)
    return rescale(gens, lam)


def xy_matrices(gens, check=True):
    d = gens.datum
    X, Y = raw_xy(d, gens)
    A = cartan_matrix(d, gens)
    m = XYMatrices(X, Y, A, gens.types)
    if check:
        bad = formula_defects(gens, m)
        if bad:
            raise GeneratorError("formula identities violated: " + "; ".join(bad[:5]))
    return m


def formula_defects(gens, m):
    """Violations of the qKM structure identities on generators and X, Y."""
    d = gens.datum
    h, dt, n = d.h, d.h.dim_t, d.n
    X, Y, A = m.X, m.Y, m.A
    bad = []
    expect = {SL2: 2, OSP: 1, SL11: 0}
    for i in range(n):
        g = gens[i]
        if Y[i][i]:
            bad.append(f"y_{i}{i} != 0")
        if X[i][i] != A[i][i] or A[i][i] != expect[g.kind]:
            bad.append(f"x_{i}{i} = {X[i][i]}, a_{i}{i} = {A[i][i]} for {g.kind}")
        # identity (1) with i = j: [H_i, H_i] = x_ii c_i
        if h.bracket(g.H, g.H) != _hscale(g.c, expect[g.kind]):
            bad.append(f"[H_{i}, H_{i}] != x_{i}{i} c_{i} for {g.kind}")
        if d.roots[i](g.c[:dt]):
            bad.append(f"alpha_{i}(c_{i}) != 0")
    for i in range(n):
        for j in range(n):
            gi, gj = gens[i], gens[j]
            br = h.bracket(gi.H, gj.H)
            one = [X[i][j] * a + Y[i][j] * b for a, b in zip(gj.c, gj.h)]
            two = [X[j][i] * a + Y[j][i] * b for a, b in zip(gi.c, gi.h)]
            if br != one or br != two:
                bad.append(f"[H_{i}, H_{j}] identity (1) fails")
            for k in range(n):
                if d.roots[k](br[:dt]) != X[i][k] * Y[j][k] + X[j][k] * Y[i][k]:
                    bad.append(f"identity (2) fails at ({i}, {j}, {k})")
            if d.roots[i](br[:dt]) != Y[j][i] * A[i][i]:
                bad.append(f"identity (5) fails at ({i}, {j})")
            if i != j and gi.kind in (SL2, OSP) and gj.kind in (SL2, OSP):
                # alpha_i applied to identity (1), with alpha_i(c_j) = 2 x_ji y_ji / x_jj
                aicj = 2 * X[j][i] * Y[j][i] / X[j][j]
                if X[i][j] * aicj + Y[i][j] * A[j][i] != Y[j][i] * A[i][i]:
                    bad.append(f"nontrivial relation (a) fails at ({i}, {j})")
                lhs = Y[i][j] * Y[j][i] * (A[i][i] - A[j][j])
                rhs = Y[i][j] * Y[i][j] * A[j][i] - Y[j][i] * Y[j][i] * A[i][j]
                if lhs != rhs:
                    bad.append(f"nontrivial relation (b) fails at ({i}, {j})")
            if i != j and not Y[i][j] and Y[j][i]:
                bad.append(f"y_{i}{j} = 0 but y_{j}{i} != 0")
    return bad


# coupling

NOT_CONNECTED, X_COUPLED, Y_COUPLED, UNCOUPLED = "not-connected", "X-coupled", "Y-coupled", "uncoupled"


class CouplingReport:
    def __init__(self, pairs, tag, violations):
        self.pairs = pairs      # {(i, j): class}
        self.tag = tag
        self.violations = violations

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        return f"CouplingReport({self.tag}, {self.pairs}, violations={self.violations})"


def classify_pair(m, gens, i, j):
    X, Y, A = m.X, m.Y, m.A
    d = gens.datum
    dt = d.h.dim_t
    if not (A[i][j] * A[j][i]):
        return NOT_CONNECTED
    coupled = not d.roots[i](gens[j].c[:dt]) and not d.roots[j](gens[i].c[:dt])
    if not coupled:
        return UNCOUPLED
    if not X[i][j] and not X[j][i]:
        return X_COUPLED
    if not Y[i][j] and not Y[j][i]:
        return Y_COUPLED
    return "inconsistent"


def coupling_report(m, gens):
    n = m.n
    X, Y, A = m.X, m.Y, m.A
    pairs, viol = {}, []
    types = gens.types
    for i in range(n):
        for j in range(i + 1, n):
            cls = classify_pair(m, gens, i, j)
            pairs[(i, j)] = cls
            w = f"pair ({i}, {j}) [{types[i]}, {types[j]}]"
            if cls == NOT_CONNECTED:
                if X[i][j] or Y[i][j] or X[j][i] or Y[j][i]:
                    viol.append(f"{w}: not connected but x/y entries nonzero")
                continue
            if not ((X[i][j] or Y[i][j]) and (X[j][i] or Y[j][i])):
                viol.append(f"{w}: connected but x_ij, y_ij both zero")
            if bool(Y[i][j]) != bool(Y[j][i]):
                viol.append(f"{w}: y_ij = 0 exactly one way")
            if cls == "inconsistent":
                viol.append(f"{w}: coupled but neither X- nor Y-coupled")
            elif cls == X_COUPLED:
                ti, tj = types[i], types[j]
                if (ti, tj) == (SL2, SL2):
                    if A[i][j] * A[j][i] != 4:
                        viol.append(f"{w}: X-coupled with a_ij a_ji = {A[i][j] * A[j][i]}")
                elif {ti, tj} == {SL2, OSP}:
                    s, o = (i, j) if ti == SL2 else (j, i)
                    if A[s][o] != -2 or A[o][s] != -1:
                        viol.append(f"{w}: X-coupled sl/osp pair with labels ({A[s][o]}, {A[o][s]})")
                else:
                    viol.append(f"{w}: X-coupled pair of types {ti}, {tj}")
            elif cls == UNCOUPLED:
                if types[i] != SL2 or types[j] != SL2:
                    viol.append(f"{w}: uncoupled but not both {SL2}")
                if not (Y[i][j] * Y[j][i]):
                    viol.append(f"{w}: uncoupled with y_ij y_ji = 0")
            if SL11 in (types[i], types[j]) and cls != Y_COUPLED:
                viol.append(f"{w}: a {SL11} root must be Y-coupled")
    classes = {c for c in pairs.values() if c != NOT_CONNECTED}
    if n == 1:
        tag = "single-root"
    elif not classes:
        tag = "disconnected"
    elif all(not X[i][j] for i in range(n) for j in range(n) if i != j) and classes == {X_COUPLED}:
        tag = "completely X-coupled"
    elif all(not y for row in Y for y in row):
        tag = "completely Y-coupled"
    elif classes == {UNCOUPLED}:
        tag = "completely uncoupled"
    else:
        tag = "mixed"
    return CouplingReport(pairs, tag, viol)


# diagrams

class DynkinDiagram:
    def __init__(self, markers, edges, A):
        self.markers = markers
        self.edges = edges      # {(i, j): (a_ij, a_ji)} for i < j
        self.A = A

    def text(self):
        parts = [" ".join(f"{i}:{m}" for i, m in enumerate(self.markers))]
        for (i, j), (a, b) in sorted(self.edges.items()):
            parts.append(f"{i}-{j} ({a}, {b})")
        return " ; ".join(parts)

    def __repr__(self):
        return f"DynkinDiagram({self.text()})"


def dynkin(d, gens=None):
    gens = gens or canonical_generators(d)
    A = cartan_matrix(d, gens)
    n = d.n
    marks = []
    for i in range(n):
        a = A[i][i]
        marks.append({2: "<>", 1: "<#>", 0: "<x>"}.get(int(a.rational()) if a.is_rational() else None, "<?>"))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if A[i][j] * A[j][i]:
                edges[(i, j)] = (A[i][j], A[j][i])
    return DynkinDiagram(marks, edges, A)


def theta(D):
    """Plain Kac-Moody diagram: diamonds become circles (white, black, crossed)."""
    circ = {"<>": "()", "<#>": "(#)", "<x>": "(x)"}
    return {"vertices": [circ.get(m, "(?)") for m in D.markers], "edges": dict(D.edges),
            "cartan": [row[:] for row in D.A]}


# qKM axioms

def _acts_trivially(M, hvecs):
    return all(M.act(_hvec(v, M.algebra.dim)).is_zero() for v in hvecs)


def _contained(sub, space):
    red = Reducer()
    for v in space:
        red.add(v)
    return all(red.contains(v) for v in sub)


def is_qkm(d):
    """Axiom report {name: (ok, detail)}; KM1 is deferred to the built algebra."""
    rep = {}
    n = d.n
    cor = [d.coroot_space(i) for i in range(n)]
    bad = []
    for a in range(n):
        for b in range(n):
            if a != b and _acts_trivially(d.pos[b], cor[a]) and not _acts_trivially(d.pos[a], cor[b]):
                bad.append((a, b))
    rep["KM1"] = (None, "integrability is checked on the built algebra")
    rep["KM2"] = (not bad, f"irregular pairs {bad}" if bad else "regular")
    ranks = [weight_rank(d.h, r) for r in d.roots]
    rep["KM3"] = (all(r == 2 for r in ranks), f"ranks {ranks}")
    km4 = []
    for i in range(n):
        if not d.pos[i].is_irreducible():
            km4.append(f"g_{i} reducible ({d.pos[i].sdim()})")
        elif not d.neg[i].is_irreducible() or _dual_iso(d, i) is None:
            km4.append(f"g_-{i} not isomorphic to the dual of g_{i}")
    rep["KM4"] = (not km4, "; ".join(km4) if km4 else "irreducible, dual-compatible")
    km5 = []
    for i in range(n):
        others = [v for j in range(n) if j != i for v in cor[j]]
        if _contained(cor[i], others):
            km5.append(i)
    rep["KM5"] = (not km5, f"coroot spaces contained in the others: {km5}" if km5 else "independent")
    return rep


def qkm_ok(rep):
    return all(ok is not False for ok, _ in rep.values())


def odd_coroots_independent(gens):
    vecs = [_sparse(g.H) for g in gens.roots]
    return len(span_basis(vecs)) == len(vecs)
