"""Concrete Lie superalgebras given by structure constants, used as oracles.

SCA is a finite-dimensional superalgebra on basis indices 0..n-1.  Vectors are
sparse dicts {index: Scalar}.  LoopOracle is the (infinite) odd affinization of
a finite SCA; its basis keys are tuples (m, b) for x_b t^m plus K and d.
"""
from __future__ import annotations

import itertools

from ..exact_core import Scalar, ZERO, ONE, scalar, Matrix, kernel_basis, Reducer, vadd, vscale


def _sign(k):
    return -1 if k % 2 else 1


class SCA:
    def __init__(self, names, parities, table):
        self.names = list(names)
        self.parities = list(parities)
        self.table = {}
        for (i, j), v in table.items():
            v = {k: scalar(x) for k, x in v.items() if scalar(x)}
            if v:
                self.table[(i, j)] = v
        # fill the opposite order by super antisymmetry
        for (i, j), v in list(self.table.items()):
            if (j, i) not in self.table:
                s = -_sign(self.parities[i] * self.parities[j])
                self.table[(j, i)] = {k: x * s for k, x in v.items()}

    @property
    def dim(self):
        return len(self.names)

    def index(self, name):
        return self.names.index(name)

    def vec(self, *terms):
        """Build a vector from (coefficient, name) pairs or bare names."""
        out = {}
        for t in terms:
            c, nm = (ONE, t) if isinstance(t, str) else (scalar(t[0]), t[1])
            out = vadd(out, {self.index(nm): ONE}, c)
        return out

    def parity(self, key):
        return self.parities[key]

    def parity_of(self, v):
        ps = {self.parities[k] for k in v}
        if len(ps) > 1:
            raise ValueError("inhomogeneous vector")
        return ps.pop() if ps else 0

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, u, v):
        out = {}
        for i, x in u.items():
            for j, y in v.items():
                b = self.table.get((i, j))
                if b:
                    out = vadd(out, b, x * y)
        return out

    def antisymmetry_defects(self):
        bad = []
        for i in range(self.dim):
            for j in range(self.dim):
                a = self.bracket_basis(i, j)
                b = vscale(self.bracket_basis(j, i), -_sign(self.parities[i] * self.parities[j]))
                if a != b:
                    bad.append((i, j))
        return bad

    def jacobi_defects(self, limit=None):
        """Triples (x, y, z) with [x,[y,z]] != [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]."""
        bad = []
        n = self.dim
        for i, j, k in itertools.product(range(n), repeat=3):
            x, y, z = {i: ONE}, {j: ONE}, {k: ONE}
            lhs = self.bracket(x, self.bracket(y, z))
            rhs = vadd(self.bracket(self.bracket(x, y), z),
                       self.bracket(y, self.bracket(x, z)),
                       Scalar(_sign(self.parities[i] * self.parities[j])))
            if lhs != rhs:
                bad.append((i, j, k))
                if limit and len(bad) >= limit:
                    break
        return bad

    def subalgebra(self, vectors, names=None):
        """Subalgebra spanned by homogeneous vectors (must be closed)."""
        red = Reducer()
        for v in vectors:
            if not red.add(v):
                raise ValueError("dependent vectors")
        table = {}
        for a, u in enumerate(vectors):
            for b, v in enumerate(vectors):
                w = self.bracket(u, v)
                if w:
                    c = red.express(w)
                    if c is None:
                        raise ValueError(f"span not closed: [{a}, {b}]")
                    table[(a, b)] = c
        names = names or [f"v{a}" for a in range(len(vectors))]
        return SCA(names, [self.parity_of(v) for v in vectors], table), vectors

    def quotient(self, ideal):
        """Quotient by the span of the given vectors (must be an ideal).

        Returns (SCA, projection) where projection maps old vectors to new ones.
        """
        red = Reducer()
        for v in ideal:
            red.add(v)
        pivots = {p for _, p, _ in red.rows}
        keep = [k for k in range(self.dim) if k not in pivots]
        pos = {k: a for a, k in enumerate(keep)}

        def project(v):
            w, _ = red.reduce(v)
            return {pos[k]: x for k, x in w.items()}

        table = {}
        for a, i in enumerate(keep):
            for b, j in enumerate(keep):
                w = project(self.bracket_basis(i, j))
                if w:
                    table[(a, b)] = w
        q = SCA([self.names[k] for k in keep], [self.parities[k] for k in keep], table)
        for v in ideal:
            for k in range(self.dim):
                if project(self.bracket({k: ONE}, v)):
                    raise ValueError("span is not an ideal")
        return q, project

    def __repr__(self):
        ev = self.parities.count(0)
        return f"SCA(dim=({ev}|{self.dim - ev}))"


def invariant_forms(sca, parity=0):
    """Basis of supersymmetric invariant bilinear forms of the given parity, as dicts (i, j) -> Scalar."""
    n = sca.dim
    unknowns = [(i, j) for i in range(n) for j in range(i, n)
                if (sca.parities[i] + sca.parities[j]) % 2 == parity]
    col = {u: k for k, u in enumerate(unknowns)}

    def var(i, j):
        # (x_i, x_j) in terms of the stored unknown, with the supersymmetry sign
        if (sca.parities[i] + sca.parities[j]) % 2 != parity:
            return None
        if i <= j:
            return col[(i, j)], ONE
        return col[(j, i)], Scalar(_sign(sca.parities[i] * sca.parities[j]))

    rows = {}
    r = 0
    for i, j, k in itertools.product(range(n), repeat=3):
        # ([x_i, x_j], x_k) - (x_i, [x_j, x_k]) = 0
        eq = {}
        for m, c in sca.bracket_basis(i, j).items():
            v = var(m, k)
            if v:
                eq[v[0]] = eq.get(v[0], ZERO) + c * v[1]
        for m, c in sca.bracket_basis(j, k).items():
            v = var(i, m)
            if v:
                eq[v[0]] = eq.get(v[0], ZERO) - c * v[1]
        eq = {a: x for a, x in eq.items() if x}
        if eq:
            for a, x in eq.items():
                rows[(r, a)] = x
            r += 1
    M = Matrix(max(r, 1), len(unknowns), rows)
    out = []
    for v in kernel_basis(M):
        form = {}
        for i in range(n):
            for j in range(n):
                t = var(i, j)
                if t and v[t[0]]:
                    form[(i, j)] = v[t[0]] * t[1]
        out.append(form)
    return out


def form_value(form, u, v):
    s = ZERO
    for i, x in u.items():
        for j, y in v.items():
            f = form.get((i, j))
            if f is not None:
                s = s + f * x * y
    return s


def form_defects(sca, form, parity):
    """Witnesses against invariance, supersymmetry or the claimed parity."""
    bad = []
    n = sca.dim
    for (i, j), x in form.items():
        if (sca.parities[i] + sca.parities[j]) % 2 != parity:
            bad.append(("parity", i, j))
        if form.get((j, i), ZERO) != x * _sign(sca.parities[i] * sca.parities[j]):
            bad.append(("supersymmetry", i, j))
    for i, j, k in itertools.product(range(n), repeat=3):
        lhs = form_value(form, sca.bracket_basis(i, j), {k: ONE})
        rhs = form_value(form, {i: ONE}, sca.bracket_basis(j, k))
        if lhs != rhs:
            bad.append(("invariance", i, j, k))
    return bad


# matrix superalgebras

def _mat_mul(a, b):
    out = {}
    for (i, k), x in a.items():
        for (k2, j), y in b.items():
            if k == k2:
                out[(i, j)] = out.get((i, j), ZERO) + x * y
    return {k: x for k, x in out.items() if x}


def _mat_parity(m, row_par):
    ps = {(row_par[i] + row_par[j]) % 2 for (i, j) in m}
    if len(ps) > 1:
        raise ValueError("inhomogeneous matrix")
    return ps.pop() if ps else 0


def matrix_sca(names, mats, row_par):
    """SCA spanned by homogeneous matrices (sparse dicts) in gl(m|n), with supercommutator."""
    pars = [_mat_parity(m, row_par) for m in mats]
    keys = sorted({k for m in mats for k in m})
    keyidx = {k: a for a, k in enumerate(keys)}
    red = Reducer()
    for m in mats:
        if not red.add({keyidx[k]: x for k, x in m.items()}):
            raise ValueError("dependent matrices")
    table = {}
    for a, x in enumerate(mats):
        for b, y in enumerate(mats):
            xy, yx = _mat_mul(x, y), _mat_mul(y, x)
            s = -_sign(pars[a] * pars[b])
            w = dict(xy)
            for k, v in yx.items():
                w[k] = w.get(k, ZERO) + v * s
            w = {k: v for k, v in w.items() if v}
            if not w:
                continue
            if any(k not in keyidx for k in w):
                raise ValueError("span not closed")
            c = red.express({keyidx[k]: v for k, v in w.items()})
            if c is None:
                raise ValueError("span not closed")
            table[(a, b)] = c
    return SCA(names, pars, table), mats


def supertrace_form(mats, row_par, scale=1):
    form = {}
    for a, x in enumerate(mats):
        for b, y in enumerate(mats):
            p = _mat_mul(x, y)
            s = ZERO
            for (i, j), v in p.items():
                if i == j:
                    s = s + (v if row_par[i] == 0 else -v)
            if s:
                form[(a, b)] = s * scale
    return form


def unit(i, j, c=1):
    return {(i, j): scalar(c)}


def madd(*ms):
    out = {}
    for m in ms:
        for k, x in m.items():
            out[k] = out.get(k, ZERO) + x
    return {k: x for k, x in out.items() if x}


def mscale(m, c):
    return {k: x * scalar(c) for k, x in m.items()}


# base algebras of the Takiff construction

class BaseAlgebra:
    """A small Kac-Moody superalgebra with torus, simple root vectors and an even invariant form."""

    def __init__(self, name, sca, torus, pos, neg, form):
        self.name = name
        self.sca = sca
        self.torus = torus          # names of a torus basis
        self.pos = pos              # names of simple root vectors e_i
        self.neg = neg              # names of f_i
        self.form = form            # dict (i, j) -> Scalar


def base_sl2():
    sca = SCA(["e", "h", "f"], [0, 0, 0],
              {(1, 0): {0: 2}, (1, 2): {2: -2}, (0, 2): {1: 1}})
    # twice the trace form: (e, f) = 2, (h, h) = 4
    form = {(0, 2): Scalar(2), (2, 0): Scalar(2), (1, 1): Scalar(4)}
    return BaseAlgebra("sl2", sca, ["h"], ["e"], ["f"], form)


def base_osp12():
    names = ["h", "e", "f", "x", "y"]
    ix = {n: k for k, n in enumerate(names)}

    def t(a, b, *terms):
        return ((ix[a], ix[b]), {ix[n]: c for c, n in terms})

    table = dict([
        t("h", "e", (2, "e")), t("h", "f", (-2, "f")), t("e", "f", (1, "h")),
        t("h", "x", (1, "x")), t("h", "y", (-1, "y")), t("e", "y", (-1, "x")),
        t("f", "x", (-1, "y")), t("x", "x", (2, "e")), t("y", "y", (-2, "f")),
        t("x", "y", (1, "h")),
    ])
    sca = SCA(names, [0, 0, 0, 1, 1], table)
    forms = invariant_forms(sca, 0)
    if len(forms) != 1:
        raise ArithmeticError("osp(1|2) should carry a unique invariant form")
    f = forms[0]
    # normalize to (h, h) = 4 as for sl(2)
    k = Scalar(4) / f[(0, 0)]
    form = {key: v * k for key, v in f.items()}
    return BaseAlgebra("osp12", sca, ["h"], ["x"], ["y"], form)


def base_gl11():
    rp = [0, 1]
    names = ["E11", "E22", "E12", "E21"]
    mats = [unit(0, 0), unit(1, 1), unit(0, 1), unit(1, 0)]
    sca, _ = matrix_sca(names, mats, rp)
    return BaseAlgebra("sl11", sca, ["E11", "E22"], ["E12"], ["E21"], supertrace_form(mats, rp))


def base_sln(n):
    rp = [0] * n
    names, mats = [], []
    for k in range(n - 1):
        names.append(f"h{k + 1}")
        mats.append(madd(unit(k, k), unit(k + 1, k + 1, -1)))
    for i in range(n):
        for j in range(n):
            if i != j:
                names.append(f"E{i + 1}{j + 1}")
                mats.append(unit(i, j))
    sca, _ = matrix_sca(names, mats, rp)
    form = supertrace_form(mats, rp, 2)
    return BaseAlgebra(f"sl{n}", sca, [f"h{k + 1}" for k in range(n - 1)],
                       [f"E{k + 1}{k + 2}" for k in range(n - 1)],
                       [f"E{k + 2}{k + 1}" for k in range(n - 1)], form)


BASES = {"sl2": base_sl2, "osp12": base_osp12, "sl11": base_gl11, "sl3": lambda: base_sln(3),
         "sl4": lambda: base_sln(4)}


def takiff_sca(base, with_d=True, with_c=True, with_z=True):
    """Takiff superalgebra s (x) C[xi] (+ d/dxi, c, z) with the bracket

    [x p, y q] = (-1)^{|p||y|} [x, y] pq + (-1)^{|y|} (x, y) Res(p'q) c,
    [d, y q] = (-1)^{|y|} y q',  [x p, d] = -(-1)^{|p|} x p',  [d, d] = z.
    """
    s = base.sca
    n = s.dim
    names, pars = [], []
    for b in range(n):
        for p in (0, 1):
            names.append(f"{s.names[b]}{'*xi' if p else ''}")
            pars.append((s.parities[b] + p) % 2)
    D = C = Z = None
    if with_d:
        D = len(names)
        names.append("d")
        pars.append(1)
    if with_c:
        C = len(names)
        names.append("c")
        pars.append(0)
    if with_z and with_d:
        Z = len(names)
        names.append("z")
        pars.append(0)
    table = {}
    for x in range(n):
        for y in range(n):
            yb = s.parities[y]
            br = s.bracket_basis(x, y)
            for p in (0, 1):
                for q in (0, 1):
                    out = {}
                    if p + q <= 1 and br:
                        sg = _sign(p * yb)
                        out = {2 * k + p + q: v * sg for k, v in br.items()}
                    if p == 1 and q == 1 and C is not None:
                        f = base.form.get((x, y))
                        if f:
                            out[C] = f * _sign(yb)
                    if out:
                        table[(2 * x + p, 2 * y + q)] = out
    if D is not None:
        for y in range(n):
            yb = s.parities[y]
            table[(D, 2 * y + 1)] = {2 * y: Scalar(_sign(yb))}
            table[(2 * y + 1, D)] = {2 * y: Scalar(-_sign(1))}
        if Z is not None:
            table[(D, D)] = {Z: ONE}
    return SCA(names, pars, table)


# odd affinization

class LoopOracle:
    """g (x) C[t, 1/t] + C K (+ C d) with [x t^m, y t^n] = [x, y] t^{m+n} + m delta_{m+n,0} (x, y) K.

    Keys: (m, b) for x_b t^m with b >= 0; K = (0, -1); d = (0, -2).
    """

    K = (0, -1)
    D = (0, -2)

    def __init__(self, base, form, with_d=True):
        self.base = base
        self.form = form
        self.with_d = with_d
        bad = form_defects(base, form, 1)
        if bad:
            raise ValueError(f"form is not odd, supersymmetric and invariant: {bad[0]}")

    def parity(self, key):
        if key == self.K:
            return 1
        if key == self.D:
            return 0
        return self.base.parities[key[1]]

    def bracket_keys(self, a, b):
        K, D = self.K, self.D
        if a == K or b == K:
            return {}
        if a == D and b == D:
            return {}
        if a == D:
            m = b[0]
            return {b: Scalar(m)} if m else {}
        if b == D:
            m = a[0]
            return {a: Scalar(-m)} if m else {}
        (m, x), (n, y) = a, b
        out = {(m + n, k): v for k, v in self.base.bracket_basis(x, y).items()}
        if m and m + n == 0:
            f = self.form.get((x, y))
            if f:
                out[K] = f * m
        return out

    def bracket(self, u, v):
        out = {}
        for a, x in u.items():
            for b, y in v.items():
                w = self.bracket_keys(a, b)
                if w:
                    out = vadd(out, w, x * y)
        return out

    def loop(self, v, m):
        """x (x) t^m for a base vector x."""
        return {(m, k): x for k, x in v.items()}

    def jacobi_defects(self, degrees=(-1, 0, 1)):
        keys = [(m, b) for m in degrees for b in range(self.base.dim)] + [self.K]
        if self.with_d:
            keys.append(self.D)
        bad = []
        for a, b, c in itertools.product(keys, repeat=3):
            x, y, z = {a: ONE}, {b: ONE}, {c: ONE}
            lhs = self.bracket(x, self.bracket(y, z))
            rhs = vadd(self.bracket(self.bracket(x, y), z), self.bracket(y, self.bracket(x, z)),
                       Scalar(_sign(self.parity(a) * self.parity(b))))
            if lhs != rhs:
                bad.append((a, b, c))
        return bad


def odd_affinize(base, form, with_d=True):
    return LoopOracle(base, form, with_d)


# queer Lie superalgebras

def q_sca(n):
    """q(n) as block matrices [[A, B], [B, A]] in gl(n|n); basis A_ij then B_ij."""
    rp = [0] * n + [1] * n
    names, mats = [], []
    for i in range(n):
        for j in range(n):
            names.append(f"A{i + 1}{j + 1}")
            mats.append(madd(unit(i, j), unit(n + i, n + j)))
    for i in range(n):
        for j in range(n):
            names.append(f"B{i + 1}{j + 1}")
            mats.append(madd(unit(i, n + j), unit(n + i, j)))
    return matrix_sca(names, mats, rp)[0]


def sq_sca(n):
    """Subalgebra of q(n) where the odd block has trace zero."""
    q = q_sca(n)
    vecs, names = [], []
    for i in range(n):
        for j in range(n):
            vecs.append(q.vec(f"A{i + 1}{j + 1}"))
            names.append(f"A{i + 1}{j + 1}")
    for i in range(n):
        for j in range(n):
            if i != j:
                vecs.append(q.vec(f"B{i + 1}{j + 1}"))
                names.append(f"B{i + 1}{j + 1}")
    for k in range(1, n):
        vecs.append(q.vec(f"B{k}{k}", (-1, f"B{k + 1}{k + 1}")))
        names.append(f"H{k}")
    return q.subalgebra(vecs, names)[0]


def psq_sca(n):
    """sq(n) modulo the identity matrix."""
    s = sq_sca(n)
    ident = s.vec(*[f"A{k}{k}" for k in range(1, n + 1)])
    return s.quotient([ident])[0]


def q_odd_form(sca, n):
    """otr(xy): the odd invariant form tr(AB' + BA') on (p)sq(n)."""
    def mat(name):
        i, j = int(name[1]) - 1, int(name[2]) - 1
        return name[0], i, j
    entries = {}
    for a, x in enumerate(sca.names):
        for b, y in enumerate(sca.names):
            if x[0] == y[0] or "H" in (x[0], y[0]):
                continue
            _, i, j = mat(x)
            _, k, l = mat(y)
            if j == k and i == l:
                entries[(a, b)] = ONE
    # odd diagonal H_k = B_kk - B_{k+1,k+1} paired with A_ll
    for a, x in enumerate(sca.names):
        if x[0] != "H":
            continue
        k = int(x[1:])
        for b, y in enumerate(sca.names):
            if y[0] == "A" and y[1] == y[2]:
                ll = int(y[1])
                c = (1 if ll == k else 0) - (1 if ll == k + 1 else 0)
                if c:
                    entries[(a, b)] = Scalar(c)
                    entries[(b, a)] = Scalar(c)
    return entries
