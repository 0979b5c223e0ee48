"""Degree-by-degree construction of g(A) up to a height cutoff, and checks on the result.

An element of g_theta (|ht theta| >= 2) is identified with its lowering
signature: the tuple of its brackets with every basis vector of the opposite
simple root spaces.  An element of the free algebra lies in the maximal ideal r
exactly when all iterated lowerings vanish, so g_theta is the column space of
the lowering map on the candidates [x, w] with x a generator and w in
g_{theta - alpha_i}.  Every stored basis vector is one such candidate, and that
provenance drives the general bracket by recursion on height.
"""
from __future__ import annotations

import os
import itertools

from .exact_core import Scalar, ZERO, ONE, I, Matrix, Reducer, rank, kernel_sparse, vadd, vscale, span_basis
from .quasitoral import Weight, find_isomorphism, dual_twist
from .datum import validate


class CutoffError(ValueError):
    """A bracket whose result lies beyond the height cutoff."""


class MemoryGuardError(MemoryError):
    pass


def _max_dim():
    try:
        return int(os.environ.get("QKM_MAX_DIM", "200000"))
    except ValueError:
        return 200000


def _sg(k):
    return -1 if k % 2 else 1


def height(theta):
    return sum(theta)


class Space:
    __slots__ = ("theta", "parities", "prov")

    def __init__(self, theta, parities, prov):
        self.theta = theta
        self.parities = list(parities)
        self.prov = list(prov)       # (s, i, a, v) or None for generator spaces

    @property
    def dim(self):
        return len(self.parities)

    def sdim(self):
        odd = sum(self.parities)
        return (self.dim - odd, odd)


class RootSpaceTable:
    def __init__(self, datum, N):
        self.datum = datum
        self.N = N
        self.n = datum.n
        self.h = datum.h
        self.spaces = {}
        self.gmap = {}          # (theta, s, i, a) -> Matrix g_theta -> g_{theta + s alpha_i}
        self.act = {}           # theta -> odd action matrices on g_theta
        self._memo = {}
        self.zero_root = (0,) * self.n

    # basic data

    def unit(self, i, s=1):
        return tuple(s if k == i else 0 for k in range(self.n))

    def roots(self, sign=None):
        out = [t for t in self.spaces if sign is None or (height(t) > 0) == (sign > 0)]
        return sorted(out, key=lambda t: (abs(height(t)), height(t) < 0, tuple(abs(x) for x in t)))

    def dim(self, theta):
        sp = self.spaces.get(theta)
        return sp.dim if sp else 0

    def sdim(self, theta):
        sp = self.spaces.get(theta)
        return sp.sdim() if sp else (0, 0)

    def weight(self, theta):
        coords = [ZERO] * self.h.dim_t
        for i, k in enumerate(theta):
            if k:
                for t, x in enumerate(self.datum.roots[i].coords):
                    coords[t] = coords[t] + x * k
        return Weight(coords)

    def module(self, s, i):
        return self.datum.pos[i] if s > 0 else self.datum.neg[i]

    def parity(self, theta, p):
        if theta == self.zero_root:
            return self.h.parity(p)
        return self.spaces[theta].parities[p]

    def basis(self, theta):
        """Basis labels of g_theta (h when theta = 0)."""
        if theta == self.zero_root:
            return list(range(self.h.dim))
        return list(range(self.dim(theta)))

    # brackets among generators and with h

    def pair(self, s, i, a, b):
        """[gen(s, i, a), gen(-s, i, b)] as a sparse h-vector."""
        if s > 0:
            v = self.datum.pairings[i].get((a, b))
            return {k: x for k, x in enumerate(v) if x} if v else {}
        v = self.datum.pairings[i].get((b, a))
        if not v:
            return {}
        pa = self.datum.neg[i].parities[a]
        pb = self.datum.pos[i].parities[b]
        sg = -_sg(pa * pb)
        return {k: x * sg for k, x in enumerate(v) if x}

    def h_act(self, theta, z, vec):
        """[z, vec] for z a sparse h-vector and vec in g_theta."""
        dt = self.h.dim_t
        lam = self.weight(theta)(_dense_t(z, dt))
        out = vscale(vec, lam) if lam else {}
        acts = self.act[theta]
        for k, x in z.items():
            if k >= dt:
                out = vadd(out, acts[k - dt].apply(vec), x)
        return out

    def h_bracket(self, z, w):
        zl = [z.get(k, ZERO) for k in range(self.h.dim)]
        wl = [w.get(k, ZERO) for k in range(self.h.dim)]
        return {k: x for k, x in enumerate(self.h.bracket(zl, wl)) if x}

    def _check_cutoff(self, theta):
        if abs(height(theta)) > self.N:
            raise CutoffError(f"weight {theta} beyond height {self.N}")

    def gen_apply(self, s, i, a, theta, vec):
        """[gen(s, i, a), vec] for vec in g_theta; returns (target, vector)."""
        tgt = tuple(x + (s if k == i else 0) for k, x in enumerate(theta))
        if theta == self.zero_root:
            return tgt, self._gen_on_h(s, i, a, vec)
        if not vec:
            return tgt, {}
        if tgt == self.zero_root:
            out = {}
            for b, x in vec.items():
                out = vadd(out, self.pair(s, i, a, b), x)
            return tgt, out
        self._check_cutoff(tgt)
        M = self.gmap.get((theta, s, i, a))
        return tgt, (M.apply(vec) if M is not None else {})

    def _gen_on_h(self, s, i, a, z):
        """[x, z] = -(-1)^{|x||z|} [z, x] for x = gen(s, i, a) and z in h."""
        th = self.unit(i, s)
        px = self.module(s, i).parities[a]
        dt = self.h.dim_t
        even = {k: x for k, x in z.items() if k < dt}
        odd = {k: x for k, x in z.items() if k >= dt}
        out = vscale(self.h_act(th, even, {a: ONE}), -1) if even else {}
        if odd:
            out = vadd(out, self.h_act(th, odd, {a: ONE}), Scalar(-_sg(px)))
        return out

    # general bracket

    def bracket(self, theta, u, phi, v):
        """[u, v] for u in g_theta, v in g_phi (theta or phi may be 0 for h); returns (target, vector)."""
        tgt = tuple(x + y for x, y in zip(theta, phi))
        self._check_cutoff(tgt)
        out = {}
        for p, x in u.items():
            for q, y in v.items():
                w = self.bracket_basis(theta, p, phi, q)
                if w:
                    out = vadd(out, w, x * y)
        return tgt, out

    def bracket_basis(self, theta, p, phi, q):
        key = (theta, p, phi, q)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        z0 = self.zero_root
        if theta == z0 and phi == z0:
            out = self.h_bracket({p: ONE}, {q: ONE})
        elif theta == z0:
            out = self.h_act(phi, {p: ONE}, {q: ONE})
        elif phi == z0:
            sg = -_sg(self.parity(theta, p) * self.h.parity(q))
            out = vscale(self.h_act(theta, {q: ONE}, {p: ONE}), sg)
        elif abs(height(theta)) == 1:
            s = height(theta)
            i = next(k for k, x in enumerate(theta) if x)
            out = self.gen_apply(s, i, p, phi, {q: ONE})[1]
        else:
            s, i, a, w = self.spaces[theta].prov[p]
            rest = tuple(x - (s if k == i else 0) for k, x in enumerate(theta))
            ei = self.unit(i, s)
            px = self.module(s, i).parities[a]
            pw = self.parity(rest, w)
            # [[x, w], z] = [x, [w, z]] - (-1)^{|x||w|} [w, [x, z]]
            t1, wz = self.bracket(rest, {w: ONE}, phi, {q: ONE})
            out = self.gen_apply(s, i, a, t1, wz)[1] if wz else {}
            t2, xz = self.bracket(ei, {a: ONE}, phi, {q: ONE})
            if xz:
                out = vadd(out, self.bracket(rest, {w: ONE}, t2, xz)[1], Scalar(-_sg(px * pw)))
        self._memo[key] = out
        return out

    def clear_cache(self):
        self._memo = {}

    def __repr__(self):
        return f"RootSpaceTable({self.datum.name!r}, N={self.N}, roots={len(self.spaces)})"


def _dense_t(z, dt):
    out = [ZERO] * dt
    for k, x in z.items():
        if k < dt:
            out[k] = x
    return out


# construction

def build(d, N, check=True):
    """Root spaces of g(A) for 1 <= |ht theta| <= N."""
    if N < 1:
        raise ValueError("height must be >= 1")
    if check:
        rep = validate(d)
        if not rep.ok:
            raise ValueError(f"datum does not validate: {rep.failures[0]}")
    t = RootSpaceTable(d, N)
    for i in range(d.n):
        for s in (1, -1):
            M = t.module(s, i)
            th = t.unit(i, s)
            t.spaces[th] = Space(th, M.parities, [None] * M.dim)
            t.act[th] = list(M.action)
    limit = _max_dim()
    for k in range(2, N + 1):
        for s in (1, -1):
            prev = [th for th in t.spaces if height(th) == s * (k - 1)]
            targets = sorted({tuple(x + (s if j == i else 0) for j, x in enumerate(th))
                              for th in prev for i in range(d.n)})
            for th in targets:
                _build_space(t, th, s, limit)
    return t


def _build_space(t, theta, s, limit):
    d = t.datum
    cands = []
    for i in range(d.n):
        phi = tuple(x - (s if j == i else 0) for j, x in enumerate(theta))
        sp = t.spaces.get(phi)
        if sp is None:
            continue
        for a in range(t.module(s, i).dim):
            for v in range(sp.dim):
                cands.append((i, a, v))
    if len(cands) > limit:
        raise MemoryGuardError(f"{len(cands)} candidates at {theta} exceed QKM_MAX_DIM={limit}")
    if not cands:
        return
    sigs = []
    for (i, a, v) in cands:
        sigs.append(_signature(t, theta, s, i, a, v))
    red = Reducer()
    basis = []
    for c, sig in enumerate(sigs):
        if red.add(sig):
            basis.append(c)
    if not basis:
        return
    # coordinates of every candidate in terms of the basis candidates
    pos = {c: k for k, c in enumerate(basis)}
    coords = []
    for sig in sigs:
        e = red.express(sig)
        coords.append({pos[c]: x for c, x in e.items()})
    par = []
    for c in basis:
        i, a, v = cands[c]
        phi = tuple(x - (s if j == i else 0) for j, x in enumerate(theta))
        par.append((t.module(s, i).parities[a] + t.spaces[phi].parities[v]) % 2)
    dim = len(basis)
    if dim > limit:
        raise MemoryGuardError(f"dim g_{theta} = {dim} exceeds QKM_MAX_DIM={limit}")
    t.spaces[theta] = Space(theta, par, [(s,) + cands[c] for c in basis])
    index = {cd: k for k, cd in enumerate(cands)}
    # raising maps into g_theta
    for i in range(d.n):
        phi = tuple(x - (s if j == i else 0) for j, x in enumerate(theta))
        sp = t.spaces.get(phi)
        if sp is None:
            continue
        for a in range(t.module(s, i).dim):
            cols = [coords[index[(i, a, v)]] for v in range(sp.dim)]
            t.gmap[(phi, s, i, a)] = Matrix.from_columns(cols, dim)
    # lowering maps out of g_theta, read off the basis signatures
    for j in range(d.n):
        tgt = tuple(x - (s if k == j else 0) for k, x in enumerate(theta))
        tdim = t.dim(tgt)
        for b in range(t.module(-s, j).dim):
            cols = []
            for c in basis:
                cols.append({k: x for (jj, bb, k), x in sigs[c].items() if jj == j and bb == b})
            if tdim:
                t.gmap[(theta, -s, j, b)] = Matrix.from_columns(cols, tdim)
    # odd h action: [X, [x, w]] = [[X, x], w] + (-1)^{|x|} [x, [X, w]]
    acts = []
    for c in range(t.h.dim_odd):
        cols = []
        for bc in basis:
            i, a, v = cands[bc]
            phi = tuple(x - (s if j == i else 0) for j, x in enumerate(theta))
            M = t.module(s, i)
            out = {}
            for a2, x in M.action[c].column(a).items():
                out = vadd(out, coords[index[(i, a2, v)]], x)
            sg = Scalar(_sg(M.parities[a]))
            for v2, x in t.act[phi][c].column(v).items():
                out = vadd(out, coords[index[(i, a, v2)]], x * sg)
            cols.append(out)
        acts.append(Matrix.from_columns(cols, dim))
    t.act[theta] = acts


def _signature(t, theta, s, i, a, v):
    """Lowerings of the candidate [gen(s, i, a), w_v] by every gen(-s, j, b), keyed (j, b, coord)."""
    d = t.datum
    phi = tuple(x - (s if j == i else 0) for j, x in enumerate(theta))
    px = t.module(s, i).parities[a]
    out = {}
    for j in range(d.n):
        N = t.module(-s, j)
        for b in range(N.dim):
            py = N.parities[b]
            vec = {}
            if j == i:
                hz = t.pair(-s, i, b, a)
                if hz:
                    vec = t.h_act(phi, hz, {v: ONE})
            psi, u = t.gen_apply(-s, j, b, phi, {v: ONE})
            if u:
                _, w = t.gen_apply(s, i, a, psi, u)
                if w:
                    vec = vadd(vec, w, Scalar(_sg(py * px)))
            for k, x in vec.items():
                out[(j, b, k)] = x
    return out


# verification

class Report:
    def __init__(self, name):
        self.name = name
        self.failures = []
        self.notes = []
        self.checked = 0

    def fail(self, what, witness):
        self.failures.append((what, witness))

    @property
    def ok(self):
        return not self.failures

    def lines(self):
        head = f"{self.name}: {'ok' if self.ok else 'FAILED'} ({self.checked} checks)"
        out = [head] + [f"  note: {n}" for n in self.notes]
        out += [f"  {w}: {x}" for w, x in self.failures[:20]]
        return out

    def __repr__(self):
        return "\n".join(self.lines())


def _elements(t, max_height=None):
    """All basis elements (theta, p) including h, optionally limited in |height|."""
    out = [(t.zero_root, p) for p in range(t.h.dim)]
    for th in t.roots():
        if max_height is None or abs(height(th)) <= max_height:
            out += [(th, p) for p in range(t.dim(th))]
    return out


def _within(t, *thetas):
    return abs(height(tuple(map(sum, zip(*thetas))))) <= t.N


def verify_structure(t, jacobi_height=None, max_failures=20):
    """Antisymmetry, super Jacobi, t-diagonality, weight-0 centralizer and radical correctness.

    Jacobi is exhaustive over basis triples whose pairwise and total weights stay
    within the cutoff; jacobi_height restricts the triple entries to |ht| <= that bound.
    """
    rep = Report("structure")
    els = _elements(t)
    par = {e: t.parity(*e) for e in els}
    # antisymmetry
    for x, y in itertools.product(els, repeat=2):
        if not _within(t, x[0], y[0]):
            continue
        rep.checked += 1
        _, a = t.bracket(x[0], {x[1]: ONE}, y[0], {y[1]: ONE})
        _, b = t.bracket(y[0], {y[1]: ONE}, x[0], {x[1]: ONE})
        if a != vscale(b, -_sg(par[x] * par[y])):
            rep.fail("antisymmetry", (x, y))
            if len(rep.failures) >= max_failures:
                return rep
    # Jacobi
    jels = _elements(t, jacobi_height)
    for x, y, z in itertools.product(jels, repeat=3):
        if not (_within(t, x[0], y[0]) and _within(t, y[0], z[0]) and _within(t, x[0], z[0])
                and _within(t, x[0], y[0], z[0])):
            continue
        rep.checked += 1
        ty, yz = t.bracket(y[0], {y[1]: ONE}, z[0], {z[1]: ONE})
        lhs = t.bracket(x[0], {x[1]: ONE}, ty, yz)[1] if yz else {}
        tx, xy = t.bracket(x[0], {x[1]: ONE}, y[0], {y[1]: ONE})
        r1 = t.bracket(tx, xy, z[0], {z[1]: ONE})[1] if xy else {}
        tz, xz = t.bracket(x[0], {x[1]: ONE}, z[0], {z[1]: ONE})
        r2 = t.bracket(y[0], {y[1]: ONE}, tz, xz)[1] if xz else {}
        rhs = vadd(r1, r2, Scalar(_sg(par[x] * par[y])))
        if lhs != rhs:
            rep.fail("jacobi", (x, y, z))
            if len(rep.failures) >= max_failures:
                return rep
    if jacobi_height is not None:
        rep.notes.append(f"Jacobi restricted to entries with |ht| <= {jacobi_height}")
    # t acts diagonally: [t_k, [x, w]] = [[t_k, x], w] + [x, [t_k, w]] = theta(t_k) [x, w]
    for th in t.roots():
        if abs(height(th)) < 2:
            continue
        lam = t.weight(th)
        sp = t.spaces[th]
        for p, (s, i, a, w) in enumerate(sp.prov):
            rest = tuple(x - (s if k == i else 0) for k, x in enumerate(th))
            for k in range(t.h.dim_t):
                rep.checked += 1
                ei = t.unit(i, s)
                tx = t.bracket(t.zero_root, {k: ONE}, ei, {a: ONE})[1]
                tw = t.bracket(t.zero_root, {k: ONE}, rest, {w: ONE})[1]
                r = vadd(t.bracket(ei, tx, rest, {w: ONE})[1] if tx else {},
                         t.bracket(ei, {a: ONE}, rest, tw)[1] if tw else {})
                want = {p: lam.coords[k]} if lam.coords[k] else {}
                if r != want:
                    rep.fail("t-diagonality", (th, p, k))
    # weight-0 centralizer of t is h: no stored root has weight zero on t
    for th in t.roots():
        rep.checked += 1
        if t.weight(th).is_zero():
            rep.fail("self-normalizing", th)
    rep.failures += [("radical", w) for w in radical_defects(t)]
    return rep


def radical_defects(t):
    """Roots with |ht| >= 2 where some nonzero vector is killed by every lowering map."""
    bad = []
    for th in t.roots():
        if abs(height(th)) < 2:
            continue
        s = 1 if height(th) > 0 else -1
        dim = t.dim(th)
        blocks = []
        for j in range(t.n):
            for b in range(t.module(-s, j).dim):
                M = t.gmap.get((th, -s, j, b))
                if M is not None:
                    blocks.append(M)
        rows = {}
        r = 0
        for M in blocks:
            for (i, k), x in M.entries.items():
                rows[(r + i, k)] = x
            r += M.nrows
        if rank(Matrix(max(r, 1), dim, rows)) != dim:
            bad.append(th)
    return bad


def corrupt(t, theta=None):
    """Fault injection: perturb one structure constant of a raising map (testing only)."""
    for key in sorted(t.gmap, key=lambda k: (abs(height(k[0])), k)):
        M = t.gmap[key]
        if key[1] > 0 and M.entries and (theta is None or key[0] == theta) and abs(height(key[0])) >= 1:
            (ij, x), = list(M.entries.items())[:1]
            ent = dict(M.entries)
            ent[ij] = x + 1
            t.gmap[key] = Matrix(M.nrows, M.ncols, ent)
            t.clear_cache()
            return key
    return None


# Serre relations and integrability

def _ad_power(t, s, i, theta, vecs, k):
    """Span of (ad g_{s alpha_i})^k applied to the given vectors of g_theta."""
    cur, th = vecs, theta
    for _ in range(k):
        nxt = []
        for a in range(t.module(s, i).dim):
            for v in cur:
                tgt, w = t.gen_apply(s, i, a, th, v)
                if w:
                    nxt.append(w)
        th = tuple(x + (s if j == i else 0) for j, x in enumerate(th))
        keep = span_basis(nxt)
        cur = [nxt[m] for m in keep]
        if not cur:
            return th, []
    return th, cur


def cartan_of(d):
    """a_ij = alpha_j(h_i): canonical generators for (1|1) roots, [e, f] for one-dimensional even roots."""
    from .datum import canonical_generators, cartan_matrix
    if all(m.sdim() == (1, 0) for m in d.pos):
        hs = [d.pairings[i][(0, 0)] for i in range(d.n)]
        return [[d.roots[j](hs[i][:d.h.dim_t]) for j in range(d.n)] for i in range(d.n)]
    return cartan_matrix(d, canonical_generators(d))


def serre_check(t, A=None):
    """ad(g_{alpha_i})^{1 - a_ij} g_{alpha_j} = 0 and the negative counterpart for i != j."""
    rep = Report("serre")
    if A is None:
        A = cartan_of(t.datum)
    for i in range(t.n):
        for j in range(t.n):
            if i == j:
                continue
            a = A[i][j]
            if not a.is_rational() or a.rational().denominator != 1 or a.rational() > 0:
                rep.fail("not a generalized Cartan entry", (i, j, str(a)))
                continue
            k = 1 - int(a.rational())
            for s in (1, -1):
                ej = t.unit(j, s)
                if abs(height(ej)) + k > t.N:
                    rep.fail("cutoff too small", (i, j, s, k))
                    continue
                rep.checked += 1
                vecs = [{p: ONE} for p in range(t.dim(ej))]
                th, out = _ad_power(t, s, i, ej, vecs, k)
                if out:
                    rep.fail("serre", (i, j, s, th, out[0]))
    return rep


def integrability_check(t, n_max):
    """Least n <= n_max with (ad g_{+-alpha_i})^n g_{+-alpha_j} = 0 for every ordered pair."""
    out = {}
    for i, j in itertools.product(range(t.n), repeat=2):
        for s, r in itertools.product((1, -1), repeat=2):
            ej = t.unit(j, r)
            cur, th = [{p: ONE} for p in range(t.dim(ej))], ej
            found = None
            try:
                for n in range(1, n_max + 1):
                    th, cur = _ad_power(t, s, i, th, cur, 1)
                    if not cur:
                        found = n
                        break
            except CutoffError:
                found = "beyond cutoff"
            out[(s, i, r, j)] = found if found is not None else "not nilpotent within cutoff"
    return out


# Chevalley automorphism

class Chevalley:
    def __init__(self, table, images):
        self.table = table
        self.images = images    # (theta, p) -> (minus theta, vector)

    def apply(self, theta, vec):
        out = {}
        tgt = tuple(-x for x in theta)
        for p, x in vec.items():
            out = vadd(out, self.images[(theta, p)][1], x)
        return tgt, out


class ChevalleyRefusal(ValueError):
    pass


def _omega_h(t, z):
    dt = t.h.dim_t
    return {k: (-x if k < dt else x * I) for k, x in z.items()}


def chevalley(t):
    """Extend omega_h and the dual identifications to all stored root spaces, then check omega^2 = delta."""
    d = t.datum
    images = {}
    for p in range(t.h.dim):
        images[(t.zero_root, p)] = (t.zero_root, _omega_h(t, {p: ONE}))
    for i in range(d.n):
        P, N = d.pos[i], d.neg[i]
        T = find_isomorphism(dual_twist(P), N)
        if T is None:
            raise ChevalleyRefusal(f"root {i}: g_-alpha is not isomorphic to the twisted dual")
        Tinv = _inverse(T)
        for a in range(P.dim):
            images[(t.unit(i, 1), a)] = (t.unit(i, -1), T.apply({a: ONE}))
        for b in range(N.dim):
            w = Tinv.apply({b: ONE})
            images[(t.unit(i, -1), b)] = (t.unit(i, 1), {k: (-x if P.parities[k] else x) for k, x in w.items()})
        # omega_h([x, y]) = [omega(x), omega(y)] on simple root pairs
        for a in range(P.dim):
            for b in range(N.dim):
                lhs = _omega_h(t, t.pair(1, i, a, b))
                ox = images[(t.unit(i, 1), a)][1]
                oy = images[(t.unit(i, -1), b)][1]
                rhs = t.bracket(t.unit(i, -1), ox, t.unit(i, 1), oy)[1]
                if lhs != rhs:
                    raise ChevalleyRefusal(f"omega_h([x, y]) != [omega x, omega y] at root {i}, x = {a}, y = {b}")
    for th in t.roots():
        if abs(height(th)) < 2:
            continue
        for p, (s, i, a, w) in enumerate(t.spaces[th].prov):
            rest = tuple(x - (s if k == i else 0) for k, x in enumerate(th))
            ei = t.unit(i, s)
            mi, ox = images[(ei, a)]
            mr, ow = images[(rest, w)]
            images[(th, p)] = t.bracket(mi, ox, mr, ow)
    return Chevalley(t, images)


def chevalley_report(t):
    rep = Report("chevalley")
    try:
        om = chevalley(t)
    except ChevalleyRefusal as e:
        rep.fail("refused", str(e))
        return rep
    for th in [t.zero_root] + t.roots():
        for p in t.basis(th):
            rep.checked += 1
            mt, v = om.apply(th, {p: ONE})
            _, v2 = om.apply(mt, v) if v else (None, {})
            want = {p: (-ONE if t.parity(th, p) else ONE)}
            if v2 != want:
                rep.fail("omega^2 != delta", (th, p))
        if th != t.zero_root:
            rep.checked += 1
            mt = tuple(-x for x in th)
            vecs = [om.apply(th, {p: ONE})[1] for p in t.basis(th)]
            if len(span_basis(vecs)) != t.dim(th) or t.dim(mt) != t.dim(th):
                rep.fail("omega(g_theta) != g_-theta", th)
    # homomorphism on generator pairs with stored brackets
    for x in _elements(t, 1):
        for y in _elements(t):
            if not _within(t, x[0], y[0]):
                continue
            rep.checked += 1
            tg, xy = t.bracket(x[0], {x[1]: ONE}, y[0], {y[1]: ONE})
            lhs = om.apply(tg, xy)[1] if xy else {}
            mx, ox = om.apply(x[0], {x[1]: ONE})
            my, oy = om.apply(y[0], {y[1]: ONE})
            rhs = t.bracket(mx, ox, my, oy)[1]
            if lhs != rhs:
                rep.fail("not a homomorphism", (x, y))
    return rep


def _inverse(T):
    n = T.nrows
    out = []
    rows = T.to_dense()
    from .exact_core import solve
    for k in range(n):
        x = solve(T, {k: ONE})
        out.append({i: v for i, v in enumerate(x) if v})
    return Matrix.from_columns(out, n)


# center and growth

def center(t):
    """Basis of h-elements that bracket to zero with all of h and every stored root space.

    Returns (even basis, odd basis, even basis of the intersection of ker alpha_i).
    """
    dt, do = t.h.dim_t, t.h.dim_odd
    # even: weights of all stored roots must vanish
    rows = [list(t.weight(th).coords) for th in t.roots()]
    M = Matrix.from_rows(rows, dt) if rows else Matrix(1, dt)
    even = kernel_sparse(M)
    A = Matrix.from_rows([list(r.coords) for r in t.datum.roots], dt)
    kerA = kernel_sparse(A)
    # odd: [z, X_d] = 0 for all d, and z acts by zero on every stored space
    ent = {}
    r = 0
    for d_ in range(do):
        for k in range(dt):
            for c in range(do):
                x = t.h.odd_bracket(c, d_)[k]
                if x:
                    ent[(r, c)] = x
            r += 1
    for th in t.roots():
        acts = t.act[th]
        n = t.dim(th)
        for c in range(do):
            for (i, j), x in acts[c].entries.items():
                ent[(r + i * n + j, c)] = x
        r += n * n
    odd = kernel_sparse(Matrix(max(r, 1), do, ent)) if do else []
    odd = [{dt + k: x for k, x in v.items()} for v in odd]
    return even, odd, kerA


def dims_by_height(t):
    pos = [0] * (t.N + 1)
    neg = [0] * (t.N + 1)
    for th, sp in t.spaces.items():
        k = height(th)
        if k > 0:
            pos[k] += sp.dim
        else:
            neg[-k] += sp.dim
    return pos[1:], neg[1:]


class GrowthProfile:
    def __init__(self, dims, tag):
        self.dims = dims
        self.tag = tag

    def __repr__(self):
        return f"GrowthProfile({self.tag}, dims={self.dims}) [heuristic]"


def growth_profile(t):
    """Per-height total dimensions with a heuristic tag: bounded, polynomial-like or super-polynomial."""
    dims, _ = dims_by_height(t)
    n = len(dims)
    half = dims[: max(1, n // 2)]
    tail = dims[n // 2:]
    if max(tail, default=0) <= max(half, default=0):
        tag = "bounded"
    else:
        ratios = [dims[k + 1] / dims[k] for k in range(n // 2, n - 1) if dims[k]]
        if ratios and min(ratios) > 1.25:
            tag = "super-polynomial"
        else:
            tag = "polynomial-like"
    return GrowthProfile(dims, tag)


# oracle comparison

class OracleReport(Report):
    def __init__(self):
        super().__init__("oracle")
        self.dims = {}
        self.central_kernel = []


def _oracle_weight(oracle, tvecs, key):
    vec = {key: ONE}
    out = []
    for tv in tvecs:
        w = oracle.bracket(tv, vec)
        lam = w.get(key, ZERO)
        if {k: x for k, x in w.items()} != ({key: lam} if lam else {}):
            return None
        out.append(lam)
    return tuple(out)


def oracle_keys(oracle, cutoff):
    if hasattr(oracle, "dim"):
        return list(range(oracle.dim))
    keys = [(m, b) for m in range(-cutoff, cutoff + 1) for b in range(oracle.base.dim)]
    keys.append(oracle.K)
    if oracle.with_d:
        keys.append(oracle.D)
    return keys


def compare_with_oracle(t, oracle, genmap, cutoff=None):
    """Check a generator map into a concrete realization against every stored bracket.

    The image of a stored basis vector [x, w] is the oracle bracket of the images.
    Root-space dimensions are matched against the oracle weight spaces, and the
    kernel of the map on h (weight 0) is itemized rather than treated as a failure.
    """
    rep = OracleReport()
    d = t.datum
    dt = t.h.dim_t
    img = {}
    for p in range(t.h.dim):
        img[(t.zero_root, p)] = genmap["h"][p]
    for i in range(d.n):
        for a, v in enumerate(genmap["pos"][i]):
            img[(t.unit(i, 1), a)] = v
        for b, v in enumerate(genmap["neg"][i]):
            img[(t.unit(i, -1), b)] = v
    for th in t.roots():
        if abs(height(th)) < 2:
            continue
        for p, (s, i, a, w) in enumerate(t.spaces[th].prov):
            rest = tuple(x - (s if k == i else 0) for k, x in enumerate(th))
            img[(th, p)] = oracle.bracket(img[(t.unit(i, s), a)], img[(rest, w)])

    def image(theta, vec):
        out = {}
        for p, x in vec.items():
            out = vadd(out, img[(theta, p)], x)
        return out

    # kernel on h
    hv = [img[(t.zero_root, p)] for p in range(t.h.dim)]
    keys = sorted({k for v in hv for k in v}, key=repr)
    kidx = {k: n for n, k in enumerate(keys)}
    M = Matrix.from_columns([{kidx[k]: x for k, x in v.items()} for v in hv], max(len(keys), 1))
    rep.central_kernel = kernel_sparse(M)
    if rep.central_kernel:
        ev, od, _ = center(t)
        cen = Reducer()
        for v in ev + od:
            cen.add(v)
        for v in rep.central_kernel:
            if not cen.contains(v):
                rep.fail("kernel on h not central", v)
        rep.notes.append(f"map kills a {len(rep.central_kernel)}-dimensional central subspace of h")
    # dimensions
    tvecs = [img[(t.zero_root, k)] for k in range(dt)]
    wdims = {}
    for key in oracle_keys(oracle, cutoff if cutoff is not None else t.N):
        w = _oracle_weight(oracle, tvecs, key)
        if w is None:
            rep.fail("oracle basis vector is not a weight vector", key)
            continue
        wdims.setdefault(w, []).append(oracle.parity(key))
    for th in t.roots():
        w = tuple(t.weight(th).coords)
        par = wdims.get(w, [])
        want = (par.count(0), par.count(1))
        rep.dims[th] = (t.sdim(th), want)
        rep.checked += 1
        if t.sdim(th) != want:
            rep.fail("dimension mismatch", (th, t.sdim(th), want))
        vecs = [img[(th, p)] for p in range(t.dim(th))]
        if len(span_basis(vecs)) != len(vecs):
            rep.fail("map not injective on root space", th)
    # weights the oracle has but the table lacks (within the cutoff)
    table_w = {tuple(t.weight(th).coords) for th in t.roots()}
    for w, par in wdims.items():
        if w in table_w or not any(w):
            continue
        th = _solve_theta(t, w)
        if th is not None and 1 <= abs(height(th)) <= t.N:
            rep.fail("oracle root missing from table", th)
    # brackets
    for x in _elements(t):
        for y in _elements(t):
            if not _within(t, x[0], y[0]):
                continue
            rep.checked += 1
            tg, xy = t.bracket(x[0], {x[1]: ONE}, y[0], {y[1]: ONE})
            lhs = image(tg, xy) if xy else {}
            rhs = oracle.bracket(img[x], img[y])
            if lhs != rhs:
                rep.fail("bracket not preserved", (x, y))
                if len(rep.failures) > 20:
                    return rep
    return rep


def _solve_theta(t, w):
    """Integer coordinates of a weight over the simple roots, if it lies in their span."""
    from .exact_core import solve
    A = Matrix.from_columns([{k: x for k, x in enumerate(r.coords) if x} for r in t.datum.roots], t.h.dim_t)
    x = solve(A, {k: v for k, v in enumerate(w) if v})
    if x is None:
        return None
    out = []
    for v in x:
        if not v.is_rational() or v.rational().denominator != 1:
            return None
        out.append(int(v.rational()))
    return tuple(out)


# export

def export(t, structure=False):
    """Stable text document: roots by height then coordinates, superdimensions, optional structure maps."""
    lines = [f"# table {t.datum.name} height {t.N}"]
    for th in sorted(t.spaces, key=lambda x: (abs(height(x)), height(x) < 0, x)):
        ev, od = t.sdim(th)
        lines.append(f"root {' '.join(str(x) for x in th)} height {height(th)} sdim ({ev}|{od})")
    if structure:
        for key in sorted(t.gmap, key=lambda k: (abs(height(k[0])), k)):
            M = t.gmap[key]
            th, s, i, a = key
            for (r, c), x in sorted(M.entries.items()):
                lines.append(f"map {' '.join(map(str, th))} {s:+d} {i} {a} {r} {c} {x}")
    return "\n".join(lines) + "\n"
