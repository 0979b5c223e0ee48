"""Root types, connectivity rules, coupling audits and the uncoupled diagram enumeration."""
from __future__ import annotations

import itertools
from fractions import Fraction

from .quasitoral import weight_rank, find_isomorphism, dual_twist
from .datum import (SL2, OSP, SL11, canonical_generators, xy_matrices, coupling_report,
                    NOT_CONNECTED, X_COUPLED, Y_COUPLED, UNCOUPLED, _hvec)
from . import engine

SL2_0, OSP_0, SL11_0 = "sl(2)", "osp(1|2)", "sl(1|1)"
HE0, HE0_PI = "he(0)", "he(0)^Pi"


class RootType:
    def __init__(self, tag, rank, shape, heisenberg, dual):
        self.tag = tag
        self.rank = rank
        self.shape = shape          # positive multiples k with g_{k alpha} != 0
        self.heisenberg = heisenberg
        self.dual = dual            # g_{-alpha} isomorphic to the twisted dual of g_alpha

    @property
    def label(self):
        return self.tag

    @property
    def is_sink(self):
        if self.tag in (HE0, HE0_PI):
            return True
        if self.tag.startswith("H_"):
            return self.rank >= 3 or (self.rank == 2 and not self.dual)
        return False

    def __eq__(self, other):
        if isinstance(other, str):
            return self.tag == other
        return isinstance(other, RootType) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"RootType({self.tag}, rk={self.rank}, shape={self.shape})"


class ClassificationError(ValueError):
    pass


def annihilates(d, hvecs, M):
    """Every h-vector (sparse) acts by zero on the module M."""
    return all(M.act(_hvec(v, d.h.dim)).is_zero() for v in hvecs)


def classify_one_root(d, table=None, i=0):
    """Root type of the simple root i, from rk, whether h_alpha kills g_alpha, and the alpha-string.

    The string is read from a one-root table (built to height 3 when not given).
    """
    sub = d if d.n == 1 else d.subdatum([i])
    if table is None or table.datum is not sub:
        table = engine.build(sub, 3)
    if table.N < 3:
        raise ValueError("table must be built to height >= 3")
    P, N = sub.pos[0], sub.neg[0]
    rk = weight_rank(sub.h, sub.roots[0])
    heis = annihilates(sub, sub.coroot_space(0), P)
    dual = find_isomorphism(dual_twist(P), N) is not None
    shape = tuple(k for k in range(1, table.N + 1) if table.dim((k,)) or False)
    if heis:
        if shape != (1,):
            raise ClassificationError(f"Heisenberg-type root with Delta_+ = {shape}, expected (1,)")
        if rk == 0:
            pp, pn = P.parities[0], N.parities[0]
            tag = HE0 if pp == pn == 0 else SL11_0 if pp == pn == 1 else HE0_PI
        elif rk == 2 and dual:
            tag = SL11
        else:
            tag = f"H_{rk}"
        return RootType(tag, rk, shape, True, dual)
    if rk not in (0, 2):
        raise ClassificationError(f"non-Heisenberg root of rank {rk}: contradicts the rank 0 or 2 lemma")
    if not dual:
        raise ClassificationError("non-Heisenberg root with g_-alpha not isomorphic to the twisted dual")
    if shape == (1,):
        tag = SL2_0 if rk == 0 else SL2
    elif shape == (1, 2):
        tag = OSP_0 if rk == 0 else OSP
    else:
        raise ClassificationError(f"non-Heisenberg root with Delta_+ = {shape}")
    if rk == 0 and tag == SL2_0 and P.parities[0] != 0:
        raise ClassificationError("rank-0 root with Delta = {+-alpha} on an odd root space")
    return RootType(tag, rk, shape, False, dual)


# connectivity

class ConnectivityReport:
    def __init__(self, types, matrix, violations):
        self.types = types
        self.matrix = matrix
        self.violations = violations

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        rows = ["".join("1" if x else "." for x in r) for r in self.matrix]
        return f"ConnectivityReport(types={[t.tag for t in self.types]}, matrix={rows}, violations={self.violations})"


def connectivity_matrix(d):
    """M[a][b] is True when [h_alpha_a, g_alpha_b] != 0."""
    cor = [d.coroot_space(a) for a in range(d.n)]
    return [[a != b and not annihilates(d, cor[a], d.pos[b]) for b in range(d.n)] for a in range(d.n)]


def connectivity_audit(d, table=None):
    """Directed connectivity flags checked against the prohibitions of the root-type diagram."""
    types = [classify_one_root(d, None, i) for i in range(d.n)]
    M = connectivity_matrix(d)
    bad = []
    tak = (SL2, OSP, SL11)
    for a in range(d.n):
        ta = types[a]
        for b in range(d.n):
            if not M[a][b]:
                continue
            tb = types[b]
            w = f"({a}: {ta.tag}) -> ({b}: {tb.tag})"
            if ta.is_sink:
                bad.append(f"sink type has an outgoing arrow {w}")
            if ta.rank == 1 and (tb.rank < 2 or tb.tag in (SL2, OSP)):
                bad.append(f"rank-1 source reaches a forbidden target {w}")
            if ta.tag in tak and tb.rank == 0:
                bad.append(f"Takiff type reaches a rank-0 root {w}")
            if ta.tag in (OSP, SL11) and tb.rank == 1:
                bad.append(f"{ta.tag} reaches a rank-1 root {w}")
            if ta.tag == SL2 and tb.rank == 1 and any(M[b]):
                bad.append(f"dashed arrow {w} but the rank-1 root is not a sink")
            if table is not None and table.N >= 2:
                th = tuple(1 if k in (a, b) else 0 for k in range(d.n))
                if not table.dim(th):
                    bad.append(f"arrow {w} but g_(alpha_a + alpha_b) = 0")
    return ConnectivityReport(types, M, bad)


# coupling theorem

class CouplingAudit:
    def __init__(self, cases, tag, violations, notes):
        self.cases = cases
        self.tag = tag
        self.violations = violations
        self.notes = notes

    @property
    def ok(self):
        return not self.violations

    def __repr__(self):
        return f"CouplingAudit({self.tag}, cases={self.cases}, violations={self.violations})"


_CASE = {NOT_CONNECTED: 1, Y_COUPLED: 2, X_COUPLED: 3, UNCOUPLED: 4}


def coupling_theorem_audit(gens, m=None):
    """Place every pair in one case of the coupling theorem and check the case constraints."""
    m = m or xy_matrices(gens)
    rep = coupling_report(m, gens)
    X, Y, A = m.X, m.Y, m.A
    cases, bad, notes = {}, list(rep.violations), []
    for (i, j), cls in rep.pairs.items():
        if cls not in _CASE:
            bad.append(f"pair ({i}, {j}) matches no case: {cls}; X = {X[i][j]}, {X[j][i]}; Y = {Y[i][j]}, {Y[j][i]}")
            continue
        cases[(i, j)] = _CASE[cls]
        gi, gj = gens[i], gens[j]
        if cls == X_COUPLED:
            # h_i = (y_ij / y_ji) h_j from [H_i, H_j] = y_ij h_j = y_ji h_i
            lam = Y[i][j] / Y[j][i]
            if [x for x in gi.h] != [lam * x for x in gj.h]:
                bad.append(f"pair ({i}, {j}): X-coupled but h_{i} != (y_ij / y_ji) h_{j}")
            else:
                notes.append(f"pair ({i}, {j}): h_{i} = {lam} h_{j}")
        elif cls == Y_COUPLED:
            lhs = [X[i][j] * x for x in gj.c]
            rhs = [X[j][i] * x for x in gi.c]
            if lhs != rhs:
                bad.append(f"pair ({i}, {j}): Y-coupled but x_ij c_j != x_ji c_i")
        if gi.kind in (SL2, OSP) and gj.kind in (SL2, OSP) and A[i][i] == A[j][j]:
            if Y[i][j] * Y[i][j] * A[j][i] != Y[j][i] * Y[j][i] * A[i][j]:
                bad.append(f"pair ({i}, {j}): y_ij^2 alpha_i(h_j) != y_ji^2 alpha_j(h_i)")
    return CouplingAudit(cases, rep.tag, bad, notes)


# root systems against the even reference

def reference_roots(A, N):
    """Positive roots up to height N of the Kac-Moody algebra of a generalized Cartan matrix."""
    from .catalog import kac_moody_datum
    return engine.build(kac_moody_datum([[_int(x) for x in row] for row in A], "reference"), N, check=False)


def _int(x):
    if hasattr(x, "rational"):
        q = x.rational()
        if q.denominator != 1:
            raise ValueError(f"non-integer Cartan entry {x}")
        return int(q)
    return int(x)


def root_system_audit(table):
    """Built roots of a completely uncoupled datum against the even Kac-Moody roots of the same matrix."""
    d = table.datum
    A = xy_matrices(canonical_generators(d)).A
    ref = reference_roots(A, table.N)
    mine, theirs = set(table.spaces), set(ref.spaces)
    return {"extra": sorted(mine - theirs), "missing": sorted(theirs - mine), "ok": mine == theirs}


def triangle_relation(A):
    """a12 a23 a31 vs a21 a32 a13 for every connected triangle of A (empirical, logged only)."""
    n = len(A)
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        if A[i][j] * A[j][i] and A[j][k] * A[k][j] and A[k][i] * A[i][k]:
            lhs = A[i][j] * A[j][k] * A[k][i]
            rhs = A[j][i] * A[k][j] * A[i][k]
            out.append(((i, j, k), lhs, rhs, lhs == rhs))
    return out


# diagram enumeration

class Diagram:
    def __init__(self, n, edges, family=None):
        self.n = n
        self.edges = dict(edges)      # {(i, j): (a_ij, a_ji)} with i < j
        self.family = family

    def cartan(self):
        A = [[Fraction(2 if i == j else 0) for j in range(self.n)] for i in range(self.n)]
        for (i, j), (a, b) in self.edges.items():
            A[i][j], A[j][i] = Fraction(a), Fraction(b)
        return A

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v):
        return {j if i == v else i for (i, j) in self.edges if v in (i, j)}

    def label(self, i, j):
        if (i, j) in self.edges:
            return self.edges[(i, j)]
        a, b = self.edges[(j, i)]
        return (b, a)

    def text(self):
        parts = [" ".join(f"{i}:<>" for i in range(self.n))]
        for (i, j), (a, b) in sorted(self.edges.items()):
            parts.append(f"{i}-{j} ({a}, {b})")
        return " ; ".join(parts)

    def key(self):
        """Canonical form under vertex relabelling."""
        best = None
        for perm in itertools.permutations(range(self.n)):
            es = []
            for (i, j), (a, b) in self.edges.items():
                p, q = perm[i], perm[j]
                es.append((p, q, a, b) if p < q else (q, p, b, a))
            es.sort()
            t = tuple(es)
            if best is None or t < best:
                best = t
        return (self.n, best)

    def __repr__(self):
        return f"Diagram({self.family or '?'}: {self.text()})"


def _det(M):
    M = [row[:] for row in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det


def _symmetrizable(A):
    """Cycle condition a_{i1 i2} ... a_{ik i1} = a_{i2 i1} ... a_{i1 ik} for all cycles (checked on all vertex cycles)."""
    n = len(A)
    for k in range(3, n + 1):
        for cyc in itertools.permutations(range(n), k):
            if cyc[0] != min(cyc):
                continue
            fwd = bwd = Fraction(1)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                fwd *= A[a][b]
                bwd *= A[b][a]
            if fwd != bwd:
                return False
    return True


def theta_type(A):
    """'finite', 'affine' or 'indefinite' for an indecomposable generalized Cartan matrix.

    Finite and affine matrices are symmetrizable, so the principal-minor tests apply.
    """
    n = len(A)
    if not _symmetrizable(A):
        return "indefinite"
    minors = {}
    for k in range(1, n + 1):
        for S in itertools.combinations(range(n), k):
            minors[S] = _det([[A[i][j] for j in S] for i in S])
    proper = all(v > 0 for S, v in minors.items() if len(S) < n)
    full = minors[tuple(range(n))]
    if proper and full > 0:
        return "finite"
    if proper and full == 0:
        return "affine"
    return "indefinite"


def _connected(n, edges):
    if n == 1:
        return True
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for (i, j) in edges:
            for a, b in ((i, j), (j, i)):
                if a == v and b not in seen:
                    seen.add(b)
                    stack.append(b)
    return len(seen) == n


def family_name(D):
    n, es = D.n, D.edges
    labels = set(es.values())
    degs = [D.degree(v) for v in range(n)]
    if labels == {(-1, -1)}:
        if len(es) == n - 1 and max(degs) <= 2:
            return f"A({n})"
        if len(es) == n and all(x == 2 for x in degs) and n >= 3:
            return f"A({n - 1})^(1)"
    if n == 2 and labels == {(-2, -2)}:
        return "A(1)^(1)"
    return None


class Enumeration:
    def __init__(self, diagrams, rejected, excluded_labels):
        self.diagrams = diagrams
        self.rejected = rejected                # reason -> list of diagrams
        self.excluded_labels = excluded_labels  # label -> reason

    def families(self):
        return sorted(D.family or "?" for D in self.diagrams)

    def __iter__(self):
        return iter(self.diagrams)

    def __len__(self):
        return len(self.diagrams)


LABEL_BOUND = 4


def candidate_labels(bound=LABEL_BOUND):
    """Label pairs (-a, -b) with a, b <= bound, split into admissible and excluded with reasons."""
    ok, excluded = [], {}
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            lab = (-a, -b)
            if a * b > 4:
                excluded[lab] = "excluded by Theta-growth (a_ij a_ji > 4)"
            elif (a == 1) != (b == 1):
                excluded[lab] = "uncoupled pair rule: exactly one label equal to -1"
            elif a == 1 and b == 1:
                ok.append(lab)
            elif a >= 2 and b >= 2:
                ok.append(lab)
    return ok, excluded


def _induced_star(D):
    """A vertex with three pairwise non-adjacent neighbours (the D-shape)."""
    for v in range(D.n):
        nb = sorted(D.neighbours(v))
        for a, b, c in itertools.combinations(nb, 3):
            if not any(p in D.neighbours(q) for p, q in ((a, b), (b, c), (a, c))):
                return (v, a, b, c)
    return None


def _induced_path_violation(D):
    """A middle vertex of an induced path a - v - b whose edges are not both (-1, -1)."""
    for v in range(D.n):
        nb = sorted(D.neighbours(v))
        for a, b in itertools.combinations(nb, 2):
            if b in D.neighbours(a):
                continue
            if D.label(a, v) != (-1, -1) or D.label(v, b) != (-1, -1):
                return (a, v, b)
    return None


def enumerate_uncoupled_fg_diagrams(max_vertices, bound=LABEL_BOUND):
    """Connected diagrams of Tak(sl(2)) vertices passing every uncoupled finite-growth filter."""
    if max_vertices < 2:
        raise ValueError("max_vertices must be >= 2")
    labels, excluded = candidate_labels(bound)
    kept, seen = [], set()
    rejected = {"3-star": [], "interior vertex label": [], "Theta-growth": []}
    for n in range(2, max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1, 1 << len(pairs)):
            es = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
            if not _connected(n, es):
                continue
            for labs in itertools.product(labels, repeat=len(es)):
                D = Diagram(n, dict(zip(es, labs)))
                key = D.key()
                if key in seen:
                    continue
                seen.add(key)
                star = _induced_star(D)
                if star is not None:
                    rejected["3-star"].append(D)
                    continue
                if _induced_path_violation(D) is not None:
                    rejected["interior vertex label"].append(D)
                    continue
                if theta_type(D.cartan()) == "indefinite":
                    rejected["Theta-growth"].append(D)
                    continue
                D.family = family_name(D)
                kept.append(D)
    kept.sort(key=lambda D: (D.n, D.family or "", D.text()))
    return Enumeration(kept, rejected, excluded)


def expected_families(max_vertices):
    """The finite-growth uncoupled families with at most max_vertices vertices."""
    out = [f"A({n})" for n in range(2, max_vertices + 1)]
    out += [f"A({n})^(1)" for n in range(2, max_vertices)]
    out.append("A(1)^(1)")
    return sorted(out)
