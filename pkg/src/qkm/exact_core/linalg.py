"""Sparse exact linear algebra over Scalar.

Vectors are plain dicts {index: Scalar} with no zero entries.  Matrix is an
immutable dictionary-of-keys matrix.  Elimination is Gauss-Jordan over the
field, taking the first nonzero entry in a column as pivot.
"""
from __future__ import annotations

from .field import Scalar, ZERO, ONE, scalar


# sparse vectors

def vadd(u, v, c=ONE):
    """u + c*v as a new dict."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k)
        y = x * c if y is None else y + x * c
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(u, c):
    c = scalar(c)
    if not c:
        return {}
    return {k: x * c for k, x in u.items()}


def vsum(terms):
    """Sum of (coefficient, vector) pairs."""
    out = {}
    for c, v in terms:
        if c:
            out = vadd(out, v, scalar(c))
    return out


def vdot(u, v):
    if len(v) < len(u):
        u, v = v, u
    s = ZERO
    for k, x in u.items():
        y = v.get(k)
        if y is not None:
            s = s + x * y
    return s


class Matrix:
    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows, ncols, entries=None):
        self.nrows = nrows
        self.ncols = ncols
        ent = {}
        for (i, j), x in (entries or {}).items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            x = scalar(x)
            if x:
                ent[(i, j)] = x
        self.entries = ent

    @classmethod
    def from_rows(cls, rows, ncols=None):
        rows = list(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        ent = {}
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise ValueError("ragged rows")
            for j, x in enumerate(r):
                ent[(i, j)] = x
        return cls(len(rows), ncols, ent)

    @classmethod
    def from_columns(cls, cols, nrows):
        """Columns given as sparse dicts {row: Scalar}."""
        ent = {}
        for j, c in enumerate(cols):
            for i, x in c.items():
                ent[(i, j)] = x
        return cls(nrows, len(cols), ent)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {(i, i): ONE for i in range(n)})

    @classmethod
    def zero(cls, nrows, ncols):
        return cls(nrows, ncols)

    def __getitem__(self, ij):
        return self.entries.get(ij, ZERO)

    def shape(self):
        return (self.nrows, self.ncols)

    def is_zero(self):
        return not self.entries

    def rows(self):
        out = [dict() for _ in range(self.nrows)]
        for (i, j), x in self.entries.items():
            out[i][j] = x
        return out

    def columns(self):
        out = [dict() for _ in range(self.ncols)]
        for (i, j), x in self.entries.items():
            out[j][i] = x
        return out

    def column(self, j):
        return {i: x for (i, jj), x in self.entries.items() if jj == j}

    def to_dense(self):
        d = [[ZERO] * self.ncols for _ in range(self.nrows)]
        for (i, j), x in self.entries.items():
            d[i][j] = x
        return d

    def transpose(self):
        return Matrix(self.ncols, self.nrows, {(j, i): x for (i, j), x in self.entries.items()})

    def __add__(self, other):
        self._same_shape(other)
        out = dict(self.entries)
        for k, x in other.entries.items():
            y = out.get(k)
            out[k] = x if y is None else y + x
        return Matrix(self.nrows, self.ncols, out)

    def __neg__(self):
        return Matrix(self.nrows, self.ncols, {k: -x for k, x in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = scalar(c)
        return Matrix(self.nrows, self.ncols, {k: x * c for k, x in self.entries.items()})

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape()} @ {other.shape()}")
        orow = other.rows()
        out = {}
        for (i, k), x in self.entries.items():
            for j, y in orow[k].items():
                v = out.get((i, j))
                out[(i, j)] = x * y if v is None else v + x * y
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, v):
        """Matrix times sparse vector."""
        out = {}
        for (i, j), x in self.entries.items():
            y = v.get(j)
            if y is not None:
                s = out.get(i)
                out[i] = x * y if s is None else s + x * y
        return {i: x for i, x in out.items() if x}

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape() == other.shape() and self.entries == other.entries

    def __hash__(self):
        return hash((self.nrows, self.ncols, frozenset(self.entries.items())))

    def _same_shape(self, other):
        if self.shape() != other.shape():
            raise ValueError(f"shape mismatch {self.shape()} vs {other.shape()}")

    def map(self, f):
        return Matrix(self.nrows, self.ncols, {k: f(x) for k, x in self.entries.items()})

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.to_dense()]
        return f"Matrix({self.nrows}x{self.ncols}: " + ", ".join(rows) + ")"


def _eliminate(rows, ncols):
    """Gauss-Jordan on a list of sparse rows (modified copies). Returns (rows, pivots)."""
    rows = [dict(r) for r in rows if r]
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for k in range(r, len(rows)):
            if c in rows[k]:
                p = k
                break
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        pr = {j: x * inv for j, x in rows[r].items()}
        rows[r] = pr
        for k in range(len(rows)):
            if k != r:
                f = rows[k].get(c)
                if f is not None:
                    rows[k] = vadd(rows[k], pr, -f)
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(M):
    """Reduced row echelon form: (Matrix, pivot column list)."""
    rows, piv = _eliminate(M.rows(), M.ncols)
    ent = {}
    for i, r in enumerate(rows):
        for j, x in r.items():
            ent[(i, j)] = x
    return Matrix(len(rows), M.ncols, ent), piv


def rank(M):
    return len(_eliminate(M.rows(), M.ncols)[1])


def kernel_basis(M):
    """Basis of the right kernel as dense lists; free variable set to 1."""
    rows, piv = _eliminate(M.rows(), M.ncols)
    pivset = set(piv)
    out = []
    for f in range(M.ncols):
        if f in pivset:
            continue
        v = [ZERO] * M.ncols
        v[f] = ONE
        for r, p in zip(rows, piv):
            x = r.get(f)
            if x is not None:
                v[p] = -x
        out.append(v)
    return out


def kernel_sparse(M):
    return [{k: x for k, x in enumerate(v) if x} for v in kernel_basis(M)]


def solve(M, b):
    """One solution x of M x = b (b sparse dict or list), or None if inconsistent."""
    if isinstance(b, (list, tuple)):
        b = {i: scalar(x) for i, x in enumerate(b) if scalar(x)}
    n = M.ncols
    rows = M.rows()
    aug = []
    for i, r in enumerate(rows):
        r = dict(r)
        if i in b:
            r[n] = b[i]
        aug.append(r)
    red, piv = _eliminate(aug, n + 1)
    if piv and piv[-1] == n:
        return None
    x = [ZERO] * n
    for r, p in zip(red, piv):
        x[p] = r.get(n, ZERO)
    return x


def span_basis(vectors):
    """Indices of a maximal independent subfamily (first-come order)."""
    keep, rows = [], []
    for idx, v in enumerate(vectors):
        w = dict(v)
        for r, p in rows:
            f = w.get(p)
            if f is not None:
                w = vadd(w, r, -f)
        if w:
            p = min(w)
            inv = w[p].inverse()
            w = {k: x * inv for k, x in w.items()}
            # keep earlier reduced rows clean in the new pivot
            rows = [(vadd(r, w, -r[p]) if p in r else r, q) for r, q in rows]
            rows.append((w, p))
            keep.append(idx)
    return keep


class Reducer:
    """Incremental echelon basis of a subspace; reduces vectors modulo it and
    expresses members in terms of the inserted vectors."""

    def __init__(self):
        self.rows = []      # (reduced vector, pivot, combination over inserted ids)
        self.count = 0

    def reduce(self, v):
        w, comb = dict(v), {}
        for r, p, c in self.rows:
            f = w.get(p)
            if f is not None:
                w = vadd(w, r, -f)
                comb = vadd(comb, c, -f)
        return w, comb

    def add(self, v):
        """Insert v; returns True if it was independent."""
        w, comb = self.reduce(v)
        idx = self.count
        self.count += 1
        if not w:
            return False
        comb = vadd(comb, {idx: ONE})
        p = min(w)
        inv = w[p].inverse()
        w = vscale(w, inv)
        comb = vscale(comb, inv)
        new = []
        for r, q, c in self.rows:
            f = r.get(p)
            if f is not None:
                r = vadd(r, w, -f)
                c = vadd(c, comb, -f)
            new.append((r, q, c))
        new.append((w, p, comb))
        self.rows = new
        return True

    def dim(self):
        return len(self.rows)

    def contains(self, v):
        return not self.reduce(v)[0]

    def express(self, v):
        """Coefficients over inserted ids with v = sum c_id * inserted[id], or None."""
        w, comb = self.reduce(v)
        if w:
            return None
        return {k: -x for k, x in comb.items()}
