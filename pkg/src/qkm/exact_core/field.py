"""Exact scalars in a tower of quadratic extensions Q(i)(r_1, ..., r_k).

Every element is stored as a dict mapping a bitmask of tower generators to a
rational coefficient (gmpy2.mpq).  Bit 0 is always i = sqrt(-1).  Further
generators are appended on demand by adjoin_sqrt, and only when the requested
square root is not already in the field, so the monomials r_S stay a basis.
"""
from __future__ import annotations

import threading
from fractions import Fraction

from gmpy2 import mpq, is_square, isqrt

_LOCK = threading.RLock()

# generator k: (name, square as a Scalar).  Filled in below once Scalar exists.
_GENS: list = []
_MONO_CACHE: dict = {}


def _q(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Scalar:
    __slots__ = ("_c",)

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._c = dict(value._c)
        elif isinstance(value, dict):
            self._c = {m: c for m, c in value.items() if c != 0}
        elif isinstance(value, str):
            self._c = parse(value)._c
        else:
            q = _q(value)
            self._c = {0: q} if q != 0 else {}

    @classmethod
    def _raw(cls, c):
        s = object.__new__(cls)
        s._c = c
        return s

    # basic queries

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_rational(self):
        return not self._c or (len(self._c) == 1 and 0 in self._c)

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._c.get(0, mpq(0))

    def level(self):
        """1 + index of the highest generator present (0 for rationals)."""
        top = 0
        for m in self._c:
            if m > top:
                top = m
        return top.bit_length()

    def coefficients(self):
        return dict(self._c)

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        a, b = self._c, other._c
        if not b:
            return self
        if not a:
            return other
        out = dict(a)
        for m, c in b.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Scalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw({m: -c for m, c in self._c.items()})

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = Scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return Scalar(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            q = _q(other)
            if q == 0:
                return ZERO
            return Scalar._raw({m: c * q for m, c in self._c.items()})
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        if len(a) == 1 and len(b) == 1:
            (m1, c1), = a.items()
            (m2, c2), = b.items()
            if not m1 & m2:
                return Scalar._raw({m1 | m2: c1 * c2})
        out = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                c = c1 * c2
                if not m1 & m2:
                    m = m1 | m2
                    v = out.get(m, 0) + c
                    if v:
                        out[m] = v
                    else:
                        out.pop(m, None)
                else:
                    for m, v0 in _mono_mul(m1, m2).items():
                        v = out.get(m, 0) + v0 * c
                        if v:
                            out[m] = v
                        else:
                            out.pop(m, None)
        return Scalar._raw(out)

    __rmul__ = __mul__

    def inverse(self):
        if not self._c:
            raise ZeroDivisionError("inverse of 0")
        k = self.level()
        if k == 0:
            return Scalar._raw({0: 1 / self._c[0]})
        bit = 1 << (k - 1)
        a = Scalar._raw({m: c for m, c in self._c.items() if not m & bit})
        b = Scalar._raw({m ^ bit: c for m, c in self._c.items() if m & bit})
        g = _GENS[k - 1][1]
        # (a + b r)^-1 = (a - b r) / (a^2 - b^2 g)
        norm = a * a - b * b * g
        ninv = norm.inverse()
        conj = a - b * Scalar._raw({bit: mpq(1)})
        return conj * ninv

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            q = _q(other)
            return Scalar._raw({m: c / q for m, c in self._c.items()})
        if other.is_rational():
            q = other._c[0]
            return Scalar._raw({m: c / q for m, c in self._c.items()})
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj_i(self):
        """Complex conjugation i -> -i (other generators fixed)."""
        return Scalar._raw({m: (-c if m & 1 else c) for m, c in self._c.items()})

    # comparison / hashing

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._c == other._c
        try:
            q = _q(other)
        except (TypeError, ValueError):
            return NotImplemented
        if q == 0:
            return not self._c
        return len(self._c) == 1 and self._c.get(0) == q

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self.is_rational():
            return hash(Fraction(int(self.rational().numerator), int(self.rational().denominator)))
        return hash(tuple(sorted(self._c.items())))

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Scalar('{to_text(self)}')"


ZERO = Scalar._raw({})
ONE = Scalar._raw({0: mpq(1)})
I = Scalar._raw({1: mpq(1)})

_GENS.append(("i", -ONE))


def scalar(x):
    return x if isinstance(x, Scalar) else Scalar(x)


def generators():
    """Names and squares of the current tower generators."""
    return [(name, sq) for name, sq in _GENS]


def _mono_mul(m1, m2):
    key = (m1, m2)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    out = Scalar._raw({m1 ^ m2: mpq(1)})
    common = m1 & m2
    k = 0
    while common:
        if common & 1:
            out = out * _GENS[k][1]
        common >>= 1
        k += 1
    _MONO_CACHE[key] = out._c
    return out._c


# square roots

def _split(d, k):
    bit = 1 << (k - 1)
    a = Scalar._raw({m: c for m, c in d._c.items() if not m & bit})
    b = Scalar._raw({m ^ bit: c for m, c in d._c.items() if m & bit})
    return a, b


def _rational_sqrt(q):
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    if is_square(n) and is_square(d):
        return mpq(isqrt(n), isqrt(d))
    return None


def _sqrt_in(d, k):
    """A square root of d inside the field generated by the first k generators, or None."""
    if d.is_zero():
        return ZERO
    if k == 0:
        if not d.is_rational():
            return None
        r = _rational_sqrt(d.rational())
        return None if r is None else Scalar(r)
    a0, a1 = _split(d, k)
    gen = Scalar._raw({1 << (k - 1): mpq(1)})
    g = _GENS[k - 1][1]
    if a1.is_zero():
        r = _sqrt_in(a0, k - 1)
        if r is not None:
            return r
        r = _sqrt_in(a0 / g, k - 1)
        if r is not None:
            return r * gen
        return None
    # a^2 + b^2 g = a0, 2ab = a1 with a, b nonzero
    disc = a0 * a0 - g * a1 * a1
    s = _sqrt_in(disc, k - 1)
    if s is None:
        return None
    for sign in (1, -1):
        u = (a0 + s * sign) / (g * 2)
        if u.is_zero():
            continue
        b = _sqrt_in(u, k - 1)
        if b is not None:
            a = a1 / (b * 2)
            return a + b * gen
    return None


def sqrt_in_field(d):
    """Square root of d in the current tower, or None if it is not a square there."""
    return _sqrt_in(scalar(d), len(_GENS))


def _squarefree(n):
    """n = m^2 * s with s squarefree; returns (m, s) for a positive integer n."""
    m, s, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            m *= p
        if n % p == 0:
            n //= p
            s *= p
        p += 1
    return m, s * n


def adjoin_sqrt(d):
    """Return r with r*r == d, extending the tower only if no such r exists yet."""
    d = scalar(d)
    if d.is_zero():
        return ZERO
    with _LOCK:
        r = sqrt_in_field(d)
        if r is not None:
            return r
        if d.is_rational():
            q = d.rational()
            num, den = int(q.numerator), int(q.denominator)
            m, s = _squarefree(abs(num) * den)
            # sqrt(num/den) = m/den * sqrt(s) * (i if negative)
            root = _new_gen(f"r{s}", Scalar(s))
            out = root * Scalar(mpq(m, den))
            if num < 0:
                out = out * I
            return out
        return _new_gen("sqrt[" + to_text(d) + "]", d)


def _new_gen(name, square):
    for k, (nm, _) in enumerate(_GENS):
        if nm == name:
            return Scalar._raw({1 << k: mpq(1)})
    _GENS.append((name, square))
    return Scalar._raw({1 << (len(_GENS) - 1): mpq(1)})


# text form

def _mono_name(m):
    names = []
    k = 0
    while m:
        if m & 1:
            names.append(_GENS[k][0])
        m >>= 1
        k += 1
    return "*".join(names)


def to_text(x):
    if not x._c:
        return "0"
    parts = []
    for m in sorted(x._c):
        c = x._c[m]
        neg = c < 0
        a = -c if neg else c
        if m == 0:
            body = str(a)
        elif a == 1:
            body = _mono_name(m)
        else:
            body = f"{a}*{_mono_name(m)}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)


def _split_terms(text):
    terms, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur.strip() and not cur.rstrip().endswith(("*", "/")):
            terms.append(cur)
            cur = ch
        else:
            cur += ch
    if cur.strip():
        terms.append(cur)
    return terms


def _factors(term):
    out, depth, cur = [], 0, ""
    for ch in term:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "*" and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [f.strip() for f in out]


def _gen_value(name):
    if name == "i":
        return I
    if name.startswith("sqrt[") and name.endswith("]"):
        return adjoin_sqrt(parse(name[5:-1]))
    if name.startswith("r") and name[1:].isdigit():
        return adjoin_sqrt(int(name[1:]))
    raise ValueError(f"unknown generator '{name}'")


def parse(text):
    """Inverse of to_text (also accepts ints, fractions and products like 2*i*r3)."""
    text = text.strip()
    if not text:
        raise ValueError("empty scalar")
    total = ZERO
    for term in _split_terms(text):
        term = term.replace(" ", "")
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError(f"bad scalar '{text}'")
        val = Scalar(sign)
        for f in _factors(term):
            if not f:
                raise ValueError(f"bad scalar '{text}'")
            if f[0].isdigit():
                try:
                    val = val * mpq(f)
                except ValueError:
                    raise ValueError(f"bad number '{f}' in '{text}'")
            else:
                val = val * _gen_value(f)
        total = total + val
    return total
