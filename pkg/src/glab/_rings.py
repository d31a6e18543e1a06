"""Residue fields F_{p^f} and truncated Witt rings W(F_{p^f})/p^n.

The defining polynomial of the unramified part is Hensel-lifted so that it
divides x^(p^f - 1) - 1 at working precision.  The class of x is then an
exact root of unity, and x -> x^p extends to a genuine ring automorphism
(the Frobenius), with sigma^f = id holding on the nose rather than only
modulo p.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

# Fixed primitive defining polynomials, ascending coefficients, monic.
# For f = 1 the polynomial is x - g with g a primitive root mod p, so the
# class of x is always a generator of the unit group of the residue field.
_DEF_POLY = {
    (2, 1): (1, 1),             # x + 1, root 1
    (2, 2): (1, 1, 1),          # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),       # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),    # x^4 + x + 1
    (3, 1): (1, 1),             # x + 1, root -1 = 2
    (3, 4): (2, 0, 0, 2, 1),    # x^4 + 2x^3 + 2
}


# ---------------------------------------------------------------------------
# dense polynomial helpers over Z/m (coefficients ascending)

def _ptrim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _padd(a, b, m):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m
                   for i in range(n)])


def _psub(a, b, m):
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m
                   for i in range(n)])


def _pmul(a, b, m):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % m
    return _ptrim(out)


def _pdivmod_monic(a, b, m):
    """Divide by a monic polynomial b over Z/m."""
    assert b[-1] % m == 1
    a = list(a)
    q = [0] * max(1, len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] % m
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % m
    return _ptrim(q), _ptrim(a[:len(b) - 1] or [0])


def _bezout_fp(a, b, p):
    """Extended gcd over F_p; returns (u, v) with u*a + v*b = 1."""
    r0, r1 = list(a), list(b)
    u0, u1 = [1], [0]
    v0, v1 = [0], [1]
    while _ptrim(r1) != [0]:
        lc = r1[-1] % p
        inv = pow(lc, p - 2, p)
        r1n = [(c * inv) % p for c in r1]
        q, r = _pdivmod_monic(r0, r1n, p)
        q = [(c * inv) % p for c in q]
        r0, r1 = r1, r
        u0, u1 = u1, _psub(u0, _pmul(q, u1, p), p)
        v0, v1 = v1, _psub(v0, _pmul(q, v1, p), p)
    lc = r0[-1] % p
    assert _ptrim(r0[:-1] or [0]) == [0], "inputs not coprime"
    inv = pow(lc, p - 2, p)
    return [(c * inv) % p for c in u0], [(c * inv) % p for c in v0]


@lru_cache(maxsize=None)
def lift_unramified_poly(p, f, prec_exp):
    """Monic degree-f divisor of x^(p^f-1) - 1 over Z/p^prec_exp.

    Quadratic Hensel lifting of the fixed irreducible factor, maintaining a
    Bezout identity with the cofactor.  Returned as a tuple of ints.
    """
    q1 = p ** f - 1
    target = p ** prec_exp
    h = [-1 % target] + [0] * (q1 - 1) + [1]          # x^(q-1) - 1
    F = list(_DEF_POLY[(p, f)])
    h_p = [c % p for c in h]
    G, rem = _pdivmod_monic(h_p, F, p)
    assert rem == [0], "defining polynomial must divide x^(q-1)-1 mod p"
    A, B = _bezout_fp(F, G, p)
    m = p
    while m < target:
        m2 = min(m * m, target)
        e = _psub([c % m2 for c in h], _pmul(F, G, m2), m2)
        qq, r = _pdivmod_monic(_pmul(B, e, m2), F, m2)
        F = _padd(F, r, m2)
        G = _padd(G, _padd(_pmul(A, e, m2), _pmul(qq, G, m2), m2), m2)
        b = _psub([1], _padd(_pmul(A, F, m2), _pmul(B, G, m2), m2), m2)
        qq, r = _pdivmod_monic(_pmul(B, b, m2), F, m2)
        B = _padd(B, r, m2)
        A = _padd(A, _padd(_pmul(A, b, m2), _pmul(qq, G, m2), m2), m2)
        m = m2
    F = F + [0] * (f + 1 - len(F))
    assert F[-1] == 1 and len(F) == f + 1
    return tuple(F)


# ---------------------------------------------------------------------------


class GF:
    """The field F_{p^f}; elements are tuples of length f with entries mod p."""

    def __init__(self, p, f):
        self.p = p
        self.f = f
        self.q = p ** f
        self.poly = _DEF_POLY[(p, f)]
        # x^(f+j) mod poly for j = 0..f-2
        tab = []
        cur = [(-c) % p for c in self.poly[:-1]]
        for _ in range(max(0, f - 1)):
            tab.append(tuple(cur))
            cur = [0] + cur
            top = cur.pop()
            if top:
                cur = [(cur[i] + top * tab[0][i]) % p for i in range(f)]
        self._redtab = tab
        self.zero = (0,) * f
        self.one = self.elem([1])
        self.gen = self.elem([0, 1]) if f > 1 else ((-self.poly[0]) % p,)

    def elem(self, coeffs):
        c = list(coeffs)[:self.f]
        return tuple((x % self.p) for x in c) + (0,) * (self.f - len(c))

    def from_int(self, c):
        return (c % self.p,) + (0,) * (self.f - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        p, f = self.p, self.f
        out = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
        for j in range(2 * f - 2, f - 1, -1):
            c = out[j]
            if c:
                row = self._redtab[j - f]
                for i in range(f):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out[:f])

    def pow(self, a, n):
        r = self.one
        b = a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def inv(self, a):
        assert a != self.zero
        return self.pow(a, self.q - 2)

    def frob(self, a, k=1):
        return self.pow(a, self.p ** (k % self.f if self.f > 1 else 1))

    def sqrt(self, a):
        assert self.p == 2
        return self.pow(a, 2 ** (self.f - 1))

    def trace(self, a):
        t = a
        b = a
        for _ in range(self.f - 1):
            b = self.pow(b, self.p)
            t = self.add(t, b)
        return t

    def elements(self):
        for tup in product(range(self.p), repeat=self.f):
            yield tup

    def solve_artin_schreier(self, g, a):
        """Smallest d with d^2 + g*d = a, or None (p = 2 only)."""
        assert self.p == 2
        for d in self.elements():
            if self.add(self.mul(d, d), self.mul(g, d)) == a:
                return d
        return None


class Zq:
    """W(F_{p^f})/p^n with exact Frobenius.

    Elements are tuples of f integers mod p^n, coordinates with respect to
    the powers of the class xi of x, where the defining polynomial divides
    x^(p^f-1) - 1 exactly mod p^n.
    """

    def __init__(self, p, f, n):
        self.p = p
        self.f = f
        self.n = n
        self.mod = p ** n
        self.k = GF(p, f)
        self.poly = lift_unramified_poly(p, f, n)
        tab = []
        cur = [(-c) % self.mod for c in self.poly[:-1]]
        for _ in range(max(0, f - 1)):
            tab.append(tuple(cur))
            cur = [0] + cur
            top = cur.pop()
            if top:
                cur = [(cur[i] + top * tab[0][i]) % self.mod for i in range(f)]
        self._redtab = tab
        self.zero = (0,) * f
        self.one = self.elem([1])
        # sigma(xi)^j for j < f, where sigma(xi) = xi^p
        xp = self.pow(self.elem([0, 1]) if f > 1 else self.one, p)
        pows = [self.one]
        for _ in range(f - 1):
            pows.append(self.mul(pows[-1], xp))
        self._sigma_xi_pows = pows
        self.gen = self.elem([0, 1]) if f > 1 else ((-self.poly[0]) % self.mod,)

    def elem(self, coeffs):
        c = list(coeffs)[:self.f]
        return tuple((x % self.mod) for x in c) + (0,) * (self.f - len(c))

    def from_int(self, c):
        return (c % self.mod,) + (0,) * (self.f - 1)

    def lift(self, a):
        """Naive lift of a residue-field element."""
        return tuple(int(x) for x in a)

    def residue(self, a):
        return tuple(x % self.p for x in a)

    def add(self, a, b):
        return tuple((x + y) % self.mod for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.mod for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.mod for x in a)

    def scal(self, c, a):
        return tuple((c * x) % self.mod for x in a)

    def mul(self, a, b):
        m, f = self.mod, self.f
        out = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % m
        for j in range(2 * f - 2, f - 1, -1):
            c = out[j]
            if c:
                row = self._redtab[j - f]
                for i in range(f):
                    out[i] = (out[i] + c * row[i]) % m
        return tuple(out[:f])

    def pow(self, a, n):
        r = self.one
        b = a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def sigma(self, a, k=1):
        k %= self.f
        b = a
        for _ in range(k):
            b = self._sigma_once(b)
        return b

    def _sigma_once(self, a):
        out = self.zero
        for j, aj in enumerate(a):
            if aj:
                out = self.add(out, self.scal(aj, self._sigma_xi_pows[j]))
        return out

    def is_unit(self, a):
        return self.residue(a) != self.k.zero

    def inv(self, a):
        assert self.is_unit(a)
        x = self.lift(self.k.inv(self.residue(a)))
        two = self.from_int(2)
        m = self.p
        while m < self.mod:
            x = self.mul(x, self.sub(two, self.mul(a, x)))
            m *= m
        return x

    def pdiv(self, a, k=1):
        """Exact division by p^k."""
        d = self.p ** k
        assert all(x % d == 0 for x in a), "not divisible by p^%d" % k
        return tuple((x // d) % self.mod for x in a)

    def teichmuller(self, res):
        """The root-of-unity (or zero) lift of a residue-field element."""
        y = self.lift(res)
        for _ in range(self.n - 1):
            y = self.pow(y, self.q)
        return y

    @property
    def q(self):
        return self.p ** self.f

    def elements(self):
        for tup in product(range(self.mod), repeat=self.f):
            yield tup

    def units(self):
        for a in self.elements():
            if self.is_unit(a):
                yield a
