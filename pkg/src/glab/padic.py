"""Fixed-precision arithmetic in towers over Q_p.

A TowerRing is built from Z/p^Nw by at most one unramified layer (degree f,
defining polynomial dividing x^(p^f-1)-1 so Frobenius is exact) followed by
Eisenstein layers pi^e = p*u(pi) with u a unit polynomial with integer
coefficients; stacked Eisenstein degrees must be pairwise coprime, which
keeps valuations of monomials distinct and lets ord be read off termwise.

Elements are nested coefficient trees divided by a power of p (the shift),
and carry an absolute precision.  Valuations live in (1/e)Z with
e the product of the Eisenstein degrees.

The square-class machinery (is_square, kummer_span, and the conductor level
data used by the points module) works digit by digit: each pi-level of a
unit is cleared by a square or recorded against a fixed filtered basis of
F^x / (F^x)^2, with an Artin-Schreier decision at level 2*ord_pi(2).
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from ._rings import GF, lift_unramified_poly

DEFAULT_PREC = 32


def working_prec(n=None):
    if n is not None:
        return n
    env = os.environ.get("GLAB_PREC")
    return int(env) if env else DEFAULT_PREC


class PrecisionError(ArithmeticError):
    pass


def _v_int(x, p, cap):
    if x == 0:
        return None
    v = 0
    while x % p == 0 and v < cap:
        x //= p
        v += 1
    return v


class _UnramLayer:
    kind = "unramified"

    def __init__(self, p, f, mod, nw):
        self.f = f
        self.poly = tuple(c % mod for c in lift_unramified_poly(p, f, nw))
        tab = []
        cur = [(-c) % mod for c in self.poly[:-1]]
        for _ in range(max(0, f - 1)):
            tab.append(tuple(cur))
            cur = [0] + cur
            top = cur.pop()
            if top:
                cur = [(cur[i] + top * tab[0][i]) % mod for i in range(f)]
        self.redtab = tab
        self.deg = f


class _EisLayer:
    kind = "eisenstein"

    def __init__(self, e, u_coeffs):
        self.e = e
        self.u = tuple(u_coeffs)
        self.deg = e
        self.redtab = None  # filled by the ring once the lower levels exist


class TowerRing:
    """Base Z/p^Nw with an optional unramified layer and Eisenstein layers."""

    def __init__(self, p, N, spec, guard=16):
        self.p = p
        self.N = N
        self.nw = N + guard
        self.mod = p ** self.nw
        self.layers = []
        self.f = 1
        es = []
        for i, item in enumerate(spec):
            if item[0] == "unramified":
                if i != 0:
                    raise ValueError("unramified layer must come first")
                self.f = item[1]
                self.layers.append(_UnramLayer(p, self.f, self.mod, self.nw))
            elif item[0] == "eisenstein":
                e, u = item[1], tuple(item[2])
                if any(not isinstance(c, int) for c in u):
                    raise ValueError("Eisenstein unit must have integer coefficients")
                if u[0] % p == 0:
                    raise ValueError("relation pi^e = p*u(pi) needs a unit u")
                if any(__import__("math").gcd(e, e2) != 1 for e2 in es):
                    raise ValueError("stacked Eisenstein degrees must be coprime")
                es.append(e)
                self.layers.append(_EisLayer(e, u))
            else:
                raise ValueError("unknown layer kind %r" % (item[0],))
        self.e = 1
        for e in es:
            self.e *= e
        self.k = GF(p, self.f)
        for lv, layer in enumerate(self.layers, start=1):
            if layer.kind == "eisenstein":
                layer.redtab = self._build_eis_redtab(layer, lv)
        if self.f > 1:
            ul = self.layers[0]
            xp = self._t_pow(self._gen_tree(1), p, 1)
            pows = [self.t_one(1)]
            for _ in range(self.f - 1):
                pows.append(self.t_mul(pows[-1], xp, 1))
            self._sigma_pows = pows
        self._teich_cache = {}

    # -- tree primitives ----------------------------------------------------

    def t_zero(self, lv):
        if lv == 0:
            return 0
        return (self.t_zero(lv - 1),) * self.layers[lv - 1].deg

    def t_one(self, lv):
        if lv == 0:
            return 1
        low = self.layers[lv - 1].deg - 1
        return (self.t_one(lv - 1),) + (self.t_zero(lv - 1),) * low

    def t_fromint(self, c, lv):
        if lv == 0:
            return c % self.mod
        return (self.t_fromint(c, lv - 1),) + (self.t_zero(lv - 1),) * (self.layers[lv - 1].deg - 1)

    def t_up(self, tree, from_lv, to_lv):
        for lv in range(from_lv + 1, to_lv + 1):
            tree = (tree,) + (self.t_zero(lv - 1),) * (self.layers[lv - 1].deg - 1)
        return tree

    def t_add(self, a, b, lv):
        if lv == 0:
            return (a + b) % self.mod
        if lv == 1:
            m = self.mod
            return tuple((x + y) % m for x, y in zip(a, b))
        return tuple(self.t_add(x, y, lv - 1) for x, y in zip(a, b))

    def t_sub(self, a, b, lv):
        if lv == 0:
            return (a - b) % self.mod
        if lv == 1:
            m = self.mod
            return tuple((x - y) % m for x, y in zip(a, b))
        return tuple(self.t_sub(x, y, lv - 1) for x, y in zip(a, b))

    def t_neg(self, a, lv):
        if lv == 0:
            return (-a) % self.mod
        return tuple(self.t_neg(x, lv - 1) for x in a)

    def t_scal(self, c, a, lv):
        if lv == 0:
            return (c * a) % self.mod
        if lv == 1:
            m = self.mod
            return tuple((c * x) % m for x in a)
        return tuple(self.t_scal(c, x, lv - 1) for x in a)

    def t_is_zero(self, a, lv):
        if lv == 0:
            return a % self.mod == 0
        if lv == 1:
            return not any(a)
        return all(self.t_is_zero(x, lv - 1) for x in a)

    def _mul_lv1(self, a, b):
        """Multiplication in the first layer: plain tuples of ints."""
        m = self.mod
        layer = self.layers[0]
        d = layer.deg
        out = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        out[i + j] = (out[i + j] + ai * bj) % m
        for j in range(2 * d - 2, d - 1, -1):
            c = out[j]
            if c:
                row = layer.redtab[j - d]
                for i in range(d):
                    if row[i]:
                        out[i] = (out[i] + c * row[i]) % m
        return tuple(out[:d])

    def t_mul(self, a, b, lv):
        if lv == 0:
            return (a * b) % self.mod
        if lv == 1:
            return self._mul_lv1(a, b)
        layer = self.layers[lv - 1]
        d = layer.deg
        zero_low = self.t_zero(lv - 1)
        out = [zero_low] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not self.t_is_zero(ai, lv - 1):
                for j, bj in enumerate(b):
                    if not self.t_is_zero(bj, lv - 1):
                        prod = self.t_mul(ai, bj, lv - 1)
                        out[i + j] = self.t_add(out[i + j], prod, lv - 1)
        for j in range(2 * d - 2, d - 1, -1):
            c = out[j]
            if not self.t_is_zero(c, lv - 1):
                row = layer.redtab[j - d]
                for i in range(d):
                    if not self.t_is_zero(row[i], lv - 1):
                        out[i] = self.t_add(out[i], self.t_mul(row[i], c, lv - 1),
                                            lv - 1)
        return tuple(out[:d])

    def _t_pow(self, a, n, lv):
        r = self.t_one(lv)
        b = a
        while n:
            if n & 1:
                r = self.t_mul(r, b, lv)
            b = self.t_mul(b, b, lv)
            n >>= 1
        return r

    def _build_eis_redtab(self, layer, lv):
        low = lv - 1
        e = layer.e
        base = [self.t_scal(self.p, self.t_fromint(c, low), low) for c in layer.u]
        base += [self.t_zero(low)] * (e - len(base))
        tab = [tuple(base)]
        for _ in range(e - 2):
            prev = tab[-1]
            cur = [self.t_zero(low)] + list(prev[:-1])
            top = prev[-1]
            if not self.t_is_zero(top, low):
                for i in range(e):
                    cur[i] = self.t_add(cur[i], self.t_mul(top, tab[0][i], low), low)
            tab.append(tuple(cur))
        return tab

    def t_pcontent(self, a, lv):
        """min_p-valuation over all base coefficients, or None if zero."""
        if lv == 0:
            return _v_int(a, self.p, self.nw)
        best = None
        for x in a:
            v = self.t_pcontent(x, lv - 1)
            if v is not None:
                best = v if best is None else min(best, v)
                if best == 0:
                    return 0
        return best

    def t_pdiv(self, a, k, lv):
        if k == 0:
            return a
        if lv == 0:
            d = self.p ** k
            assert a % d == 0, "tree not divisible by p^%d" % k
            return (a // d) % self.mod
        return tuple(self.t_pdiv(x, k, lv - 1) for x in a)

    def t_val(self, a, lv):
        if lv == 0:
            v = _v_int(a, self.p, self.nw)
            return None if v is None else Fraction(v)
        layer = self.layers[lv - 1]
        best = None
        for i, x in enumerate(a):
            v = self.t_val(x, lv - 1)
            if v is None:
                continue
            if layer.kind == "eisenstein":
                v = v + Fraction(i, layer.e)
            if best is None or v < best:
                best = v
        return best

    def t_frob(self, a, lv, k=1):
        if lv == 0:
            return a
        layer = self.layers[lv - 1]
        if layer.kind == "unramified":
            if self.f == 1:
                return a
            out = self.t_zero(lv)
            cur = a
            for _ in range(k % self.f):
                nxt = self.t_zero(lv)
                for j, aj in enumerate(cur):
                    if aj:
                        nxt = self.t_add(nxt, self.t_scal(aj, self._sigma_pows[j], lv), lv)
                cur = nxt
            return cur
        return tuple(self.t_frob(x, lv - 1, k) for x in a)

    def t_res(self, a, lv):
        """Residue field image; only valid on integral trees."""
        if lv == 0:
            return self.k.from_int(a)
        layer = self.layers[lv - 1]
        if layer.kind == "unramified":
            return self.k.elem([x % self.p for x in a])
        return self.t_res(a[0], lv - 1)

    def _gen_tree(self, lv):
        d = self.layers[lv - 1].deg
        return (self.t_zero(lv - 1), self.t_one(lv - 1)) + (self.t_zero(lv - 1),) * (d - 2)

    # -- public element constructors ----------------------------------------

    @property
    def top(self):
        return len(self.layers)

    def elem(self, tree, shift=0, prec=None):
        cap = Fraction(self.nw - shift)
        if prec is None:
            prec = cap
        prec = min(Fraction(prec), cap)
        c = self.t_pcontent(tree, self.top)
        if c is None:
            return PadicElem(self, self.t_zero(self.top), 0, prec)
        k = min(c, shift)
        if k:
            tree = self.t_pdiv(tree, k, self.top)
            shift -= k
        return PadicElem(self, tree, shift, prec)

    def zero(self):
        return self.elem(self.t_zero(self.top))

    def one(self):
        return self.elem(self.t_one(self.top))

    def from_int(self, c):
        return self.elem(self.t_fromint(c, self.top))

    def from_rational(self, q):
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        shift = 0
        while den % self.p == 0:
            den //= self.p
            shift += 1
        c = (num * pow(den, -1, self.mod)) % self.mod
        return self.elem(self.t_fromint(c, self.top), shift)

    def coerce(self, x):
        if isinstance(x, PadicElem):
            assert x.ring is self, "element from a different tower"
            return x
        if isinstance(x, int):
            return self.from_int(x)
        return self.from_rational(x)

    def pi(self, layer_index=None):
        """Generator of an Eisenstein layer (default: the last one)."""
        eis = [i for i, l in enumerate(self.layers) if l.kind == "eisenstein"]
        if not eis:
            return self.from_int(self.p)
        idx = eis[-1] if layer_index is None else eis[layer_index]
        tree = self.t_up(self._gen_tree(idx + 1), idx + 1, self.top)
        return self.elem(tree)

    def unram_gen(self):
        assert self.f > 1
        return self.elem(self.t_up(self._gen_tree(1), 1, self.top))

    def teichmuller(self, c):
        """Root-of-unity lift of a residue-field element (or small int)."""
        if isinstance(c, int):
            c = self.k.from_int(c)
        if c in self._teich_cache:
            return self._teich_cache[c]
        if self.f == 1:
            y = self.t_fromint(int(c[0]), 0)
            lv = 0
        else:
            y = tuple(int(x) for x in c)
            lv = 1
        q = self.p ** self.f
        for _ in range(self.nw):
            y2 = self._t_pow(y, q, lv)
            if y2 == y:
                break
            y = y2
        out = self.elem(self.t_up(y, lv, self.top))
        self._teich_cache[c] = out
        return out

    def frobenius(self, x, k=1):
        """Coefficient Frobenius, fixing the Eisenstein generators."""
        x = self.coerce(x)
        return PadicElem(self, self.t_frob(x.tree, self.top, k), x.shift, x.prec)

    def residue(self, x):
        v = x.ord()
        if v is not None and v < 0:
            raise ValueError("residue of a non-integral element")
        x = self.elem(x.tree, x.shift, x.prec)
        assert x.shift == 0, "integral element should normalize to shift 0"
        return self.t_res(x.tree, self.top)


class PadicElem:
    """value = tree / p^shift, known modulo p^prec."""

    __slots__ = ("ring", "tree", "shift", "prec", "_ord")

    def __init__(self, ring, tree, shift, prec):
        self.ring = ring
        self.tree = tree
        self.shift = shift
        self.prec = prec
        self._ord = False  # not yet computed

    def ord(self):
        if self._ord is False:
            v = self.ring.t_val(self.tree, self.ring.top)
            self._ord = None if v is None else v - self.shift
        return self._ord

    def is_zero_to(self, margin):
        v = self.ord()
        return v is None or v >= margin

    def __add__(self, other):
        r = self.ring
        other = r.coerce(other)
        s = max(self.shift, other.shift)
        a = r.t_scal(r.p ** (s - self.shift), self.tree, r.top)
        b = r.t_scal(r.p ** (s - other.shift), other.tree, r.top)
        return r.elem(r.t_add(a, b, r.top), s, min(self.prec, other.prec))

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return PadicElem(self.ring, self.ring.t_neg(self.tree, self.ring.top),
                         self.shift, self.prec)

    def __sub__(self, other):
        return self.__add__(self.ring.coerce(other).__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        r = self.ring
        other = r.coerce(other)
        va = self.ord()
        vb = other.ord()
        la = self.prec if va is None else va    # lower bounds for the orders
        lb = other.prec if vb is None else vb
        prec = min(self.prec + lb, other.prec + la)
        tree = r.t_mul(self.tree, other.tree, r.top)
        return r.elem(tree, self.shift + other.shift, prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, n):
        r = self.ring
        if n < 0:
            return self.inv() ** (-n)
        out = r.one()
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def inv(self):
        r = self.ring
        v = self.ord()
        if v is None:
            raise ZeroDivisionError("element is zero to working precision")
        exps = _monomial_exponents_for(r, -v)
        mono = r.one()
        for idx, a in exps.items():
            if a:
                mono = mono * r.pi(idx) ** a
        y = self * mono            # now ord(y) is an integer m, y = p^m * unit
        m = y.ord()
        assert m is not None and m.denominator == 1
        m = int(m)
        tree = r.t_pdiv(y.tree, m + y.shift, r.top)
        uinv = r.elem(_newton_unit_inv(r, tree))
        out = mono * uinv          # inverse up to the factor p^-m
        if m >= 0:
            out = r.elem(out.tree, out.shift + m, None)
        else:
            out = r.elem(r.t_scal(r.p ** (-m), out.tree, r.top), out.shift, None)
        return r.elem(out.tree, out.shift, self.prec - 2 * v)

    def __truediv__(self, other):
        return self * self.ring.coerce(other).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def unit_eq(self, other, margin=None):
        """Equality up to the given absolute precision margin."""
        d = self - self.ring.coerce(other)
        if margin is None:
            margin = min(self.prec, d.prec)
        return d.is_zero_to(margin)

    def __repr__(self):
        v = self.ord()
        return "<padic ord=%s prec=%s>" % ("None" if v is None else str(v), self.prec)


def _monomial_exponents_for(ring, target):
    """Exponents a_i >= 0 per Eisenstein layer with sum a_i/e_i = target mod 1."""
    eis = [(i, l.e) for i, l in enumerate(ring.layers) if l.kind == "eisenstein"]
    eis_idx = {}
    E = ring.e
    t = int((Fraction(target) % 1) * E)
    out = {}
    for pos, (i, e) in enumerate(eis):
        co = E // e
        a = (t * pow(co, -1, e)) % e
        out[pos] = a
    # sanity: sum a/e = target mod 1
    s = sum(Fraction(a, eis[pos][1]) for pos, a in out.items())
    assert (s - Fraction(target)) % 1 == 0
    return out


def _newton_unit_inv(ring, tree):
    r = ring
    res = r.t_res(tree, r.top)
    x = r.t_up(_lift_res(r, r.k.inv(res)), 1 if r.f > 1 else 0, r.top)
    two = r.t_fromint(2, r.top)
    digits = 1
    total = r.nw * r.e
    while digits < total:
        x = r.t_mul(x, r.t_sub(two, r.t_mul(tree, x, r.top), r.top), r.top)
        digits *= 2
    return x


def _lift_res(ring, res):
    if ring.f == 1:
        return int(res[0]) % ring.mod
    return tuple(int(c) for c in res)


# ---------------------------------------------------------------------------
# public operations


def make_tower(p, N=None, spec=(), guard=16):
    return TowerRing(p, working_prec(N), spec, guard)


def ord_of(x):
    return x.ord()


def frobenius(x, k=1):
    """The Frobenius on the unramified subring; errors on ramified input."""
    r = x.ring
    tree = x.tree
    lv = r.top
    while lv > 0 and r.layers[lv - 1].kind == "eisenstein":
        for c in tree[1:]:
            if not r.t_is_zero(c, lv - 1):
                raise ValueError("element has ramified components")
        tree = tree[0]
        lv -= 1
    return r.frobenius(x, k)


def teichmuller(ring, c):
    return ring.teichmuller(c)


def _sparse_eval(ring, terms, x, powers):
    """Evaluate sum of c * x^n over the (n, c) terms, caching powers of x."""

    def pw(n):
        out = powers.get(n)
        if out is None:
            if n == 0:
                out = ring.one()
            elif n == 1:
                out = x
            else:
                h = pw(n // 2)
                out = h * h
                if n & 1:
                    out = out * x
            powers[n] = out
        return out

    acc = None
    for n, c in terms:
        t = c * pw(n) if n else c
        acc = t if acc is None else acc + t
    return acc if acc is not None else ring.zero()


def hensel_root(coeffs, x0, max_iter=64):
    """Newton iteration for a simple root near x0.

    coeffs are the polynomial coefficients, ascending; the usual criterion
    ord f(x0) > 2 ord f'(x0) is enforced before iterating.  Zero terms are
    skipped and the derivative inverse is refined rather than recomputed.
    """
    ring = x0.ring
    cs = [ring.coerce(c) for c in coeffs]
    terms = [(i, c) for i, c in enumerate(cs) if c.ord() is not None]
    dterms = [(i - 1, c * i) for i, c in enumerate(cs)
              if i and c.ord() is not None]
    powers = {}
    fx = _sparse_eval(ring, terms, x0, powers)
    dfx = _sparse_eval(ring, dterms, x0, powers)
    a = fx.ord()
    b = dfx.ord()
    if b is None:
        raise ValueError("derivative vanishes to precision")
    if a is not None and a <= 2 * b:
        raise ValueError("Hensel criterion ord f > 2 ord f' fails (%s <= 2*%s)" % (a, b))
    x = x0
    dinv = None
    two = ring.from_int(2)
    for _ in range(max_iter):
        powers = {}
        fx = _sparse_eval(ring, terms, x, powers)
        if fx.ord() is None:
            break
        dfx = _sparse_eval(ring, dterms, x, powers)
        if dinv is None:
            dinv = dfx.inv()
        else:
            dinv = dinv * (two - dfx * dinv)
            dinv = dinv * (two - dfx * dinv)
        step = fx * dinv
        x = x - step
        if step.ord() is None:
            break
    return x


# -- square classes (p = 2) -------------------------------------------------


@dataclass
class SquareClassData:
    square: bool
    v_pi: int
    coords: dict          # (level, basis_index) -> 1 for odd levels
    as_bit: int
    first_odd_level: int | None


def _require_square_ready(ring):
    if ring.p != 2:
        raise NotImplementedError("square classes implemented for p = 2")
    eis = [l for l in ring.layers if l.kind == "eisenstein"]
    if len(eis) > 1:
        raise NotImplementedError("square classes need a single Eisenstein layer")


def square_class_decompose(u):
    """Digit-by-digit reduction of u against the filtered square-class basis.

    Returns SquareClassData; the coordinates are with respect to the classes
    of pi, of 1 + b_i pi^m for odd m < 2*ord_pi(2) and b_i the residue-field
    monomial basis, and of the fixed Artin-Schreier non-residue at 2*ord_pi(2).
    """
    ring = u.ring
    _require_square_ready(ring)
    k = ring.k
    e2 = ring.e  # ord_pi(2)
    v = u.ord()
    if v is None:
        raise ValueError("square class of zero requested")
    v_pi = v * ring.e
    assert v_pi.denominator == 1
    v_pi = int(v_pi)
    if (u.prec - v) * ring.e < 2 * e2 + 2:
        raise PrecisionError("need %s more pi-digits to decide squareness"
                             % ((2 * e2 + 2) - (u.prec - v) * ring.e))
    pi = ring.pi()
    cur = u * pi.inv() ** v_pi if v_pi >= 0 else u * pi ** (-v_pi)
    # normalize leading unit to 1 (every residue is a square for p = 2)
    c0 = ring.residue(cur)
    root = k.sqrt(c0)
    cur = cur * ring.teichmuller(root).inv() ** 2
    coords = {}
    as_bit = 0
    first_odd = None
    basis = [k.elem([0] * i + [1]) for i in range(k.f)]
    while True:
        t = cur - 1
        lv = t.ord()
        if lv is None or lv * ring.e > 2 * e2:
            square = True
            break
        m = lv * ring.e
        assert m.denominator == 1
        m = int(m)
        a = ring.residue(t * pi.inv() ** m)
        if m == 2 * e2:
            d = k.solve_artin_schreier(k.one, a)
            if d is None:
                as_bit = 1
                square = False
                break
            w = ring.one() + ring.teichmuller(d) * pi ** e2
            cur = cur * w * w
            continue
        if m % 2 == 0:
            d = k.sqrt(a)
            w = ring.one() + ring.teichmuller(d) * pi ** (m // 2)
            cur = cur * w * w
        else:
            if first_odd is None:
                first_odd = m
            for i, b in enumerate(basis):
                # record the F_2-coordinates of a and clear the level
                if a[i]:
                    coords[(m, i)] = 1
            lift = ring.zero()
            for i, b in enumerate(basis):
                if a[i]:
                    lift = lift + ring.teichmuller(b)
            cur = cur * (ring.one() + lift * pi ** m)
    square = square and v_pi % 2 == 0 and not coords and not as_bit
    return SquareClassData(square=square, v_pi=v_pi, coords=coords,
                           as_bit=as_bit, first_odd_level=first_odd)


def is_square(u):
    """Whether u is a square in the tower's fraction field (p = 2)."""
    return square_class_decompose(u).square


def signature(u):
    """F_2-coordinate vector of the square class of u."""
    ring = u.ring
    data = square_class_decompose(u)
    e2 = ring.e
    bits = [data.v_pi % 2]
    for m in range(1, 2 * e2, 2):
        for i in range(ring.f):
            bits.append(data.coords.get((m, i), 0))
    bits.append(data.as_bit)
    return tuple(bits)


class KummerGroup:
    """A finitely generated subgroup of F^x/(F^x)^2 with reduced basis."""

    def __init__(self, field, gens):
        self.field = field
        self.gens = list(gens)
        self.basis = []
        self._pivots = []  # (pivot_index, sigvector) rows, reduced
        self.relations = []
        for g in self.gens:
            sig = signature(g)
            red = self._reduce(sig)
            if any(red):
                piv = next(i for i, b in enumerate(red) if b)
                self._pivots.append((piv, red))
                self._pivots.sort()
                self.basis.append(g)
            self.relations.append(sig)

    def _reduce(self, sig):
        v = list(sig)
        for piv, row in self._pivots:
            if v[piv]:
                v = [(a + b) % 2 for a, b in zip(v, row)]
        return tuple(v)

    @property
    def rank(self):
        return len(self._pivots)

    def contains(self, elem):
        return not any(self._reduce(signature(elem)))

    def contains_signature(self, sig):
        return not any(self._reduce(sig))

    def same_group(self, other):
        if self.rank != other.rank:
            return False
        return all(other.contains_signature(sig) for _, sig in self._pivots) and \
            all(self.contains_signature(sig) for _, sig in other._pivots)


def kummer_span(elems):
    if not elems:
        raise ValueError("need at least one element")
    ring = elems[0].ring
    return KummerGroup(ring, [ring.coerce(x) for x in elems])
