"""Integer-side checks: discriminants, favorable quintics, stem-field counts.

Polynomials are coefficient sequences of ints, ascending degree.  The
symmetric-group certificates are one-sided: factorization degree patterns
modulo sampled primes can prove the Galois group is the full symmetric
group but never disprove it.

The stem-field machinery builds the order 120*2^11 similitude group over
Z/4 from transvection lifts of the degree-5 permutation model, the
congruence kernel and one similitude generator, then counts index-2
subgroups of the preimage of Sym{1,2,3}, the faithful ones among them, and
the ones whose quadratic extension is ramified over a single distinguished
prime.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import permutations

import numpy as np

from .spmod import (ModMatrix, closure, congruence_level, mat_inv, mat_mul,
                    sm_standard_vectors, sp_kernel_gens, transvection)

# ---------------------------------------------------------------------------
# integer polynomial utilities


def poly_deg(f):
    d = len(f) - 1
    while d > 0 and f[d] == 0:
        d -= 1
    return d


def disc(f):
    """Discriminant via the Sylvester resultant of f and f'."""
    f = [int(c) for c in f[:poly_deg(f) + 1]]
    n = len(f) - 1
    if n < 2:
        raise ValueError("degree must be at least 2")
    fp = [i * f[i] for i in range(1, len(f))]
    m = len(fp) - 1
    size = n + m
    rows = []
    for i in range(m):
        rows.append([0] * i + list(reversed(f)) + [0] * (size - n - 1 - i))
    for i in range(n):
        rows.append([0] * i + list(reversed(fp)) + [0] * (size - m - 1 - i))
    res = _det_fraction(rows)
    sign = (-1) ** (n * (n - 1) // 2)
    out = Fraction(sign) * res / f[-1]
    assert out.denominator == 1
    return int(out)


def _det_fraction(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    size = len(M)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, size):
            if M[r][c]:
                fac = M[r][c] * inv
                for j in range(c, size):
                    M[r][j] -= fac * M[c][j]
    return det


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, valid far beyond the sizes used here."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def odd_part(n):
    n = abs(n)
    while n and n % 2 == 0:
        n //= 2
    return n


# ---------------------------------------------------------------------------
# factorization degree patterns mod p


def _pp_trim(a, p):
    while len(a) > 1 and a[-1] % p == 0:
        a = a[:-1]
    return a


def _pp_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _pp_trim(out, p)


def _pp_mod(a, b, p):
    a = [c % p for c in a]
    b = _pp_trim([c % p for c in b], p)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        if c:
            for j in range(len(b)):
                a[i + j] = (a[i + j] - c * b[j]) % p
    return _pp_trim(a[:len(b) - 1] or [0], p)


def _pp_gcd(a, b, p):
    a, b = _pp_trim([c % p for c in a], p), _pp_trim([c % p for c in b], p)
    while b != [0]:
        a, b = b, _pp_mod(a, b, p)
    inv = pow(a[-1], -1, p)
    return [(c * inv) % p for c in a]


def _pp_powmod(base, e, mod, p):
    r = [1]
    b = _pp_mod(base, mod, p)
    while e:
        if e & 1:
            r = _pp_mod(_pp_mul(r, b, p), mod, p)
        b = _pp_mod(_pp_mul(b, b, p), mod, p)
        e >>= 1
    return r


def factor_degrees(f, p):
    """Multiset of irreducible factor degrees of f mod p, or None.

    None means the reduction is unusable: leading coefficient divisible by
    p or not squarefree mod p.  Distinct-degree factorization only; the
    degree pattern is all the Galois sampling needs.
    """
    if f[-1] % p == 0:
        return None
    fp = [c % p for c in f]
    dfp = [(i * f[i]) % p for i in range(1, len(f))]
    if _pp_trim(dfp, p) == [0]:
        return None
    if poly_deg(_pp_gcd(fp, dfp, p)) > 0:
        return None
    degs = []
    cur = [(c * pow(fp[-1], -1, p)) % p for c in fp]
    d = 0
    x = [0, 1]
    while poly_deg(cur) > 0:
        d += 1
        if 2 * d > poly_deg(cur):
            degs.append(poly_deg(cur))
            break
        xq = _pp_powmod(x, p ** d, cur, p)
        diff = [(a - b) % p for a, b in
                zip(xq + [0] * (2 - len(xq)), x + [0] * max(0, len(xq) - 2))]
        g = _pp_gcd(cur, _pp_trim(diff, p), p)
        dd = poly_deg(g)
        if dd:
            degs.extend([d] * (dd // d))
            cur = _pp_divexact(cur, g, p)
    return sorted(degs)


def _pp_divexact(a, b, p):
    a = [c % p for c in a]
    b = _pp_trim([c % p for c in b], p)
    inv = pow(b[-1], -1, p)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv) % p
        q[i] = c
        if c:
            for j in range(len(b)):
                a[i + j] = (a[i + j] - c * b[j]) % p
    assert _pp_trim(a[:len(b) - 1] or [0], p) == [0]
    return _pp_trim(q, p)


def _primes(bound):
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(bound + 1) if sieve[i]]


def sm_certify(f, prime_bound=500):
    """One-sided full-symmetric-group certificate from cycle types.

    Looks for an m-cycle, a q-cycle fixing the rest for a prime q > m/2,
    and a transposition pattern [2, 1, ..., 1].  Returns a certificate dict
    or the string 'inconclusive'; never asserts a smaller group.
    """
    m = poly_deg(f)
    d = disc(f)
    if d == 0:
        return "inconclusive"
    witnesses = {}
    for p in _primes(prime_bound):
        if d % p == 0 or f[-1] % p == 0:
            continue
        degs = factor_degrees(f, p)
        if degs is None:
            continue
        if degs == [m] and "m_cycle" not in witnesses:
            witnesses["m_cycle"] = (p, degs)
        if "q_cycle" not in witnesses:
            big = [x for x in degs if x > 1]
            if len(big) == 1 and is_prime(big[0]) and m / 2 < big[0] < m:
                witnesses["q_cycle"] = (p, degs)
        if "transposition" not in witnesses and sorted(degs) == [1] * (m - 2) + [2]:
            witnesses["transposition"] = (p, degs)
        if len(witnesses) == 3:
            return {"group": "S%d" % m, "witnesses": witnesses}
    return "inconclusive"


# ---------------------------------------------------------------------------
# favorable quintics and the semistable table


def newton_slopes_2(f):
    """Slopes of the 2-adic Newton polygon of a monic integer polynomial."""
    pts = []
    for i, c in enumerate(f):
        if c:
            v = 0
            cc = abs(c)
            while cc % 2 == 0:
                cc //= 2
                v += 1
            pts.append((i, v))
    # lower convex hull from the left
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    slopes = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slopes.extend([Fraction(y1 - y2, x2 - x1)] * (x2 - x1))
    return slopes


def _shift_poly(f, c):
    out = [0] * len(f)
    for j, a in enumerate(f):
        if a:
            binom = 1
            for i in range(j + 1):
                out[i] += a * binom * c ** (j - i)
                binom = binom * (j - i) // (i + 1)
    return out


def two_adic_ramification_is_5(f):
    """Whether the quintic field has ramification index 5 over 2.

    Works on the monic transform and looks for a translate by 0 or 1 whose
    Newton polygon is a single segment of slope k/5 with k prime to 5.
    """
    n = poly_deg(f)
    lc = f[n]
    monic = [f[i] * lc ** (n - 1 - i) for i in range(n)] + [1]
    for c in (0, 1):
        slopes = newton_slopes_2(_shift_poly(monic, c))
        if len(set(slopes)) == 1:
            s = -slopes[0]
            if s > 0 and s.denominator == 5:
                return True
    return False


@dataclass
class FavorableReport:
    disc_value: int
    disc_shape_16N: bool
    N: int
    N_prime: bool
    e2_is_5: bool
    favorable: bool
    certificate: dict = field(default_factory=dict)


def favorable_check(f):
    """Report whether a quintic is favorable: disc = +-16N, N prime, e_2 = 5."""
    if poly_deg(f) != 5:
        raise ValueError("need a quintic")
    d = disc(f)
    if d == 0:
        raise ValueError("polynomial is not squarefree")
    cert = sm_certify(f)
    irreducible = cert != "inconclusive" or _irreducible_by_degrees(f)
    if not irreducible:
        raise ValueError("polynomial is reducible over the rationals")
    shape = d % 16 == 0 and odd_part(d) == abs(d) // 16
    N = abs(d) // 16 if shape else odd_part(d)
    n_prime = is_prime(N)
    e2 = two_adic_ramification_is_5(f)
    fav = shape and n_prime and e2
    return FavorableReport(disc_value=d, disc_shape_16N=shape, N=N,
                           N_prime=n_prime, e2_is_5=e2, favorable=fav,
                           certificate={"galois": cert})


def _irreducible_by_degrees(f, prime_bound=300):
    """Degree-pattern sieve: True when only the full degree is compatible."""
    m = poly_deg(f)
    compatible = {tuple(sorted(part)) for part in _partitions(m)}
    for p in _primes(prime_bound):
        if f[-1] % p == 0:
            continue
        degs = factor_degrees(f, p)
        if degs is None:
            continue
        if degs == [m]:
            return True
        compatible = {part for part in compatible if _refines(degs, part)}
        if compatible == {(m,)}:
            return True
    return False


def _partitions(m, lo=1):
    if m == 0:
        yield ()
        return
    for first in range(lo, m + 1):
        for rest in _partitions(m - first, first):
            yield (first,) + rest


def _refines(degs, part):
    """Whether the degree multiset can be grouped into the partition blocks."""
    if sum(degs) != sum(part):
        return False

    def place(remaining, targets):
        if not remaining:
            return all(t == 0 for t in targets)
        x = remaining[0]
        seen = set()
        for i, t in enumerate(targets):
            if t >= x and t not in seen:
                seen.add(t)
                nt = list(targets)
                nt[i] -= x
                if place(remaining[1:], nt):
                    return True
        return False

    return place(sorted(degs, reverse=True), list(part))


def load_table1():
    data = json.loads(resources.files("glab.data").joinpath("table1.json")
                      .read_text())
    return [(row["N"], row["q"], row["coeffs"]) for row in data["rows"]]


def table1_check(row):
    """Verify one table row: N, q prime and odd part of lc^2 disc = q^4 N.

    The leading-coefficient factor makes the quantity the discriminant of
    the associated binary sextic, which is what stays stable across models;
    powers of 2 are normalized away.
    """
    N, q, coeffs = row
    if poly_deg(coeffs) != 5:
        raise ValueError("malformed row: need a quintic")
    d = disc(coeffs)
    lc = coeffs[poly_deg(coeffs)]
    value = odd_part(lc * lc * d)
    ok = is_prime(N) and is_prime(q) and value == q ** 4 * N
    return {"N": N, "q": q, "N_prime": is_prime(N), "q_prime": is_prime(q),
            "odd_part": value, "expected": q ** 4 * N, "pass": ok}


# ---------------------------------------------------------------------------
# the stem-field group

from .spmod import decode_mat, encode_mat  # noqa: E402  (shared encodings)


@dataclass
class SfieldGroup:
    order: int
    gens: list
    elements: tuple          # sorted encoded matrices mod 4
    H: set                   # encoded members of the Sym{1,2,3} preimage
    sigma: ModMatrix
    perm_table: dict         # encoded mod-2 matrix -> permutation of 1..5

    _mat_cache: dict = field(default_factory=dict, repr=False)
    _inv_cache: dict = field(default_factory=dict, repr=False)

    def mat(self, code):
        m = self._mat_cache.get(code)
        if m is None:
            m = decode_mat(code, 4, 4)
            self._mat_cache[code] = m
        return m

    def mul(self, a, b):
        return encode_mat(mat_mul(self.mat(a), self.mat(b), 4), 4)

    def inv(self, code):
        m = self._inv_cache.get(code)
        if m is None:
            m = encode_mat(mat_inv(self.mat(code), 2, 2), 4)
            self._inv_cache[code] = m
        return m

    def perm(self, code):
        bar = tuple(tuple(x % 2 for x in row) for row in self.mat(code))
        return self.perm_table[encode_mat(bar, 2)]

    @property
    def ident(self):
        return encode_mat(tuple(tuple(int(i == j) for j in range(4))
                                for i in range(4)), 4)


def _perm_from_matrix(matbar, vecs2):
    """The permutation of {1..5} induced on the pair vectors v_ij."""
    imgs = {}
    for (i, j), v in vecs2.items():
        w = tuple(sum(matbar[r][c] * v[c] for c in range(4)) % 2 for r in range(4))
        tgt = next(((k, l) for (k, l), u in vecs2.items() if u == w), None)
        if tgt is None:
            return None
        imgs[(i, j)] = tgt
    perm = {}
    for i in range(1, 6):
        pairs = [imgs[key] for key in imgs if i in key]
        common = set(pairs[0])
        for pr in pairs[1:]:
            common &= set(pr)
        if len(common) != 1:
            return None
        perm[i] = common.pop()
    return tuple(perm[i] for i in range(1, 6))


def build_sfield_group(bound=400000):
    """The preimage of the degree-5 model in the mod-4 similitude group.

    Generators: the ten transvection lifts, a congruence-kernel basis and
    one similitude generator of factor 3.  The permutation labels come from
    the action on the ten pair vectors.
    """
    p, n = 2, 2
    vecs = sm_standard_vectors(5, p, n)
    vecs2 = {key: tuple(c % 2 for c in v) for key, v in vecs.items()}
    trans = {key: transvection(vecs[key], 1, p, n) for key in sorted(vecs)}
    kern = sp_kernel_gens(2, p, n)
    sim = ModMatrix(2, p, n, ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3)))
    gens = list(trans.values()) + kern + [sim]
    res = closure(gens, bound, with_elements=True)
    assert not res.exceeded
    codes = res.elements
    perm_table = {}
    for code in codes:
        mat = decode_mat(code, 4, 4)
        bar = tuple(tuple(x % 2 for x in row) for row in mat)
        key = encode_mat(bar, 2)
        if key not in perm_table:
            perm = _perm_from_matrix(bar, vecs2)
            assert perm is not None, "element does not normalize the model"
            perm_table[key] = perm
    G = SfieldGroup(order=len(codes), gens=gens, elements=codes, H=set(),
                    sigma=trans[(4, 5)], perm_table=perm_table)
    G.H.update(c for c in codes if _fixes_45(G.perm(c)))
    return G


def _fixes_45(perm):
    return perm[3] == 4 and perm[4] == 5


def _squares_subgroup(G, codes_H):
    squares = sorted({G.mul(c, c) for c in codes_H})
    D = {G.ident}
    frontier = [s for s in squares if s not in D]
    D.update(frontier)
    while frontier:
        nxt = []
        for a in frontier:
            for s in squares:
                c = G.mul(a, s)
                if c not in D:
                    D.add(c)
                    nxt.append(c)
        frontier = nxt
    return D


def _abelianization_coords(G, codes_H):
    """F_2 coordinates of H modulo the subgroup generated by all squares."""
    D = _squares_subgroup(G, codes_H)
    label = {}
    reps = []
    for c in codes_H:
        if c not in label:
            idx = len(reps)
            reps.append(c)
            for d in D:
                label[G.mul(c, d)] = idx
    coords = {label[G.ident]: 0}
    dim = 0
    for c in codes_H:
        lab = label[c]
        if lab in coords:
            continue
        bit = 1 << dim
        dim += 1
        for l2, v in list(coords.items()):
            coords[label[G.mul(reps[l2], c)]] = v | bit
    assert len(coords) == len(reps) == 2 ** dim
    return {c: coords[label[c]] for c in codes_H}, dim


def _coset_data(G):
    """Right-coset representatives of H and the sigma orbit structure."""
    from .spmod import _encode_np
    Hmats = np.array([decode_mat(c, 4, 4) for c in sorted(G.H)], dtype=np.int64)
    reps = []
    index_of = {}
    for c in G.elements:
        if c in index_of:
            continue
        idx = len(reps)
        reps.append(c)
        prods = np.matmul(Hmats, np.array(G.mat(c), dtype=np.int64)) % 4
        for code in _encode_np(prods, 4, 4):
            index_of[int(code)] = idx
    sigma = encode_mat(G.sigma.mat, 4)
    orbits = []
    seen = set()
    for i, t in enumerate(reps):
        if i in seen:
            continue
        orb = [i]
        seen.add(i)
        cur = index_of[G.mul(t, sigma)]
        while cur not in seen:
            orb.append(cur)
            seen.add(cur)
            cur = index_of[G.mul(reps[cur], sigma)]
        orbits.append(orb)
    trivial = next(i for i, orb in enumerate(orbits)
                   if index_of[G.ident] in orb)
    return reps, index_of, orbits, trivial


def _kernel_module(G):
    """The congruence kernel as an F_2 module with its conjugation action.

    Returns (code_of_vector, minimal submodules as vector sets).  The
    kernel is elementary abelian with basis I + 2B_i over a basis of the
    symplectic Lie algebra together with the similitude direction; the
    conjugation action factors through the mod-2 quotient, so the ten
    transvection generators suffice.
    """
    from .spmod import sp_lie_basis
    basisC = [b.mat for b in sp_lie_basis(2, 2)]
    basisC.append(((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    dim = len(basisC)

    def c_to_bits(C):
        v = 0
        for i in range(4):
            for j in range(4):
                v = (v << 1) | (C[i][j] & 1)
        return v

    # reduced XOR basis with coordinate tags
    red_basis = []
    for i, C in enumerate(basisC):
        b, g = c_to_bits(C), 1 << i
        for pb, pg in red_basis:
            if b ^ pb < b:
                b, g = b ^ pb, g ^ pg
        assert b, "kernel basis is dependent"
        red_basis.append((b, g))

    def solve_bits(target):
        t, g = target, 0
        for pb, pg in red_basis:
            if t ^ pb < t:
                t, g = t ^ pb, g ^ pg
        assert t == 0, "conjugate left the kernel module"
        return g

    # conjugation action of the ten transvection generators, columnwise
    actions = []
    for gmat in [g.mat for g in G.gens[:10]]:
        ginv = mat_inv(gmat, 2, 2)
        cols = []
        for C in basisC:
            M = tuple(tuple((2 * C[i][j] + int(i == j)) % 4 for j in range(4))
                      for i in range(4))
            conj = mat_mul(mat_mul(gmat, M, 4), ginv, 4)
            D = tuple(tuple(((conj[i][j] - int(i == j)) // 2) % 2
                            for j in range(4)) for i in range(4))
            cols.append(solve_bits(c_to_bits(D)))
        actions.append(cols)

    def act(cols, v):
        out = 0
        for i in range(dim):
            if (v >> i) & 1:
                out ^= cols[i]
        return out

    def span_of(v):
        """Smallest action-stable subspace containing v, as a vector set."""
        pivots = []
        stack = [v]
        while stack:
            w = stack.pop()
            for pv in pivots:
                w = min(w, w ^ pv)
            if not w:
                continue
            pivots.append(w)
            for cols in actions:
                stack.append(act(cols, w))
        vecs = {0}
        for pv in pivots:
            vecs |= {x ^ pv for x in vecs}
        return frozenset(vecs)

    spans = {}
    for v in range(1, 2 ** dim):
        spans.setdefault(v, span_of(v))
    distinct = set(spans.values())
    minimal = [sp for sp in distinct
               if not any(other < sp for other in distinct)]

    def code_of(v):
        C = [[0] * 4 for _ in range(4)]
        for i in range(dim):
            if (v >> i) & 1:
                B = basisC[i]
                for a in range(4):
                    for b in range(4):
                        C[a][b] ^= B[a][b] & 1
        M = tuple(tuple((2 * C[i][j] + int(i == j)) % 4 for j in range(4))
                  for i in range(4))
        return encode_mat(M, 4)

    return code_of, minimal


def stem_field_counts(G):
    """(index-2 subgroups of H, faithful ones, ramification-clean ones).

    Faithfulness is core-triviality of the coset action.  Any normal
    subgroup inside the Sym{1,2,3} preimage has trivial permutation image,
    so the core lives in the congruence kernel and core-triviality reduces
    to: every minimal submodule of the kernel meets the nontrivial side of
    the character.  A subgroup is ramification-clean when the stabilizer
    generator t sigma^a t^-1 of every non-distinguished sigma orbit lands
    inside it.
    """
    codes_H = sorted(G.H)
    elem_vec, dim = _abelianization_coords(G, codes_H)
    n_index2 = 2 ** dim - 1
    reps, index_of, orbits, trivial = _coset_data(G)
    sigma = encode_mat(G.sigma.mat, 4)
    # stabilizer generators per orbit
    orbit_stab = []
    for orb in orbits:
        t = reps[orb[0]]
        s_a = sigma
        for _ in range(len(orb) - 1):
            s_a = G.mul(s_a, sigma)
        y = G.mul(G.mul(t, s_a), G.inv(t))
        assert y in G.H, "orbit period must return to the base coset"
        orbit_stab.append(y)
    code_of, minimal = _kernel_module(G)
    minimal_vecsets = [[elem_vec[code_of(v)] for v in sp if v] for sp in minimal]
    n_faithful = 0
    n_good = 0
    for chi in range(1, 2 ** dim):
        faithful = all(any(bin(vec & chi).count("1") % 2 for vec in vs)
                       for vs in minimal_vecsets)
        good = all(bin(elem_vec[orbit_stab[i]] & chi).count("1") % 2 == 0
                   for i in range(len(orbits)) if i != trivial)
        if good:
            assert faithful, "a ramification-clean subgroup must be faithful"
        n_faithful += faithful
        n_good += good
    return n_index2, n_faithful, n_good


def fixed_prime_count(G=None, s=(3, 4)):
    """Orbits over the ramified rational prime stable under the symmetry.

    Counts the right-sigma orbits on cosets of Sym{1,2,3} in the degree-5
    symmetric group that the induced automorphism maps to themselves; the
    default transposition is (45) in 0-based form (3, 4).  Returns the pair
    (stable_count, total_orbit_count).
    """
    base = list(range(5))
    swap = list(base)
    swap[s[0]], swap[s[1]] = swap[s[1]], swap[s[0]]
    sperm = tuple(swap)

    def compose(a, b):
        return tuple(a[b[i]] for i in range(5))

    group = list(permutations(range(5)))
    HB = [g for g in group if g[3] == 3 and g[4] == 4]

    def coset_key(t):
        return min(compose(h, t) for h in HB)

    keys = sorted({coset_key(t) for t in group})
    orbits = []
    seen = set()
    for key in keys:
        if key in seen:
            continue
        orb = {key}
        cur = coset_key(compose(key, sperm))
        while cur not in orb:
            orb.add(cur)
            cur = coset_key(compose(cur, sperm))
        orbits.append(orb)
        seen |= orb
    stable = 0
    for orb in orbits:
        image = {coset_key(compose(sperm, t)) for t in orb}
        if image == orb:
            stable += 1
    return stable, len(orbits)
