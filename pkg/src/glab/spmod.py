"""Matrix groups over Z/p^n: similitude checks, transvections, closure.

All matrices here are taken with respect to the standard symplectic basis,
so the Gram matrix is [[0, I], [-I, 0]] mod p^n.  Generator families coming
from permutation models are first moved into standard coordinates with
symplectic_basis().

closure() is a breadth-first orbit computation over canonically encoded
matrices; with numpy it handles groups of a few million elements.  For the
congruence-layer certificates the kernel of reduction is probed through
Schreier generators instead of a full enumeration.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .f2sym import SpLieElem, SympSpace, f_map, sm_model, sp_dim, sp_member

DEFAULT_BOUND = 2 * 10 ** 7


def standard_gram_mod(g, modulus):
    n = 2 * g
    return tuple(tuple((1 if j == i + g else 0) if i < g else
                       ((modulus - 1) if j == i - g else 0)
                       for j in range(n)) for i in range(n))


def mat_mul(a, b, m):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % m
                       for j in range(n)) for i in range(n))


def mat_vec(a, v, m):
    n = len(a)
    return tuple(sum(a[i][k] * v[k] for k in range(n)) % m for i in range(n))


def identity(n, m=None):
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_inv(a, p, n_level):
    """Inverse mod p^n via mod-p elimination plus Newton lifting."""
    m = p ** n_level
    size = len(a)
    # invert mod p
    aug = [[a[i][j] % p for j in range(size)] + [int(i == j) for j in range(size)]
           for i in range(size)]
    for c in range(size):
        piv = next((r for r in range(c, size) if aug[r][c] % p), None)
        if piv is None:
            raise ValueError("matrix not invertible mod p")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = pow(aug[c][c], -1, p)
        aug[c] = [(x * inv) % p for x in aug[c]]
        for r in range(size):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(x - f * y) % p for x, y in zip(aug[r], aug[c])]
    x = tuple(tuple(row[size:]) for row in aug)
    mm = p
    while mm < m:
        mm = mm * mm
        two_i = tuple(tuple((2 * int(i == j) - sum(a[i][k] * x[k][j] for k in range(size))) % m
                            for j in range(size)) for i in range(size))
        x = mat_mul(x, two_i, m)
    return x


@dataclass(frozen=True)
class ModMatrix:
    """A 2g x 2g matrix over Z/p^n, standard symplectic coordinates."""

    g: int
    p: int
    n: int
    mat: tuple

    @property
    def modulus(self):
        return self.p ** self.n

    def __mul__(self, other):
        assert (self.g, self.p, self.n) == (other.g, other.p, other.n)
        return ModMatrix(self.g, self.p, self.n, mat_mul(self.mat, other.mat, self.modulus))

    def inv(self):
        return ModMatrix(self.g, self.p, self.n, mat_inv(self.mat, self.p, self.n))

    def reduce(self, n2):
        assert n2 <= self.n
        m2 = self.p ** n2
        return ModMatrix(self.g, self.p, n2,
                         tuple(tuple(x % m2 for x in row) for row in self.mat))

    def is_identity(self):
        return self.mat == identity(2 * self.g)


class NotSimilitude(ValueError):
    pass


def gsp_check(A):
    """The similitude factor nu with A^t J A = nu * J, or NotSimilitude."""
    m = A.modulus
    J = standard_gram_mod(A.g, m)
    n = 2 * A.g
    s = mat_mul(tuple(tuple(A.mat[j][i] for j in range(n)) for i in range(n)),
                mat_mul(J, A.mat, m), m)
    nu = s[0][A.g] % m
    if nu % A.p == 0:
        raise NotSimilitude("similitude factor is not a unit")
    target = tuple(tuple((nu * J[i][j]) % m for j in range(n)) for i in range(n))
    if s != target:
        raise NotSimilitude("A^t J A is not a scalar multiple of J")
    return nu


def transvection(y, lam, p, n):
    """x -> x - lam*[y, x]*y over Z/p^n; y must be nonzero mod p."""
    if all(c % p == 0 for c in y):
        raise ValueError("transvection vector vanishes mod p")
    if lam % p == 0:
        raise ValueError("lam must be a unit")
    m = p ** n
    size = len(y)
    g = size // 2
    J = standard_gram_mod(g, m)
    yJ = [sum(y[i] * J[i][j] for i in range(size)) % m for j in range(size)]
    mat = tuple(tuple((int(i == j) - lam * y[i] * yJ[j]) % m for j in range(size))
                for i in range(size))
    A = ModMatrix(g, p, n, mat)
    assert gsp_check(A) == 1
    return A


def congruence_level(A):
    """Largest n' <= n with A = I mod p^(n'); infinity when A = I exactly."""
    if A.is_identity():
        return math.inf
    diff = [x % A.modulus for row in A.mat for x in row]
    for i in range(2 * A.g):
        diff[i * (2 * A.g) + i] = (diff[i * (2 * A.g) + i] - 1) % A.modulus
    level = A.n
    for x in diff:
        if x:
            v = 0
            while x % A.p == 0:
                x //= A.p
                v += 1
            level = min(level, v)
    return level


def l_map(A):
    """B mod p where A = I + p^(n') B, as an element of sp_2g(F_p)."""
    lev = congruence_level(A)
    if lev is math.inf:
        raise ValueError("identity has no leading layer")
    if lev < 1:
        raise ValueError("matrix is not congruent to I mod p")
    q = A.p ** lev
    size = 2 * A.g
    mat = tuple(tuple(((A.mat[i][j] - int(i == j)) // q) % A.p for j in range(size))
                for i in range(size))
    space = SympSpace(A.g, A.p)
    assert sp_member(mat, space)
    return SpLieElem(space, mat)


# ---------------------------------------------------------------------------
# closure


@dataclass(frozen=True)
class ClosureResult:
    order: int
    level: int
    generators: tuple
    element_hashes: str
    exceeded: bool = False
    elements: tuple = None


def encode_mat(mat, mod):
    """Canonical integer encoding: digit k is entry (k // n, k % n)."""
    v = 0
    for row in reversed(mat):
        for x in reversed(row):
            v = v * mod + x
    return v


def decode_mat(code, mod, nn):
    out = []
    for _ in range(nn * nn):
        out.append(code % mod)
        code //= mod
    return tuple(tuple(out[i * nn + j] for j in range(nn)) for i in range(nn))


def _encode_np(mats, mod, nn):
    weights = (mod ** np.arange(nn * nn, dtype=np.uint64)).astype(np.uint64)
    flat = mats.reshape(len(mats), nn * nn).astype(np.uint64)
    return (flat * weights).sum(axis=1)


def _decode_np(codes, mod, nn):
    out = np.empty((len(codes), nn, nn), dtype=np.int64)
    c = codes.copy()
    for k in range(nn * nn):
        out[:, k // nn, k % nn] = (c % mod).astype(np.int64)
        c //= mod
    return out


def closure(gens, bound=DEFAULT_BOUND, with_elements=False):
    """BFS closure of a generator list under multiplication.

    Deterministic: the visited set is kept as a sorted array of canonical
    encodings and the reported digest hashes that array.
    """
    if not gens:
        raise ValueError("need at least one generator")
    g, p, n = gens[0].g, gens[0].p, gens[0].n
    if any((a.g, a.p, a.n) != (g, p, n) for a in gens):
        raise ValueError("inconsistent levels among generators")
    for a in gens:
        gsp_check(a)
    mod = p ** n
    nn = 2 * g
    if mod ** (nn * nn) <= 2 ** 63:
        visited, exceeded = _closure_np(gens, mod, nn, bound)
    else:
        visited, exceeded = _closure_py(gens, mod, nn, bound)
    digest = hashlib.sha256()
    for c in visited:
        digest.update(int(c).to_bytes(32, "big"))
    return ClosureResult(order=len(visited), level=n, generators=tuple(gens),
                         element_hashes=digest.hexdigest(), exceeded=exceeded,
                         elements=tuple(int(c) for c in visited) if with_elements
                         else None)


def _closure_np(gens, mod, nn, bound):
    gmats = [np.array(a.mat, dtype=np.int64) for a in gens]
    ident = np.eye(nn, dtype=np.int64)[None, :, :]
    start = np.concatenate([ident] + [m[None] for m in gmats])
    codes = np.unique(_encode_np(start, mod, nn))
    visited = codes
    frontier = _decode_np(codes, mod, nn)
    exceeded = False
    while len(frontier):
        new_codes = []
        for m in gmats:
            prod = np.matmul(frontier, m[None, :, :]) % mod
            new_codes.append(_encode_np(prod, mod, nn))
        cand = np.unique(np.concatenate(new_codes))
        fresh = cand[~np.isin(cand, visited, assume_unique=True)]
        if not len(fresh):
            break
        visited = np.union1d(visited, fresh)
        if len(visited) > bound:
            exceeded = True
            break
        frontier = _decode_np(fresh, mod, nn)
    return [int(c) for c in visited], exceeded


def _closure_py(gens, mod, nn, bound):
    def enc(mat):
        return encode_mat(mat, mod)

    gmats = [a.mat for a in gens]
    visited = {enc(identity(nn))}
    frontier = []
    for m in gmats:
        c = enc(m)
        if c not in visited:
            visited.add(c)
            frontier.append(m)
    exceeded = False
    while frontier:
        nxt = []
        for a in frontier:
            for m in gmats:
                prod = mat_mul(a, m, mod)
                c = enc(prod)
                if c not in visited:
                    visited.add(c)
                    nxt.append(prod)
        if len(visited) > bound:
            exceeded = True
            break
        frontier = nxt
    return sorted(visited), exceeded


def saturation_check(gens, gbar_order, n=None, bound=DEFAULT_BOUND):
    """Whether the closure at level n has the full saturated order.

    Expected order is gbar_order * p^(dim sp * (n-1)) for subgroups of Sp,
    with an extra similitude factor p^(n-1) when the generators produce a
    full similitude image (GSp case).
    """
    if n is None:
        n = gens[0].n
    gens_n = [a.reduce(n) for a in gens]
    g, p = gens_n[0].g, gens_n[0].p
    red = closure([a.reduce(1) for a in gens_n], bound)
    if red.order != gbar_order:
        return False
    nus = {gsp_check(a) for a in gens_n}
    expected = gbar_order * p ** (sp_dim(g) * (n - 1))
    if nus != {1}:
        sim = {1}
        for nu in nus:
            sim |= {(nu * s) % p ** n for s in sim}
        changed = True
        while changed:
            new = {(a * b) % p ** n for a in sim for b in sim}
            changed = not new <= sim
            sim |= new
        if len(sim) != max(1, (p - 1) * p ** (n - 1)):
            raise ValueError("similitude image is not full")
        expected *= p ** (n - 1)
    res = closure(gens_n, bound)
    if res.exceeded:
        raise ValueError("closure exceeded bound %d" % bound)
    return res.order == expected


def layer_span_check(gens, n, word_bound=200000):
    """Certify that level-n kernel elements span sp_2g(F_p).

    gens live over Z/p^(n+1).  A BFS over their reductions mod p^n carries
    lifted coset representatives; each Schreier generator rep(x)*s*rep(xs)^-1
    lies in the level-n kernel and contributes its l_map image to a growing
    span.  True as soon as the span has full dimension; False if the whole
    (bounded) enumeration finishes without filling it.
    """
    g, p = gens[0].g, gens[0].p
    if any(a.n != n + 1 for a in gens):
        raise ValueError("generators must live at level n+1")
    target = sp_dim(g)
    mod_lo = p ** n
    space = SympSpace(g, p)

    pivots = {}

    def add_to_span(elem):
        if p == 2:
            v = 0
            for x in elem.flat():
                v = (v << 1) | (x & 1)
            while v:
                h = v.bit_length()
                if h in pivots:
                    v ^= pivots[h]
                else:
                    pivots[h] = v
                    return True
            return False
        raise NotImplementedError("p = 2 only for the layer certificate")

    def key(mat):
        return tuple(tuple(x % mod_lo for x in row) for row in mat)

    ident = identity(2 * g)
    reps = {key(ident): ident}
    queue = [ident]
    processed = 0
    while queue and processed < word_bound:
        cur = queue.pop(0)
        processed += 1
        for s in gens:
            lift = mat_mul(cur, s.mat, p ** (n + 1))
            k = key(lift)
            if k not in reps:
                reps[k] = lift
                queue.append(lift)
            else:
                other = reps[k]
                schreier = mat_mul(lift, mat_inv(other, p, n + 1), p ** (n + 1))
                A = ModMatrix(g, p, n + 1, schreier)
                lev = congruence_level(A)
                if lev is math.inf or lev < n:
                    continue
                if lev == n and add_to_span(l_map(A)):
                    if len(pivots) == target:
                        return True
    return len(pivots) == target


# ---------------------------------------------------------------------------
# generator factories


def symplectic_basis(J, p, n):
    """Columns of a basis B with B^t J B standard, over Z/p^n."""
    m = p ** n
    size = len(J)
    g = size // 2

    def pair(u, v):
        return sum(u[i] * J[i][j] * v[j] for i in range(size) for j in range(size)) % m

    basis = [tuple(int(i == j) for i in range(size)) for j in range(size)]
    us, ws = [], []
    pool = list(basis)
    while pool:
        u = pool.pop(0)
        w = next((v for v in pool if pair(u, v) % p), None)
        if w is None:
            raise ValueError("degenerate form")
        pool.remove(w)
        c = pow(pair(u, w), -1, m)
        w = tuple((c * x) % m for x in w)
        nxt = []
        for v in pool:
            a, b = pair(u, v), pair(w, v)
            v = tuple((v[i] - a * w[i] + b * u[i]) % m for i in range(size))
            if any(x % p for x in v):
                nxt.append(v)
        pool = nxt
        us.append(u)
        ws.append(w)
    cols = us + ws
    assert len(cols) == size
    B = tuple(tuple(cols[j][i] for j in range(size)) for i in range(size))
    got = mat_mul(tuple(tuple(B[j][i] for j in range(size)) for i in range(size)),
                  mat_mul(J, B, m), m)
    assert got == standard_gram_mod(g, m)
    return B


def sm_standard_vectors(m, p, n):
    """The v_ij of the S_m model, moved into standard symplectic coordinates."""
    model = sm_model(m)
    size = model.space.dim
    mod = p ** n
    J = tuple(tuple((1 if i < j else (mod - 1) if i > j else 0) % mod
                    for j in range(size)) for i in range(size))
    B = symplectic_basis(J, p, n)
    Binv = mat_inv(B, p, n)
    return {key: mat_vec(Binv, vec, mod) for key, vec in model.vectors.items()}


def sm_transvection_lifts(m, p, n, lam=1):
    """Transvections of the S_m permutation model in standard coordinates."""
    vecs = sm_standard_vectors(m, p, n)
    return [transvection(vecs[key], lam, p, n) for key in sorted(vecs)]


def theta_transvection_lifts(g, eps, p, n, lam=1):
    """Lifts of the transvections fixing theta_eps, standard coordinates."""
    from .f2sym import ThetaChar, theta_eval

    space = SympSpace(g, 2)
    th = ThetaChar(space, eps)
    return [transvection(v, lam, p, n) for v in space.vectors()
            if theta_eval(th, v) == 1]


def sp_lie_basis(g, p=2):
    """A basis of sp_2g(F_p) drawn from the rank-one maps f_v."""
    from .f2sym import span_dim

    space = SympSpace(g, p)
    basis = []
    for v in space.vectors():
        cand = f_map(v, space)
        if span_dim(basis + [cand]) > len(basis):
            basis.append(cand)
        if len(basis) == sp_dim(g):
            return basis
    raise AssertionError("rank-one maps failed to span sp")


def sp_kernel_gens(g, p, n):
    """The matrices I + p^(n-1) B for B running over a basis of sp_2g(F_p)."""
    q = p ** (n - 1)
    mod = p ** n
    out = []
    for b in sp_lie_basis(g, p):
        mat = tuple(tuple((int(i == j) + q * b.mat[i][j]) % mod
                          for j in range(2 * g)) for i in range(2 * g))
        out.append(ModMatrix(g, p, n, mat))
    return out
