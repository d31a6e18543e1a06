"""Symplectic vector spaces over F_p (chiefly F_2) and their transvections.

Conventions: vectors are column vectors, matrices act on the left, and the
pairing is [u, x] = u^t J x.  The map attached to a vector v is
f_v : x -> -lam*[v, x]*v, so that the transvection x -> x - lam*[v, x]*v is
I + f_v; over F_2 with lam = 1 this is x -> x + [v, x]*v.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product


def standard_gram(g, p=2):
    """The block Gram matrix [[0, I], [-I, 0]]."""
    n = 2 * g
    return tuple(tuple((1 if j == i + g else 0) if i < g else
                       ((-1) % p if j == i - g else 0)
                       for j in range(n)) for i in range(n))


def _det_mod_p(mat, p):
    m = [list(r) for r in mat]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        inv = pow(m[c][c], -1, p)
        det = (det * m[c][c]) % p
        for r in range(c + 1, n):
            f = (m[r][c] * inv) % p
            if f:
                for j in range(c, n):
                    m[r][j] = (m[r][j] - f * m[c][j]) % p
    return det % p


@dataclass(frozen=True)
class SympSpace:
    """A symplectic space of dimension 2g over F_p with Gram matrix J."""

    g: int
    p: int = 2
    gram: tuple = None

    def __post_init__(self):
        if self.gram is None:
            object.__setattr__(self, "gram", standard_gram(self.g, self.p))
        J, p, n = self.gram, self.p, 2 * self.g
        assert len(J) == n and all(len(r) == n for r in J)
        assert all(J[i][i] % p == 0 for i in range(n)), "diagonal must vanish"
        assert all((J[i][j] + J[j][i]) % p == 0 for i in range(n) for j in range(n))
        assert _det_mod_p(J, p) != 0, "Gram matrix must be invertible"

    @property
    def dim(self):
        return 2 * self.g

    def pairing(self, u, x):
        J, p = self.gram, self.p
        return sum(u[i] * J[i][j] * x[j] for i in range(len(u)) for j in range(len(x))) % p

    def vectors(self):
        for v in product(range(self.p), repeat=self.dim):
            yield v


@dataclass(frozen=True)
class SpLieElem:
    """An element of sp_2g(F_p): a matrix A with A^t J + J A = 0."""

    space: SympSpace
    mat: tuple

    def __add__(self, other):
        assert self.space == other.space
        p = self.space.p
        return SpLieElem(self.space, tuple(
            tuple((a + b) % p for a, b in zip(ra, rb))
            for ra, rb in zip(self.mat, other.mat)))

    def flat(self):
        return tuple(x for row in self.mat for x in row)


def sp_member(mat, space):
    """Whether mat^t J + J mat = 0 over F_p."""
    n, p, J = space.dim, space.p, space.gram
    if len(mat) != n or any(len(r) != n for r in mat):
        raise ValueError("matrix must be %dx%d" % (n, n))
    for i in range(n):
        for j in range(n):
            s = sum(mat[k][i] * J[k][j] + J[i][k] * mat[k][j] for k in range(n)) % p
            if s:
                return False
    return True


def f_map(v, space, lam=1):
    """The rank-one map x -> -lam*[v, x]*v as an SpLieElem."""
    n, p, J = space.dim, space.p, space.gram
    vJ = [sum(v[i] * J[i][j] for i in range(n)) % p for j in range(n)]
    mat = tuple(tuple((-lam * v[i] * vJ[j]) % p for j in range(n)) for i in range(n))
    elem = SpLieElem(space, mat)
    assert sp_member(mat, space)
    return elem


def transvection_mat(v, space, lam=1):
    """I + f_v, the transvection x -> x - lam*[v, x]*v."""
    n, p = space.dim, space.p
    f = f_map(v, space, lam).mat
    return tuple(tuple((f[i][j] + (1 if i == j else 0)) % p for j in range(n))
                 for i in range(n))


@dataclass(frozen=True)
class ThetaChar:
    """A theta characteristic on a standard symplectic space over F_2.

    theta(x) = Q_eps(x_g, x_2g) + sum_{j<g} x_j x_{g+j} with Q_+ = uv and
    Q_- = u^2 + uv + v^2.
    """

    space: SympSpace
    eps: int  # +1 or -1

    def __post_init__(self):
        assert self.space.p == 2 and self.eps in (1, -1)
        assert self.space.gram == standard_gram(self.space.g, 2)

    def __call__(self, x):
        return theta_eval(self, x)


def theta_eval(theta, x):
    g = theta.space.g
    u, v = x[g - 1], x[2 * g - 1]
    q = (u * v) % 2 if theta.eps == 1 else (u * u + u * v + v * v) % 2
    return (q + sum(x[j] * x[g + j] for j in range(g - 1))) % 2


def theta_transform(theta, v):
    """The transformed form s(theta)(x) = theta(x) + (1 + theta(v))*[v, x]^2.

    Here s is the transvection at v; the form is returned as a callable.
    """
    if not any(c % 2 for c in v):
        raise ValueError("v must be nonzero")
    space = theta.space
    tv = theta_eval(theta, v)

    def transformed(x):
        return (theta_eval(theta, x) + (1 + tv) * space.pairing(v, x)) % 2

    return transformed


@dataclass(frozen=True)
class PermModel:
    """The symplectic permutation module of S_m over F_2 (m odd or even).

    V is W = {sum a_i = 0} for m odd and W modulo the all-ones vector for m
    even; coordinates are taken with respect to the basis b_i = v_{i,m}.
    The transposition (ij) acts as the transvection at v_ij.
    """

    m: int
    space: SympSpace
    vectors: dict = field(compare=False)

    def transvection(self, i, j):
        return transvection_mat(self.vectors[(i, j)], self.space)


def sm_model(m):
    if m < 5:
        raise ValueError("need m >= 5")
    dim = m - 1 if m % 2 else m - 2
    g = dim // 2
    # Gram matrix of the b_i: [b_i, b_j] = 1 + delta_ij over F_2
    J = tuple(tuple(0 if i == j else 1 for j in range(dim)) for i in range(dim))
    space = SympSpace(g, 2, J)
    vecs = {}
    for i, j in combinations(range(1, m + 1), 2):
        w = [0] * m
        w[i - 1] = 1
        w[j - 1] = 1
        coeffs = w[:m - 1]
        if m % 2 == 0:
            coeffs = [(c + coeffs[m - 2]) % 2 for c in coeffs[:m - 2]]
        vecs[(i, j)] = tuple(coeffs)
    return PermModel(m, space, vecs)


def span_dim(elems):
    """F_p-dimension of the span of a family of SpLieElem."""
    if not elems:
        return 0
    space = elems[0].space
    if any(e.space != space for e in elems):
        raise ValueError("mixed spaces")
    if space.p == 2:
        pivots = []
        for e in elems:
            v = 0
            for x in e.flat():
                v = (v << 1) | (x & 1)
            for pv in pivots:
                w = v ^ pv
                if w < v:
                    v = w
            if v:
                pivots.append(v)
                pivots.sort(reverse=True)
        return len(pivots)
    return _rank_mod_p([e.flat() for e in elems], space.p)


def _rank_mod_p(vecs, p):
    rows = [list(v) for v in vecs]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                f = (rows[r][col] * inv) % p
                for jj in range(width):
                    rows[r][jj] = (rows[r][jj] - f * rows[rank][jj]) % p
        rank += 1
    return rank


def orth_f_set(g, eps):
    """All f_v over the standard space with theta_eps(v) = 1."""
    if g < 1:
        raise ValueError("need g >= 1")
    space = SympSpace(g, 2)
    theta = ThetaChar(space, eps)
    return [f_map(v, space) for v in space.vectors() if theta_eval(theta, v) == 1]


def sp_dim(g):
    return 2 * g * g + g
