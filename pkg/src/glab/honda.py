"""Honda-system algebra for the rank-p^4 biconnected family.

A finite Honda system is a pair (M, L) with M free over R = W(k)/p^n
(n = 1 or 2 here), Verschiebung V (sigma^-1-semilinear) and Frobenius F
(sigma-semilinear) with FV = VF = p, V injective on L and L/pL -> M/FM an
isomorphism.

Matrix conventions.  Operators are stored as (matrix, twist): the matrix
columns are the images of the basis vectors and coords(op(x)) equals
matrix . sigma^twist(coords(x)).  With this normalization the exponent-p^2
family with parameters [lambda; s1, s2, s3, s5] has

    V e1 = e2 + p s1 e4            F e1 = e4
    V e2 = lambda(p s2 e1 + p s3 e2 + e3 + p s5 e4)
    V e3 = p e4                    F e4 = e3
    V e4 = p e1                    F e2 = p e1 - p sigma(s1) e3
    F e3 = p sigma(1/lambda) e2 - p sigma(s5) e3 - p sigma(s2) e4

and L = span{e1, e2}.  Duality sends (mat_V, mat_F) to the transposes
(sigma(mat_V)^t as the new F, sigma^-1(mat_F)^t as the new V) on the dual
basis, with L* the annihilator of L.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._linalg import kernel, solve, span_contains, span_length, howell
from ._rings import GF, Zq


class NotStandardShape(ValueError):
    pass


# ---------------------------------------------------------------------------
# semilinear matrices over Zq


def _mat_apply(R, mat, twist, vec):
    tv = [R.sigma(c, twist % R.f) for c in vec]
    n = len(mat)
    return tuple(
        _sum(R, [R.mul(mat[i][j], tv[j]) for j in range(len(tv))]) for i in range(n))


def _sum(R, items):
    out = R.zero
    for x in items:
        out = R.add(out, x)
    return out


def _mat_mul_twisted(R, A, tA, B, tB):
    """Matrix of (A, tA) o (B, tB): A . sigma^tA(B), twist tA + tB."""
    sB = [[R.sigma(B[i][j], tA % R.f) for j in range(len(B[0]))] for i in range(len(B))]
    n, m, k = len(A), len(sB), len(sB[0])
    mat = tuple(tuple(_sum(R, [R.mul(A[i][l], sB[l][j]) for l in range(m)])
                      for j in range(k)) for i in range(n))
    return mat, tA + tB


@dataclass(frozen=True)
class SemiMat:
    ring: Zq
    mat: tuple
    twist: int

    def __call__(self, vec):
        return _mat_apply(self.ring, self.mat, self.twist, vec)

    def compose(self, other):
        mat, tw = _mat_mul_twisted(self.ring, self.mat, self.twist,
                                   other.mat, other.twist)
        return SemiMat(self.ring, mat, tw)


@dataclass(frozen=True)
class FiniteHondaSystem:
    ring: Zq
    rank: int
    V: SemiMat
    F: SemiMat
    L: tuple  # generating coordinate vectors of the submodule L

    @property
    def exponent(self):
        return self.ring.p ** self.ring.n


@dataclass(frozen=True)
class HondaParams:
    """[lambda; s1, s2, s3, s5]: lambda a unit mod p^2, s_i in the residue field."""

    ring: Zq                 # W(k)/p^2
    lam: tuple
    s: tuple                 # four residue-field elements (s1, s2, s3, s5)

    def __post_init__(self):
        assert self.ring.n == 2 and self.ring.is_unit(self.lam)
        assert len(self.s) == 4

    @property
    def k(self):
        return self.ring.k

    def to_json(self):
        def flat(t):
            return int(t[0]) if len(t) == 1 else list(map(int, t))
        return {"p": self.ring.p, "f": self.ring.f,
                "lambda": flat(self.lam), "s": [flat(x) for x in self.s]}


@dataclass(frozen=True)
class ExtClassP:
    """An exponent-p extension class: five residue-field parameters.

    The fourth coordinate lives in k modulo (sigma^4 - 1)k, so equality
    compares it up to that image.
    """

    k: GF
    s: tuple  # (s1, s2, s3, s4, s5)

    def __post_init__(self):
        assert len(self.s) == 5

    def same_class(self, other):
        if self.k is not other.k:
            return False
        if any(self.s[i] != other.s[i] for i in (0, 1, 2, 4)):
            return False
        img = {self.k.sub(self.k.frob(x, 4), x) for x in self.k.elements()}
        return self.k.sub(self.s[3], other.s[3]) in img


# ---------------------------------------------------------------------------
# constructors


def params(ring, lam, s1, s2, s3, s5):
    if isinstance(lam, int):
        lam = ring.from_int(lam)
    k = ring.k
    ss = tuple(k.from_int(x) if isinstance(x, int) else x for x in (s1, s2, s3, s5))
    return HondaParams(ring, lam, ss)


def build_E(k_ring, lam):
    """The rank-p^4 exponent-p system E_lambda on its standard basis."""
    R = k_ring
    assert R.n == 1
    if not R.is_unit(lam):
        raise ValueError("lambda must be a unit")
    z, o = R.zero, R.one
    matV = ((z, z, z, z),
            (o, z, z, z),
            (z, lam, z, z),
            (z, z, z, z))
    matF = ((z, z, z, z),
            (z, z, z, z),
            (z, z, z, o),
            (o, z, z, z))
    L = ((o, z, z, z), (z, o, z, z))
    return FiniteHondaSystem(R, 4, SemiMat(R, matV, -1), SemiMat(R, matF, 1), L)


def build_P2(par):
    """The exponent-p^2 system with parameters [lambda; s1, s2, s3, s5]."""
    R = par.ring
    p = R.p
    lam = par.lam
    s1, s2, s3, s5 = (R.lift(x) for x in par.s)
    z, o = R.zero, R.one
    pe = R.from_int(p)

    def ps(x):
        return R.scal(p, x)

    matV = ((z, R.mul(ps(lam), s2), z, pe),
            (o, R.mul(ps(lam), s3), z, z),
            (z, lam, z, z),
            (ps(s1), R.mul(ps(lam), s5), pe, z))
    lam_inv = R.inv(lam)
    matF = ((z, pe, z, z),
            (z, z, R.sigma(ps(lam_inv)), z),
            (z, R.neg(R.sigma(ps(s1))), R.neg(R.sigma(ps(s5))), o),
            (o, z, R.neg(R.sigma(ps(s2))), z))
    L = ((o, z, z, z), (z, o, z, z))
    return FiniteHondaSystem(R, 4, SemiMat(R, matV, -1), SemiMat(R, matF, 1), L)


def build_ext_p(cls, lam=None):
    """The rank-8 exponent-p extension of E_lambda by E_lambda.

    The matrices take the displayed block shape; the class data (s1..s5)
    sits in the blocks coupling the two copies.  lam is the residue of the
    ambient lambda (default 1).
    """
    k = cls.k
    R = Zq(k.p, k.f, 1)
    lam = R.one if lam is None else R.lift(lam)
    z = R.zero
    s1, s2, s3, s4, s5 = (R.lift(x) for x in cls.s)
    o = R.one

    def m(a, b):
        return R.mul(a, b)

    matV = [[z] * 8 for _ in range(8)]
    matV[1][0] = o                       # V e1 = e2
    matV[2][1] = lam                     # V e2 = lam e3
    matV[3][4] = s1                      # V e5 = s1 e4 + e6
    matV[5][4] = o
    matV[0][5] = m(lam, s2)              # V e6 = lam(s2 e1 + s3 e2 + s4 e3 + s5 e4 + e7)
    matV[1][5] = m(lam, s3)
    matV[2][5] = m(lam, s4)
    matV[3][5] = m(lam, s5)
    matV[6][5] = lam
    matF = [[z] * 8 for _ in range(8)]
    matF[3][0] = o                       # F e1 = e4
    matF[2][3] = o                       # F e4 = e3
    matF[7][4] = o                       # F e5 = e8
    matF[2][5] = R.neg(R.sigma(s1))      # F e6 = -sigma(s1) e3
    matF[2][6] = R.neg(R.sigma(s5))      # F e7 = -sigma(s5) e3 - sigma(s2) e4
    matF[3][6] = R.neg(R.sigma(s2))
    matF[6][7] = o                       # F e8 = e7
    basis = [tuple(o if i == j else z for i in range(8)) for j in range(8)]
    L = (basis[0], basis[1], basis[4], basis[5])
    return FiniteHondaSystem(R, 8, SemiMat(R, tuple(map(tuple, matV)), -1),
                             SemiMat(R, tuple(map(tuple, matF)), 1), L)


# ---------------------------------------------------------------------------
# flattened linear algebra


def _mult_block(R, r):
    xi = R.elem([0, 1]) if R.f > 1 else R.one
    cols = []
    cur = r
    for _ in range(R.f):
        cols.append(cur)
        cur = R.mul(cur, xi)
    return [[int(cols[j][i]) for j in range(R.f)] for i in range(R.f)]


def _sigma_block(R, t):
    xi = R.elem([0, 1]) if R.f > 1 else R.one
    cols = []
    cur = R.one
    for j in range(R.f):
        cols.append(R.sigma(cur, t % R.f))
        cur = R.mul(cur, xi)
    return [[int(cols[j][i]) for j in range(R.f)] for i in range(R.f)]


def _flat_matrix(R, semimat):
    """The Z/p^n matrix of a semilinear operator on flattened coordinates."""
    mat, t = semimat.mat, semimat.twist
    n = len(mat)
    f = R.f
    sig = _sigma_block(R, t)
    out = [[0] * (n * f) for _ in range(n * f)]
    for i in range(n):
        for j in range(n):
            blk = _mult_block(R, mat[i][j])
            # block = mult(mat[i][j]) . sigma
            for a in range(f):
                for b in range(f):
                    v = sum(blk[a][c] * sig[c][b] for c in range(f)) % R.mod
                    out[i * f + a][j * f + b] = v
    return out


def _flat_vec(R, vec):
    return tuple(int(c) for r in vec for c in r)


def _unflat(R, flat):
    f = R.f
    return tuple(tuple(flat[i * f:(i + 1) * f]) for i in range(len(flat) // f))


def _submodule_rows(R, gens):
    """Z-generators of the R-span of coordinate vectors (xi-multiples added)."""
    xi = R.elem([0, 1]) if R.f > 1 else R.one
    rows = []
    for gvec in gens:
        cur = tuple(gvec)
        for _ in range(R.f):
            rows.append(_flat_vec(R, cur))
            cur = tuple(R.mul(xi, c) for c in cur)
    return rows


def is_honda(sys):
    """Machine check of FV = VF = p plus the exactness conditions."""
    R = sys.ring
    p, n = R.p, R.n
    # FV = VF = p id, as twisted matrix identities
    pid = tuple(tuple(R.from_int(p) if i == j else R.zero for j in range(sys.rank))
                for i in range(sys.rank))
    fv = sys.F.compose(sys.V)
    vf = sys.V.compose(sys.F)
    if fv.mat != pid or vf.mat != pid:
        return False
    full = sys.rank * R.f * n
    Vz = _flat_matrix(R, sys.V)
    Fz = _flat_matrix(R, sys.F)
    Lrows = _submodule_rows(R, sys.L)
    lenL = span_length(Lrows, p, n)
    # V injective on L
    ker = kernel(Vz, p, n)
    if ker:
        both = list(Lrows) + list(ker)
        if span_length(both, p, n) != lenL + span_length(ker, p, n):
            return False
    # L + FM = M and length(L cap FM) = length(pL)
    Fcols = [tuple(Fz[i][j] for i in range(len(Fz))) for j in range(len(Fz))]
    lenFM = span_length(Fcols, p, n)
    lenSum = span_length(list(Lrows) + Fcols, p, n)
    if lenSum != full:
        return False
    lenPL = span_length([tuple((p * x) % R.mod for x in r) for r in Lrows], p, n)
    if lenL + lenFM - lenSum != lenPL:
        return False
    return True


# ---------------------------------------------------------------------------
# standardization


def standardize(sys):
    """Standard basis and parameters of an exponent-p^2 rank-4 system.

    Raises NotStandardShape unless the mod-p layer is an E_alpha and the
    operators take the displayed form in the recovered basis.  The returned
    parameters are normalized by scaling the distinguished line so its first
    nonzero coordinate is 1; different inputs representing the same system
    agree up to the rebase action.
    """
    R = sys.ring
    if R.n != 2 or sys.rank != 4:
        raise NotStandardShape("not an exponent-p^2 rank-4 system")
    p = R.p
    k = R.k

    def red(x):
        return R.residue(x)

    # mod-p data
    matVk = [[red(sys.V.mat[i][j]) for j in range(4)] for i in range(4)]
    Lk = []
    for gvec in sys.L:
        Lk.append([red(c) for c in gvec])
    # k-basis of Lbar
    Lbasis = _k_row_basis(k, Lk)
    if len(Lbasis) != 2:
        raise NotStandardShape("mod-p image of L is not 2-dimensional")
    # find the line {x in Lbar : Vbar(x) in Lbar}; substitute x = sigma(y)
    sols = _solve_vbar_line(k, matVk, Lbasis)
    if len(sols) != 1:
        raise NotStandardShape("distinguished line is not unique")
    y = sols[0]
    xbar1 = _k_vec_add(k, [_k_vec_scal(k, k.frob(y[t]), Lbasis[t]) for t in range(2)])
    xbar1 = _k_vec_normalize(k, xbar1)
    # lift x1 into L
    coeffs = _k_solve(k, Lk, xbar1)
    if coeffs is None:
        raise NotStandardShape("cannot lift the distinguished line")
    e1 = tuple(_sum(R, [R.mul(R.lift(coeffs[i]), sys.L[i][j])
                        for i in range(len(sys.L))]) for j in range(4))
    e4 = sys.F(e1)
    e3 = sys.F(e4)
    y1 = sys.V(e1)
    # y1 = e2 + p s1 e4 with e2 in L
    pe4 = tuple(R.scal(p, c) for c in e4)
    sol = _solve_in_span(R, list(sys.L) + [pe4], y1)
    if sol is None:
        raise NotStandardShape("V e1 does not decompose along L + p F e1")
    s1 = R.residue(sol[-1])
    e2 = tuple(R.sub(y1[j], R.scal(p, R.mul(R.lift(s1), e4[j]))) for j in range(4))
    basis = (e1, e2, e3, e4)
    # coordinates of V e2 in the new basis give lambda, s2, s3, s5
    z = sys.V(e2)
    c = _solve_basis(R, basis, z)
    if c is None:
        raise NotStandardShape("V e2 is not in the basis span")
    lam = c[2]
    if not R.is_unit(lam):
        raise NotStandardShape("lambda is not a unit")
    lam_inv = R.inv(lam)
    try:
        s2 = R.residue(R.mul(R.pdiv(c[0]), lam_inv))
        s3 = R.residue(R.mul(R.pdiv(c[1]), lam_inv))
        s5 = R.residue(R.mul(R.pdiv(c[3]), lam_inv))
    except AssertionError:
        raise NotStandardShape("V e2 has unit coordinates off e3") from None
    par = HondaParams(R, lam, (s1, s2, s3, s5))
    # verify the full shape: transported operators match build_P2 exactly
    model = build_P2(par)
    Bcols = [_flat_vec(R, b) for b in basis]
    Bz = [[Bcols[j][i] for j in range(4 * R.f)] for i in range(4 * R.f)]
    for op, ref in ((sys.V, model.V), (sys.F, model.F)):
        for j in range(4):
            img = op(basis[j])
            want = tuple(_sum(R, [R.mul(ref.mat[i][j], basis[i][m])
                                  for i in range(4)]) for m in range(4))
            if img != want:
                raise NotStandardShape("operators do not take the standard form")
    # L must equal span{e1, e2}
    Lrows = _submodule_rows(R, sys.L)
    Erows = _submodule_rows(R, (e1, e2))
    hw = howell(list(Lrows), p, 2, width=4 * R.f)
    if span_length(Lrows, p, 2) != span_length(Erows, p, 2) or \
            not all(span_contains(hw, r, p, 2) for r in Erows):
        raise NotStandardShape("L is not spanned by e1, e2")
    return basis, par


def _k_row_basis(k, rows):
    out = []
    for r in rows:
        r = list(r)
        for b in out:
            piv = next(i for i, x in enumerate(b) if x != k.zero)
            if r[piv] != k.zero:
                f = k.mul(r[piv], k.inv(b[piv]))
                r = [k.sub(a, k.mul(f, c)) for a, c in zip(r, b)]
        if any(x != k.zero for x in r):
            out.append(r)
    return out


def _k_vec_scal(k, c, v):
    return [k.mul(c, x) for x in v]


def _k_vec_add(k, vs):
    out = vs[0]
    for v in vs[1:]:
        out = [k.add(a, b) for a, b in zip(out, v)]
    return out


def _k_vec_normalize(k, v):
    lead = next(x for x in v if x != k.zero)
    inv = k.inv(lead)
    return [k.mul(inv, x) for x in v]


def _k_solve(k, cols, target):
    """Solve sum c_i cols[i] = target over k; returns coefficients or None."""
    ncols = len(cols)
    rows = [[cols[j][i] for j in range(ncols)] + [target[i]]
            for i in range(len(target))]
    # gaussian elimination
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != k.zero), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = k.inv(rows[r][c])
        rows[r] = [k.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != k.zero:
                f = rows[i][c]
                rows[i] = [k.sub(a, k.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    sol = [k.zero] * ncols
    for i, c in enumerate(pivots):
        sol[c] = rows[i][-1]
    for i in range(r, len(rows)):
        if rows[i][-1] != k.zero:
            return None
    return sol


def _solve_vbar_line(k, matVk, Lbasis):
    """Solutions y (mod scaling) of matVk . sum y_t sigma^-1(Lbasis_t) in Lbar."""
    n = len(matVk)
    imgs = []
    for t in range(2):
        v = [k.frob(c, k.f - 1) for c in Lbasis[t]]  # sigma^-1 of the basis row
        imgs.append([_ksum(k, [k.mul(matVk[i][j], v[j]) for j in range(n)])
                     for i in range(n)])
    # want y0 imgs[0] + y1 imgs[1] in span(Lbasis): reduce against Lbasis
    red = []
    for im in imgs:
        r = list(im)
        for b in _k_row_basis(k, Lbasis):
            piv = next(i for i, x in enumerate(b) if x != k.zero)
            if r[piv] != k.zero:
                f = k.mul(r[piv], k.inv(b[piv]))
                r = [k.sub(a, k.mul(f, c)) for a, c in zip(r, b)]
        red.append(r)
    # solve y0 red0 + y1 red1 = 0, nonzero y, modulo scaling
    sols = []
    for y in _proj_pairs(k):
        tot = [k.add(k.mul(y[0], a), k.mul(y[1], b)) for a, b in zip(red[0], red[1])]
        if all(x == k.zero for x in tot):
            sols.append(y)
    return sols


def _proj_pairs(k):
    """Representatives of P^1(k): (1, t) and (0, 1)."""
    for t in k.elements():
        yield (k.one, t)
    yield (k.zero, k.one)


def _ksum(k, items):
    out = k.zero
    for x in items:
        out = k.add(out, x)
    return out


def _solve_in_span(R, gens, target):
    """Coefficients expressing target in the R-span of gens, or None."""
    p, n = R.p, R.n
    cols = []
    xi = R.elem([0, 1]) if R.f > 1 else R.one
    for gvec in gens:
        cur = tuple(gvec)
        for _ in range(R.f):
            cols.append(_flat_vec(R, cur))
            cur = tuple(R.mul(xi, c) for c in cur)
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]
    sol = solve(mat, _flat_vec(R, target), p, n)
    if sol is None:
        return None
    out = []
    for gi in range(len(gens)):
        coef = R.zero
        cur = R.one
        for t in range(R.f):
            coef = R.add(coef, R.scal(sol[gi * R.f + t], cur))
            cur = R.mul(cur, xi)
        out.append(coef)
    return out


def _solve_basis(R, basis, target):
    return _solve_in_span(R, list(basis), target)


# ---------------------------------------------------------------------------
# parameter operations


def rebase(par, a):
    """Parameter change under the standard-basis rescaling by a unit a."""
    R = par.ring
    if not R.is_unit(a):
        raise ValueError("a must be a unit")
    k = R.k
    abar = R.residue(a)
    lam = R.mul(R.mul(a, R.inv(R.sigma(a, 4))), par.lam)

    def ratio(i, j):
        return k.mul(k.frob(abar, i), k.inv(k.frob(abar, j)))

    s1, s2, s3, s5 = par.s
    return HondaParams(R, lam, (
        k.mul(ratio(1, 3), s1),
        k.mul(ratio(4, 2), s2),
        k.mul(ratio(4, 1), s3),
        k.mul(ratio(4, 3), s5)))


def dual_params(par):
    """Parameters of the dual system (mod p^2 for lambda, mod p for the s_i)."""
    R = par.ring
    k = R.k
    lam = R.inv(R.sigma(par.lam, 2))
    lb = R.residue(par.lam)
    lb2 = k.frob(lb, 2)
    s1, s2, s3, s5 = par.s
    inv_ls = k.inv(k.frob(lb, 1))
    sig_inv = k.f - 1 if k.f > 1 else 0
    return HondaParams(R, lam, (
        k.neg(k.mul(inv_ls, s1)),
        k.neg(k.mul(lb2, s2)),
        k.neg(k.mul(lb2, k.frob(s5, sig_inv))),
        k.neg(k.mul(lb2, k.frob(s3, 1)))))


def params_equal(p1, p2):
    return p1.lam == p2.lam and p1.s == p2.s


def params_equivalent(p1, p2):
    """Equality up to the rebase action."""
    R = p1.ring
    for a in R.units():
        if params_equal(rebase(p1, a), p2):
            return True
    return False


def self_dual_check(par):
    """Witness search for self-duality at mod-p^2 precision.

    The constraints are evaluated on multiplicative (Teichmuller) lifts of
    the residue parameters: lambda = -(sigma^2(a)/a) b mod p^2 and
    s5 = (sigma^3(a)/sigma^2(a)) sigma(b s3); the additive p s1 s3 correction
    is not determined by exponent-p^2 data and is omitted.  b is constrained
    casewise: 1 when s1 or s2 is nonzero, +-1 when only s3, s5 survive, and
    any solution of b sigma^2(b) = 1 when all parameters vanish.
    """
    R = par.ring
    k = R.k
    s1, s2, s3, s5 = par.s
    if s1 != k.zero or s2 != k.zero:
        bs = [R.one]
    elif s3 != k.zero or s5 != k.zero:
        bs = [R.one, R.neg(R.one)]
    else:
        bs = [b for b in R.units() if R.mul(b, R.sigma(b, 2)) == R.one]
    t3 = R.teichmuller(s3)
    t5 = R.teichmuller(s5)
    for b in bs:
        for a in R.units():
            lam_req = R.neg(R.mul(R.mul(R.sigma(a, 2), R.inv(a)), b))
            if lam_req != par.lam:
                continue
            rhs = R.mul(R.mul(R.sigma(a, 3), R.inv(R.sigma(a, 2))),
                        R.sigma(R.mul(b, t3)))
            if rhs == t5:
                return True, (a, b)
    return False, None


# ---------------------------------------------------------------------------
# Baer sums and duality of systems


def baer_sum(par, cls):
    """Parameterwise Baer sum with an exponent-p class having s4 = 0."""
    k = par.k
    if cls.s[3] != k.zero:
        raise ValueError("unsupported extension class: s4 must vanish")
    s1, s2, s3, s5 = par.s
    t1, t2, t3, _, t5 = cls.s
    return HondaParams(par.ring, par.lam, (
        k.add(s1, t1), k.add(s2, t2), k.add(s3, t3), k.add(s5, t5)))


def fiber_product_baer(sysP2, sysP):
    """Baer sum by the fiber product, returned as an exponent-p^2 system.

    Both inputs must be on standard bases; the gamma_i = (e_i, e_{4+i}')
    classes form the standard basis of the quotient of the fiber product by
    the antidiagonal relations (0, e_i') ~ (p e_i, 0).
    """
    R = sysP2.ring
    Rk = sysP.ring
    assert R.p == Rk.p and R.f == Rk.f and Rk.n == 1
    lam2 = R.residue(sysP2.V.mat[2][1])
    lamP = Rk.residue(sysP.V.mat[2][1])
    if lam2 != lamP:
        raise ValueError("mismatched lambda between the two extensions")
    p = R.p

    def combine(colM, colMp):
        low = [Rk.residue(colMp[i]) for i in range(4)]
        high = [Rk.residue(colMp[4 + i]) for i in range(4)]
        out = []
        for j in range(4):
            c = R.add(colM[j], R.scal(p, R.lift(low[j])))
            if R.residue(c) != high[j]:
                raise ValueError("fiber product columns are inconsistent")
            out.append(c)
        return out

    cols_V = []
    cols_F = []
    for i in range(4):
        colM = [sysP2.V.mat[r][i] for r in range(4)]
        colMp = [sysP.V.mat[r][4 + i] for r in range(8)]
        cols_V.append(combine(colM, colMp))
        colMf = [sysP2.F.mat[r][i] for r in range(4)]
        colMpf = [sysP.F.mat[r][4 + i] for r in range(8)]
        cols_F.append(combine(colMf, colMpf))
    matV = tuple(tuple(cols_V[j][i] for j in range(4)) for i in range(4))
    matF = tuple(tuple(cols_F[j][i] for j in range(4)) for i in range(4))
    z, o = R.zero, R.one
    L = ((o, z, z, z), (z, o, z, z))
    return FiniteHondaSystem(R, 4, SemiMat(R, matV, -1), SemiMat(R, matF, 1), L)


def dual_system(sys):
    """The dual Honda system on the dual basis."""
    R = sys.ring
    n = sys.rank
    matVstar = tuple(tuple(R.sigma(sys.F.mat[j][i], R.f - 1)
                           for j in range(n)) for i in range(n))
    matFstar = tuple(tuple(R.sigma(sys.V.mat[j][i], 1) for j in range(n))
                     for i in range(n))
    # annihilator of L: phi with sum_j phi_j g_j = 0 for every generator g
    eqs = []
    for gvec in sys.L:
        for l in range(R.f):
            row = []
            for j in range(n):
                blk = _mult_block(R, gvec[j])
                row.extend(blk[l])
            eqs.append(row)
    ann = kernel(eqs, R.p, R.n) if eqs else []
    Lstar = tuple(_unflat(R, flat) for flat in ann)
    return FiniteHondaSystem(R, n, SemiMat(R, matVstar, -1),
                             SemiMat(R, matFstar, 1), tuple(Lstar))
