"""The x - T Kummer map for genus-2 Jacobians over 2-adic fields.

Curves come as y^2 + y = g(x) over Z_2 with quintic g and unit leading
coefficient.  After killing the x^4 term the curve has the model
y^2 = x Phi(x) with Phi(x) = x^5 (1 + 4 g(1/x)); its five roots live in
the tower F = Q_2(mu_15, pi) with a5^2 pi^5 = 2 and are indexed by fifth
roots of unity, r_j = -a5 zeta^j pi^2 + O(2 pi).  The j = 5 root is the one
fixed by the coefficient Frobenius, and the divisor through (r_5, 0) and
(0, 0) is the distinguished two-torsion point used throughout.

half_point_kummer computes the subgroup of F^x/(F^x)^2 cut out by the
half-point field of that divisor; deformation invariance and the direct
parameter formulas tie these groups back to the exponent-p^2 classification.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._rings import Zq
from .honda import HondaParams, params as honda_params
from .padic import (PadicElem, hensel_root, is_square, kummer_span,
                    make_tower, working_prec)

F = Fraction


def _frac_mod(q, m):
    q = F(q)
    if q.denominator % 2 == 0:
        raise ValueError("not a 2-adic integer: %s" % (q,))
    return (q.numerator * pow(q.denominator, -1, m)) % m


@dataclass(frozen=True)
class CurveLocal:
    """y^2 + y = g(x) with g = a5 x^5 + ... + a0 over Z_2, a5 a unit."""

    a: tuple  # (a0, a1, a2, a3, a4, a5), integers or odd-denominator fractions

    def __post_init__(self):
        assert len(self.a) == 6
        object.__setattr__(self, "a", tuple(F(x) for x in self.a))
        if _frac_mod(self.a[5], 2) != 1:
            raise ValueError("leading coefficient must be a 2-adic unit")

    @property
    def normalized(self):
        return self.a[4] == 0

    def translated(self):
        """Shift x to kill the x^4 coefficient; parameters use the raw a_i."""
        if self.normalized:
            return self, F(0)
        a = self.a
        t = -a[4] / (5 * a[5])
        shifted = [F(0)] * 6
        for j in range(6):
            c = a[j]
            if c == 0:
                continue
            binom = 1
            for i in range(j + 1):
                shifted[i] += c * binom * t ** (j - i)
                binom = binom * (j - i) // (i + 1)
        assert shifted[4] == 0
        return CurveLocal(tuple(shifted)), t


@dataclass(frozen=True)
class TwoTorsionDivisor:
    """(r_i, 0) + (r_j, 0) - O, stored as indices plus the root values."""

    i: int
    j: int
    ri: PadicElem
    rj: PadicElem


def build_phi(curve):
    """Ascending coefficients of Phi(x) = x^5(1 + 4 g(1/x)); needs a4 = 0."""
    if not curve.normalized:
        raise ValueError("normalize first: the x^4 coefficient must vanish")
    a0, a1, a2, a3, _, a5 = curve.a
    return [4 * a5, F(0), 4 * a3, 4 * a2, 4 * a1, 4 * a0 + 1]


def curve_tower(curve, prec=None, guard=12):
    """The 2-division tower of the curve: mu_15 and pi with a5^2 pi^5 = 2."""
    prec = working_prec(prec)
    nw = prec + guard
    a5 = curve.a[5]
    a5_int = _frac_mod(a5, 2 ** nw)
    u = pow(a5_int * a5_int % 2 ** nw, -1, 2 ** nw)
    return make_tower(2, prec, (("unramified", 4), ("eisenstein", 5, (u,))),
                      guard=guard)


def phi_roots(curve, prec=None, ring=None):
    """The five roots of Phi, indexed so that the last is Frobenius-fixed.

    Root j (1-based) reduces to -a5 zeta^j pi^2 with zeta the fixed
    primitive fifth root of unity; j = 5 gives the tau-fixed root.
    """
    ring = ring or curve_tower(curve, prec)
    a0, a1, a2, a3, _, a5 = curve.a
    pi = ring.pi()
    a5e = ring.from_rational(a5)
    # d(z) = Phi(pi^2 z) / pi^10, integral with unit constant term a5^5
    dcoeffs = [a5e ** 5,
               ring.zero(),
               ring.from_rational(a3) * a5e ** 4 * pi ** 4,
               ring.from_rational(a2) * a5e ** 4 * pi ** 6,
               ring.from_rational(a1) * a5e ** 4 * pi ** 8,
               ring.from_rational(4 * a0 + 1)]
    zeta5 = ring.teichmuller(ring.k.pow(ring.k.gen, (ring.k.q - 1) // 5))
    roots = []
    for j in range(1, 6):
        z0 = -a5e * zeta5 ** (j % 5)
        z = hensel_root(dcoeffs, z0)
        r = z * pi * pi
        assert r.ord() == F(2, 5)
        assert (r / (z0 * pi * pi) - 1).is_zero_to(F(1, 5))
        roots.append(r)
    return roots


def tau_fixed_index(curve, roots, ring):
    """Index of the unique root fixed by the coefficient Frobenius."""
    fixed = [i for i, r in enumerate(roots)
             if (ring.frobenius(r) - r).is_zero_to(min(r.prec, F(3)))]
    assert len(fixed) == 1, "expected exactly one tau-fixed root"
    return fixed[0]


def distinguished_divisor(curve, roots=None, ring=None, prec=None):
    """The divisor through the tau-fixed root and (0, 0)."""
    ring = ring or curve_tower(curve, prec)
    if roots is None:
        roots = phi_roots(curve, ring=ring)
    idx = tau_fixed_index(curve, roots, ring)
    return TwoTorsionDivisor(idx, 5, roots[idx], ring.zero()), roots


def xT_image(P, roots, curve, ring):
    """The x - T image of P: four q-values and the two derivative entries.

    roots is the full list (five Phi roots; index 5 means the zero root of
    x Phi).  The product of the six coordinates is a square in F.
    """
    c = ring.from_rational(4 * curve.a[0] + 1)
    all6 = list(roots) + [ring.zero()]
    r5, r6 = all6[P.i], all6[P.j]
    others = [all6[t] for t in range(6) if t not in (P.i, P.j)]
    if any((r5 - r6).ord() is None for _ in (0,)):
        raise ValueError("coincident roots")

    def q(x):
        return (x - r5) * (x - r6)

    def fprime(r):
        acc = c
        for t in range(6):
            if all6[t] is not r:
                acc = acc * (r - all6[t])
        return acc

    coords = tuple(q(x) for x in others) + \
        ((r6 - r5) * fprime(r5), (r5 - r6) * fprime(r6))
    return coords


def half_point_kummer(P, roots, curve, ring):
    """Kummer group of the half-point field of P (rank at most 4)."""
    c = ring.from_rational(4 * curve.a[0] + 1)
    all6 = list(roots) + [ring.zero()]
    r5, r6 = all6[P.i], all6[P.j]
    r1, r2, r3, r4 = [all6[t] for t in range(6) if t not in (P.i, P.j)]
    gens = [
        c * (r5 - r1) * (r6 - r2) / ((r6 - r3) * (r6 - r4)),
        c * (r5 - r2) * (r6 - r1) / ((r6 - r3) * (r6 - r4)),
        c * (r5 - r3) * (r6 - r1) / ((r6 - r2) * (r6 - r4)),
        c * (r5 - r4) * (r6 - r1) / ((r6 - r2) * (r6 - r3)),
    ]
    return kummer_span(gens)


def curve_kummer_at_T(curve, ring=None, prec=None):
    """half_point_kummer at the distinguished divisor, plus the image check."""
    ring = ring or curve_tower(curve, prec)
    P, roots = distinguished_divisor(curve, ring=ring)
    image = xT_image(P, roots, curve, ring)
    prod = image[0]
    for c in image[1:]:
        prod = prod * c
    assert is_square(prod), "x-T image fails the product-square invariant"
    return half_point_kummer(P, roots, curve, ring), P, roots


def perturbed(curve, eps):
    """Apply the admissible deformation (e0, e1, e2, e3) to the coefficients."""
    if not curve.normalized:
        raise ValueError("normalize first")
    e0, e1, e2, e3 = eps
    a0, a1, a2, a3, a4, a5 = curve.a
    return CurveLocal((a0 + e0, a1 + 2 * e1, a2 + 2 * e2, a3 + 4 * e3, a4, a5))


def deformation_check(curve, eps, prec=None, ring=None):
    """Whether the perturbed curve has the same half-point Kummer group.

    Also certifies the root congruences: matched roots satisfy
    rt/r = 1 + 4 e0 and likewise for difference ratios, modulo 4 pi.
    """
    ring = ring or curve_tower(curve, prec)
    tilde = perturbed(curve, eps)
    if tilde.a[5] != curve.a[5]:
        raise ValueError("the leading coefficient may not move")
    e0 = ring.from_rational(F(eps[0]))
    margin = F(2) + F(1, 5)  # ord(4 pi)
    roots = phi_roots(curve, ring=ring)
    troots = phi_roots(tilde, ring=ring)
    one_plus = 1 + 4 * e0
    for r, rt in zip(roots, troots):
        if not (rt / r - one_plus).is_zero_to(margin):
            return False
    for i in range(5):
        for j in range(i + 1, 5):
            ratio = (troots[j] - troots[i]) / (roots[j] - roots[i])
            if not (ratio - one_plus).is_zero_to(margin):
                return False
    g1, _, _ = curve_kummer_at_T(curve, ring=ring)
    g2, _, _ = curve_kummer_at_T(tilde, ring=ring)
    return g1.same_group(g2)


_R2 = Zq(2, 1, 2)


def honda_params_of_curve(curve):
    """Closed-form exponent-4 parameters of the Jacobian: lambda = -1 and

    s1 = a1 + a3 a4 + (a3^2 - a3)/2,  s2 = a3,  s3 = s5 = a1+a2+a3+a4 mod 2.
    """
    a0, a1, a2, a3, a4, a5 = curve.a
    if _frac_mod(a5, 2) != 1:
        raise ValueError("leading coefficient must be a unit")
    s1 = _frac_mod(a1 + a3 * a4 + (a3 * a3 - a3) / 2, 2)
    s2 = _frac_mod(a3, 2)
    s3 = _frac_mod(a1 + a2 + a3 + a4, 2)
    return honda_params(_R2, 3, s1, s2, s3, s3)


def curve_panel():
    """The 32 deformation-class representatives: a4 = 0, a5 = 1,
    a0, a1, a2 mod 2 and a3 mod 4."""
    out = []
    for a0 in range(2):
        for a1 in range(2):
            for a2 in range(2):
                for a3 in range(4):
                    out.append(CurveLocal((a0, a1, a2, a3, 0, 1)))
    return out
