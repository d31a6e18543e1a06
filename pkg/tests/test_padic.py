import random
from fractions import Fraction

import pytest

from glab.padic import (
    PrecisionError, frobenius, hensel_root, is_square, kummer_span,
    make_tower, signature, square_class_decompose,
)

F = Fraction

# pi^5 = 2 over the unramified quartic: the 2-division tower
SPEC_E5 = (("unramified", 4), ("eisenstein", 5, (1,)))
# w^8 = 2(w^7 - w^6 + w^4 - 1): the reversed Eisenstein relation for 1/r
SPEC_E8 = (("unramified", 4), ("eisenstein", 8, (-1, 0, 0, 0, 1, 0, -1, 1)))


@pytest.fixture(scope="module")
def Fq2():
    return make_tower(2, 16, SPEC_E5)


def test_residue_field_and_mu15(Fq2):
    zeta = Fq2.teichmuller(Fq2.k.gen)
    assert (zeta ** 15 - 1).ord() is None
    assert (zeta ** 5 - 1).ord() is not None
    assert (zeta ** 3 - 1).ord() is not None


def test_ord_basics(Fq2):
    assert Fq2.from_int(2).ord() == 1
    assert Fq2.pi().ord() == F(1, 5)
    z = Fq2.from_int(0)
    assert z.ord() is None
    assert z.prec >= 16


def test_pi_power_matches_relation(Fq2):
    assert (Fq2.pi() ** 5 - 2).ord() is None


def test_stacked_tower_compositum():
    ring = make_tower(2, 8, (("unramified", 4), ("eisenstein", 5, (1,)),
                             ("eisenstein", 8, (-1, 0, 0, 0, 1, 0, -1, 1))))
    assert ring.e == 40
    pi5 = ring.pi(0)
    w8 = ring.pi(1)
    assert pi5.ord() == F(1, 5)
    assert w8.ord() == F(1, 8)
    uni = pi5 ** 2 * w8.inv() ** 3
    assert uni.ord() == F(1, 40)


def test_ord_add_mul_properties(Fq2):
    rng = random.Random(11)
    elems = []
    zeta = Fq2.teichmuller(Fq2.k.gen)
    for _ in range(12):
        x = Fq2.from_int(rng.randrange(1, 50)) * zeta ** rng.randrange(15) \
            * Fq2.pi() ** rng.randrange(4)
        elems.append(x)
    for _ in range(30):
        x, y = rng.choice(elems), rng.choice(elems)
        assert (x * y).ord() == x.ord() + y.ord()
        s = (x + y).ord()
        if x.ord() != y.ord():
            assert s == min(x.ord(), y.ord())
        else:
            assert s is None or s >= x.ord()


def test_frobenius_properties(Fq2):
    zeta = Fq2.teichmuller(Fq2.k.gen)
    for c in [Fq2.k.gen, Fq2.k.elem([1, 1, 0, 1])]:
        t = Fq2.teichmuller(c)
        assert frobenius(t).unit_eq(Fq2.teichmuller(Fq2.k.frob(c)))
    x = zeta + zeta ** 7 * 3
    y = x
    for _ in range(4):
        y = frobenius(y)
    assert y.unit_eq(x)
    assert (frobenius(x) - x * x).ord() >= 1
    with pytest.raises(ValueError):
        frobenius(Fq2.pi())


def test_inverse(Fq2):
    rng = random.Random(3)
    zeta = Fq2.teichmuller(Fq2.k.gen)
    for _ in range(8):
        x = (1 + 2 * Fq2.from_int(rng.randrange(20))) * zeta ** rng.randrange(15) \
            * Fq2.pi() ** rng.randrange(-3, 4)
        assert (x * x.inv() - 1).ord() is None


def test_hensel_cube_root():
    ring = make_tower(2, 16, (("unramified", 2),))
    # x^3 - 1 over W(F_4); start near a residue cube root but off by 2
    x0 = ring.unram_gen() + 2
    root = hensel_root([-1, 0, 0, 1], x0)
    assert (root ** 3 - 1).ord() is None
    assert (root - x0).ord() >= 1


def test_hensel_quintic(Fq2):
    # d(z) = z^5 + 1 has the Teichmuller fifth roots of -1 as roots
    zeta5 = Fq2.teichmuller(Fq2.k.pow(Fq2.k.gen, 3))
    x0 = -zeta5
    root = hensel_root([1, 0, 0, 0, 0, 1], x0)
    assert (root ** 5 + 1).ord() is None


def test_hensel_criterion_failure(Fq2):
    with pytest.raises(ValueError):
        hensel_root([1, 0, 1], Fq2.one())  # x^2 + 1 at x0 = 1: f' even


def test_reversed_eisenstein_r_has_negative_ord():
    ring = make_tower(2, 16, SPEC_E8)
    r = ring.pi().inv()
    assert r.ord() == F(-1, 8)
    # g(r) = 0 for g = x^8 - x^4 + x^2 - x + 1/2
    val = r ** 8 - r ** 4 + r ** 2 - r + F(1, 2)
    assert val.is_zero_to(16)


def test_is_square_qp():
    q2 = make_tower(2, 24, ())
    assert is_square(q2.from_int(1))
    assert is_square(q2.from_int(17))
    assert not is_square(q2.from_int(2))
    assert not is_square(q2.from_int(3))
    assert not is_square(q2.from_int(5))
    assert is_square(q2.from_int(25))
    assert not is_square(q2.from_int(-1))


def test_is_square_in_tower(Fq2):
    assert not is_square(Fq2.pi())
    assert is_square(Fq2.pi() ** 2)
    assert not is_square(Fq2.from_int(2))  # odd pi-valuation 5
    rng = random.Random(5)
    zeta = Fq2.teichmuller(Fq2.k.gen)
    for _ in range(6):
        u = (1 + 2 * Fq2.from_int(rng.randrange(1, 9))) * zeta ** rng.randrange(15)
        w = (1 + 2 * Fq2.from_int(rng.randrange(1, 9))) * Fq2.pi() ** rng.randrange(3)
        assert is_square(u * w * w) == is_square(u)


def test_is_square_precision_guard():
    q2 = make_tower(2, 3, (), guard=0)
    with pytest.raises(PrecisionError):
        is_square(q2.from_int(9))


def test_signature_is_additive(Fq2):
    rng = random.Random(9)
    zeta = Fq2.teichmuller(Fq2.k.gen)
    for _ in range(10):
        u = (1 + 2 * Fq2.from_int(rng.randrange(16))) * zeta ** rng.randrange(15) \
            * Fq2.pi() ** rng.randrange(3)
        v = (1 + 2 * Fq2.from_int(rng.randrange(16))) * zeta ** rng.randrange(15)
        su, sv, suv = signature(u), signature(v), signature(u * v)
        assert suv == tuple((a + b) % 2 for a, b in zip(su, sv))


def test_kummer_span(Fq2):
    one = Fq2.one()
    g = kummer_span([one, one])
    assert g.rank == 0
    g = kummer_span([Fq2.pi(), Fq2.pi()])
    assert g.rank == 1
    u = Fq2.from_int(3)
    v = Fq2.pi()
    sq = Fq2.from_int(9)
    g = kummer_span([u, v, u * v * sq])
    assert g.rank == 2
    for x in (u, v, u * v * sq):
        assert g.contains(x)
    # 2 = pi^5 here, so 2u is in the span; 1 + pi is not
    assert g.contains(Fq2.from_int(2) * u)
    assert not g.contains(Fq2.one() + Fq2.pi())


def test_hensel_refines_compatibly():
    lo = make_tower(2, 10, SPEC_E5)
    hi = make_tower(2, 20, SPEC_E5)
    r_lo = hensel_root([1, 0, 0, 0, 0, 1], -lo.teichmuller(lo.k.pow(lo.k.gen, 3)))
    r_hi = hensel_root([1, 0, 0, 0, 0, 1], -hi.teichmuller(hi.k.pow(hi.k.gen, 3)))
    # same Teichmuller datum: identical coefficient trees at the lower modulus
    lo_tree = r_lo.tree
    hi_tree = r_hi.tree
    m = 2 ** (10 + 16)

    def reduce_tree(t):
        if isinstance(t, int):
            return t % m
        return tuple(reduce_tree(x) for x in t)

    assert reduce_tree(lo_tree) == reduce_tree(hi_tree)
