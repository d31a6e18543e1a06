from fractions import Fraction

import pytest

from glab.padic import is_square, make_tower
from glab.points import (
    conductor_L0, conductor_general, e_points, e_tower, f0_polynomial,
    f0_roots, quad_conductor, t_degree, y_chain_check,
)

F = Fraction


@pytest.fixture(scope="module")
def pts2():
    return e_points(2, prec=20)


def test_e_points_count_and_valuations(pts2):
    assert len(pts2) == 15
    for pt in pts2:
        assert pt.a.ord() == F(1, 5)
        assert pt.b.ord() == F(3, 5)
        assert pt.c.ord() == F(4, 5)


def test_e_points_are_roots_of_x15_plus_8(pts2):
    for pt in pts2[:4]:
        assert (pt.a ** 15 + 8).is_zero_to(15)


def test_e_points_ratios_are_mu15(pts2):
    a0 = pts2[0].a
    for pt in pts2[1:5]:
        ratio = pt.a / a0
        assert ratio.ord() == 0
        assert (ratio ** 15 - 1).is_zero_to(15)


def test_e_points_lambda_restriction():
    with pytest.raises(NotImplementedError):
        e_points(2, lam=3)


def test_f0_polynomial_shapes():
    f2 = f0_polynomial(2)
    assert len(f2) - 1 == 16
    # (Z^8 + 1/2)^2 + 2 Z^16 - Z - 1 = 3 Z^16 + Z^8 - Z - 3/4
    assert f2[16] == 3 and f2[8] == 1 and f2[1] == -1 and f2[0] == F(-3, 4)
    f3 = f0_polynomial(3)
    assert len(f3) - 1 == 81
    assert f3[81] == 1 - 9 and f3[1] == -1 and f3[0] == F(1, 27)


def test_f0_roots_p2():
    roots = f0_roots(2, prec=20)
    assert len(roots) == 16
    for z in roots:
        assert z.ord() == F(-1, 8)
    # differences of distinct roots are units congruent to alpha - alpha'
    for i in (1, 5, 9):
        d = roots[i] - roots[0]
        assert d.ord() == 0
    d = roots[2] - roots[1]
    assert d.ord() == 0


def test_conductor_L0_p2():
    rep = conductor_L0(2, prec=20)
    assert rep.f_exponent == 6
    assert rep.breaks == [F(5)]
    assert rep.certificate["conjugate_differences_are_units"]
    assert rep.certificate["conjugate_count"]
    assert rep.certificate["additive_kernel_size"]


def test_quad_conductor_values():
    q2 = make_tower(2, 24, ())
    assert quad_conductor(q2.from_int(17)) == 0
    assert quad_conductor(q2.from_int(5)) == 0   # unramified
    assert quad_conductor(q2.from_int(2)) == 3
    assert quad_conductor(q2.from_int(3)) == 2
    ring = e_tower(2, 20)
    assert quad_conductor(ring.from_int(2)) == 11
    assert quad_conductor(ring.pi()) == 11
    assert quad_conductor(ring.pi() ** 2) == 0


def test_conductor_general_p2():
    rep = conductor_general(None, p=2, prec=20)
    assert rep.f_exponent == 6
    assert rep.certificate["sqrt2_conductor"] == 11
    assert rep.certificate["sqrt2_not_in_second_layer"]
    assert rep.certificate["exp_p_bound_below_f0"]
    assert any("11 > 6" in n or "11" in n for n in rep.notes)


def test_y_chain_margins():
    margins = y_chain_check(2, prec=14)
    assert margins["ord_y0"] == F(3, 40)
    assert margins["ord_y1"] == F(1, 10)
    for key in ("y1^2 = a mod 2", "y2^2 = b mod 2", "y3^2 = c mod 2",
                "hasse-witt"):
        assert margins[key] is None or margins[key] > 1, (key, margins[key])


@pytest.mark.slow
def test_p3_stretch_goal():
    pts = e_points(3, prec=8)
    assert len(pts) == 80
    assert pts[0].a.ord() == F(1, 20)
    rep = conductor_L0(3, prec=6)
    assert rep.f_exponent == 21
    assert t_degree(3) == 20
