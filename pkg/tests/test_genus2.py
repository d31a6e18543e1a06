import random
from fractions import Fraction

import pytest

from glab.genus2 import (
    CurveLocal, build_phi, curve_kummer_at_T, curve_panel, curve_tower,
    deformation_check, distinguished_divisor, honda_params_of_curve,
    perturbed, phi_roots, tau_fixed_index, xT_image,
)
from glab.honda import self_dual_check
from glab.padic import is_square

F = Fraction

X5 = CurveLocal((0, 0, 0, 0, 0, 1))          # y^2 + y = x^5


def test_build_phi_examples():
    assert build_phi(X5) == [4, 0, 0, 0, 0, 1]
    c = CurveLocal((0, 1, 0, 0, 0, 1))        # g = x^5 + x
    assert build_phi(c) == [4, 0, 0, 0, 4, 1]
    assert build_phi(CurveLocal((0, 0, 0, 0, 0, 1)))[0] == 4  # constant 4 a5
    with pytest.raises(ValueError):
        build_phi(CurveLocal((0, 0, 0, 0, 1, 1)))


def test_translation_kills_a4():
    c = CurveLocal((1, 2, 3, 4, 5, 1))
    shifted, t = c.translated()
    assert shifted.normalized
    assert t == F(-1, 1)


def test_unit_leading_coefficient_required():
    with pytest.raises(ValueError):
        CurveLocal((0, 0, 0, 0, 0, 2))


@pytest.fixture(scope="module")
def ringX5():
    return curve_tower(X5, prec=16)


@pytest.fixture(scope="module")
def rootsX5(ringX5):
    return phi_roots(X5, ring=ringX5)


def test_phi_roots_valuations(rootsX5):
    for r in rootsX5:
        assert r.ord() == F(2, 5)


def test_unique_tau_fixed_root(ringX5, rootsX5):
    assert tau_fixed_index(X5, rootsX5, ringX5) == 4  # the j = 5 root


def test_roots_actually_solve_phi(ringX5, rootsX5):
    # Phi = x^5 + 4 for g = x^5
    for r in rootsX5:
        assert (r ** 5 + 4).is_zero_to(10)


def test_xT_image_properties(ringX5, rootsX5):
    P, roots = distinguished_divisor(X5, rootsX5, ringX5)
    image = xT_image(P, roots, X5, ringX5)
    assert len(image) == 6
    prod = image[0]
    for c in image[1:]:
        prod = prod * c
    assert is_square(prod)
    # swapping the divisor pair permutes the last two entries
    from glab.genus2 import TwoTorsionDivisor
    Q = TwoTorsionDivisor(P.j, P.i, P.rj, P.ri)
    image2 = xT_image(Q, roots, X5, ringX5)
    assert image2[4].unit_eq(image[5], 8) and image2[5].unit_eq(image[4], 8)


def test_half_point_kummer_rank(ringX5):
    g, P, roots = curve_kummer_at_T(X5, ring=ringX5)
    assert g.rank <= 4


def test_deformation_trivial_and_example(ringX5):
    assert deformation_check(X5, (0, 0, 0, 0), ring=ringX5)
    assert deformation_check(X5, (1, 0, 0, 0), ring=ringX5)


def test_deformation_random(ringX5):
    rng = random.Random(41)
    for _ in range(4):
        eps = tuple(rng.randrange(3) for _ in range(4))
        assert deformation_check(X5, eps, ring=ringX5)


def test_perturbation_moves_only_low_coefficients():
    c = CurveLocal((0, 0, 0, 0, 0, 3))
    t = perturbed(c, (1, 1, 1, 1))
    assert t.a == (1, 2, 2, 4, 0, 3)
    with pytest.raises(ValueError):
        perturbed(CurveLocal((1, 2, 3, 4, 5, 1)), (0, 0, 0, 0))


def test_honda_params_formulas():
    assert honda_params_of_curve(X5).to_json() == \
        {"p": 2, "f": 1, "lambda": 3, "s": [0, 0, 0, 0]}
    c = CurveLocal((0, 0, 0, 1, 0, 1))
    assert honda_params_of_curve(c).to_json()["s"] == [0, 1, 1, 1]
    c = CurveLocal((0, 1, 0, 0, 0, 1))
    assert honda_params_of_curve(c).to_json()["s"] == [1, 0, 1, 1]


def test_honda_params_always_self_dual():
    for curve in curve_panel():
        par = honda_params_of_curve(curve)
        ok, _ = self_dual_check(par)
        assert ok


def test_params_invariant_under_perturbation():
    rng = random.Random(13)
    for curve in curve_panel()[:8]:
        for _ in range(6):
            eps = tuple(rng.randrange(4) for _ in range(4))
            assert honda_params_of_curve(perturbed(curve, eps)).to_json() == \
                honda_params_of_curve(curve).to_json()


def test_panel_has_32_curves_and_8_classes():
    panel = curve_panel()
    assert len(panel) == 32
    classes = {tuple(honda_params_of_curve(c).to_json()["s"]) for c in panel}
    assert len(classes) == 8
