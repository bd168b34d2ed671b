import itertools
import random
from fractions import Fraction

import pytest

from swapoly import constructions as C
from swapoly.exact import ExactMatrix, swap_operator, vectorized_det
from swapoly.ncpoly import NcPoly, alternate, eval_poly, xs
from swapoly.pit import matrix_units, random_matrix


def test_regev_pattern_d2():
    p = C.RegevPattern(2)
    assert p.profile() == (1, 3)
    assert len(p.X) == 4 and len(p.Y) == 4


def test_T2_against_expansion():
    # T_2 = Alt tr(x1) tr(x2 x3 x4), expanded term by term
    rng = random.Random(0)
    mats = [random_matrix(rng, 2) for _ in range(4)]
    asg = dict(zip(xs(4), mats))
    total = Fraction(0)
    for w, c in alternate(NcPoly({xs(4): 1}), xs(4)).terms.items():
        total += c * eval_poly(NcPoly({w[:1]: 1}), asg).trace() * eval_poly(NcPoly({w[1:]: 1}), asg).trace()
    assert C.T_d(mats) == total


@pytest.mark.parametrize("d", [2, 3])
def test_T_is_multiple_of_det(d):
    rng = random.Random(d)
    for _ in range(3):
        mats = [random_matrix(rng, d) for _ in range(d * d)]
        assert C.T_d(mats) == C.signed_constant(d) * vectorized_det(mats)


def test_T2_at_matrix_units_all_orders():
    units = matrix_units(2)
    for perm in itertools.permutations(range(4)):
        mats = [units[i] for i in perm]
        assert C.T_d(mats) == C.signed_constant(2) * vectorized_det(mats)


def test_constants():
    assert [C.trace_constant_magnitude(d) for d in (1, 2, 3)] == [1, 6, 360]
    assert C.signed_constant(2) == -6 and C.signed_constant(3) == 360
    with pytest.raises(ValueError):
        C.signed_constant(4)


@pytest.mark.parametrize("d,want", [(2, Fraction(-1, 12)), (3, Fraction(1, 180))])
def test_regev_multiplier(d, want):
    assert C.regev_coefficient(d) == want
    rng = random.Random(10 + d)
    xm, ym = C.random_xy(d, rng)
    F = C.regev_F_value(d, xm, ym)
    assert F.scalar_value() == want * C.T_d(xm) * C.T_d(ym)


def test_regev_naive_route_d2():
    rng = random.Random(4)
    xm, ym = C.random_xy(2, rng)
    assert C.regev_F_naive(2, xm, ym) == C.regev_F_value(2, xm, ym)


@pytest.mark.parametrize("d", [2, 3])
def test_regev_tensor_is_weingarten(d):
    rng = random.Random(d)
    ym = [random_matrix(rng, d) for _ in range(d * d)]
    g = C.regev_tensor(d, ym)
    assert g == C.weingarten_operator(d, d).scale(C.T_d(ym))


def test_profiles():
    assert not C.profile_can_be_nonzero((4,), 2)
    assert not C.profile_can_be_nonzero((2, 2), 2)
    assert C.profile_can_be_nonzero((1, 3), 2)
    assert C.profile_can_be_nonzero((1, 1, 2), 2)
    rng = random.Random(0)
    ym = [random_matrix(rng, 2) for _ in range(4)]
    assert C.profile_tensor((2, 2), ym).is_zero()


def test_even_analysis_d2():
    an = C.even_analysis(2)
    assert (an.a_hh, an.a_d) == (Fraction(1, 3), Fraction(-1, 6))
    assert an.g1 == (Fraction(5, 36), Fraction(-1, 9))
    assert an.g2 == (Fraction(1, 9), Fraction(-1, 18))
    assert an.value == Fraction(1, 216)


def test_even_swap_certificate():
    cert = C.even_swap_combination(2, points=3, seed=1)
    assert cert.valid
    assert len({s.ratio for s in cert.samples}) == 1


@pytest.mark.parametrize("d,pair", [(2, (4, -5)), (4, (22, -27)), (6, (300, -349))])
def test_even_integer_combinations(d, pair):
    assert C.even_analysis(d).integer_combination == pair


def test_even_lines_findings():
    d2 = C.compare_even_lines(2)
    assert not any(lc.matches for lc in d2)
    assert {lc.true_value for lc in d2 if lc.unit == "DD"} == {-4, -6}
    (d6,) = C.compare_even_lines(6)
    assert not d6.proportional


def test_closed_form_constant():
    assert C.true_closed_form_constant(2) == Fraction(-1, 36)
    assert C.closed_form_constant(2, scaled=False) == Fraction(-1, 54)


def test_odd_components_d3():
    assert C.odd_G1_components(3) == (Fraction(-1, 1440), Fraction(1, 480))
    assert C.odd_G2_predicted() * 576 == Fraction(-64, 5)
    an = C.odd_analysis()
    assert an["value"] == Fraction(1, 194400)


def test_odd_swap_certificate():
    cert = C.odd_swap_combination(points=1, seed=2)
    assert cert.valid


@pytest.mark.parametrize(
    "h,scaled",
    [
        (2, Fraction(-64, 5)),
        (3, Fraction(-1867, 105)),
        (4, Fraction(-383816, 19305)),
        (5, Fraction(-26066445, 1497496)),
        (6, Fraction(-78150307, 3821090)),
    ],
)
def test_odd_coefficient(h, scaled):
    oc = C.odd_coefficient(h)
    assert oc.nonzero and oc.scaled_d_plus_1 == scaled


def test_odd_coefficient_enumeration():
    assert C.odd_coefficient(2).agrees
    oc = C.odd_coefficient(3)
    assert not oc.agrees
    assert oc.enumeration * 720**2 == Fraction(-221, 42)


def test_capelli_companions():
    cs = C.capelli_swap(2)
    rng = random.Random(3)
    asg = {v: random_matrix(rng, 2) for v in sorted(cs.f.variables())}
    trf = eval_poly(cs.f, asg).trace()
    for i, fi in enumerate(cs.companions):
        for j, xj in enumerate(cs.alternated):
            val = eval_poly(NcPoly({(xj,): 1}) * fi, asg).trace()
            assert val == (trf if i == j else 0)
    asg[cs.y0] = random_matrix(rng, 2)
    assert cs.H.evaluate(asg) == swap_operator(2).scale(trf)
    assert eval_poly(cs.h, asg) == ExactMatrix.identity(2).scale(asg[cs.y0].trace() * trf)


def test_companion_requires_single_occurrence():
    x1, x2 = xs(2)
    with pytest.raises(ValueError):
        C.companion(NcPoly({(x1, x1): 1}), x1)


@pytest.mark.parametrize("d", [2, 3])
def test_dual_basis(d):
    rng = random.Random(d)
    x, y = xs(1)[0], xs(1, family="y")[0]
    words = {2: [(), (x,), (y,), (x, y)], 3: [(), (x,), (y,), (x, x), (x, y), (y, x), (y, y), (x, x, y), (x, y, y)]}[d]
    cert = C.dual_basis_swap(words, {x: random_matrix(rng, d), y: random_matrix(rng, d)}, d)
    assert not cert.singular and cert.holds


def test_dual_basis_singular():
    x = xs(1)[0]
    cert = C.dual_basis_swap([(), (x,), (x, x), (x, x, x)], {x: random_matrix(random.Random(0), 2)}, 2)
    assert cert.singular and cert.delta == 0
