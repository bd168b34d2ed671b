import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapoly import twobytwo as B
from swapoly.exact import ExactMatrix, decompose_sigma2, swap_operator
from swapoly.ncpoly import NcPoly, eval_poly, is_balanced
from swapoly.pit import PLAUSIBLE, is_tpi, random_matrix

entry = st.integers(-7, 7)
mat2 = st.lists(entry, min_size=4, max_size=4).map(lambda v: ExactMatrix([v[:2], v[2:]]))


def pair(seed):
    rng = random.Random(seed)
    return random_matrix(rng, 2), random_matrix(rng, 2)


@settings(max_examples=50, deadline=None)
@given(mat2, mat2)
def test_s_multiplication_is_faithful(x, y):
    for i in range(4):
        for j in range(4):
            a, b = B.SElement.basis(i), B.SElement.basis(j)
            assert (a * b).evaluate(x, y) == a.evaluate(x, y) @ b.evaluate(x, y)


@settings(max_examples=30, deadline=None)
@given(mat2, mat2)
def test_nc_to_s_agrees_with_evaluation(x, y):
    p = NcPoly({(B.Y, B.X, B.X, B.Y): 1, (B.X, B.Y, B.Y): -2, (): 3})
    assert B.nc_to_s(p).evaluate(x, y) == eval_poly(p, {B.X: x, B.Y: y})


@settings(max_examples=30, deadline=None)
@given(mat2, mat2)
def test_bracket_scalar_is_minus_det(x, y):
    c = x @ y - y @ x
    assert B.bracket_scalar(x, y) == -c.det()
    # [x, y]^2 = -det([x, y]) Id for 2x2 traceless commutators
    assert c @ c == ExactMatrix.identity(2).scale(B.bracket_scalar(x, y))


@pytest.mark.parametrize("g", range(5))
def test_absorb_generator(g):
    f = B.BracketForm.bracket().lmul((B.X, B.Y)).rmul((B.X,))
    for seed in range(5):
        x, y = pair(seed)
        assert B.absorb_generator(g, f).evaluate(x, y) == f.evaluate(x, y).scale(B.invariants(x, y)[g])


def test_absorb_invariant_monomial():
    e = (2, 0, 1, 1, 1)
    f = B.BracketForm.bracket()
    for seed in range(5):
        x, y = pair(seed)
        got = eval_poly(B.absorb_invariant(e, f), {B.X: x, B.Y: y})
        assert got == f.evaluate(x, y).scale(B.TPoly.monomial(e).evaluate(x, y))


def test_P_is_swap_polynomial():
    P = B.P_xy()
    for seed in range(5):
        x, y = pair(seed)
        dec = decompose_sigma2(P.evaluate({B.X: x, B.Y: y}))
        assert dec.residual_zero and dec.a == 0 and dec.b == B.bracket_scalar(x, y)


def test_Q_shape_and_value():
    Q = B.Q_xy()
    assert len(Q) == 40 and is_balanced(Q)
    for seed in range(5):
        x, y = pair(seed)
        want = swap_operator(2).scale(y.trace() ** 2 * B.bracket_scalar(x, y) ** 2)
        assert Q.evaluate({B.X: x, B.Y: y}) == want


def test_q_prime():
    qp = B.balanced_Q_prime()
    assert qp.variables() <= {B.X, B.Y}
    assert is_balanced(qp) and qp.slot_degrees() == {(5, 5)}
    for seed in range(3):
        x, y = pair(seed)
        assert qp.evaluate({B.X: x, B.Y: y}) == B.Q_xy().evaluate({B.X: x, B.Y: y})
    assert is_tpi(B.q_prime_minus_q(), 2, trials=10).verdict == PLAUSIBLE


@pytest.mark.parametrize("h,k", [(1, 0), (1, 2), (2, 1), (2, 0), (3, 1)])
def test_balanced_family(h, k):
    t = B.balanced_family(h, k)
    assert is_balanced(t)
    for seed in range(3):
        x, y = pair(seed)
        want = swap_operator(2).scale(B.balanced_family_scalar(h, k, x, y))
        assert t.evaluate({B.X: x, B.Y: y}) == want


@pytest.mark.parametrize("h,k", [(0, 0), (1, 1), (1, 3)])
def test_family_hypotheses(h, k):
    with pytest.raises(ValueError):
        B.check_family_hypotheses(h, k)


def test_displayed_split_differs():
    bad = 0
    for seed in range(5):
        x, y = pair(seed)
        want = swap_operator(2).scale(y.trace() ** 2 * B.bracket_scalar(x, y) ** 2)
        bad += B.displayed_traced_split(x, y) != want
    assert bad > 0


def test_gram_matrix():
    for seed in range(10):
        x, y = pair(seed)
        g = B.trace_gram(x, y)
        assert g.det_matches
        if g.dual_swap is not None:
            assert g.dual_swap == g.p_value
            assert g.lambda_mismatches(-1) == [(0, 0)]


def test_poincare_low_degrees():
    rows = {(r.i, r.j): r for r in B.poincare_check(5, seed=1)}
    assert all(r.ok for r in rows.values())
    assert rows[(1, 1)].rank == 2
    first = sorted(k for k, r in rows.items() if r.identities_series)
    assert min(sum(k) for k in first) == 5
    assert (2, 3) in first and (3, 2) in first


def test_series_inverse():
    s = B.series_T(6)
    one = s * s.inverse()
    assert one[(0, 0)] == 1
    assert all(one[(i, j)] == 0 for i in range(7) for j in range(7 - i) if (i, j) != (0, 0))


@pytest.mark.parametrize("name", B.IDENTITY_NAMES)
def test_identities(name):
    assert B.check_identity(name, seed=3, points=5)


def test_tpoly_arithmetic():
    t = B.TPoly.gen(0) * B.TPoly.gen(2) - B.TPoly.gen(4)
    x, y = pair(9)
    assert t.evaluate(x, y) == x.trace() * y.trace() - (x @ y).trace()
    assert (t - t).is_zero()
    assert B.TPoly.const(Fraction(1, 2)).evaluate(x, y) == Fraction(1, 2)
