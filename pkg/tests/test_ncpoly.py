import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapoly.exact import ExactMatrix, kron
from swapoly.ncpoly import (
    NcPoly,
    TensorPoly2,
    TermCapExceeded,
    UnassignedVariable,
    Var,
    alternate,
    capelli_poly,
    commutator,
    eval_poly,
    eval_tensor,
    format_poly,
    is_balanced,
    parse_poly,
    standard_poly,
    var,
    word,
    xs,
)
from swapoly.pit import NOT_IDENTITY, PROVED, is_tpi, random_assignment

x1, x2, x3 = xs(3)
letters = st.sampled_from([x1, x2, x3])
words = st.lists(letters, max_size=3).map(tuple)
polys = st.dictionaries(words, st.integers(-3, 3), max_size=4).map(NcPoly)


def rand_asg(vs, d=2, seed=0):
    return random_assignment(vs, d, random.Random(seed))


def test_var_parsing():
    assert var("x3") == Var("x", 3)
    assert str(var("zeta1")) == "zeta1"
    with pytest.raises(ValueError):
        var("w1")
    assert word("x1.y2") == (Var("x", 1), Var("y", 2))
    assert word("1") == ()


def test_arithmetic_and_zero_terms():
    p = NcPoly({(x1,): 1}) - NcPoly({(x1,): 1})
    assert p.is_zero() and len(p) == 0
    q = NcPoly.letter(x1) * NcPoly.letter(x2)
    assert q.terms == {(x1, x2): 1}
    assert (2 * q).terms[(x1, x2)] == 2


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys)
def test_evaluation_is_ring_homomorphism(p, q, r):
    asg = rand_asg([x1, x2, x3])
    ev = lambda f: eval_poly(f, asg, 2)  # noqa: E731
    assert ev(p * q + r) == ev(p) @ ev(q) + ev(r)


@settings(max_examples=30, deadline=None)
@given(polys)
def test_format_parse_roundtrip(p):
    assert parse_poly(format_poly(p)) == p


def test_tensor_roundtrip_and_contract():
    t = TensorPoly2.tensor(NcPoly({(x1,): 2}), NcPoly({(x2, x1): 1})) + TensorPoly2.tensor(NcPoly.one(), NcPoly({(x3,): -1}))
    assert parse_poly(format_poly(t)) == t
    asg = rand_asg([x1, x2, x3])
    z = Var("zeta", 1)
    asg[z] = ExactMatrix([[1, 2], [3, 4]])
    c = t.contract(NcPoly({(z,): 1}))
    want = asg[x1].scale(2) @ asg[z] @ asg[x2] @ asg[x1] - asg[z] @ asg[x3]
    assert eval_poly(c, asg) == want
    want_t = kron(asg[x1].scale(2), asg[x2] @ asg[x1]) - kron(ExactMatrix.identity(2), asg[x3])
    assert eval_tensor(t, asg) == want_t


def test_unassigned_variable():
    with pytest.raises(UnassignedVariable):
        eval_poly(NcPoly({(x1, x2): 1}), {x1: ExactMatrix.identity(2)})


def test_balanced():
    t = TensorPoly2.tensor(NcPoly({(x1, x2): 1}), NcPoly({(x2, x1): 1}))
    assert is_balanced(t) and is_balanced(t, by="multidegree")
    u = TensorPoly2.tensor(NcPoly({(x1, x1): 1}), NcPoly({(x2, x2): 1}))
    assert is_balanced(u) and not is_balanced(u, by="multidegree")
    assert not is_balanced(TensorPoly2.tensor(NcPoly({(x1,): 1}), NcPoly.one()))


def test_standard_poly_sizes():
    assert len(standard_poly(3)) == 6
    assert len(capelli_poly(3)) == 6
    with pytest.raises(TermCapExceeded):
        standard_poly(9, cap=1000)


def test_alternate_rejects_non_multilinear():
    with pytest.raises(ValueError):
        alternate(NcPoly({(x1, x1): 1}), [x1, x2])


def test_amitsur_levitzki():
    # St_4 is an identity of 2x2 matrices, St_3 is not
    assert is_tpi(standard_poly(4), 2, trials=5).verdict == PROVED
    assert is_tpi(standard_poly(3), 2, trials=5).verdict == NOT_IDENTITY


def test_commutator_vanishes_on_scalars():
    c = commutator(NcPoly.letter(x1), NcPoly.letter(x2))
    asg = {x1: ExactMatrix.identity(2).scale(Fraction(3, 2)), x2: ExactMatrix([[1, 2], [3, 4]])}
    assert eval_poly(c, asg).is_zero()


def test_capelli_c4_not_identity_on_2x2():
    f = capelli_poly(4)
    asg = rand_asg(sorted(f.variables()), seed=5)
    assert not eval_poly(f, asg).is_zero()
