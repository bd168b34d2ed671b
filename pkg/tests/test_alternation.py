import random

import pytest

from swapoly.alternation import (
    BudgetExceeded,
    MonomialPattern,
    alt_eval_naive,
    alt_eval_stream,
    split_alt_eval,
)
from swapoly.exact import ExactMatrix, kron
from swapoly.ncpoly import Var, alternate, eval_poly, eval_tensor, xs
from swapoly.pit import random_assignment

X = xs(4)
Y = xs(4, family="y")


def asg_for(vs, d=2, seed=0):
    return random_assignment(vs, d, random.Random(seed))


@pytest.mark.parametrize(
    "slots,alt",
    [
        ([X], [X]),
        ([X[:1], X[1:]], [X]),
        ([X[:2], X[2:]], [X]),
        ([(X[0], Y[0], X[1]), (X[2], X[3])], [X]),
        ([(X[0], Y[0], X[1], Y[1]), (Y[2], X[2], Y[3], X[3])], [X, Y]),
    ],
)
def test_stream_matches_expansion(slots, alt):
    pat = MonomialPattern(slots, alt)
    asg = asg_for(sorted(pat.variables()))
    assert alt_eval_stream(pat, asg) == alt_eval_naive(pat, asg)


def test_naive_matches_alternate():
    pat = MonomialPattern([X[:2], X[2:]], [X])
    asg = asg_for(X)
    t = alternate(pat.to_tensor_poly(), X)
    assert alt_eval_naive(pat, asg) == eval_tensor(t, asg)


def test_standard_polynomial_value():
    pat = MonomialPattern([X[:3]], [X[:3]])
    asg = asg_for(X[:3], d=3)
    assert alt_eval_stream(pat, asg) == eval_poly(alternate(pat.to_tensor_poly(), X[:3]), asg)


def test_pattern_validation():
    with pytest.raises(ValueError):
        MonomialPattern([(X[0], X[0])], [[X[0]]])
    with pytest.raises(ValueError):
        MonomialPattern([X[:2]], [X[:2], X[1:3]])


def test_budget_refusal():
    # interleaved letters make four segments, 4! orderings
    pat = MonomialPattern([(X[0], Y[0], X[1], Y[1], X[2], Y[2], X[3])], [X])
    with pytest.raises(BudgetExceeded) as e:
        alt_eval_stream(pat, asg_for(sorted(pat.variables())), budget=3)
    assert e.value.cost > 3


def test_split_matches_joint_alternation():
    xp = MonomialPattern([X[:2], X[2:]], [X])
    yp = MonomialPattern([Y[:1], Y[1:]], [Y])
    chains = [[("x", 0), ("y", 0)], [("y", 1), ("x", 1)]]
    asg = asg_for(list(X) + list(Y), seed=2)
    joint = MonomialPattern([X[:2] + Y[:1], Y[1:] + X[2:]], [X, Y])
    assert split_alt_eval(xp, yp, chains, asg) == alt_eval_stream(joint, asg)


def test_split_rejects_bad_chains():
    xp = MonomialPattern([X[:2]], [X[:2]])
    yp = MonomialPattern([Y[:2]], [Y[:2]])
    with pytest.raises(ValueError):
        split_alt_eval(xp, yp, [[("x", 0)]], asg_for(list(X[:2]) + list(Y[:2])))


def test_workers_do_not_change_value():
    pat = MonomialPattern([(X[0], Y[0], X[1], Y[1]), (Y[2], X[2], Y[3], X[3])], [X, Y])
    asg = asg_for(sorted(pat.variables()), seed=4)
    assert alt_eval_stream(pat, asg, workers=1) == alt_eval_stream(pat, asg, workers=2)
