import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapoly.exact import (
    DegenerateDimension,
    DimensionError,
    ExactMatrix,
    TensorOperator,
    as_scalar,
    decompose_sigma2,
    fmt_scalar,
    integer_rank,
    kron,
    partial_contract,
    perm_operator,
    swap_operator,
    vectorized_det,
)
from swapoly.symmetric import Permutation, all_permutations

small = st.integers(-6, 6)


def matrices(d):
    return st.lists(st.lists(small, min_size=d, max_size=d), min_size=d, max_size=d).map(ExactMatrix)


def leibniz_det(rows):
    n = len(rows)
    total = Fraction(0)
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        prod = Fraction(1)
        for i in range(n):
            prod *= rows[i][p[i]]
        total += (-1) ** inv * prod
    return total


def test_scalars_and_format():
    assert as_scalar("3/6") == Fraction(1, 2)
    assert fmt_scalar(Fraction(-4, 2)) == "-2"
    assert fmt_scalar(Fraction(3, 9)) == "1/3"
    with pytest.raises(TypeError):
        as_scalar(0.5)


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_det_matches_leibniz(m):
    assert m.det() == leibniz_det([[Fraction(v) for v in row] for row in m.a.tolist()])


@settings(max_examples=40, deadline=None)
@given(matrices(3))
def test_adjugate_identity(m):
    assert m @ m.adjugate() == ExactMatrix.identity(3).scale(m.det())


@settings(max_examples=30, deadline=None)
@given(matrices(3), matrices(3))
def test_det_multiplicative(a, b):
    assert (a @ b).det() == a.det() * b.det()


def test_inverse_and_solve():
    m = ExactMatrix([[2, 1], [7, 4]])
    assert m @ m.inverse() == ExactMatrix.identity(2)
    assert ExactMatrix([[1, 2], [2, 4]]).inverse() is None
    x = m.solve(ExactMatrix([[1], [2]]))
    assert m @ x == ExactMatrix([[1], [2]])


def test_scalar_value():
    assert ExactMatrix.identity(3).scale(Fraction(2, 3)).scalar_value() == Fraction(2, 3)
    assert ExactMatrix([[1, 1], [0, 1]]).scalar_value() is None


def test_integer_rank_against_fraction_elimination():
    rng = random.Random(3)
    for _ in range(20):
        rows = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(5)]
        rows.append([a + b for a, b in zip(rows[0], rows[1])])
        assert integer_rank(rows) == ExactMatrix(rows).rank()


def test_swap_operator_exchanges_factors():
    rng = random.Random(0)
    a = ExactMatrix([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
    b = ExactMatrix([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)])
    sw = swap_operator(3)
    assert sw @ kron(a, b) @ sw == kron(b, a)
    assert sw.trace() == 3
    assert sw @ sw == TensorOperator.identity(3, 2)


def test_perm_operator_is_homomorphism():
    perms = all_permutations(3)
    for s in perms:
        for t in perms:
            assert perm_operator(s * t, 2) == perm_operator(s, 2) @ perm_operator(t, 2)


def test_perm_operator_trace_counts_cycles():
    for s in all_permutations(4):
        assert perm_operator(s, 2).trace() == 2 ** s.num_cycles()


def test_perm_operator_moves_factors():
    # factor in position k moves to position sigma(k)
    s = Permutation.from_cycles(3, (1, 2, 3))
    u = [ExactMatrix.unit(2, 0, 1), ExactMatrix.unit(2, 1, 1), ExactMatrix.identity(2)]
    p = perm_operator(s, 2)
    moved = [None] * 3
    for k in range(3):
        moved[s(k + 1) - 1] = u[k]
    assert p @ kron(*u) @ perm_operator(s.inverse(), 2) == kron(*moved)


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 4), small, small)
def test_decompose_sigma2_roundtrip(d, a, b):
    op = TensorOperator.identity(d, 2).scale(a) + swap_operator(d).scale(b)
    dec = decompose_sigma2(op)
    assert (dec.a, dec.b, dec.residual_zero) == (a, b, True)


def test_decompose_sigma2_residual():
    op = kron(ExactMatrix.unit(2, 0, 0), ExactMatrix.identity(2))
    assert not decompose_sigma2(op).residual_zero
    with pytest.raises(DegenerateDimension):
        decompose_sigma2(swap_operator(1))


def test_vectorized_det_of_units():
    units = [ExactMatrix.unit(2, i, j) for i in range(2) for j in range(2)]
    assert vectorized_det(units) == 1
    with pytest.raises(DimensionError):
        vectorized_det(units[:3])


def test_partial_contract():
    rng = random.Random(1)
    a, b, z = (ExactMatrix([[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]) for _ in range(3))
    assert partial_contract(kron(a, b), z) == a @ z @ b
    # the swap contracts to tr(z) Id
    assert partial_contract(swap_operator(2), z) == ExactMatrix.identity(2).scale(z.trace())


def test_kron_dimension_mismatch():
    with pytest.raises(DimensionError):
        kron(ExactMatrix.identity(2), ExactMatrix.identity(3))
