import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swapoly.exact import ExactMatrix, perm_operator
from swapoly.symmetric import (
    Partition,
    Permutation,
    acts_as_identity,
    all_permutations,
    algebra_to_operator,
    character,
    character_degree,
    class_to_algebra,
    gl_dimension,
    partitions,
    phi_of_identity,
    phi_transform,
    weingarten,
)


def weyl_dimension(lam, d):
    parts = list(lam) + [0] * (d - len(lam))
    if len(parts) > d:
        return 0
    num = Fraction(1)
    for i in range(d):
        for j in range(i + 1, d):
            num *= Fraction(parts[i] - parts[j] + j - i, j - i)
    return int(num)


def test_partition_counts():
    assert [len(partitions(n)) for n in range(1, 9)] == [1, 2, 3, 5, 7, 11, 15, 22]


def test_permutation_product_convention():
    s = Permutation.from_cycles(3, (1, 2))
    t = Permutation.from_cycles(3, (2, 3))
    st_ = s * t
    assert all(st_(k) == s(t(k)) for k in range(1, 4))
    assert (s * s.inverse()) == Permutation.identity(3)


def test_s3_character_table():
    table = {
        (3,): {(1, 1, 1): 1, (2, 1): 1, (3,): 1},
        (2, 1): {(1, 1, 1): 2, (2, 1): 0, (3,): -1},
        (1, 1, 1): {(1, 1, 1): 1, (2, 1): -1, (3,): 1},
    }
    for lam, row in table.items():
        for mu, v in row.items():
            assert character(lam, mu) == v


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_character_orthogonality(n):
    ps = partitions(n)
    for a in ps:
        for b in ps:
            s = sum(mu.class_size() * character(a, mu) * character(b, mu) for mu in ps)
            assert s == (math.factorial(n) if a == b else 0)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_standard_rep_character(n):
    # chi_(n-1,1) = fixed points - 1
    for p in all_permutations(n):
        fixed = sum(1 for k in range(1, n + 1) if p(k) == k)
        assert character((n - 1, 1), p.cycle_type()) == fixed - 1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_gl_dimension_weyl(n, d):
    for lam in partitions(n):
        assert gl_dimension(lam, d) == weyl_dimension(lam, d)


def test_gl_dimension_examples():
    assert gl_dimension((1,), 5) == 5
    assert gl_dimension((1, 1, 1), 2) == 0
    assert gl_dimension((2, 2), 2) == 1


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("d", [1, 2, 3])
def test_schur_weyl_dimension_count(n, d):
    # (F^d)^{(x) n} = sum_lambda S_lambda (x) V_lambda
    assert sum(character_degree(l) * gl_dimension(l, d) for l in partitions(n)) == d**n


def gram_weingarten(n, d):
    perms = all_permutations(n)
    gram = ExactMatrix([[d ** (s * t.inverse()).num_cycles() for t in perms] for s in perms])
    inv = gram.inverse()
    e = perms.index(Permutation.identity(n))
    return {p.cycle_type(): inv.entry(e, i) for i, p in enumerate(perms)}


@pytest.mark.parametrize("n,d", [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)])
def test_weingarten_matches_gram_inverse(n, d):
    oracle = gram_weingarten(n, d)
    wg = weingarten(n, d)
    for mu, v in oracle.items():
        assert wg[mu] == v


def test_weingarten_d2_values():
    wg = weingarten(2, 2)
    assert wg[(1, 1)] == Fraction(1, 3)
    assert wg[(2,)] == Fraction(-1, 6)


@pytest.mark.parametrize("n,d", [(3, 2), (4, 2), (4, 3), (5, 3), (5, 4)])
def test_weingarten_inverse_when_n_exceeds_d(n, d):
    g = phi_of_identity(n, d) * class_to_algebra(weingarten(n, d))
    assert acts_as_identity(g, d)


@pytest.mark.parametrize("d", range(2, 7))
def test_full_cycle_value(d):
    assert weingarten(d, d)[(d,)] == Fraction((-1) ** (d - 1) * d, math.factorial(d) ** 2 * (2 * d - 1))


def test_phi_examples():
    ident = perm_operator(Permutation.identity(2), 2)
    swap = perm_operator(Permutation.from_cycles(2, (1, 2)), 2)
    e, t = Permutation.identity(2), Permutation.from_cycles(2, (1, 2))
    assert (phi_transform(ident)[e], phi_transform(ident)[t]) == (4, 2)
    assert (phi_transform(swap)[e], phi_transform(swap)[t]) == (2, 4)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(all_permutations(3)), st.sampled_from(all_permutations(3)))
def test_phi_of_permutation_operator(s, t):
    # coefficient of t^-1 is tr(P_t P_s) = d^#cycles(t s)
    phi = phi_transform(perm_operator(s, 2))
    assert phi[t.inverse()] == 2 ** (t * s).num_cycles()


def test_algebra_operator_is_homomorphism():
    a = class_to_algebra(weingarten(3, 2))
    b = phi_of_identity(3, 2)
    assert algebra_to_operator(a * b, 2) == algebra_to_operator(a, 2) @ algebra_to_operator(b, 2)


def test_partition_sign():
    assert Partition((3, 1)).sign() == 1
    assert Partition((2, 1, 1)).sign() == -1
