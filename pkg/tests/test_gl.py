"""Bracket, superform, and centralizer oracles for the gl(M|N) layer."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superw.gl import (
    LieSuperElement,
    basis_indices,
    bracket,
    centralizer_dims,
    e,
    minus,
    pair_parity,
    parity,
    plus,
    rational_rank,
    superform,
)

P1, P2 = plus(1), plus(2)
M1 = minus(1)


def test_box_index_basics():
    assert str(plus(3)) == "3"
    assert str(minus(2)) == "-2"
    assert parity(plus(5)) == 0
    assert parity(minus(5)) == 1
    # plus boxes sort before minus boxes
    assert sorted([minus(1), plus(2), plus(1)]) == [plus(1), plus(2), minus(1)]


def test_bracket_even_pair():
    # [e_{1,2}, e_{2,1}] = e_{1,1} - e_{2,2}, the sl_2 triple inside gl(2)
    lhs = bracket(e(P1, P2), e(P2, P1))
    assert lhs == e(P1, P1) - e(P2, P2)


def test_bracket_odd_odd_is_anticommutator():
    x = e(P1, M1)
    y = e(M1, P1)
    assert bracket(x, y) == e(P1, P1) + e(M1, M1)
    assert bracket(x, x).is_zero()
    assert bracket(y, y).is_zero()


def test_superform_values():
    assert superform(e(P1, P1), e(P1, P1)) == 1
    assert superform(e(M1, M1), e(M1, M1)) == -1
    assert superform(e(P1, P2), e(P2, P1)) == 1
    assert superform(e(P1, P2), e(P1, P2)) == 0
    # supersymmetry flips the sign across an odd pair
    assert superform(e(P1, M1), e(M1, P1)) == 1
    assert superform(e(M1, P1), e(P1, M1)) == -1


def _parity_of(x: LieSuperElement) -> int:
    p = x.homogeneous_parity()
    assert p is not None
    return p


def test_super_antisymmetry_exhaustive_small():
    idx = basis_indices(2, 1)
    for (a, b), (c, d) in itertools.product(itertools.product(idx, repeat=2), repeat=2):
        x, y = e(a, b), e(c, d)
        sign = -1 if (pair_parity(a, b) and pair_parity(c, d)) else 1
        assert bracket(x, y) == (-sign) * bracket(y, x)


def test_jacobi_exhaustive_up_to_four_boxes():
    # [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]] over every basis triple
    for total in range(1, 5):
        for M in range(total + 1):
            N = total - M
            idx = basis_indices(M, N)
            pairs = list(itertools.product(idx, repeat=2))
            for (a, b), (c, d), (f, g) in itertools.product(pairs, repeat=3):
                x, y, z = e(a, b), e(c, d), e(f, g)
                sign = -1 if (pair_parity(a, b) and pair_parity(c, d)) else 1
                lhs = bracket(x, bracket(y, z))
                rhs = bracket(bracket(x, y), z) + sign * bracket(y, bracket(x, z))
                assert lhs == rhs, (M, N, (a, b), (c, d), (f, g))


def test_jacobi_sampled_five_boxes():
    rng = random.Random(51)
    for M in range(6):
        N = 5 - M
        idx = basis_indices(M, N)
        pairs = list(itertools.product(idx, repeat=2))
        for _ in range(400):
            (a, b), (c, d), (f, g) = rng.choice(pairs), rng.choice(pairs), rng.choice(pairs)
            x, y, z = e(a, b), e(c, d), e(f, g)
            sign = -1 if (pair_parity(a, b) and pair_parity(c, d)) else 1
            assert bracket(x, bracket(y, z)) == bracket(bracket(x, y), z) + sign * bracket(y, bracket(x, z))


@st.composite
def gl22_elements(draw):
    idx = basis_indices(2, 2)
    a = draw(st.sampled_from(idx))
    b = draw(st.sampled_from(idx))
    c = draw(st.integers(min_value=-4, max_value=4).filter(bool))
    return e(a, b, c)


@given(gl22_elements(), gl22_elements(), gl22_elements())
@settings(max_examples=150)
def test_superform_invariance(x, y, z):
    assert superform(bracket(x, y), z) == superform(x, bracket(y, z))


def test_element_arithmetic():
    x = e(P1, P2, Fraction(1, 2))
    assert (x - x).is_zero()
    assert (2 * x).terms[(P1, P2)] == 1
    assert x.homogeneous_parity() == 0
    mixed = e(P1, P2) + e(P1, M1)
    assert mixed.homogeneous_parity() is None


def test_centralizer_dims_zero_element():
    zero = e(P1, P1) - e(P1, P1)
    assert centralizer_dims(zero, 1, 1) == (0, 0)


def test_centralizer_dims_regular_nilpotent_gl2():
    assert centralizer_dims(e(P1, P2), 2, 0) == (2, 0)


def test_centralizer_dims_rejects_odd():
    with pytest.raises(ValueError):
        centralizer_dims(e(P1, M1), 1, 1)


def test_rational_rank():
    assert rational_rank([[1, 2], [2, 4]]) == 1
    assert rational_rank([[Fraction(1, 2), 0], [0, 3]]) == 2
    assert rational_rank([[0, 0], [0, 0]]) == 0
    assert rational_rank([]) == 0
