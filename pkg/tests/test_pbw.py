"""Normal-form, projection, and one-dimensional evaluation oracles in U(g)."""

import itertools
import random
from fractions import Fraction

import pytest

from superw.gl import bracket, e, minus, plus
from superw.pbw import (
    algebra_for,
    evaluate_one_dim,
    from_factors,
    from_lie,
    generator,
    identity,
    is_W_invariant,
    pr_chi,
    scalar_element,
    supercommutator,
    twisted_action,
)
from superw.pyramid import all_pairs, from_shift

P1, P2, P3 = plus(1), plus(2), plus(3)


@pytest.fixture(scope="module")
def alg36(gl36):
    return algebra_for(gl36)


def test_scalar_and_identity(gl36, alg36):
    one = identity(alg36)
    assert one.constant_term() == 1
    assert (3 * one).constant_term() == 3
    assert scalar_element(alg36, 0).is_zero()
    assert one * one == one


def test_supercommutator_matches_bracket_on_generators(gl36, alg36):
    rng = random.Random(7)
    pairs = all_pairs(gl36)
    for _ in range(60):
        a = rng.choice(pairs)
        b = rng.choice(pairs)
        lhs = supercommutator(generator(alg36, *a), generator(alg36, *b))
        assert lhs == from_lie(alg36, bracket(e(*a), e(*b))), (a, b)


def test_odd_generator_squares_to_zero(gl36, alg36):
    x = generator(alg36, P1, minus(2))
    assert (x * x).is_zero()
    assert (x ** 2).is_zero()


def test_product_associativity_sampled(gl36, alg36):
    rng = random.Random(11)
    pairs = all_pairs(gl36)
    for _ in range(40):
        x, y, z = (generator(alg36, *rng.choice(pairs)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_pbw_straightening_reorders_h_pair(gl36, alg36):
    # e_{2,1} e_{1,1} = e_{1,1} e_{2,1} + e_{2,1} in U(g)
    a = from_lie(alg36, e(P2, P1))
    d = from_lie(alg36, e(P1, P1))
    prod = a * d
    assert prod == d * a + a


def test_parity_of_monomials(gl36, alg36):
    ev = from_lie(alg36, e(P1, P2))
    od = from_lie(alg36, e(P1, minus(2)))
    assert ev.parity() == 0
    assert od.parity() == 1
    assert (ev * od).parity() == 1
    assert (od + ev).parity() is None
    assert scalar_element(alg36, 0).parity() == 0


def test_in_U_p(gl36, alg36):
    assert from_lie(alg36, e(P1, P2)).in_U_p()
    assert from_lie(alg36, e(P1, P1)).in_U_p()
    assert not from_lie(alg36, e(P2, P1)).in_U_p()
    assert (from_lie(alg36, e(P1, P2)) * from_lie(alg36, e(P2, P3))).in_U_p()


def test_pr_chi_linear_values(gl36, alg36):
    # chi pairs each m-generator against the adjacency sum
    assert pr_chi(gl36, from_lie(alg36, e(P2, P1))) == identity(alg36)
    assert pr_chi(gl36, from_lie(alg36, e(minus(4), minus(2)))) == -identity(alg36)
    assert pr_chi(gl36, from_lie(alg36, e(P3, P1))).is_zero()


def test_pr_chi_strips_trailing_m_factor(gl36, alg36):
    # the projection works along the left ideal: u·a = chi(a)·u, so the
    # quadratic monomial keeps its straightening byproduct
    a = from_lie(alg36, e(P2, P1))
    d = from_lie(alg36, e(P1, P1))
    assert pr_chi(gl36, a * d) == d + identity(alg36)
    assert pr_chi(gl36, d * a) == d


def test_pr_chi_is_U_p_identity(gl36, alg36):
    u = from_lie(alg36, e(P1, P2)) * from_lie(alg36, e(P1, P1)) + 5 * identity(alg36)
    assert pr_chi(gl36, u) == u


def test_twisted_action_values(gl36, alg36):
    d = from_lie(alg36, e(P1, P1))
    assert twisted_action(gl36, (P2, P1), d) == identity(alg36)
    assert twisted_action(gl36, e(P2, P1), from_lie(alg36, e(P2, P2))) == -identity(alg36)
    with pytest.raises(ValueError):
        twisted_action(gl36, (P1, P2), d)  # not an m element
    with pytest.raises(ValueError):
        twisted_action(gl36, (P2, P1), from_lie(alg36, e(P2, P1)))  # y outside U(p)


def test_is_W_invariant_controls(gl36, alg36):
    # the full plus-row trace is invariant; a single diagonal box is not
    row2 = sum((from_lie(alg36, e(b, b)) for b in (P1, P2, P3)), scalar_element(alg36, 0))
    assert is_W_invariant(gl36, row2)
    assert not is_W_invariant(gl36, from_lie(alg36, e(P1, P1)))
    assert is_W_invariant(gl36, identity(alg36))


def test_from_factors_builds_normal_monomials(gl36, alg36):
    u = from_factors(alg36, [((P1, P1), 2)], 3)
    d = from_lie(alg36, e(P1, P1))
    assert u == 3 * (d * d)
    with pytest.raises(ValueError):
        from_factors(alg36, [((P1, P2), 1), ((P1, P1), 1)])  # out of canonical order


def test_evaluate_one_dim(gl36, alg36):
    lam = {b: Fraction(0) for b in gl36.boxes}
    lam[P1] = Fraction(2)
    lam[P2] = Fraction(-1, 2)
    d1 = from_lie(alg36, e(P1, P1))
    d2 = from_lie(alg36, e(P2, P2))
    assert evaluate_one_dim(gl36, d1, lam) == 2
    assert evaluate_one_dim(gl36, d1 * d2 + 3 * identity(alg36), lam) == Fraction(-1) + 3
    # off-diagonal h factors kill a monomial
    assert evaluate_one_dim(gl36, from_lie(alg36, e(P1, P2)), lam) == 0
    with pytest.raises(ValueError):
        evaluate_one_dim(gl36, from_lie(alg36, e(P2, P1)), lam)  # not in U(p)


def test_small_pyramid_everything_is_h():
    py = from_shift([[0, 0], [0, 0]], 1, "01")
    alg = algebra_for(py)
    for pr in all_pairs(py):
        assert py.degree(pr) == 0
        assert generator(alg, *pr).in_U_p()
    # chi vanishes: pr_chi is the identity and every element is invariant
    u = generator(alg, *all_pairs(py)[0])
    assert pr_chi(py, u) == u
    assert is_W_invariant(py, u + 2 * identity(alg))
