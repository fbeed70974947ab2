import random
from fractions import Fraction

import pytest

from nctori.exactlin import Scalar, mat_identity
from nctori.invariants import degeneracy_subgroup
from nctori.reduction import (
    ONN_MINUS,
    ONN_NO,
    ONN_SO,
    ActionUndefined,
    ONNElement,
    SkewMatrix,
    act,
    canonical_form,
    compose,
    inverse,
    is_in_onn,
)
from nctori.worked_examples import (
    three_torus,
    three_torus_reduced,
    three_torus_transform,
)

from conftest import random_skew
from test_hyperlattice import random_so_element


class TestSkewMatrix:
    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            SkewMatrix([[0, 1], [1, 0]])
        with pytest.raises(ValueError):
            SkewMatrix([[1]])

    def test_neg_and_submatrix(self):
        th = three_torus(5, Fraction(1, 7))
        assert th.neg().neg() == th
        sub = th.submatrix([1, 2])
        assert sub.entry(0, 1) == Fraction(1, 7)


class TestIsInOnn:
    def test_identity(self):
        assert is_in_onn(mat_identity(6)) == ONN_SO

    def test_coordinate_swap(self):
        n = 2
        h = mat_identity(2 * n)
        h[0], h[n] = h[n], h[0]
        assert is_in_onn(h) == ONN_MINUS

    def test_worked_transform(self):
        assert is_in_onn(three_torus_transform(5).matrix) == ONN_SO

    def test_garbage(self):
        assert is_in_onn([[1, 1], [0, 1]]) == ONN_NO

    def test_odd_dimension(self):
        with pytest.raises(ValueError):
            is_in_onn([[1]])


class TestAction:
    def test_identity_action(self):
        th = three_torus(5, Fraction(1, 7))
        assert act(ONNElement.identity(3), th) == th

    def test_worked_example_rational(self):
        got = act(three_torus_transform(5), three_torus(5, Fraction(1, 7)))
        assert got == three_torus_reduced(5, Fraction(1, 7))

    def test_worked_example_quadratic(self):
        rt2 = Scalar.sqrt(2)
        got = act(three_torus_transform(1), three_torus(1, rt2))
        assert got == three_torus_reduced(1, rt2)

    def test_undefined(self):
        # C theta + D singular for theta = 0 and the pair-flip element
        n = 2
        a = [[0] * n for _ in range(n)]
        b = mat_identity(n)
        g = ONNElement(a, b, b, a)
        with pytest.raises(ActionUndefined):
            act(g, SkewMatrix.zero(n))

    def test_composition_where_defined(self):
        rng = random.Random(43)
        checked = 0
        while checked < 40:
            n = rng.randint(1, 3)
            g1 = random_so_element(rng, n)
            g2 = random_so_element(rng, n)
            th = random_skew(rng, n, denom_max=4)
            try:
                lhs = act(compose(g1, g2), th)
                rhs = act(g1, act(g2, th))
            except ActionUndefined:
                continue
            assert lhs == rhs
            checked += 1

    def test_inverse_undoes(self):
        rng = random.Random(47)
        checked = 0
        while checked < 30:
            n = rng.randint(1, 3)
            g = random_so_element(rng, n)
            th = random_skew(rng, n, denom_max=4, quad_prob=0.3)
            try:
                out = act(g, th)
            except ActionUndefined:
                continue
            assert act(inverse(g), out) == th
            checked += 1


class TestGroupOps:
    def test_inverse_identity(self):
        assert inverse(ONNElement.identity(3)) == ONNElement.identity(3)

    def test_compose_inverse(self):
        g = three_torus_transform(5)
        assert compose(g, inverse(g)) == ONNElement.identity(3)


class TestCanonicalForm:
    def test_rational_theta_gives_zero(self):
        th = SkewMatrix(
            [
                [0, Fraction(1, 2), Fraction(1, 3)],
                [Fraction(-1, 2), 0, Fraction(1, 4)],
                [Fraction(-1, 3), Fraction(-1, 4), 0],
            ]
        )
        form = canonical_form(th)
        assert form.k == 0
        assert form.theta_prime == SkewMatrix.zero(3)

    def test_irrational_full_block(self):
        rt2 = Scalar.sqrt(2)
        form = canonical_form(SkewMatrix([[0, rt2], [-rt2, 0]]))
        assert form.k == 2
        assert degeneracy_subgroup(form.theta_tilde).rank == 0

    def test_worked_mixed(self):
        rt2 = Scalar.sqrt(2)
        th = three_torus(1, rt2)
        form = canonical_form(th)
        assert form.k == 2
        assert act(form.g, th) == form.theta_prime

    def test_idempotent_on_reduced(self):
        rt2 = Scalar.sqrt(2)
        form = canonical_form(three_torus(1, rt2))
        again = canonical_form(form.theta_prime)
        assert again.k == form.k
        assert degeneracy_subgroup(again.theta_tilde).rank == 0

    def test_zero_matrix(self):
        form = canonical_form(SkewMatrix.zero(3))
        assert form.k == 0
        assert form.g == ONNElement.identity(3)

    def test_empty_matrix(self):
        form = canonical_form(SkewMatrix([]))
        assert form.k == 0
