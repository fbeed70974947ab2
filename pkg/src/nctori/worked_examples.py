"""Built-in reference inputs with independently known outputs.

These are the dimension-3 reduction with its explicit SO(3,3|Z) element and
the dimension-4 pair whose algebras share an ordered K0-group but have
centers of different dimension.  The CLI's verification command replays
them; the test suite pins their exact values.
"""

from __future__ import annotations

from fractions import Fraction

from .exactlin import Scalar
from .reduction import ONNElement, SkewMatrix


def three_torus(m: int, gamma) -> SkewMatrix:
    """[[0, -3/m, -2/m], [3/m, 0, gamma], [2/m, -gamma, 0]]."""
    g = Scalar.of(gamma)
    a = Scalar(Fraction(3, m))
    b = Scalar(Fraction(2, m))
    return SkewMatrix(
        [
            [Scalar(0), -a, -b],
            [a, Scalar(0), g],
            [b, -g, Scalar(0)],
        ]
    )


def three_torus_transform(m: int) -> ONNElement:
    """The explicit special element reducing :func:`three_torus`."""
    a = [[m, 0, 0], [0, -2, 3], [0, -m, m]]
    b = [[0, 3, 2], [0, 0, 0], [1, 0, 0]]
    c = [[0, 1, -1], [0, 0, 0], [1, 0, 0]]
    d = [[0, 0, 0], [0, 1, 1], [0, 0, 0]]
    return ONNElement(a, b, c, d)


def three_torus_reduced(m: int, gamma) -> SkewMatrix:
    """diag(0, [[0, m*gamma], [-m*gamma, 0]]), the image of the transform."""
    g = Scalar.of(gamma) * m
    return SkewMatrix(
        [
            [Scalar(0), Scalar(0), Scalar(0)],
            [Scalar(0), Scalar(0), g],
            [Scalar(0), -g, Scalar(0)],
        ]
    )


def four_torus_pair(gamma) -> tuple[SkewMatrix, SkewMatrix]:
    """Two 4x4 matrices with equal trace ranges but center dimensions 2 and 0.

    For gamma a real quadratic integer (say sqrt 2) these have isomorphic
    ordered K0-groups yet are not Morita equivalent, so the center really is
    part of the classification from dimension 4 on.
    """
    g = Scalar.of(gamma)
    z = Scalar(0)
    theta1 = SkewMatrix(
        [
            [z, g, z, z],
            [-g, z, z, z],
            [z, z, z, z],
            [z, z, z, z],
        ]
    )
    theta2 = SkewMatrix(
        [
            [z, g, z, z],
            [-g, z, z, z],
            [z, z, z, g],
            [z, z, -g, z],
        ]
    )
    return theta1, theta2
