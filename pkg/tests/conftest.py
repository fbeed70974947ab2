import random
from fractions import Fraction

import pytest

from nctori import Scalar, SkewMatrix, canonical_form

SEED = 20240611


def random_fraction(rng, denom_max=12, num_max=12):
    return Fraction(rng.randint(-num_max, num_max), rng.randint(1, denom_max))


def random_skew(rng, n, denom_max=12, quad_prob=0.0):
    entries = {}
    for i in range(n):
        for j in range(i + 1, n):
            rat = random_fraction(rng, denom_max)
            quad = Fraction(0)
            if quad_prob and rng.random() < quad_prob:
                quad = random_fraction(rng, denom_max)
            entries[(i, j)] = Scalar(rat, quad, 2 if quad else None)
    return SkewMatrix.from_upper(n, entries)


def build_corpus(count_rational=120, count_mixed=80):
    """Deterministic corpus: n <= 5, denominators <= 12, plus Q(sqrt 2) mixes."""
    rng = random.Random(SEED)
    thetas = []
    for _ in range(count_rational):
        thetas.append(random_skew(rng, rng.randint(1, 5)))
    for _ in range(count_mixed):
        thetas.append(random_skew(rng, rng.randint(1, 5), quad_prob=0.5))
    return thetas


@pytest.fixture(scope="session")
def corpus():
    return build_corpus()


@pytest.fixture(scope="session")
def corpus_forms(corpus):
    return [(theta, canonical_form(theta)) for theta in corpus]
