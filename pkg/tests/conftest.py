import random

import pytest

from clusterquiver import (
    LaurentPoly,
    Permutation,
    STRICT,
    SYMMETRIC,
    ValuedQuiver,
    apply_permutation,
    build_quiver,
    enumerate_cluster_pattern,
    initial_seed,
)
from clusterquiver import catalog


@pytest.fixture(scope="session")
def rng():
    return random.Random(271828)


def random_valid_quiver(rng, max_n=5, frozen_allowed=False):
    """Random skew-symmetrizable valued quiver on up to max_n vertices."""
    n = rng.randint(1, max_n)
    d = [rng.choice((1, 1, 2, 3)) for _ in range(n)]
    edges = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < 0.45:
                from math import gcd

                g = gcd(d[i - 1], d[j - 1])
                t = rng.choice((1, 1, 2))
                a = d[j - 1] // g * t
                b = d[i - 1] // g * t
                if rng.random() < 0.5:
                    edges.append((i, j, a, b))
                else:
                    edges.append((j, i, b, a))
    frozen = ()
    if frozen_allowed and n > 1 and rng.random() < 0.3:
        frozen = tuple(
            v for v in range(1, n + 1) if rng.random() < 0.3
        )
    return ValuedQuiver(n, frozenset(edges), tuple(d), frozenset(frozen))


_FINITE_NAMES = ("a1", "a2", "a3", "a4", "b2", "b3", "c3", "g2", "d4", "cycle3")


def random_finite_quiver(rng, names=_FINITE_NAMES):
    """Random relabeling of a random finite-type catalog quiver."""
    q = catalog.get(rng.choice(names))
    images = list(range(1, q.n + 1))
    rng.shuffle(images)
    return apply_permutation(q, Permutation(tuple(images)))


def random_word(rng, n, max_len=8):
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_len)))


def random_poly(rng, nvars, max_terms=4, max_exp=3, max_coeff=5):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = tuple(rng.randint(-max_exp, max_exp) for _ in range(nvars))
        coeff = rng.randint(-max_coeff, max_coeff)
        if coeff:
            terms[exps] = coeff
    return LaurentPoly(nvars, terms)


@pytest.fixture(scope="session")
def a2_seed():
    return initial_seed(catalog.get("a2"))


@pytest.fixture(scope="session")
def a3_seed():
    return initial_seed(catalog.get("a3"))


@pytest.fixture(scope="session")
def a2_pattern_sym(a2_seed):
    return enumerate_cluster_pattern(a2_seed, SYMMETRIC)


@pytest.fixture(scope="session")
def a2_pattern_strict(a2_seed):
    return enumerate_cluster_pattern(a2_seed, STRICT)


@pytest.fixture(scope="session")
def a3_pattern_sym(a3_seed):
    return enumerate_cluster_pattern(a3_seed, SYMMETRIC)


def poly_of(nvars, spec):
    """Shorthand builder: spec maps exponent tuples to coefficients."""
    return LaurentPoly(nvars, spec)
