import pytest

from clusterquiver import (
    LaurentPoly,
    Permutation,
    QuiverInvariantError,
    STRICT,
    SYMMETRIC,
    Seed,
    apply_word,
    build_quiver,
    cancel_word,
    enumerate_cluster_pattern,
    initial_seed,
    is_finite_type,
    mutate_seed,
    permute_seed,
    seeds_equal,
)
from clusterquiver import catalog
from clusterquiver.seeds import EqualityMode, canonical_seed_key

from conftest import random_finite_quiver, random_valid_quiver, random_word


def poly(spec, n=2):
    return LaurentPoly(n, spec)


def test_initial_seed():
    s = initial_seed(catalog.get("a2"))
    assert s.cluster == (LaurentPoly.variable(2, 1), LaurentPoly.variable(2, 2))
    r1 = initial_seed(build_quiver(1, []))
    assert r1.cluster == (LaurentPoly.variable(1, 1),)


def test_initial_seed_invariants_randomized(rng):
    for _ in range(100):
        q = random_valid_quiver(rng)
        s = initial_seed(q)
        assert len(s.cluster) == q.n
        assert all(not p.is_zero for p in s.cluster)


def test_mutate_seed_a2():
    s = initial_seed(catalog.get("a2"))
    t = mutate_seed(s, 1)
    assert t.cluster[0] == poly({(-1, 0): 1, (-1, 1): 1})  # (1+x2)/x1
    assert t.cluster[1] == LaurentPoly.variable(2, 2)
    assert t.quiver == build_quiver(2, [(2, 1, 1, 1)])


def test_mutate_seed_rank1_empty_products():
    s = initial_seed(build_quiver(1, []))
    t = mutate_seed(s, 1)
    assert t.cluster[0] == LaurentPoly(1, {(-1,): 2})  # 2/x1


def test_mutate_seed_involution_randomized(rng):
    for _ in range(500):
        q = random_finite_quiver(rng)
        s = initial_seed(q)
        word = random_word(rng, q.n, max_len=4)
        s = apply_word(s, word).final
        k = rng.randint(1, q.n)
        assert mutate_seed(mutate_seed(s, k), k) == s


def test_mutate_seed_frozen_rejected():
    s = initial_seed(catalog.get("rank7frozen"))
    with pytest.raises(QuiverInvariantError):
        mutate_seed(s, 5)


def test_apply_word_a2_trace():
    s = initial_seed(catalog.get("a2"))
    trace = apply_word(s, [1, 2, 1, 2, 1])
    x1 = LaurentPoly.variable(2, 1)
    x2 = LaurentPoly.variable(2, 2)
    v1 = poly({(-1, 0): 1, (-1, 1): 1})
    v2 = poly({(-1, -1): 1, (0, -1): 1, (-1, 0): 1})
    v3 = poly({(0, -1): 1, (1, -1): 1})
    assert trace.produced == (v1, v2, v3, x1, x2)
    assert trace.final.cluster == (x2, x1)
    assert trace.final.quiver == build_quiver(2, [(2, 1, 1, 1)])


def test_apply_word_empty_and_cancel_marks():
    s = initial_seed(catalog.get("a2"))
    assert len(apply_word(s, []).seeds) == 1
    trace = apply_word(s, [1, 1])
    assert trace.final == s
    assert trace.cancel_marks == (True, True)


def test_cancel_word_cascade():
    assert cancel_word((1, 2, 2, 1, 3)) == ((3,), (True, True, True, True, False))
    assert cancel_word(()) == ((), ())
    word = (1, 2, 1, 2, 1)
    assert cancel_word(word + tuple(reversed(word)))[0] == ()


def test_seeds_equal_strict_and_symmetric():
    s = initial_seed(catalog.get("a2"))
    w = seeds_equal(s, s, STRICT)
    assert w is not None and w[0].is_identity
    final = apply_word(s, [1, 2, 1, 2, 1]).final
    assert seeds_equal(s, final, STRICT) is None
    sigma, sign = seeds_equal(s, final, SYMMETRIC)
    assert sigma.images == (2, 1) and sign == 1
    one_step = apply_word(s, [1]).final
    assert seeds_equal(s, one_step, STRICT) is None
    assert seeds_equal(s, one_step, SYMMETRIC) is None


def test_seeds_equal_sign_flip():
    s = initial_seed(catalog.get("b2"))
    flipped = Seed(s.cluster, build_quiver(2, [(2, 1, 2, 1)]))
    assert seeds_equal(s, flipped, EqualityMode.symmetric(allow_sign=False)) is None
    sigma, sign = seeds_equal(s, flipped, SYMMETRIC)
    assert sigma.is_identity and sign == -1


def test_permute_seed_matches_witness(rng):
    for _ in range(50):
        q = random_finite_quiver(rng)
        s = initial_seed(q)
        images = list(range(1, q.n + 1))
        rng.shuffle(images)
        sigma = Permutation(tuple(images))
        t = permute_seed(s, sigma)
        w = seeds_equal(s, t, SYMMETRIC)
        assert w is not None
        assert permute_seed(s, w[0]) == t


def test_pattern_counts_a2(a2_pattern_sym, a2_pattern_strict):
    assert len(a2_pattern_sym) == 5
    assert len(a2_pattern_sym.variables) == 5
    assert len(a2_pattern_strict) == 10
    assert len(a2_pattern_strict.variables) == 5
    expected = {
        "x1",
        "x2",
        "(1 + x2)/x1",
        "(1 + x2 + x1)/(x1*x2)",
        "(1 + x1)/x2",
    }
    assert {p.factored_str() for p in a2_pattern_sym.variables} == expected


def test_pattern_rank1():
    pattern = enumerate_cluster_pattern(initial_seed(build_quiver(1, [])), SYMMETRIC)
    assert len(pattern) == 2
    assert {p.factored_str() for p in pattern.variables} == {"x1", "2/x1"}


def test_a2_exchange_count_law():
    # alternating mutations: the pentagon closes after 5 steps up to
    # symmetry and after 10 steps exactly
    s = initial_seed(catalog.get("a2"))
    five = apply_word(s, [1, 2, 1, 2, 1]).final
    assert seeds_equal(s, five, SYMMETRIC) is not None
    assert seeds_equal(s, five, STRICT) is None
    ten = apply_word(s, [1, 2] * 5).final
    assert ten == s


def test_frozen_frozen_edges_mutate_by_the_matrix_rule():
    # a path through a mutable vertex creates an edge between two frozen
    # vertices; it is carried by the same rule as any other edge
    from clusterquiver import freeze, mutate_quiver

    q = freeze(build_quiver(3, [(1, 2, 1, 1), (2, 3, 1, 1)]), {2})
    mutated = mutate_quiver(q, 2)
    assert (1, 3, 1, 1) in mutated.edges
    assert mutated.frozen == frozenset({1, 3})


def test_pattern_counts_a3(a3_pattern_sym):
    assert len(a3_pattern_sym) == 14
    assert len(a3_pattern_sym.variables) == 9


def test_pattern_counts_regressions():
    for name, mode, nodes in (
        ("a3", STRICT, 84),
        ("b2", SYMMETRIC, 6),
        ("g2", SYMMETRIC, 8),
        ("a4", SYMMETRIC, 42),
        ("d4", SYMMETRIC, 50),
    ):
        pattern = enumerate_cluster_pattern(initial_seed(catalog.get(name)), mode)
        assert len(pattern) == nodes, name


def test_pattern_n_regular(a3_pattern_sym, a2_pattern_strict):
    assert a3_pattern_sym.degree_check()
    assert a2_pattern_strict.degree_check()


def test_pattern_rerooting(a3_pattern_sym, rng):
    # every seed generates the same pattern, up to the mode's identification
    base_keys = set(a3_pattern_sym.keys)
    for node in rng.sample(range(len(a3_pattern_sym)), 3):
        rerooted = enumerate_cluster_pattern(a3_pattern_sym.nodes[node], SYMMETRIC)
        assert set(rerooted.keys) == base_keys


def test_pattern_node_keys_match_mode(a3_pattern_sym):
    for i, seed in enumerate(a3_pattern_sym.nodes):
        assert canonical_seed_key(seed, SYMMETRIC) == a3_pattern_sym.keys[i]


def test_pattern_truncation():
    pattern = enumerate_cluster_pattern(initial_seed(catalog.get("a3")), SYMMETRIC, cap=4)
    assert pattern.truncated
    assert len(pattern) == 4


def test_laurent_phenomenon_families():
    # every mutation in every finite-type enumeration divides exactly,
    # and cluster denominators are monomials
    for name in ("a2", "a3", "b2", "g2", "d4"):
        pattern = enumerate_cluster_pattern(initial_seed(catalog.get(name)), SYMMETRIC)
        assert not pattern.truncated, name


def test_denominator_vectors_distinct():
    # distinct non-initial variables have distinct denominator vectors
    for name in ("a2", "a3", "b2", "g2"):
        q = catalog.get(name)
        pattern = enumerate_cluster_pattern(initial_seed(q), SYMMETRIC)
        initials = set(initial_seed(q).cluster)
        non_initial = [p for p in pattern.variables if p not in initials]
        vectors = {p.denominator_vector() for p in non_initial}
        assert len(vectors) == len(non_initial), name


def test_is_finite_type_verdicts():
    fin = is_finite_type(initial_seed(catalog.get("a2")))
    assert fin.kind == "finite"
    assert len(fin.pattern.variables) == 5

    inf = is_finite_type(initial_seed(catalog.get("w4")))
    assert inf.kind == "infinite"
    assert inf.obstruction is not None

    markov = is_finite_type(initial_seed(catalog.get("markov")))
    assert markov.kind == "infinite"

    a3 = is_finite_type(initial_seed(catalog.get("a3")))
    assert a3.kind == "finite"
    assert len(a3.pattern) == 14
    assert len(a3.pattern.variables) == 9


def test_is_finite_type_unknown_on_tiny_cap():
    verdict = is_finite_type(initial_seed(catalog.get("a3")), cap=5)
    assert verdict.kind == "unknown"
    assert verdict.frontier == 5


def test_is_finite_type_acyclic_triangle_infinite():
    # non-cyclic triangle orientation mutates to a double arrow (weight 4)
    q = build_quiver(3, [(1, 2, 1, 1), (1, 3, 1, 1), (3, 2, 1, 1)])
    assert is_finite_type(initial_seed(q)).kind == "infinite"
