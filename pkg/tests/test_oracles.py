"""Series and numeric verification oracles."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from helpers import (
    brute_force_walk_polynomial,
    feedback_graph,
    gauss_jordan_inverse,
    loop_graph,
    mono,
    random_dag,
    random_multigraph,
    random_spec,
    var,
)
from pathminor import (
    Edge,
    Graph,
    Polynomial,
    RationalMinor,
    SingularMatrixError,
    SourceSinkSpec,
    contraction_assignment,
    minor,
    truncated_path_matrix,
    verify_minor_numeric,
    verify_minor_series,
)
from pathminor.oracles import (
    bareiss_det,
    inverse_minor,
    max_out_multiplicity,
    permutation_parity_of_sort,
)


def test_truncated_matrix_order_zero_is_identity():
    g = feedback_graph()
    tm = truncated_path_matrix(g, 0)
    for i, tail in enumerate(g.vertices):
        for j, head in enumerate(g.vertices):
            expected = Polynomial.one() if i == j else Polynomial.zero()
            assert tm.entry(tail, head) == expected


def test_truncated_matrix_single_loop_series():
    g = Graph(["u"], [Edge("x", "u", "u")])
    tm = truncated_path_matrix(g, 3)
    x = var("x")
    assert tm.entry("u", "u") == 1 + x + x**2 + x**3


def test_truncated_matrix_feedback_entry():
    g = feedback_graph()
    base = mono("a", "b", "d", "f", "h")
    cyc = mono("b", "d", "e")
    # degree-8 second term enters at order 8; the third lap needs order 11
    assert truncated_path_matrix(g, 10).entry("v1", "v3") == base * (1 + cyc)
    assert truncated_path_matrix(g, 11).entry("v1", "v3") == base * (
        1 + cyc + cyc * cyc
    )


def test_truncated_matrix_equals_brute_force_walks():
    rng = random.Random(307)
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=4, max_edges=7)
        order = rng.randint(0, 6)
        tm = truncated_path_matrix(g, order)
        for tail in g.vertices:
            for head in g.vertices:
                expected = brute_force_walk_polynomial(g, tail, head, order)
                assert tm.entry(tail, head) == expected


def test_series_verification_matches_on_goldens():
    g = feedback_graph()
    spec = SourceSinkSpec(("v1", "v2"), ("v3", "v4"))
    report = verify_minor_series(g, spec, 12)
    assert report.matched
    assert report.to_dict() == {
        "status": "match",
        "order": 12,
        "first_mismatch": None,
    }


def test_series_verification_acyclic_is_exact():
    rng = random.Random(311)
    for _ in range(15):
        g = random_dag(rng)
        spec = random_spec(rng, g, 1)
        report = verify_minor_series(g, spec, len(g.edges))
        assert report.matched


def test_series_all_singletons_on_sampled_corpus():
    rng = random.Random(337)
    for _ in range(8):
        g = random_multigraph(rng, max_vertices=5, max_edges=8)
        tm = truncated_path_matrix(g, 10)
        for a in g.vertices:
            for b in g.vertices:
                spec = SourceSinkSpec((a,), (b,))
                assert verify_minor_series(g, spec, 10, matrix=tm).matched


def test_series_detects_corrupted_numerator():
    g = feedback_graph()
    spec = SourceSinkSpec(("v2",), ("v3",))
    good = minor(g, spec)
    corrupted = RationalMinor(
        good.raw_numerator + var("g"),
        good.raw_denominator,
        good.reduced_numerator,
        good.reduced_denominator,
        good.canceled_components,
    )
    report = verify_minor_series(g, spec, 10, minor_result=corrupted)
    assert not report.matched
    assert report.first_mismatch == "g"


def test_series_order_mismatch_rejected():
    g = feedback_graph()
    tm = truncated_path_matrix(g, 5)
    with pytest.raises(ValueError):
        verify_minor_series(
            g, SourceSinkSpec(("v1",), ("v3",)), 10, matrix=tm
        )


def test_numeric_golden_value():
    g = feedback_graph()
    assignment = {e.id: Fraction(1, 2) for e in g.edges}
    report = verify_minor_numeric(
        g, SourceSinkSpec(("v1",), ("v3",)), assignment
    )
    assert report.matched
    assert report.inverse_value == Fraction(1, 28)


def test_numeric_zero_assignment_gives_identity():
    g = feedback_graph()
    zero = {e.id: Fraction(0) for e in g.edges}
    same = verify_minor_numeric(g, SourceSinkSpec(("v1",), ("v1",)), zero)
    assert same.matched and same.inverse_value == 1
    off = verify_minor_numeric(g, SourceSinkSpec(("v1",), ("v3",)), zero)
    assert off.matched and off.inverse_value == 0


def test_numeric_zero_entry():
    g = feedback_graph()
    assignment = {e.id: Fraction(1, 2) for e in g.edges}
    report = verify_minor_numeric(
        g, SourceSinkSpec(("v2",), ("v4",)), assignment
    )
    assert report.matched and report.inverse_value == 0


def test_numeric_seeded_corpus():
    rng = random.Random(313)
    for _ in range(15):
        g = random_multigraph(rng, max_vertices=5, max_edges=8)
        spec = random_spec(rng, g, rng.randint(1, min(2, g.n)))
        for seed in range(5):
            assert verify_minor_numeric(g, spec, seed=seed).matched


def test_numeric_two_by_two_minor():
    g = feedback_graph()
    spec = SourceSinkSpec(("v1", "v2"), ("v3", "v4"))
    for seed in range(5):
        assert verify_minor_numeric(g, spec, seed=seed).matched


def test_singular_assignment_raises():
    g = Graph(["u"], [Edge("x", "u", "u")])
    with pytest.raises(SingularMatrixError):
        verify_minor_numeric(
            g, SourceSinkSpec(("u",), ("u",)), {"x": Fraction(1)}
        )


def test_contraction_assignment_bounds():
    rng = random.Random(317)
    for _ in range(20):
        g = random_multigraph(rng, max_vertices=6, max_edges=10)
        if not g.edges:
            continue
        weights = contraction_assignment(g, seed=rng.randint(0, 999))
        bound = Fraction(1, 2 * max_out_multiplicity(g))
        assert all(0 < w <= bound for w in weights.values())


def test_inverse_minor_against_gauss_jordan():
    rng = random.Random(331)
    for _ in range(30):
        n = rng.randint(1, 5)
        matrix = [
            [
                Fraction(rng.randint(-4, 4), rng.randint(1, 4))
                for _ in range(n)
            ]
            for _ in range(n)
        ]
        if bareiss_det(
            [[int(v * 840) for v in row] for row in matrix]
        ) == 0:
            continue
        inverse = gauss_jordan_inverse(matrix)
        k = rng.randint(0, n)
        rows = rng.sample(range(n), k)
        cols = rng.sample(range(n), k)
        sub = [[inverse[i][j] for j in cols] for i in rows]
        expected = _fraction_det(sub)
        assert inverse_minor(matrix, rows, cols) == expected


def _fraction_det(matrix):
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    from itertools import permutations

    from pathminor.families import permutation_sign

    total = Fraction(0)
    for perm in permutations(range(n)):
        prod = Fraction(permutation_sign(perm))
        for i in range(n):
            prod *= matrix[i][perm[i]]
        total += prod
    return total


def test_bareiss_det_goldens():
    assert bareiss_det([]) == 1
    assert bareiss_det([[7]]) == 7
    assert bareiss_det([[1, 2], [3, 4]]) == -2
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 1], [1, 1]]) == 0


def test_sort_parity():
    assert permutation_parity_of_sort([0, 1]) == 1
    assert permutation_parity_of_sort([1, 0]) == -1
    assert permutation_parity_of_sort([2, 0, 1]) == 1
