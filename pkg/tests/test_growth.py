import numpy as np
import pytest

from geolang import (
    adjacency_matrix,
    count_matrix,
    extend_with_free_factor,
    growth_report,
    pf_eigenvalue,
    rational_series,
    strict_gap_check,
    subgroup_growth_counts,
    unique_rep_language,
    unique_rep_subgroup_language,
)
from geolang.errors import (
    EmptyWord,
    NoRecurrence,
    NondeterministicInput,
    NotTrimmed,
)
from geolang.fsa import Fsa

from conftest import word


def loop_machine(loops, alphabet=None):
    alphabet = alphabet or loops
    return Fsa(alphabet, 1, 0, (0,), [(0, s, 0) for s in loops])


def test_count_matrix_examples(f2_cone):
    two_loops = loop_machine(("a", "b"))
    assert count_matrix(two_loops).tolist() == [[2]]
    m = count_matrix(f2_cone.fsa)
    row_sums = m.sum(axis=1).tolist()
    assert row_sums[f2_cone.fsa.initial] == 4
    assert sorted(row_sums) == [3, 3, 3, 3, 4]
    # all-zero matrix for the empty-language machine
    empty = Fsa(("a",), 2, 0, (), [(0, "a", 1)]).trim()
    assert count_matrix(empty).tolist() == [[0]]


def test_count_matrix_errors():
    untrimmed = Fsa(("a",), 2, 0, (0,), [(0, "a", 0), (0, "a", 1)])
    with pytest.raises(NondeterministicInput):
        count_matrix(untrimmed)
    dead = Fsa(("a", "b"), 2, 0, (0,), [(0, "a", 0), (0, "b", 1)])
    with pytest.raises(NotTrimmed):
        count_matrix(dead)


def test_adjacency_vs_count(f2_cone):
    two_loops = loop_machine(("a", "b"))
    assert adjacency_matrix(two_loops).tolist() == [[1]]
    assert count_matrix(two_loops).tolist() == [[2]]
    c, a = count_matrix(f2_cone.fsa), adjacency_matrix(f2_cone.fsa)
    assert (c >= a).all()


def test_pf_examples(f2_cone):
    assert pf_eigenvalue(np.array([[2]])) == pytest.approx(2.0, abs=1e-12)
    assert pf_eigenvalue(count_matrix(f2_cone.fsa)) == pytest.approx(3.0, abs=1e-9)
    # periodic two-cycle
    assert pf_eigenvalue(np.array([[0, 1], [1, 0]])) == pytest.approx(1.0, abs=1e-9)
    assert pf_eigenvalue(np.array([[0, 2], [3, 0]])) == pytest.approx(6**0.5, abs=1e-9)
    assert pf_eigenvalue(np.array([[0, 1], [0, 0]])) == 0.0
    assert pf_eigenvalue(np.zeros((0, 0))) == 0.0


def test_pf_polynomial_growth(z2):
    J = unique_rep_language(z2, m=1)
    assert pf_eigenvalue(count_matrix(J)) == pytest.approx(1.0, abs=1e-6)


def test_pf_against_numpy_oracle():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = rng.integers(2, 7)
        m = rng.integers(0, 4, size=(n, n))
        expected = max(abs(np.linalg.eigvals(m)))
        assert pf_eigenvalue(m) == pytest.approx(expected, abs=1e-6)


def test_pf_at_least_one_on_shipped_machines(f2_cone, z2_cone):
    for auto in (f2_cone, z2_cone):
        assert pf_eigenvalue(count_matrix(auto.fsa.trim())) >= 1.0 - 1e-12


def test_pf_limit_agreement(f2_cone):
    _, spheres = f2_cone.fsa.count_words(30)
    root = spheres[30] ** (1 / 30)
    pf = pf_eigenvalue(count_matrix(f2_cone.fsa))
    assert abs(pf - root) <= 0.05


def test_counting_consistency_with_matrix_powers(f2_cone):
    m = count_matrix(f2_cone.fsa)
    counts, spheres = f2_cone.fsa.count_words(20)
    vec = np.zeros(m.shape[0], dtype=object)
    vec[f2_cone.fsa.initial] = 1
    acc = sorted(f2_cone.fsa.accepting)
    for n in range(21):
        assert spheres[n] == sum(vec[list(acc)])
        vec = vec @ m
    assert counts[-1] == sum(spheres)


def test_rational_series_a_star():
    counts, _ = loop_machine(("a",)).count_words(20)
    series = rational_series(counts, max_order=3)
    assert series.numerator == [1]
    assert series.denominator == [1, -2, 1]
    assert str(series) == "(1) / (1 - 2x + x^2)"


def test_rational_series_f2(f2_cone):
    counts, _ = f2_cone.fsa.count_words(20)
    series = rational_series(counts, max_order=5)
    assert series.numerator == [1, 1]
    assert series.denominator == [1, -4, 3]


def test_rational_series_z2_ball():
    counts = [2 * n * n + 2 * n + 1 for n in range(25)]
    series = rational_series(counts, max_order=5)
    assert series.numerator == [1, 2, 1]
    assert series.denominator == [1, -3, 3, -1]


def test_rational_series_zero_and_errors():
    zero = rational_series([0] * 15, max_order=2)
    assert zero.numerator == [0]
    factorials = [1]
    for n in range(1, 16):
        factorials.append(factorials[-1] * n)
    with pytest.raises(NoRecurrence):
        rational_series(factorials, max_order=3)
    with pytest.raises(NoRecurrence):
        rational_series([1, 2], max_order=1)


def test_rational_series_held_out_guard():
    counts = [2**n for n in range(20)]
    counts[-1] += 1  # corrupt one held-out term
    with pytest.raises(NoRecurrence):
        rational_series(counts, max_order=6)


def test_rational_series_expand_matches_input():
    counts, _ = loop_machine(("a", "b")).count_words(24)
    series = rational_series(counts, max_order=4)
    assert [int(c) for c in series.expand(24)] == counts


def test_extend_with_free_factor_examples():
    # {e} extended by "b" accepts b*
    single = Fsa(("a", "b"), 1, 0, (0,), ())
    ext = extend_with_free_factor(single, word("b"))
    assert ext.language_upto(3) == {(), word("b"), word("bb"), word("bbb")}
    # a* over {a, b} extended by "b" accepts everything; growth rate 2
    ext2 = extend_with_free_factor(loop_machine(("a",), ("a", "b")), word("b"))
    det = ext2.determinize().trim()
    assert det.language_upto(3) == {
        w for n in range(4) for w in __import__("itertools").product("ab", repeat=n)
    }
    assert pf_eigenvalue(count_matrix(det)) == pytest.approx(2.0, abs=1e-9)


def test_extend_multi_letter_word_stays_graded():
    single = Fsa(("a", "b"), 1, 0, (0,), ())
    ext = extend_with_free_factor(single, word("ab")).determinize().trim()
    _, spheres = ext.count_words(6)
    assert spheres == [1, 0, 1, 0, 1, 0, 1]  # (ab)^k at even lengths only


def test_extend_errors(f2_cone):
    with pytest.raises(EmptyWord):
        extend_with_free_factor(f2_cone.fsa, ())
    dead = Fsa(("a",), 2, 0, (0,), [(0, "a", 0), (1, "a", 1)])
    with pytest.raises(NotTrimmed):
        extend_with_free_factor(dead, word("a"))


def test_gap_verdicts(f2, f2_spec, f2_cone):
    axis = f2_spec.subgroup("a-axis")
    J = unique_rep_subgroup_language(f2, axis, k=0, m=1)
    ext = extend_with_free_factor(J, word("b")).determinize().trim()
    assert strict_gap_check(J, ext, margin=0.1).passed
    same = strict_gap_check(f2_cone.fsa, f2_cone.fsa, margin=0.1)
    assert not same.passed
    assert same.pf_sub == pytest.approx(same.pf_sup, abs=1e-9)
    with pytest.raises(ValueError):
        strict_gap_check(J, ext, margin=0)


def test_subgroup_growth_counts(f2, f2_spec):
    axis = f2_spec.subgroup("a-axis")
    assert subgroup_growth_counts(f2, axis, 10) == [2 * n + 1 for n in range(11)]
    squared = f2_spec.subgroup("a-squared")
    assert subgroup_growth_counts(f2, squared, 10) == [2 * (n // 2) + 1 for n in range(11)]
    from geolang import trivial_subgroup

    assert subgroup_growth_counts(f2, trivial_subgroup(f2), 5) == [1] * 6


def test_growth_report(f2_cone):
    report = growth_report(f2_cone.fsa)
    assert report.pruned_states == 5
    assert report.pf == pytest.approx(3.0, abs=1e-9)
    assert report.series is not None
    assert "growth rate" in report.summary()
