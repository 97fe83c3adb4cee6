import pytest

from geolang import (
    enumerate_ball,
    equality_recognizer,
    equality_recognizer_grown,
    lex_least,
    unique_rep_language,
)
from geolang.errors import BoundTooSmall, NondeterministicInput
from geolang.fsa import Fsa
from geolang.shortlex import (
    build_pair_machine,
    oracle_pair_counts,
    represented_element_counts,
)

from conftest import word


def pair_word(u, v):
    return tuple(zip(u, v))


def test_f2_pairs_are_diagonal(f2, f2_cone):
    # geodesics in a tree are unique, so only (u, u) pairs are accepted
    Q = equality_recognizer(f2_cone.fsa, f2, r=2, validate_depth=4)
    for w in sorted(f2_cone.fsa.language_upto(3)):
        assert Q.accepts(pair_word(w, w))
    assert not Q.accepts(pair_word(word("ab"), word("ba")))
    _, spheres = Q.count_words(4)
    assert spheres == [1, 4, 12, 36, 108]  # exactly the word counts


def test_z2_pair_counts(z2, z2_cone):
    Q = equality_recognizer(z2_cone.fsa, z2, r=2, validate_depth=3)
    _, spheres = Q.count_words(3)
    assert spheres[2] == 20 and spheres[3] == 76


def test_z2_bound_too_small(z2, z2_cone):
    with pytest.raises(BoundTooSmall) as exc:
        equality_recognizer(z2_cone.fsa, z2, r=0, validate_depth=2)
    u, v = exc.value.witness
    assert u != v and z2.normal_form(u) == z2.normal_form(v)
    # discrepancy bound 2 is needed for the transposed pair
    with pytest.raises(BoundTooSmall):
        equality_recognizer(z2_cone.fsa, z2, r=2, validate_depth=6)


def test_equality_grown_reaches_depth(z2, z2_cone):
    details = {}
    Q = equality_recognizer_grown(z2_cone.fsa, z2, r=4, validate_depth=6, details=details)
    assert details["r"] == 6
    assert Q.count_words(6)[1] == oracle_pair_counts(z2, 6)


def test_pair_symmetry_and_diagonal(z2, z2_cone):
    Q = build_pair_machine(z2_cone.fsa, z2, 4)
    words = sorted(z2_cone.fsa.language_upto(3))
    for u in words:
        assert Q.accepts(pair_word(u, u))
    for u in words:
        for v in words:
            if len(u) == len(v):
                assert Q.accepts(pair_word(u, v)) == Q.accepts(pair_word(v, u))


def test_equality_recognizer_preconditions(f2):
    nondet = Fsa(("a",), 2, 0, (1,), [(0, "a", 0), (0, "a", 1)])
    with pytest.raises(NondeterministicInput):
        equality_recognizer(nondet, f2, r=2)


def test_lex_least_f2_keeps_everything(f2, f2_cone):
    Q = build_pair_machine(f2_cone.fsa, f2, 2)
    J = lex_least(Q, f2.alphabet.order)
    assert J.language_upto(4) == f2_cone.fsa.language_upto(4)


def test_lex_least_z2(z2, z2_cone):
    Q = build_pair_machine(z2_cone.fsa, z2, 4)
    J = lex_least(Q, z2.alphabet.order)
    lang = J.language_upto(2)
    assert word("xy") in lang
    assert word("yx") not in lang
    assert word("Xy") in lang and word("yX") not in lang


def test_unique_rep_counts(f2, z2):
    J_f2 = unique_rep_language(f2, m=1)
    assert J_f2.count_words(6)[0] == [2 * 3**n - 1 for n in range(7)]
    J_z2 = unique_rep_language(z2, m=1)
    assert J_z2.count_words(8)[0] == [2 * n * n + 2 * n + 1 for n in range(9)]
    assert J_z2.count_words(8)[0] == enumerate_ball(z2, 8).cumulative_sizes()


def test_unique_rep_bijects(z2):
    J = unique_rep_language(z2, m=1)
    seen = {}
    for w in J.language_upto(5):
        nf = z2.normal_form(w)
        assert nf not in seen, f"{w} and {seen[nf]} share an element"
        seen[nf] = w
        assert len(w) == len(nf)  # geodesic representatives


def test_unique_rep_idempotent(z2):
    # running the pair-and-extract pipeline on J itself changes nothing
    J = unique_rep_language(z2, m=1)
    Q = build_pair_machine(J, z2, 6)
    J2 = lex_least(Q, z2.alphabet.order)
    assert J2.language_upto(5) == J.language_upto(5)


def test_unique_rep_respects_custom_order(z2):
    # with y smallest, the representative of the (1,1) element starts with y
    J = unique_rep_language(z2, m=1, order=("y", "Y", "x", "X"))
    lang = J.language_upto(2)
    assert word("yx") in lang
    assert word("xy") not in lang


def test_unique_rep_non_stabilization_reported(z2):
    with pytest.raises(BoundTooSmall):
        unique_rep_language(z2, m=1, r=1, r_cap=1, validate_depth=6)


def test_represented_counts_with_filter(z2xz):
    from geolang.filters import SyllableBoundFilter

    filt = SyllableBoundFilter(z2xz.alphabet, 1)
    counts = represented_element_counts(z2xz, 4, filt)
    ball = enumerate_ball(z2xz, 4).cumulative_sizes()
    assert all(c <= b for c, b in zip(counts, ball))
    assert counts[0] == 1
    J = unique_rep_language(z2xz, filt, m=2, validate_depth=4)
    assert J.count_words(4)[0] == counts


def test_project_first_of_equality_recognizer_is_geodesic_language(z2, z2_cone):
    from geolang import enumerate_geodesic_words, project_first

    Q = build_pair_machine(z2_cone.fsa, z2, 6)
    projected = project_first(Q).determinize()
    assert projected.language_upto(6) == enumerate_geodesic_words(z2, 6)
