import pytest

from geolang import (
    brute_force_fellow_traveling,
    build_cone_automaton,
    load_group,
    restricted_cone,
    signature,
    tail,
    validate_automaton,
)
from geolang.cones import ConeAutomaton
from geolang.errors import (
    BudgetExceeded,
    EndpointMismatch,
    FilterRejected,
    InconsistentLocality,
    NotGeodesic,
)
from geolang.filters import SyllableBoundFilter, TrivialFilter
from geolang.fsa import Fsa

from conftest import word


def as_words(texts):
    return frozenset(tuple(t) for t in texts)


def test_tail_examples(f2, z2):
    assert tail(f2, (), 2) == frozenset()
    assert tail(f2, word("ab"), 1) == as_words(["B"])
    assert tail(z2, word("xy"), 1) == as_words(["X", "Y"])
    with pytest.raises(NotGeodesic):
        tail(f2, word("aA"), 1)


def test_tail_never_contains_identity(z2):
    for u in [word("x"), word("xy"), word("xxy")]:
        t = tail(z2, u, 2)
        assert () not in t
        assert all(z2.geodesic_length(g) <= 2 for g in t)


def test_restricted_cone_examples(f2, z2, z2xz):
    assert restricted_cone(f2, word("a"), 1) == as_words(["", "a", "b", "B"])
    assert restricted_cone(z2, word("x"), 1) == as_words(["", "x", "y", "Y"])
    filt = SyllableBoundFilter(z2xz.alphabet, 1)
    assert restricted_cone(z2xz, word("a"), 1, filt) == as_words(["", "b", "B", "c", "C"])


def test_restricted_cone_errors(f2, z2xz):
    with pytest.raises(NotGeodesic):
        restricted_cone(f2, word("aA"), 1)
    filt = SyllableBoundFilter(z2xz.alphabet, 1)
    with pytest.raises(FilterRejected):
        restricted_cone(z2xz, word("aa"), 1, filt)


def test_restricted_cone_prefix_closed(z2):
    cone = restricted_cone(z2, word("xy"), 3)
    assert () in cone
    for w in cone:
        for cut in range(len(w)):
            assert w[:cut] in cone


def test_f2_cone_automaton(f2_cone):
    assert f2_cone.n_states == 5
    fsa = f2_cone.fsa
    assert fsa.deterministic
    assert fsa.accepting == frozenset(range(5))
    assert fsa.trim().n_states == 5  # already pruned
    assert not fsa.accepts(word("aA"))
    assert fsa.accepts(word("abab"))
    # prefix closure: every prefix of an accepted word is accepted
    for w in fsa.language_upto(4):
        for cut in range(len(w)):
            assert fsa.accepts(w[:cut])


def test_signature_lookup(f2_cone, f2):
    sig0 = f2_cone.signature_of_state(f2_cone.fsa.initial)
    assert sig0 == signature(f2, (), 1)
    assert sig0.tail == frozenset()


def test_z2_cone_automaton(z2_cone):
    assert z2_cone.n_states == 9
    report = validate_automaton(z2_cone, 6)
    assert report.ok


def test_monotone_state_count_in_m(z2, z2xz):
    assert build_cone_automaton(z2, 2).n_states >= build_cone_automaton(z2, 1).n_states
    assert (
        build_cone_automaton(z2xz, 2).n_states
        >= build_cone_automaton(z2xz, 1).n_states
    )


def test_validation_fault_injection(f2, f2_cone):
    fsa = f2_cone.fsa
    broken = Fsa(fsa.alphabet, fsa.n_states, fsa.initial,
                 set(fsa.accepting) - {1}, fsa.edges)
    fake = ConeAutomaton(
        fsa=broken,
        signatures=f2_cone.signatures,
        representatives=f2_cone.representatives,
        model=f2,
        window_filter=f2_cone.window_filter,
        m=1,
    )
    report = validate_automaton(fake, 4)
    assert not report.ok
    witness = report.mismatches[0]
    assert witness["oracle"] and not witness["machine"]


def test_inconsistent_locality_on_c6(c6):
    with pytest.raises(InconsistentLocality) as exc:
        build_cone_automaton(c6, 1, auto_escalate=False)
    err = exc.value
    assert err.m == 1
    assert err.letter in c6.alphabet.symbols
    assert err.witness_u != err.witness_v


def test_auto_escalation_on_c6(c6):
    auto = build_cone_automaton(c6, 1, auto_escalate=True)
    assert auto.m == 2
    assert validate_automaton(auto, 6).ok
    # language is the 7 geodesic words of the 6 cyclic elements
    assert len(auto.fsa.language_upto(6)) == 7


def test_depth_budget(f2):
    with pytest.raises(BudgetExceeded):
        build_cone_automaton(f2, 1, depth_budget=0)


def test_syllable_filter_machine(z2xz):
    filt = SyllableBoundFilter(z2xz.alphabet, 1)
    auto = build_cone_automaton(z2xz, 2, filt)
    assert validate_automaton(auto, 6).ok
    assert not auto.accepts(word("aa"))
    assert auto.accepts(word("abab"))
    assert auto.accepts(word("caCb"))


def test_trivial_filter_passes_everything():
    filt = TrivialFilter()
    assert filt.passes(word("anything"))
    assert filt.scale == 0


def test_fellow_traveling(f2, z2):
    assert brute_force_fellow_traveling(f2, word("ab"), word("ab"), 0)
    assert brute_force_fellow_traveling(z2, word("xy"), word("yx"), 2)
    assert not brute_force_fellow_traveling(z2, word("xy"), word("yx"), 0)
    with pytest.raises(NotGeodesic):
        brute_force_fellow_traveling(f2, word("aA"), word("aA"), 1)
    with pytest.raises(EndpointMismatch):
        brute_force_fellow_traveling(f2, word("ab"), word("ba"), 4)


def test_fellow_traveling_near_endpoints(f2):
    # endpoints one apart are allowed
    assert brute_force_fellow_traveling(f2, word("ab"), word("aba"), 1)


def test_p3_raag_build_and_validate():
    model = load_group("builtin:p3-raag").model
    auto = build_cone_automaton(model, 2)
    assert validate_automaton(auto, 5).ok
