"""Equality recognizer pairs and shortlex unique-representative languages.

Two geodesic words for the same element have equal length, so the pair
machine reads both words in lockstep and tracks the discrepancy element
a_i^-1 ... a_1^-1 b_1 ... b_i between the two paths.  The discrepancy is
capped by a fellow-travel bound r: the true bound depends on constants
that cannot be computed generically, so r is grown until an oracle stops
finding equal pairs the machine misses.

The shortlex sublanguage keeps, for each represented element, the word
that is lexicographically least among its equals; because all pairs have
equal coordinates lengths, no padding symbol is ever needed.
"""

from __future__ import annotations

from collections import deque

from .errors import BoundTooSmall, NondeterministicInput, NotGeodesic
from .fsa import Fsa, pair_alphabet, project_first
from .groups import geodesic_word_levels


def _sample_language_preconditions(L, model, depth=4):
    if not L.deterministic:
        raise NondeterministicInput("equality recognizer needs a deterministic language machine")
    for word in sorted(L.language_upto(depth)):
        if not model.is_geodesic(word):
            raise NotGeodesic(f"language contains non-geodesic word {word}")
        for cut in range(len(word)):
            if not L.accepts(word[:cut]):
                raise NotGeodesic(f"language is not prefix-closed at {word[:cut]}")


def build_pair_machine(L, model, r):
    """Raw product machine over (state, state, discrepancy <= r).

    Only reachable triples are materialized.  Accepted pairs always satisfy
    u, v in L(L), same length, and equal group elements; small r can only
    lose pairs, never invent them.
    """
    symbols = L.alphabet
    pairs = pair_alphabet(symbols)
    inverses = model.alphabet.inverses
    start = (L.initial, L.initial, ())
    index = {start: 0}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        state = queue.popleft()
        s, sigma, g = state
        for a in symbols:
            t = L.step(s, a)
            if t is None:
                continue
            inv_a = inverses[a]
            for alpha in symbols:
                tau = L.step(sigma, alpha)
                if tau is None:
                    continue
                h = model.normal_form((inv_a,) + g + (alpha,))
                if len(h) > r:
                    continue
                nxt = (t, tau, h)
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                edges.append((index[state], (a, alpha), index[nxt]))
    accepting = [
        i
        for i, (s, sigma, g) in enumerate(order)
        if not g and s in L.accepting and sigma in L.accepting
    ]
    return Fsa(pairs, len(order), 0, accepting, edges)


def oracle_pair_counts(model, depth, window_filter=None):
    """Per-length counts of equal-element word pairs, by brute force.

    The count at length n is the sum over elements of the squared number of
    filtered geodesic words of length n representing them.
    """
    counts = []
    for _, level in geodesic_word_levels(model, depth, window_filter):
        mult = {}
        for word in level:
            nf = model.normal_form(word)
            mult[nf] = mult.get(nf, 0) + 1
        counts.append(sum(c * c for c in mult.values()))
    return counts


def _find_missing_pair(Q, model, depth, window_filter=None):
    for _, level in geodesic_word_levels(model, depth, window_filter):
        by_nf = {}
        for word in sorted(level):
            by_nf.setdefault(model.normal_form(word), []).append(word)
        for words in by_nf.values():
            for u in words:
                for v in words:
                    if not Q.accepts(tuple(zip(u, v))):
                        return (u, v)
    return None


def equality_recognizer(L, model, r, window_filter=None, validate_depth=6):
    """Pair machine accepting { (u,v) : u,v in L, same element }.

    The machine is cross-checked against brute-force pair enumeration up to
    ``validate_depth``; a missed pair raises BoundTooSmall with a witness,
    and the caller should retry with a larger r.  Pass validate_depth=0 to
    skip the oracle check.
    """
    _sample_language_preconditions(L, model)
    Q = build_pair_machine(L, model, r)
    if validate_depth:
        machine_counts = Q.count_words(validate_depth)[1]
        oracle = oracle_pair_counts(model, validate_depth, window_filter)
        if machine_counts != oracle:
            witness = _find_missing_pair(Q, model, validate_depth, window_filter)
            raise BoundTooSmall(r, witness=witness)
    return Q


def equality_recognizer_grown(
    L, model, r=4, r_cap=16, validate_depth=6, window_filter=None, details=None
):
    """Equality recognizer with r grown until the pair oracle is satisfied."""
    current = r
    while current <= r_cap:
        try:
            Q = equality_recognizer(
                L, model, current, window_filter=window_filter, validate_depth=validate_depth
            )
        except BoundTooSmall:
            current += 1
            continue
        if details is not None:
            details["r"] = current
        return Q
    raise BoundTooSmall(
        r_cap,
        message=(
            f"fellow-travel bound did not stabilize by r={r_cap} at validation "
            f"depth {validate_depth}"
        ),
    )


def second_smaller_machine(pairs, rank):
    """Three-state comparator accepting pairs whose second word is smaller.

    States: 0 undecided, 1 first smaller (absorbing), 2 second smaller
    (absorbing, accepting).  Equal-length words only, so the first strict
    difference decides.
    """
    edges = []
    for a, b in pairs:
        if rank[a] == rank[b]:
            edges.append((0, (a, b), 0))
        elif rank[a] < rank[b]:
            edges.append((0, (a, b), 1))
        else:
            edges.append((0, (a, b), 2))
        edges.append((1, (a, b), 1))
        edges.append((2, (a, b), 2))
    return Fsa(pairs, 3, 0, (2,), edges)


def lex_least(Q, order):
    """Extract { u : (u,u) in Q and no (u,w) in Q with w smaller }.

    Implemented with the standard pipeline: project the pairs whose second
    coordinate is strictly smaller, determinize, complement, and intersect
    with the projection of Q itself.
    """
    rank = {symbol: i for i, symbol in enumerate(order)}
    comparator = second_smaller_machine(Q.alphabet, rank)
    beaten = project_first(Q.intersect(comparator)).determinize()
    keepable = beaten.complement()
    represented = project_first(Q).determinize()
    return represented.intersect(keepable).trim()


def represented_element_counts(model, depth, window_filter=None):
    """Cumulative number of elements carrying a filtered geodesic word."""
    seen = set()
    out = []
    for _, level in geodesic_word_levels(model, depth, window_filter):
        for word in level:
            seen.add(model.normal_form(word))
        out.append(len(seen))
    return out


def unique_rep_language(
    model,
    window_filter=None,
    m=1,
    order=None,
    r=4,
    r_cap=16,
    validate_depth=6,
    details=None,
):
    """Shortlex unique-representative language of the filtered geodesics.

    Composes the cone automaton, the equality recognizer with auto-grown r,
    and the shortlex extraction.  The result bijects with the set of
    represented elements; the bijection is validated by counting against
    brute-force enumeration up to ``validate_depth``, growing r until the
    counts agree.  When r reaches ``r_cap`` without stabilizing, the run
    reports failure instead of asserting anything about regularity.
    """
    from .cones import build_cone_automaton

    auto = build_cone_automaton(model, m, window_filter, auto_escalate=True)
    L = auto.fsa
    order = tuple(order) if order is not None else model.alphabet.order
    target = represented_element_counts(model, validate_depth, window_filter)
    current = r
    while current <= r_cap:
        Q = build_pair_machine(L, model, current)
        J = lex_least(Q, order)
        counts = J.count_words(validate_depth)[0]
        if counts == target:
            if details is not None:
                details.update(
                    {"r": current, "m": auto.m, "cone_states": auto.n_states}
                )
            return J
        current += 1
    raise BoundTooSmall(
        r_cap,
        message=(
            f"fellow-travel bound did not stabilize by r={r_cap} at validation "
            f"depth {validate_depth}; not concluding anything about regularity"
        ),
    )
