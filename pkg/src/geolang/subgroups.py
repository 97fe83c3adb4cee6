"""Subgroup membership oracles and the k-neighborhood automata.

The automaton states are the ball of radius k around the identity; a word
drives the machine through the "offsets" of its path from the subgroup H.
Accepting everywhere recognizes paths staying k-close to H; accepting only
at the identity recognizes the words that also end in H.  Intersecting
the latter with a cone-type machine carves out the geodesic subgroup
language, and an escalation loop grows k until the result matches brute
force or a cap is hit.  A cap-hit is reported as inconclusive: it is the
expected outcome for non-stable subgroups but proves nothing.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import BudgetExceeded
from .fsa import Fsa
from .groups import DEFAULT_ELEMENT_BUDGET, enumerate_ball, geodesic_words_to


class SubgroupOracle:
    """Membership oracle for a subgroup of a group model.

    ``contains`` answers membership of canonical normal forms and is cached
    behind a lock so oracles can be shared across threads.  For the
    generated kind, membership is decided by a breadth-first search over the
    subgroup's own Cayley graph out to word length D * |g|, where D is the
    declared distortion bound; the answer is sound and complete only under
    that bound.
    """

    description = "subgroup"

    def __init__(self, model):
        self.model = model
        self._memo = {}
        self._lock = threading.Lock()

    def contains(self, nf_word):
        nf_word = tuple(nf_word)
        with self._lock:
            if nf_word in self._memo:
                return self._memo[nf_word]
        answer = self._contains(nf_word)
        with self._lock:
            self._memo[nf_word] = answer
        return answer

    def _contains(self, nf_word):
        raise NotImplementedError

    def elements_within(self, radius):
        """Map of canonical forms of subgroup elements with |h| <= radius."""
        raise NotImplementedError

    def __repr__(self):
        return f"<{self.description}>"


class GeneratedSubgroup(SubgroupOracle):
    """Subgroup generated by explicit words, with a distortion bound."""

    def __init__(self, model, words, distortion=3, budget=DEFAULT_ELEMENT_BUDGET):
        super().__init__(model)
        self.generator_words = tuple(tuple(w) for w in words)
        self.distortion = int(distortion)
        self.budget = budget
        steps = []
        for w in self.generator_words:
            steps.append(model.normal_form(w))
            steps.append(model.normal_form(model.inverse_word(w)))
        self._steps = tuple(dict.fromkeys(s for s in steps if s))
        self._levels = {(): 0}
        self._frontier = [()]
        self._depth = 0
        self.description = "generated<" + ",".join(
            "".join(w) or "e" for w in self.generator_words
        ) + f">;D={self.distortion}"

    def _grow(self, depth):
        while self._depth < depth and self._frontier:
            nxt = []
            for g in self._frontier:
                for s in self._steps:
                    h = self.model.multiply(g, s)
                    if h not in self._levels:
                        self._levels[h] = self._depth + 1
                        nxt.append(h)
                        if len(self._levels) > self.budget:
                            raise BudgetExceeded("subgroup membership search", self.budget)
            self._frontier = nxt
            self._depth += 1

    def _contains(self, nf_word):
        if not nf_word:
            return True
        bound = self.distortion * len(nf_word)
        with self._lock:
            self._grow(bound)
            level = self._levels.get(nf_word)
        return level is not None and level <= bound

    def elements_within(self, radius):
        with self._lock:
            self._grow(self.distortion * max(radius, 1))
            return {
                h: len(h) for h in self._levels if len(h) <= radius
            }


class CyclicSubgroup(GeneratedSubgroup):
    """Cyclic subgroup generated by one word."""

    def __init__(self, model, word, distortion=3, budget=DEFAULT_ELEMENT_BUDGET):
        super().__init__(model, [tuple(word)], distortion=distortion, budget=budget)
        self.description = f"cyclic<{''.join(word)}>;D={distortion}"


class FactorSubgroup(SubgroupOracle):
    """Subgroup spanned by a subset of the generators.

    Valid for the free-factor and special-subgroup situations of the
    built-in models, where the canonical form of a subgroup element only
    uses the subgroup's own letters.
    """

    def __init__(self, model, generators, budget=DEFAULT_ELEMENT_BUDGET):
        super().__init__(model)
        letters = set()
        for g in generators:
            letters.add(g)
            letters.add(model.alphabet.inverse(g))
        self.letters = frozenset(letters)
        self.budget = budget
        self.description = "factor<" + ",".join(sorted(generators)) + ">"

    def _contains(self, nf_word):
        return all(letter in self.letters for letter in nf_word)

    def elements_within(self, radius):
        seen = {(): 0}
        frontier = [()]
        for r in range(1, radius + 1):
            nxt = []
            for u in frontier:
                for a in self.letters:
                    v = self.model.normal_form(u + (a,))
                    if v not in seen and len(v) == r:
                        seen[v] = r
                        nxt.append(v)
                        if len(seen) > self.budget:
                            raise BudgetExceeded("factor subgroup ball", self.budget)
            frontier = nxt
        return seen


def whole_group(model):
    return FactorSubgroup(model, model.alphabet.symbols)


def trivial_subgroup(model):
    return FactorSubgroup(model, ())


def _neighborhood_machine(model, oracle, k, accept_all, budget=DEFAULT_ELEMENT_BUDGET):
    ball = enumerate_ball(model, k, budget=budget)
    states = sorted(ball.elements, key=lambda w: (len(w), w))
    index = {w: i for i, w in enumerate(states)}
    nearby = sorted(oracle.elements_within(2 * k + 1), key=lambda w: (len(w), w))
    edges = []
    for g in states:
        src = index[g]
        for a in model.alphabet.symbols:
            step = g + (a,)
            for h in nearby:
                target = model.multiply(model.inverse_word(h), step)
                dst = index.get(target)
                if dst is not None:
                    edges.append((src, a, dst))
    accepting = range(len(states)) if accept_all else (index[()],)
    return Fsa(model.alphabet.symbols, len(states), index[()], accepting, edges)


def neighborhood_automaton(model, oracle, k, budget=DEFAULT_ELEMENT_BUDGET):
    """Words whose whole path stays within distance k of the subgroup.

    States are the ball of radius k; there is an a-edge from g to g' exactly
    when g a (g')^-1 lies in the subgroup.  All states accept.
    """
    return _neighborhood_machine(model, oracle, k, accept_all=True, budget=budget)


def subgroup_word_automaton(model, oracle, k, budget=DEFAULT_ELEMENT_BUDGET):
    """Words ending in the subgroup whose path stays k-close to it.

    Same machine as ``neighborhood_automaton`` with only the identity state
    accepting.
    """
    return _neighborhood_machine(model, oracle, k, accept_all=False, budget=budget)


def stable_language(model, oracle, k, window_filter=None, m=1, auto_escalate=True):
    """Intersection of the cone-type language with the k-close subgroup words.

    For a stable subgroup with adequate (k, filter) this is exactly the
    language of filtered geodesic words into the subgroup.
    """
    from .cones import build_cone_automaton

    auto = build_cone_automaton(model, m, window_filter, auto_escalate=auto_escalate)
    near = subgroup_word_automaton(model, oracle, k).trim()
    return auto.fsa.intersect(near).trim()


def oracle_subgroup_words(model, oracle, n, window_filter=None):
    """Brute-force words of length <= n: geodesics into the subgroup.

    With a filter, only filter-passing geodesics are kept.
    """
    out = set()
    for h, length in sorted(oracle.elements_within(n).items(), key=lambda kv: kv[1]):
        for word in geodesic_words_to(model, h):
            if window_filter is None or window_filter.passes(word):
                out.add(word)
    return out


@dataclass
class EscalationReport:
    """Outcome of growing k until the machine matches the oracle."""

    outcome: str
    k_final: int
    depth_checked: int
    missing_words: list = field(default_factory=list)
    extra_words: list = field(default_factory=list)
    machine: Fsa | None = None
    history: list = field(default_factory=list)

    @property
    def matched(self):
        return self.outcome == "matched"

    def summary(self):
        lines = [f"outcome: {self.outcome} (k={self.k_final}, depth {self.depth_checked})"]
        for entry in self.history:
            lines.append(
                f"  k={entry['k']}: depth {entry['depth']}, "
                f"{entry['missing']} missing, {entry['extra']} extra"
            )
        for w in self.missing_words[:10]:
            lines.append(f"  oracle word missed by machine: {''.join(w) or 'e'}")
        for w in self.extra_words[:10]:
            lines.append(f"  machine word outside oracle: {''.join(w) or 'e'}")
        return "\n".join(lines)


def stable_language_escalating(
    model,
    oracle,
    window_filter=None,
    m=1,
    k_start=0,
    k_cap=4,
    base_depth=8,
):
    """Grow k until the subgroup language matches brute force, or cap out.

    The validation depth grows with k so that the comparison can still see
    words that need the extra slack; a cap-hit outcome is reported as
    inconclusive, never as evidence of non-stability.
    """
    history = []
    last_missing, last_extra = [], []
    depth = base_depth
    machine = None
    for k in range(k_start, k_cap + 1):
        depth = max(base_depth, 2 * k + 4)
        machine = stable_language(model, oracle, k, window_filter, m)
        accepted = machine.determinize().language_upto(depth)
        expected = oracle_subgroup_words(model, oracle, depth, window_filter)
        missing = sorted(expected - accepted)
        extra = sorted(accepted - expected)
        history.append(
            {"k": k, "depth": depth, "missing": len(missing), "extra": len(extra)}
        )
        if not missing and not extra:
            return EscalationReport(
                outcome="matched",
                k_final=k,
                depth_checked=depth,
                machine=machine,
                history=history,
            )
        last_missing, last_extra = missing, extra
    return EscalationReport(
        outcome="inconclusive/cap-hit",
        k_final=k_cap,
        depth_checked=depth,
        missing_words=last_missing[:20],
        extra_words=last_extra[:20],
        machine=machine,
        history=history,
    )


def unique_rep_subgroup_language(
    model,
    oracle,
    k,
    window_filter=None,
    m=1,
    order=None,
    r=4,
    r_cap=16,
    validate_depth=6,
    details=None,
):
    """Unique shortlex representatives of the k-close subgroup elements."""
    from .shortlex import unique_rep_language

    J = unique_rep_language(
        model,
        window_filter,
        m,
        order=order,
        r=r,
        r_cap=r_cap,
        validate_depth=validate_depth,
        details=details,
    )
    near = subgroup_word_automaton(model, oracle, k).trim()
    return J.intersect(near).determinize().trim()


@dataclass
class NeighborhoodBoundReport:
    """Check that accepted paths stay (live state count)-close to H."""

    live_states: int
    depth: int
    checked_words: int
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def summary(self):
        if self.ok:
            return (
                f"pass: {self.checked_words} accepted words up to length {self.depth} "
                f"stay within {self.live_states} of the subgroup"
            )
        lines = [f"FAIL: {len(self.violations)} violations"]
        for v in self.violations[:10]:
            lines.append(f"  {v['kind']}: word {''.join(v['word']) or 'e'}")
        return "\n".join(lines)


def _distance_to_subgroup(model, oracle, vertex, cap):
    best = None
    for h in oracle.elements_within(len(vertex) + cap):
        d = model.geodesic_length(model.inverse_word(h) + vertex)
        if best is None or d < best:
            best = d
            if best == 0:
                break
    return best if best is not None else cap + 1


def regularity_neighborhood_bound(machine, model, oracle, n):
    """Verify the quantified regular-implies-quasi-convex bound.

    Every accepted word must represent a subgroup element and its path
    vertices must stay within (live state count) of the subgroup; any
    violation is a counterexample to the machine's claimed semantics.
    """
    live = len(machine.live_states())
    det = machine.determinize()
    report = NeighborhoodBoundReport(live_states=live, depth=n, checked_words=0)
    distance_memo = {}
    for word in sorted(det.language_upto(n), key=lambda w: (len(w), w)):
        report.checked_words += 1
        endpoint = model.normal_form(word)
        if not oracle.contains(endpoint):
            report.violations.append({"kind": "endpoint outside subgroup", "word": word})
            continue
        for cut in range(1, len(word)):
            vertex = model.normal_form(word[:cut])
            if vertex not in distance_memo:
                distance_memo[vertex] = _distance_to_subgroup(model, oracle, vertex, live)
            if distance_memo[vertex] > live:
                report.violations.append(
                    {"kind": f"vertex further than {live} from subgroup", "word": word}
                )
                break
    return report
