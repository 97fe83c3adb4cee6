"""Cone signatures and the cone-type automaton.

The automaton accepting the filtered geodesic language is built by
classifying geodesic words u through the pair

    tail(u, m)  = short group elements that shorten u,
    cone(u, m)  = short extension words keeping u geodesic and filter-clean,

and identifying words with equal signatures.  Finiteness of the signature
space makes the breadth-first construction terminate; whether a given m is
large enough for signature equality to imply equal extension behavior is
checked empirically: at every merge the builder re-verifies one-letter
agreement and raises InconsistentLocality when it fails, and a full oracle
cross-check against brute-force enumeration is available as
``validate_automaton``.  The builder can escalate m automatically, since a
sufficient m exists for the intended group models but no generic formula
computes it.

Builds are single-threaded; finished automata are immutable and safe to
share, and validation may fan out over word-length strata.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    EndpointMismatch,
    FilterRejected,
    InconsistentLocality,
    NotGeodesic,
)
from .filters import TrivialFilter, WindowFilter
from .fsa import Fsa
from .groups import enumerate_ball, geodesic_word_levels

DEFAULT_DEPTH_BUDGET = 64
DEFAULT_STATE_BUDGET = 100_000


@dataclass(frozen=True)
class ConeSignature:
    """Locality-m classification data of a geodesic word."""

    m: int
    tail: frozenset
    cone: frozenset

    def sorted_tail(self):
        return sorted(self.tail)

    def sorted_cone(self):
        return sorted(self.cone)


@dataclass
class ConeAutomaton:
    """Deterministic machine over cone signature classes.

    All states accept, the initial state is the class of the empty word,
    and the machine is already trimmed.
    """

    fsa: Fsa
    signatures: tuple
    representatives: tuple
    model: object
    window_filter: WindowFilter
    m: int

    @property
    def n_states(self):
        return self.fsa.n_states

    def signature_of_state(self, state):
        return self.signatures[state]

    def accepts(self, word):
        return self.fsa.accepts(word)


def _passes_incremental(window_filter, word):
    """Window ending at the last letter of ``word``; earlier windows are the
    caller's responsibility (subword closure makes this sufficient)."""
    scale = window_filter.scale
    if scale == 0:
        return True
    window = word[-scale:] if len(word) >= scale else word
    return window_filter.accepts_window(window)


def _extends(model, window_filter, word, letter):
    if not model.extends_geodesically(word, letter):
        return False
    return _passes_incremental(window_filter, word + (letter,))


def tail(model, u, N, ball=None):
    """The set of group elements g with |g| <= N shortening u.

    Elements are returned as canonical normal-form words.  The empty word
    never has a tail, and the identity never shortens anything.
    """
    if not model.is_geodesic(u):
        raise NotGeodesic(f"tail needs a geodesic word, got {u}")
    if ball is None:
        ball = enumerate_ball(model, N)
    length = len(u)
    out = set()
    for g in ball.elements:
        if g and model.geodesic_length(u + g) < length:
            out.add(g)
    return frozenset(out)


def restricted_cone(model, u, N, window_filter=None):
    """Extension words w of length <= N keeping u geodesic and filter-clean."""
    window_filter = window_filter or TrivialFilter()
    if not model.is_geodesic(u):
        raise NotGeodesic(f"restricted_cone needs a geodesic word, got {u}")
    if not window_filter.passes(u):
        raise FilterRejected(f"base word {u} fails filter {window_filter.cache_key}")
    out = {()}
    frontier = [()]
    for _ in range(N):
        nxt = []
        for w in frontier:
            for a in model.alphabet.symbols:
                if _extends(model, window_filter, u + w, a):
                    nxt.append(w + (a,))
        out.update(nxt)
        frontier = nxt
    return frozenset(out)


def signature(model, u, m, window_filter=None, ball=None):
    return ConeSignature(
        m=m,
        tail=tail(model, u, m, ball=ball),
        cone=restricted_cone(model, u, m, window_filter),
    )


def build_cone_automaton(
    model,
    m,
    window_filter=None,
    depth_budget=DEFAULT_DEPTH_BUDGET,
    state_budget=DEFAULT_STATE_BUDGET,
    auto_escalate=False,
    max_escalations=4,
):
    """Build the deterministic cone-type automaton at locality m.

    Raises InconsistentLocality when two words with equal signatures
    disagree on a one-letter extension; with ``auto_escalate`` the build is
    retried at m+1 up to ``max_escalations`` times instead.
    """
    window_filter = window_filter or TrivialFilter()
    attempts = max_escalations + 1 if auto_escalate else 1
    last_error = None
    for attempt in range(attempts):
        try:
            return _build_once(model, m + attempt, window_filter, depth_budget, state_budget)
        except InconsistentLocality as err:
            last_error = err
    raise last_error


def _build_once(model, m, window_filter, depth_budget, state_budget):
    ball = enumerate_ball(model, m)
    sig_cache = {}

    def sig_of(word):
        cached = sig_cache.get(word)
        if cached is None:
            cached = signature(model, word, m, window_filter, ball=ball)
            sig_cache[word] = cached
        return cached

    symbols = model.alphabet.symbols
    start_sig = sig_of(())
    index = {start_sig: 0}
    reps = [()]
    edges = []
    queue = deque([0])
    while queue:
        state = queue.popleft()
        u = reps[state]
        for a in symbols:
            if not _extends(model, window_filter, u, a):
                continue
            ua = u + (a,)
            if len(ua) > depth_budget:
                raise BudgetExceeded("build_cone_automaton depth", depth_budget)
            sig = sig_of(ua)
            target = index.get(sig)
            if target is None:
                target = len(reps)
                index[sig] = target
                reps.append(ua)
                queue.append(target)
                if len(reps) > state_budget:
                    raise BudgetExceeded("build_cone_automaton states", state_budget)
            else:
                _check_merge(model, window_filter, m, reps[target], ua, sig_of)
            edges.append((state, a, target))
    fsa = Fsa(symbols, len(reps), 0, range(len(reps)), edges)
    return ConeAutomaton(
        fsa=fsa,
        signatures=tuple(_signatures_in_order(index)),
        representatives=tuple(reps),
        model=model,
        window_filter=window_filter,
        m=m,
    )


def _signatures_in_order(index):
    out = [None] * len(index)
    for sig, i in index.items():
        out[i] = sig
    return out


def _check_merge(model, window_filter, m, rep, word, sig_of):
    """One-step agreement check when ``word`` lands in the class of ``rep``.

    Equal signatures already force equal one-letter membership (the cone at
    m >= 1 contains all extending letters), so the substance of the check is
    that matching extensions land in matching classes.
    """
    for b in model.alphabet.symbols:
        rep_ok = _extends(model, window_filter, rep, b)
        word_ok = _extends(model, window_filter, word, b)
        if rep_ok != word_ok:
            raise InconsistentLocality(
                m, rep, word, b, "extension membership differs within one class"
            )
        if rep_ok and sig_of(rep + (b,)) != sig_of(word + (b,)):
            raise InconsistentLocality(
                m, rep, word, b, "extension signatures differ within one class"
            )


@dataclass
class ValidationReport:
    """Outcome of an oracle cross-check of a machine's language."""

    depth: int
    compared: int
    mismatches: list = field(default_factory=list)
    witness_cap: int = 20

    @property
    def ok(self):
        return not self.mismatches

    def record(self, word, machine_accepts, oracle_accepts):
        if len(self.mismatches) < self.witness_cap:
            self.mismatches.append(
                {
                    "word": word,
                    "machine": machine_accepts,
                    "oracle": oracle_accepts,
                }
            )

    def summary(self):
        if self.ok:
            return f"pass: machine agrees with oracle on all {self.compared} words up to length {self.depth}"
        lines = [
            f"FAIL: {len(self.mismatches)} mismatches up to length {self.depth} "
            f"({self.compared} words compared); first witnesses:"
        ]
        for w in self.mismatches:
            word = "".join(w["word"]) or "e"
            lines.append(
                f"  {word}: machine={'accept' if w['machine'] else 'reject'} "
                f"oracle={'accept' if w['oracle'] else 'reject'}"
            )
        return "\n".join(lines)


def validate_automaton(auto, n, budget=None):
    """Compare the machine language with brute-force enumeration up to length n.

    Comparison runs level by level so only one length stratum is held in
    memory at a time.
    """
    model = auto.model
    window_filter = auto.window_filter
    kwargs = {} if budget is None else {"budget": budget}
    oracle_levels = geodesic_word_levels(model, n, window_filter, **kwargs)
    machine_levels = auto.fsa.language_levels(n)
    report = ValidationReport(depth=n, compared=0)
    for (_, oracle_set), (_, machine_set) in zip(oracle_levels, machine_levels):
        report.compared += len(oracle_set | machine_set)
        if oracle_set == machine_set:
            continue
        for word in sorted(machine_set - oracle_set):
            report.record(word, True, False)
        for word in sorted(oracle_set - machine_set):
            report.record(word, False, True)
    return report


def brute_force_fellow_traveling(model, u, v, bound):
    """Do the paths of u and v stay within ``bound`` of each other pointwise?

    Desk-scale sanity checker: endpoints must agree or lie at distance 1.
    """
    if not model.is_geodesic(u):
        raise NotGeodesic(f"{u} is not geodesic")
    if not model.is_geodesic(v):
        raise NotGeodesic(f"{v} is not geodesic")
    end_gap = model.geodesic_length(model.inverse_word(u) + v)
    if end_gap > 1:
        raise EndpointMismatch(f"endpoints lie at distance {end_gap} > 1")
    for t in range(min(len(u), len(v)) + 1):
        gap = model.geodesic_length(model.inverse_word(u[:t]) + v[:t])
        if gap > bound:
            return False
    return True
