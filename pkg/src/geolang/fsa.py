"""Finite state automata with the boolean-algebra tool kit.

States are integers 0..n-1.  Labels are arbitrary hashable symbols; the
pair machines used by the equality recognizer simply label edges with
2-tuples of base symbols.  Machines are immutable after construction and
all operations are pure functions, so values are safe to share.

Word counting deliberately refuses nondeterministic input: the growth
functions of interest count words, and counting accepting runs of an
ambiguous machine would overcount.
"""

from __future__ import annotations

import json
from collections import deque

from .errors import (
    AlphabetMismatch,
    NondeterministicInput,
    UnknownSymbol,
)


class Fsa:
    """A finite state automaton over an explicit list of labels.

    ``edges`` is an iterable of (source, label, target) triples.  The
    ``deterministic`` flag is computed, never asserted.
    """

    def __init__(self, alphabet, n_states, initial, accepting, edges):
        self.alphabet = tuple(alphabet)
        self._symbol_set = set(self.alphabet)
        if len(self._symbol_set) != len(self.alphabet):
            raise AlphabetMismatch("duplicate symbols in machine alphabet")
        self.n_states = int(n_states)
        if not (0 <= initial < self.n_states):
            raise ValueError("initial state out of range")
        self.initial = int(initial)
        self.accepting = frozenset(int(s) for s in accepting)
        if any(not 0 <= s < self.n_states for s in self.accepting):
            raise ValueError("accept state out of range")
        outgoing = [dict() for _ in range(self.n_states)]
        deterministic = True
        edge_list = []
        for src, label, dst in edges:
            src, dst = int(src), int(dst)
            if not (0 <= src < self.n_states and 0 <= dst < self.n_states):
                raise ValueError(f"edge ({src},{label!r},{dst}) out of range")
            if label not in self._symbol_set:
                raise UnknownSymbol(f"edge label {label!r} not in machine alphabet")
            bucket = outgoing[src].setdefault(label, [])
            if dst not in bucket:
                bucket.append(dst)
                edge_list.append((src, label, dst))
            if len(bucket) > 1:
                deterministic = False
        self.edges = tuple(edge_list)
        self._out = tuple(
            {label: tuple(targets) for label, targets in d.items()} for d in outgoing
        )
        self.deterministic = deterministic

    # -- basics ---------------------------------------------------------

    def successors(self, state, label):
        return self._out[state].get(label, ())

    def step(self, state, label):
        """Deterministic step; None when no transition exists."""
        targets = self._out[state].get(label)
        return targets[0] if targets else None

    def accepts(self, word):
        for letter in word:
            if letter not in self._symbol_set:
                raise UnknownSymbol(f"symbol {letter!r} not in machine alphabet")
        current = {self.initial}
        for letter in word:
            current = {t for s in current for t in self.successors(s, letter)}
            if not current:
                return False
        return bool(current & self.accepting)

    def run_states(self, word):
        """State trace of a deterministic run, or None where it dies."""
        if not self.deterministic:
            raise NondeterministicInput("run_states needs a deterministic machine")
        trace = [self.initial]
        state = self.initial
        for letter in word:
            state = self.step(state, letter)
            if state is None:
                return trace + [None]
            trace.append(state)
        return trace

    def out_degree(self, state):
        return sum(len(t) for t in self._out[state].values())

    # -- structure ------------------------------------------------------

    def reachable_states(self):
        seen = {self.initial}
        queue = deque([self.initial])
        while queue:
            s = queue.popleft()
            for targets in self._out[s].values():
                for t in targets:
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
        return seen

    def live_states(self):
        """States on some path from the initial state to an accept state."""
        reachable = self.reachable_states()
        incoming = [[] for _ in range(self.n_states)]
        for src, _, dst in self.edges:
            incoming[dst].append(src)
        coreachable = set(self.accepting)
        queue = deque(self.accepting)
        while queue:
            s = queue.popleft()
            for p in incoming[s]:
                if p not in coreachable:
                    coreachable.add(p)
                    queue.append(p)
        return reachable & coreachable

    @property
    def is_trim(self):
        live = self.live_states()
        if not live:
            return self.n_states == 1 and not self.edges and not self.accepting
        return len(live) == self.n_states

    def trim(self):
        """Prune states off every initial-to-accept path; language unchanged.

        An empty-language machine trims to a single initial state with no
        accepts, so the result always has a valid initial state.
        """
        live = self.live_states()
        if not live:
            return Fsa(self.alphabet, 1, 0, (), ())
        keep = sorted(live)
        if self.initial not in live:
            keep = [self.initial] + keep
        renumber = {old: new for new, old in enumerate(keep)}
        edges = [
            (renumber[s], a, renumber[t])
            for s, a, t in self.edges
            if s in live and t in live
        ]
        accepting = [renumber[s] for s in self.accepting if s in live]
        return Fsa(self.alphabet, len(keep), renumber[self.initial], accepting, edges)

    # -- boolean algebra --------------------------------------------------

    def _require_same_alphabet(self, other):
        if set(self.alphabet) != set(other.alphabet):
            raise AlphabetMismatch(
                f"alphabets differ: {self.alphabet} vs {other.alphabet}"
            )

    def intersect(self, other):
        """Product machine; works for nondeterministic inputs too."""
        self._require_same_alphabet(other)
        start = (self.initial, other.initial)
        index = {start: 0}
        order = [start]
        edges = []
        queue = deque([start])
        while queue:
            pair = queue.popleft()
            s, t = pair
            for label in self.alphabet:
                for s2 in self.successors(s, label):
                    for t2 in other.successors(t, label):
                        nxt = (s2, t2)
                        if nxt not in index:
                            index[nxt] = len(order)
                            order.append(nxt)
                            queue.append(nxt)
                        edges.append((index[pair], label, index[nxt]))
        accepting = [
            i
            for i, (s, t) in enumerate(order)
            if s in self.accepting and t in other.accepting
        ]
        return Fsa(self.alphabet, len(order), 0, accepting, edges)

    def union(self, other):
        """Union of two deterministic machines via the completed product."""
        self._require_same_alphabet(other)
        if not (self.deterministic and other.deterministic):
            raise NondeterministicInput("union expects deterministic machines")
        a = self.complete()
        b = other.complete()
        start = (a.initial, b.initial)
        index = {start: 0}
        order = [start]
        edges = []
        queue = deque([start])
        while queue:
            pair = queue.popleft()
            s, t = pair
            for label in a.alphabet:
                nxt = (a.step(s, label), b.step(t, label))
                if nxt not in index:
                    index[nxt] = len(order)
                    order.append(nxt)
                    queue.append(nxt)
                edges.append((index[pair], label, index[nxt]))
        accepting = [
            i
            for i, (s, t) in enumerate(order)
            if s in a.accepting or t in b.accepting
        ]
        return Fsa(self.alphabet, len(order), 0, accepting, edges)

    def complete(self):
        """Add a rejecting sink so every (state, label) has a transition."""
        if not self.deterministic:
            raise NondeterministicInput("complete expects a deterministic machine")
        missing = [
            (s, a)
            for s in range(self.n_states)
            for a in self.alphabet
            if not self.successors(s, a)
        ]
        if not missing:
            return self
        sink = self.n_states
        edges = list(self.edges)
        edges.extend((s, a, sink) for s, a in missing)
        edges.extend((sink, a, sink) for a in self.alphabet)
        return Fsa(self.alphabet, self.n_states + 1, self.initial, self.accepting, edges)

    def determinize(self):
        """Subset construction; preserves the language exactly."""
        if self.deterministic:
            return self
        start = frozenset({self.initial})
        index = {start: 0}
        order = [start]
        edges = []
        queue = deque([start])
        while queue:
            subset = queue.popleft()
            for label in self.alphabet:
                target = frozenset(
                    t for s in subset for t in self.successors(s, label)
                )
                if not target:
                    continue
                if target not in index:
                    index[target] = len(order)
                    order.append(target)
                    queue.append(target)
                edges.append((index[subset], label, index[target]))
        accepting = [
            i for i, subset in enumerate(order) if subset & self.accepting
        ]
        return Fsa(self.alphabet, len(order), 0, accepting, edges)

    def complement(self):
        """Complement relative to the full free monoid over the alphabet."""
        if not self.deterministic:
            raise NondeterministicInput("complement expects a deterministic machine")
        full = self.complete()
        accepting = set(range(full.n_states)) - set(full.accepting)
        return Fsa(full.alphabet, full.n_states, full.initial, accepting, full.edges)

    # -- counting and enumeration ----------------------------------------

    def count_words(self, n):
        """Cumulative and per-length counts of accepted words up to length n.

        Counts are exact integers.  Raises on nondeterministic input because
        run counts would not be word counts there.
        """
        if not self.deterministic:
            raise NondeterministicInput("count_words needs a deterministic machine")
        vec = [0] * self.n_states
        vec[self.initial] = 1
        spheres = [sum(vec[s] for s in self.accepting)]
        for _ in range(n):
            nxt = [0] * self.n_states
            for s, count in enumerate(vec):
                if not count:
                    continue
                for targets in self._out[s].values():
                    nxt[targets[0]] += count
            vec = nxt
            spheres.append(sum(vec[s] for s in self.accepting))
        cumulative = []
        total = 0
        for s in spheres:
            total += s
            cumulative.append(total)
        return cumulative, spheres

    def language_levels(self, n):
        """Yield (length, set of accepted words of that length) for length <= n."""
        if not self.deterministic:
            raise NondeterministicInput("language_levels needs a deterministic machine")
        frontier = [((), self.initial)]
        yield 0, ({()} if self.initial in self.accepting else set())
        for length in range(1, n + 1):
            nxt = []
            for word, state in frontier:
                for label, targets in self._out[state].items():
                    nxt.append((word + (label,), targets[0]))
            frontier = nxt
            yield length, {w for w, s in frontier if s in self.accepting}

    def language_upto(self, n):
        out = set()
        for _, level in self.language_levels(n):
            out.update(level)
        return out

    # -- interchange -------------------------------------------------------

    def to_dict(self):
        def encode(label):
            return list(label) if isinstance(label, tuple) else label

        return {
            "alphabet": [encode(a) for a in self.alphabet],
            "states": self.n_states,
            "initial": self.initial,
            "accepts": sorted(self.accepting),
            "transitions": [[s, encode(a), t] for s, a, t in self.edges],
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, data):
        def decode(label):
            return tuple(label) if isinstance(label, list) else label

        return cls(
            [decode(a) for a in data["alphabet"]],
            data["states"],
            data["initial"],
            data["accepts"],
            [(s, decode(a), t) for s, a, t in data["transitions"]],
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_dot(self, name="fsa"):
        def fmt(label):
            return "(" + ",".join(label) + ")" if isinstance(label, tuple) else str(label)

        lines = [f"digraph {name} {{", "  rankdir=LR;", '  start [shape=point, label=""];']
        for s in range(self.n_states):
            shape = "doublecircle" if s in self.accepting else "circle"
            lines.append(f"  s{s} [shape={shape}, label=\"{s}\"];")
        lines.append(f"  start -> s{self.initial};")
        grouped = {}
        for s, a, t in self.edges:
            grouped.setdefault((s, t), []).append(fmt(a))
        for (s, t), labels in sorted(grouped.items()):
            lines.append(f'  s{s} -> s{t} [label="{",".join(labels)}"];')
        lines.append("}")
        return "\n".join(lines)


def pair_alphabet(symbols):
    """All ordered pairs over ``symbols``, in row-major order."""
    return tuple((a, b) for a in symbols for b in symbols)


def is_pair_alphabet(alphabet):
    return all(isinstance(a, tuple) and len(a) == 2 for a in alphabet)


def project_first(pair_fsa):
    """Project pair labels to their first coordinate.

    The result is usually nondeterministic: it accepts exactly the words u
    such that (u, v) is accepted for some v.
    """
    if not is_pair_alphabet(pair_fsa.alphabet):
        raise AlphabetMismatch("project_first expects a pair-labelled machine")
    base = []
    seen = set()
    for a, _ in pair_fsa.alphabet:
        if a not in seen:
            seen.add(a)
            base.append(a)
    edges = [(s, a, t) for s, (a, _), t in pair_fsa.edges]
    return Fsa(base, pair_fsa.n_states, pair_fsa.initial, pair_fsa.accepting, edges)
