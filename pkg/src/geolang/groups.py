"""Group models with canonical normal forms and brute-force enumeration.

Each model computes a canonical geodesic normal form for every word, so
equality of normal forms is equality in the group and the length of the
normal form is the geodesic word length.  The ball and geodesic-word
enumerators below are the testing oracle for every automaton in the
package: they know nothing about cone types or machines, only about
normal forms.

Supported kinds:

* free           -- free reduction,
* abelian        -- exponent vectors, letters emitted in symbol order,
* raag           -- commutation-aware cancellation plus the lexicographically
                    least linearization of the resulting trace,
* free_product   -- syllable decomposition, factor-wise normal forms,
* direct_product -- factor projections concatenated in factor order,
* finite         -- multiplication table with precomputed shortlex geodesics.

Models are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BudgetExceeded, GroupFileError
from .words import Alphabet, symmetric_alphabet

DEFAULT_ELEMENT_BUDGET = int(os.environ.get("GEOLANG_ELEMENT_BUDGET", 2_000_000))
DEFAULT_WORD_BUDGET = int(os.environ.get("GEOLANG_WORD_BUDGET", 2_000_000))


class GroupModel:
    """Base class; subclasses fill in ``normal_form`` and helpers."""

    kind = "abstract"

    def __init__(self, alphabet: Alphabet, cache_key: str):
        self.alphabet = alphabet
        self.cache_key = cache_key

    def __repr__(self):
        return f"<{type(self).__name__} {self.cache_key}>"

    # -- contract -----------------------------------------------------

    def normal_form(self, word):
        """Canonical geodesic representative of the element of ``word``."""
        raise NotImplementedError

    def geodesic_length(self, word):
        return len(self.normal_form(word))

    def is_geodesic(self, word):
        self.alphabet.check_word(word)
        return self.geodesic_length(word) == len(word)

    def extends_geodesically(self, word, letter):
        """Is ``word + (letter,)`` geodesic, given that ``word`` is?

        Subclasses override with cheaper checks; the fallback recomputes
        the geodesic length of the extended word.
        """
        return self.geodesic_length(word + (letter,)) == len(word) + 1

    def commutes(self, x, y):
        """Do the generators of symbols x and y commute in the group?"""
        raise NotImplementedError

    def equal(self, u, v):
        return self.normal_form(u) == self.normal_form(v)

    def multiply(self, *wordlike):
        out = []
        for w in wordlike:
            out.extend(w)
        return self.normal_form(tuple(out))

    def inverse_word(self, word):
        return self.alphabet.inverse_word(word)


class FreeGroup(GroupModel):
    kind = "free"

    def __init__(self, generators, order=None):
        alphabet = symmetric_alphabet(generators, order=order)
        super().__init__(alphabet, f"free({','.join(generators)})")
        self.generators = tuple(generators)

    def normal_form(self, word):
        self.alphabet.check_word(word)
        inv = self.alphabet.inverses
        stack = []
        for letter in word:
            if stack and stack[-1] == inv[letter]:
                stack.pop()
            else:
                stack.append(letter)
        return tuple(stack)

    def extends_geodesically(self, word, letter):
        return not word or word[-1] != self.alphabet.inverses[letter]

    def commutes(self, x, y):
        return self.alphabet.base(x) == self.alphabet.base(y)


class FreeAbelianGroup(GroupModel):
    kind = "abelian"

    def __init__(self, generators, order=None):
        alphabet = symmetric_alphabet(generators, order=order)
        super().__init__(alphabet, f"abelian({','.join(generators)})")
        self.generators = tuple(generators)

    def _exponents(self, word):
        self.alphabet.check_word(word)
        exps = dict.fromkeys(self.generators, 0)
        inv = self.alphabet.inverses
        for letter in word:
            if letter in exps:
                exps[letter] += 1
            else:
                exps[inv[letter]] -= 1
        return exps

    def normal_form(self, word):
        exps = self._exponents(word)
        out = []
        for g in self.generators:
            e = exps[g]
            out.extend([g if e > 0 else self.alphabet.inverses[g]] * abs(e))
        return tuple(out)

    def geodesic_length(self, word):
        return sum(abs(e) for e in self._exponents(word).values())

    def extends_geodesically(self, word, letter):
        inv = self.alphabet.inverses[letter]
        return inv not in word

    def commutes(self, x, y):
        return True


class Raag(GroupModel):
    """Right-angled Artin group given by a commutation graph on generators.

    Letters are coded as small integers internally; commutation is a bitmask
    per code so the piling-style reduction runs in O(length^2) with small
    constants.
    """

    kind = "raag"

    def __init__(self, generators, commuting_pairs, order=None):
        alphabet = symmetric_alphabet(generators, order=order)
        gens = set(generators)
        pairs = set()
        for a, b in commuting_pairs:
            if a not in gens or b not in gens or a == b:
                raise GroupFileError(f"bad commuting pair ({a!r},{b!r})")
            pairs.add(frozenset((a, b)))
        key_pairs = ",".join(sorted("".join(sorted(p)) for p in pairs))
        super().__init__(alphabet, f"raag({','.join(generators)};{key_pairs})")
        self.generators = tuple(generators)
        self.commuting_pairs = frozenset(pairs)

        symbols = alphabet.symbols
        self._code = {s: i for i, s in enumerate(symbols)}
        self._symbol = symbols
        self._inv_code = [self._code[alphabet.inverses[s]] for s in symbols]
        self._rank_code = [alphabet.rank(s) for s in symbols]
        gen_of = {g: g for g in generators}
        for g in generators:
            gen_of[alphabet.inverses[g]] = g
        commute_mask = []
        for s in symbols:
            mask = 0
            for t in symbols:
                same = gen_of[s] == gen_of[t]
                if same or frozenset((gen_of[s], gen_of[t])) in pairs:
                    mask |= 1 << self._code[t]
            commute_mask.append(mask)
        self._commute_mask = commute_mask
        self._commuting_syms = {
            s: {t for t in symbols if commute_mask[self._code[s]] >> self._code[t] & 1}
            for s in symbols
        }

    def commutes(self, x, y):
        return y in self._commuting_syms[x]

    def _reduce_codes(self, word):
        # Piling: append letters one by one; a letter cancels the nearest
        # inverse reachable backward through commuting letters.  Removing the
        # cancelled letter cannot unblock older pairs (the would-be partner
        # shares a generator with the blocker's obstruction), so the pile
        # stays reduced throughout.
        code = self._code
        inv = self._inv_code
        masks = self._commute_mask
        out = []
        for letter in word:
            c = code[letter]
            target = inv[c]
            mask = masks[c]
            cancelled = False
            for j in range(len(out) - 1, -1, -1):
                prior = out[j]
                if prior == target:
                    del out[j]
                    cancelled = True
                    break
                if not (mask >> prior & 1):
                    break
            if not cancelled:
                out.append(c)
        return out

    def _canonical_codes(self, reduced):
        # Lexicographically least linearization of the trace: repeatedly take
        # the smallest available letter, where available means every earlier
        # letter commutes with it.
        rank = self._rank_code
        masks = self._commute_mask
        remaining = list(reduced)
        out = []
        while remaining:
            best = None
            blocked = 0
            for i, c in enumerate(remaining):
                if not (blocked & ~masks[c]) and (best is None or rank[c] < rank[remaining[best]]):
                    best = i
                blocked |= 1 << c
            out.append(remaining.pop(best))
        return out

    def normal_form(self, word):
        self.alphabet.check_word(word)
        codes = self._canonical_codes(self._reduce_codes(word))
        return tuple(self._symbol[c] for c in codes)

    def geodesic_length(self, word):
        self.alphabet.check_word(word)
        return len(self._reduce_codes(word))

    def extends_geodesically(self, word, letter):
        inv = self.alphabet.inverses[letter]
        commuting = self._commuting_syms[letter]
        for x in reversed(word):
            if x == inv:
                return False
            if x not in commuting:
                return True
        return True


class FreeProduct(GroupModel):
    """Free product of models with pairwise disjoint alphabets."""

    kind = "free_product"

    def __init__(self, factors, order=None):
        self.factors = tuple(factors)
        symbols = []
        inverses = {}
        self._factor_of = {}
        for i, f in enumerate(self.factors):
            for s in f.alphabet.symbols:
                if s in self._factor_of:
                    raise GroupFileError(f"factor alphabets overlap at {s!r}")
                self._factor_of[s] = i
                symbols.append(s)
                inverses[s] = f.alphabet.inverses[s]
            for s in f.alphabet.symbols:
                if f.geodesic_length((s,)) != 1:
                    raise GroupFileError(f"generator {s!r} is trivial in its factor")
        alphabet = Alphabet(symbols, inverses, order=order)
        key = "*".join(f.cache_key for f in self.factors)
        super().__init__(alphabet, f"fp({key})")

    def _syllables(self, word):
        runs = []
        for letter in word:
            i = self._factor_of[letter]
            if runs and runs[-1][0] == i:
                runs[-1][1].append(letter)
            else:
                runs.append((i, [letter]))
        return runs

    def _normal_syllables(self, word):
        self.alphabet.check_word(word)
        runs = self._syllables(word)
        while True:
            normalized = []
            for i, letters in runs:
                nf = self.factors[i].normal_form(tuple(letters))
                if nf:
                    if normalized and normalized[-1][0] == i:
                        merged = self.factors[i].normal_form(
                            tuple(normalized[-1][1]) + nf
                        )
                        normalized.pop()
                        if merged:
                            normalized.append((i, list(merged)))
                    else:
                        normalized.append((i, list(nf)))
                elif normalized:
                    # Trivial syllable removed; neighbors may now merge.
                    pass
            if [(i, tuple(l)) for i, l in normalized] == [
                (i, tuple(l)) for i, l in runs
            ]:
                return normalized
            runs = normalized

    def normal_form(self, word):
        out = []
        for _, letters in self._normal_syllables(word):
            out.extend(letters)
        return tuple(out)

    def geodesic_length(self, word):
        return sum(len(letters) for _, letters in self._normal_syllables(word))

    def extends_geodesically(self, word, letter):
        i = self._factor_of[letter]
        tail = []
        for x in reversed(word):
            if self._factor_of[x] != i:
                break
            tail.append(x)
        tail.reverse()
        return self.factors[i].extends_geodesically(tuple(tail), letter)

    def commutes(self, x, y):
        i, j = self._factor_of[x], self._factor_of[y]
        if i != j:
            return False
        return self.factors[i].commutes(x, y)


class DirectProduct(GroupModel):
    """Direct product; canonical form concatenates factor forms in order."""

    kind = "direct_product"

    def __init__(self, factors, order=None):
        self.factors = tuple(factors)
        symbols = []
        inverses = {}
        self._factor_of = {}
        for i, f in enumerate(self.factors):
            for s in f.alphabet.symbols:
                if s in self._factor_of:
                    raise GroupFileError(f"factor alphabets overlap at {s!r}")
                self._factor_of[s] = i
                symbols.append(s)
                inverses[s] = f.alphabet.inverses[s]
        alphabet = Alphabet(symbols, inverses, order=order)
        key = "x".join(f.cache_key for f in self.factors)
        super().__init__(alphabet, f"dp({key})")

    def _projections(self, word):
        self.alphabet.check_word(word)
        parts = [[] for _ in self.factors]
        for letter in word:
            parts[self._factor_of[letter]].append(letter)
        return parts

    def normal_form(self, word):
        out = []
        for f, part in zip(self.factors, self._projections(word)):
            out.extend(f.normal_form(tuple(part)))
        return tuple(out)

    def geodesic_length(self, word):
        return sum(
            f.geodesic_length(tuple(part))
            for f, part in zip(self.factors, self._projections(word))
        )

    def extends_geodesically(self, word, letter):
        i = self._factor_of[letter]
        part = tuple(x for x in word if self._factor_of[x] == i)
        return self.factors[i].extends_geodesically(part, letter)

    def commutes(self, x, y):
        i, j = self._factor_of[x], self._factor_of[y]
        if i != j:
            return True
        return self.factors[i].commutes(x, y)


class FiniteGroup(GroupModel):
    """Finite group from a multiplication table.

    ``product[a][b]`` (or ``product[(a, b)]``) names the product of elements
    a and b.  ``generators`` maps symbols to element names; inverse symbols
    for non-involutions are added automatically as uppercase partners.
    Geodesic normal forms are precomputed by a shortlex breadth-first search
    from the identity.
    """

    kind = "finite"

    def __init__(self, elements, identity, product, generators, involutions=(), order=None):
        self.elements = tuple(elements)
        if identity not in self.elements:
            raise GroupFileError(f"identity {identity!r} not among elements")
        self.identity_element = identity
        self._table = {}
        for a in self.elements:
            for b in self.elements:
                if isinstance(product, dict):
                    value = product.get((a, b))
                    if value is None:
                        value = product[a][b] if a in product else None
                else:
                    value = product[self.elements.index(a)][self.elements.index(b)]
                if value not in self.elements:
                    raise GroupFileError(f"product table missing or bad at ({a!r},{b!r})")
                self._table[(a, b)] = value
        self._inverse_elem = {}
        for a in self.elements:
            for b in self.elements:
                if self._table[(a, b)] == identity:
                    self._inverse_elem[a] = b
        if len(self._inverse_elem) != len(self.elements):
            raise GroupFileError("multiplication table has elements without inverses")

        gen_items = list(generators.items())
        symbols = []
        inverses = {}
        self._elem_of = {}
        for sym, elem in gen_items:
            if elem not in self.elements:
                raise GroupFileError(f"generator {sym!r} maps to unknown element {elem!r}")
            if elem == identity:
                raise GroupFileError(f"generator {sym!r} maps to the identity")
            if sym in involutions:
                if self._inverse_elem[elem] != elem:
                    raise GroupFileError(f"{sym!r} declared involution but element is not")
                symbols.append(sym)
                inverses[sym] = sym
                self._elem_of[sym] = elem
            else:
                partner = sym.upper()
                if partner == sym or partner in generators:
                    raise GroupFileError(f"cannot derive inverse symbol for {sym!r}")
                symbols.extend([sym, partner])
                inverses[sym] = partner
                inverses[partner] = sym
                self._elem_of[sym] = elem
                self._elem_of[partner] = self._inverse_elem[elem]
        alphabet = Alphabet(symbols, inverses, order=order)
        key = f"finite({len(self.elements)};{','.join(symbols)})"
        super().__init__(alphabet, key)

        # Shortlex BFS: first visit of each element is its canonical word.
        self._nf_of_elem = {identity: ()}
        self._len_of_elem = {identity: 0}
        frontier = [identity]
        while frontier:
            nxt = []
            for elem in frontier:
                word = self._nf_of_elem[elem]
                for sym in alphabet.order:
                    target = self._table[(elem, self._elem_of[sym])]
                    if target not in self._nf_of_elem:
                        self._nf_of_elem[target] = word + (sym,)
                        self._len_of_elem[target] = len(word) + 1
                        nxt.append(target)
            frontier = nxt
        if len(self._nf_of_elem) != len(self.elements):
            raise GroupFileError("generators do not generate the whole finite group")

    def element_of(self, word):
        self.alphabet.check_word(word)
        elem = self.identity_element
        for letter in word:
            elem = self._table[(elem, self._elem_of[letter])]
        return elem

    def normal_form(self, word):
        return self._nf_of_elem[self.element_of(word)]

    def geodesic_length(self, word):
        return self._len_of_elem[self.element_of(word)]

    def commutes(self, x, y):
        a, b = self._elem_of[x], self._elem_of[y]
        return self._table[(a, b)] == self._table[(b, a)]


def cyclic_group(n, symbol="a"):
    """The cyclic group of order n on one generator."""
    if n < 2:
        raise GroupFileError("cyclic group needs order >= 2")
    elements = [f"r{i}" for i in range(n)]
    product = {
        (elements[i], elements[j]): elements[(i + j) % n]
        for i in range(n)
        for j in range(n)
    }
    involutions = (symbol,) if n == 2 else ()
    return FiniteGroup(elements, "r0", product, {symbol: "r1"}, involutions=involutions)


@dataclass
class Ball:
    """All elements of geodesic length at most ``radius``.

    ``elements`` maps each canonical normal form to its geodesic length.
    """

    radius: int
    elements: dict

    def __len__(self):
        return len(self.elements)

    def __contains__(self, nf_word):
        return nf_word in self.elements

    def sphere_sizes(self):
        sizes = [0] * (self.radius + 1)
        for length in self.elements.values():
            sizes[length] += 1
        return sizes

    def cumulative_sizes(self):
        sizes = self.sphere_sizes()
        out = []
        total = 0
        for s in sizes:
            total += s
            out.append(total)
        return out


def enumerate_ball(model, n, budget=DEFAULT_ELEMENT_BUDGET):
    """Breadth-first ball of radius n around the identity."""
    seen = {(): 0}
    frontier = [()]
    for radius in range(1, n + 1):
        nxt = []
        for u in frontier:
            for a in model.alphabet.symbols:
                v = model.normal_form(u + (a,))
                if v not in seen:
                    seen[v] = radius
                    nxt.append(v)
                    if len(seen) > budget:
                        raise BudgetExceeded("enumerate_ball", budget)
        frontier = nxt
    return Ball(radius=n, elements=seen)


def geodesic_word_levels(model, n, window_filter=None, budget=DEFAULT_WORD_BUDGET):
    """Yield (length, set of geodesic words of that length), level by level.

    Words must be geodesic and, when a filter is given, pass the filter on
    every window.  Filters are subword-closed, so it suffices to check the
    window ending at each newly appended letter.
    """
    scale = window_filter.scale if window_filter is not None else 0
    frontier = [()]
    total = 1
    yield 0, {()}
    for length in range(1, n + 1):
        nxt = []
        for u in frontier:
            for a in model.alphabet.symbols:
                if not model.extends_geodesically(u, a):
                    continue
                ua = u + (a,)
                if window_filter is not None and scale > 0:
                    window = ua[-scale:] if len(ua) >= scale else ua
                    if not window_filter.accepts_window(window):
                        continue
                nxt.append(ua)
                total += 1
                if total > budget:
                    raise BudgetExceeded("enumerate_geodesic_words", budget)
        frontier = nxt
        yield length, set(nxt)


def enumerate_geodesic_words(model, n, window_filter=None, budget=DEFAULT_WORD_BUDGET):
    """All geodesic (and filter-passing) words of length at most n."""
    out = set()
    for _, level in geodesic_word_levels(model, n, window_filter, budget):
        out.update(level)
    return out


def geodesic_words_to(model, target_nf):
    """Every geodesic word representing the element with normal form target_nf.

    The on-geodesic elements are computed backward from the target level by
    level (an element lies on a geodesic exactly when a letter moves it one
    level closer), then words are read off forward through the levels.
    """
    n = len(target_nf)
    target_nf = tuple(target_nf)
    levels = [set() for _ in range(n + 1)]
    levels[n].add(target_nf)
    for depth in range(n - 1, -1, -1):
        for t in levels[depth + 1]:
            for a in model.alphabet.symbols:
                g = model.normal_form(t + (a,))
                if len(g) == depth:
                    levels[depth].add(g)
    if () not in levels[0]:
        return []

    results = []

    def grow(word, current_nf):
        depth = len(word)
        if depth == n:
            results.append(word)
            return
        for a in model.alphabet.symbols:
            nf = model.normal_form(current_nf + (a,))
            if nf in levels[depth + 1]:
                grow(word + (a,), nf)

    grow((), ())
    return results
