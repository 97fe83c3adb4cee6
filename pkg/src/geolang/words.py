"""Alphabets and words.

A word is a plain tuple of symbol strings; the empty tuple is the identity.
Symbols of the built-in groups follow the convention that the inverse of a
lowercase generator is its uppercase partner ("a" <-> "A"), but an Alphabet
may pair arbitrary strings, and an order-2 symbol may be its own inverse.
"""

from __future__ import annotations

from .errors import UnknownSymbol, GroupFileError

Word = tuple[str, ...]

EPSILON_DISPLAY = "e"


class Alphabet:
    """A finite symmetric alphabet with an inverse involution and a total order.

    The order used for lexicographic comparisons defaults to the listing
    order of ``symbols`` but can be overridden per construction.
    """

    def __init__(self, symbols, inverses, order=None):
        self.symbols = tuple(symbols)
        if len(set(self.symbols)) != len(self.symbols):
            raise GroupFileError("alphabet symbols must be distinct")
        self.inverses = dict(inverses)
        for s in self.symbols:
            t = self.inverses.get(s)
            if t is None or t not in self.symbols or self.inverses.get(t) != s:
                raise GroupFileError(f"inverse pairing is not an involution at {s!r}")
        order = tuple(order) if order is not None else self.symbols
        if sorted(order) != sorted(self.symbols):
            raise GroupFileError("symbol order must list every symbol exactly once")
        self.order = order
        self._rank = {s: i for i, s in enumerate(order)}

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, symbol):
        return symbol in self._rank

    def __eq__(self, other):
        return (
            isinstance(other, Alphabet)
            and self.symbols == other.symbols
            and self.inverses == other.inverses
            and self.order == other.order
        )

    def __repr__(self):
        return f"Alphabet({','.join(self.symbols)})"

    def inverse(self, symbol):
        try:
            return self.inverses[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} not in alphabet") from None

    def rank(self, symbol):
        try:
            return self._rank[symbol]
        except KeyError:
            raise UnknownSymbol(f"symbol {symbol!r} not in alphabet") from None

    def check_word(self, word):
        for letter in word:
            if letter not in self._rank:
                raise UnknownSymbol(f"symbol {letter!r} not in alphabet")

    def inverse_word(self, word):
        return tuple(self.inverse(x) for x in reversed(word))

    def base(self, symbol):
        """Canonical representative of {symbol, symbol^-1}, by order rank."""
        inv = self.inverse(symbol)
        return symbol if self.rank(symbol) <= self.rank(inv) else inv

    def with_order(self, order):
        return Alphabet(self.symbols, self.inverses, order=order)


def symmetric_alphabet(generators, involutions=(), order=None):
    """Alphabet for the listed generators plus uppercase inverse partners.

    Generators named in ``involutions`` are their own inverses and get no
    partner symbol.
    """
    symbols = []
    inverses = {}
    for g in generators:
        if g in involutions:
            symbols.append(g)
            inverses[g] = g
            continue
        partner = g.upper()
        if partner == g:
            raise GroupFileError(
                f"generator {g!r} has no distinct uppercase form; "
                "declare it an involution or rename it"
            )
        symbols.extend([g, partner])
        inverses[g] = partner
        inverses[partner] = g
    return Alphabet(symbols, inverses, order=order)


def format_word(word):
    if not word:
        return EPSILON_DISPLAY
    if all(len(s) == 1 for s in word):
        return "".join(word)
    return " ".join(word)


def parse_word(text, alphabet=None):
    """Parse a word expression.

    Supports plain runs of single-character symbols ("abA"), whitespace
    separated symbols ("a b A"), powers ("a^3"), parenthesized groups
    ("(ab)^5"), and "e" for the empty word.
    """
    word = tuple(_parse_expr(text.strip()))
    if alphabet is not None:
        alphabet.check_word(word)
    return word


def _parse_expr(text):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "(":
            depth = 1
            j = pos + 1
            while j < n and depth:
                if text[j] == "(":
                    depth += 1
                elif text[j] == ")":
                    depth -= 1
                j += 1
            if depth:
                raise GroupFileError(f"unbalanced parentheses in word {text!r}")
            inner = _parse_expr(text[pos + 1 : j - 1])
            pos = j
        else:
            inner = [ch]
            pos += 1
        if pos < n and text[pos] == "^":
            pos += 1
            start = pos
            while pos < n and (text[pos].isdigit() or (pos == start and text[pos] == "-")):
                pos += 1
            if start == pos:
                raise GroupFileError(f"missing exponent in word {text!r}")
            power = int(text[start:pos])
            if power < 0:
                raise GroupFileError("negative powers are not supported; use inverse symbols")
            inner = list(inner) * power
        out.extend(inner)
    if out == [EPSILON_DISPLAY]:
        return []
    return out
