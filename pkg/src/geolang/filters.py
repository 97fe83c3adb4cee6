"""Window filters: subword-closed local conditions on geodesic words.

A filter looks at sliding windows of bounded length (its ``scale``) and
accepts or rejects each window from its letters alone.  Acceptance must be
subword-closed: every window of an accepted window is accepted, and the
empty word is accepted.  Under that closure a word passes the filter on
all windows if and only if, while the word is built letter by letter, the
window ending at each new letter is accepted; the enumerators and the cone
builder exploit this.

The shipped filters carve out languages of geodesics that avoid long
excursions in flat directions.  Whether a given filter matches an exact
Morse gauge is not something this package decides; filters are validated
empirically against brute-force enumeration.
"""

from __future__ import annotations


class WindowFilter:
    """Base window filter.  ``scale`` 0 means no constraint."""

    name = "window"
    scale = 0

    def accepts_window(self, window):
        raise NotImplementedError

    def passes(self, word):
        """Check every window of the word (entry-point validation)."""
        if self.scale == 0:
            return True
        for end in range(1, len(word) + 1):
            start = max(0, end - self.scale)
            if not self.accepts_window(word[start:end]):
                return False
        return True

    @property
    def cache_key(self):
        return self.name

    def __repr__(self):
        return f"<{self.cache_key}>"


class TrivialFilter(WindowFilter):
    """Accepts everything; reproduces classic cone types of geodesics."""

    name = "trivial"
    scale = 0

    def accepts_window(self, window):
        return True


class SyllableBoundFilter(WindowFilter):
    """Rejects windows containing a power of one generator longer than s.

    A syllable here is a maximal run of letters sharing one generator (the
    generator or its inverse).  Runs mixing a generator with its inverse do
    not survive geodesity anyway, so counting by base generator is enough.
    """

    def __init__(self, alphabet, s):
        if s < 1:
            raise ValueError("syllable bound must be >= 1")
        self.alphabet = alphabet
        self.s = s
        self.scale = s + 1
        self.name = f"syllable:{s}"

    def accepts_window(self, window):
        run = 0
        prev = None
        for letter in window:
            base = self.alphabet.base(letter)
            run = run + 1 if base == prev else 1
            prev = base
            if run > self.s:
                return False
        return True


class CommutingBlockFilter(WindowFilter):
    """Rejects windows with more than s consecutive pairwise-commuting letters.

    Commutation is taken from the model (a letter commutes with itself), so
    a block violating the bound spans an abelian chunk of the group; bounding
    such blocks forbids long excursions inside flats.
    """

    def __init__(self, model, s):
        if s < 1:
            raise ValueError("commuting block bound must be >= 1")
        self.model = model
        self.s = s
        self.scale = s + 1
        self.name = f"commuting-block:{s}"

    def accepts_window(self, window):
        n = len(window)
        limit = self.s
        if n <= limit:
            return True
        # Any violating block inside the window contains a block of exactly
        # limit+1 letters, so checking blocks of that size suffices.
        for start in range(n - limit):
            block = window[start : start + limit + 1]
            if all(
                self.model.commutes(block[i], block[j])
                for i in range(len(block))
                for j in range(i + 1, len(block))
            ):
                return False
        return True


def filter_from_spec(model, text):
    """Parse a filter description like ``trivial``, ``syllable:1``,
    ``commuting-block:2``."""
    if text in (None, "", "trivial", "none"):
        return TrivialFilter()
    name, _, arg = text.partition(":")
    if name == "syllable":
        return SyllableBoundFilter(model.alphabet, int(arg))
    if name == "commuting-block":
        return CommutingBlockFilter(model, int(arg))
    raise ValueError(f"unknown filter {text!r}")
