"""Pigeonhole pumping of long accepted prefixes.

Any accepted prefix longer than the state count revisits a state; cutting
at the earliest revisit splits the prefix as u v q with the machine state
equal after u and after u v.  The words u v^n stay accepted (and stay
geodesic when the machine accepts a geodesic language), and the element
u v u^-1 is the candidate for a direction of linear escape: its powers are
checked to grow linearly, the desk-scale shadow of an infinite-order
direction.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GeolangError, NotAccepted, PrefixTooShort


def _machine_of(auto):
    return auto.fsa if hasattr(auto, "fsa") else auto


@dataclass
class PumpDecomposition:
    u: tuple
    v: tuple
    q: tuple
    state: int
    automaton: object

    def __str__(self):
        show = lambda w: "".join(w) or "e"
        return f"u={show(self.u)} v={show(self.v)} q={show(self.q)} (state {self.state})"


def pump_decomposition(auto, prefix, i):
    """Split ``prefix`` as u v q with a repeated state and len(u) >= i.

    Tie-break: the earliest repeat (smallest end position, then smallest
    start position at least i), so outputs are reproducible.
    """
    machine = _machine_of(auto)
    prefix = tuple(prefix)
    states = machine.n_states
    if len(prefix) < i + states + 1:
        raise PrefixTooShort(
            f"need length >= i + states + 1 = {i + states + 1}, got {len(prefix)}"
        )
    if not machine.accepts(prefix):
        raise NotAccepted(f"prefix {''.join(prefix)!r} is not accepted")
    trace = machine.run_states(prefix)
    for end in range(i + 1, len(prefix) + 1):
        for start in range(i, end):
            if trace[start] == trace[end]:
                return PumpDecomposition(
                    u=prefix[:start],
                    v=prefix[start:end],
                    q=prefix[end:],
                    state=trace[start],
                    automaton=auto,
                )
    raise NotAccepted("no repeated state found; machine trace inconsistent")


def periodic_word(decomposition, n):
    """The word u v^n; asserted to stay accepted by the parent machine."""
    word = decomposition.u + decomposition.v * n
    machine = _machine_of(decomposition.automaton)
    if not machine.accepts(word):
        raise NotAccepted(
            f"pumped word {''.join(word)!r} rejected; decomposition invalid"
        )
    return word


def morse_element_candidate(model, decomposition, power_checks=50):
    """Normal form of u v u^-1, with a linear power-growth sanity check.

    For every checked n, |g^n| >= n*len(v) - 2*len(u) must hold; failure
    means the candidate does not escape linearly and is reported.
    """
    u, v = decomposition.u, decomposition.v
    g = model.multiply(u, v, model.inverse_word(u))
    length_v, length_u = len(v), len(u)
    for n in (1, 2, 5, 10, power_checks) if power_checks else ():
        power = model.geodesic_length(u + v * n + model.inverse_word(u))
        if power < n * length_v - 2 * length_u:
            raise GeolangError(
                f"candidate {''.join(g)!r} fails linear growth at power {n}"
            )
    return g
