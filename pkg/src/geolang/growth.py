"""Growth of regular languages: exact series, dominant eigenvalues, gaps.

Counting uses the transition-multiplicity matrix rather than a 0/1
adjacency matrix: word counts are path counts only when parallel labeled
edges are counted with multiplicity.  The 0/1 variant is still exposed for
comparison.

The dominant eigenvalue is computed by power iteration with a windowed
geometric-mean estimate (tolerates periodic machines); polynomial-growth
machines make plain iteration crawl, so when the window estimate has not
settled the routine switches to a deterministic spectral-radius refinement
by repeated squaring, which converges for every nonnegative matrix.

Recurrence fitting is done in exact rational arithmetic and a fitted
series is only reported after it reproduces held-out terms exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    EmptyWord,
    NoConvergence,
    NondeterministicInput,
    NoRecurrence,
    NotTrimmed,
)
from .fsa import Fsa

PF_TOL = 1e-9
PF_ITERATION_CAP = 100_000
PF_WINDOW = 32


def count_matrix(machine):
    """Transition-multiplicity matrix of a trimmed deterministic machine."""
    if not machine.deterministic:
        raise NondeterministicInput("count_matrix needs a deterministic machine")
    if not machine.is_trim:
        raise NotTrimmed("count_matrix needs a trimmed machine; call trim() first")
    n = machine.n_states
    matrix = np.zeros((n, n), dtype=np.int64)
    for s, _, t in machine.edges:
        matrix[s, t] += 1
    return matrix


def adjacency_matrix(machine):
    """Plain 0/1 adjacency matrix, exposed for comparison with count_matrix."""
    n = machine.n_states
    matrix = np.zeros((n, n), dtype=np.int64)
    for s, _, t in machine.edges:
        matrix[s, t] = 1
    return matrix


def pf_eigenvalue(matrix, tol=PF_TOL, max_iter=PF_ITERATION_CAP, window=PF_WINDOW):
    """Dominant eigenvalue modulus of a nonnegative matrix.

    Deterministic for fixed inputs: the start vector is all ones and no
    randomness is involved.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("pf_eigenvalue needs a square matrix")
    n = m.shape[0]
    if n == 0 or not m.any():
        return 0.0

    # Phase 1: power iteration, estimating the growth factor by the
    # geometric mean of the last ``window`` step ratios.
    vec = np.ones(n)
    ratios = []
    estimate = None
    for _ in range(min(max_iter, 4096)):
        nxt = m @ vec
        total = nxt.sum()
        if total == 0.0:
            return 0.0  # nilpotent: every long product dies
        ratios.append(total / vec.sum())
        vec = nxt / total
        if len(ratios) >= 2 * window:
            recent = ratios[-window:]
            candidate = math.exp(sum(math.log(r) for r in recent) / window)
            if estimate is not None and abs(candidate - estimate) <= tol * max(1.0, candidate):
                spread = max(recent) - min(recent)
                if spread <= 1e-6 * max(1.0, candidate):
                    return candidate
            estimate = candidate

    # Phase 2: spectral radius via repeated squaring (Gelfand's formula on
    # the max-row-sum norm).  Handles periodic and defective matrices.
    b = m.copy()
    log_scale = 0.0
    power = 1
    norm = np.abs(b).sum(axis=1).max()
    if norm == 0.0:
        return 0.0
    log_scale += math.log(norm)
    b /= norm
    previous = None
    for _ in range(80):
        b = b @ b
        power *= 2
        norm = np.abs(b).sum(axis=1).max()
        if norm == 0.0:
            return 0.0
        log_scale = 2.0 * log_scale + math.log(norm)
        b /= norm
        current = math.exp(log_scale / power)
        if previous is not None and abs(current - previous) <= tol * max(1.0, current):
            return current
        previous = current
    raise NoConvergence((previous, current))


@dataclass
class RationalSeries:
    """P(x)/Q(x) with integer coefficients, Q(0) = 1, reproducing counts."""

    numerator: list
    denominator: list

    @property
    def order(self):
        return len(self.denominator) - 1

    def expand(self, n):
        """First n+1 series coefficients, exactly."""
        p, q = self.numerator, self.denominator
        out = []
        for i in range(n + 1):
            value = Fraction(p[i]) if i < len(p) else Fraction(0)
            for j in range(1, min(i, len(q) - 1) + 1):
                value -= q[j] * out[i - j]
            out.append(value / q[0])
        return out

    def __str__(self):
        return f"({_poly_str(self.numerator)}) / ({_poly_str(self.denominator)})"


def _poly_str(coeffs):
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            x = "x" if i == 1 else f"x^{i}"
            if c == 1:
                parts.append(f"+ {x}")
            elif c == -1:
                parts.append(f"- {x}")
            elif c > 0:
                parts.append(f"+ {c}{x}")
            else:
                parts.append(f"- {-c}{x}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else text


def _solve_exact(rows, rhs, n_vars):
    """Particular exact solution of an overdetermined consistent system.

    Gaussian elimination over Fractions; free variables are set to zero.
    Returns None when the system is inconsistent.
    """
    rows = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    cols = n_vars
    pivot_of_col = {}
    row_at = 0
    for col in range(cols):
        pivot = None
        for r in range(row_at, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[row_at], rows[pivot] = rows[pivot], rows[row_at]
        factor = rows[row_at][col]
        rows[row_at] = [v / factor for v in rows[row_at]]
        for r in range(len(rows)):
            if r != row_at and rows[r][col] != 0:
                scale = rows[r][col]
                rows[r] = [v - scale * w for v, w in zip(rows[r], rows[row_at])]
        pivot_of_col[col] = row_at
        row_at += 1
        if row_at == len(rows):
            break
    for r in range(row_at, len(rows)):
        if rows[r][cols] != 0:
            return None
    solution = [Fraction(0)] * cols
    for col, r in pivot_of_col.items():
        solution[col] = rows[r][cols]
    return solution


def rational_series(counts, max_order, holdout=10):
    """Fit the minimal-order rational generating function of ``counts``.

    The last ``holdout`` terms are excluded from fitting and must be
    reproduced exactly for the fit to be accepted.  Raises NoRecurrence when
    no recurrence of order <= max_order works, which signals that the counts
    were not produced by a machine of that size.
    """
    counts = [int(c) for c in counts]
    if len(counts) < holdout + 2:
        raise NoRecurrence("too few terms to fit and hold out")
    fit_end = len(counts) - holdout
    for order in range(0, max_order + 1):
        start = order + 1  # allow numerator degree up to ``order``
        if start >= fit_end and order > 0:
            break
        rows = []
        rhs = []
        for n in range(start, fit_end):
            rows.append([counts[n - i] for i in range(1, order + 1)])
            rhs.append(counts[n])
        if order == 0:
            coeffs = []
            if any(counts[n] != 0 for n in range(start, len(counts))):
                continue
        else:
            coeffs = _solve_exact(rows, rhs, order)
            if coeffs is None:
                continue
        denominator = [Fraction(1)] + [-c for c in coeffs]
        numerator = []
        for j in range(order + 1):
            value = Fraction(counts[j]) if j < len(counts) else Fraction(0)
            for i in range(1, min(j, order) + 1):
                value += denominator[i] * counts[j - i]
            numerator.append(value)
        series = _normalize_series(numerator, denominator)
        if series.expand(len(counts) - 1) == [Fraction(c) for c in counts]:
            return series
    raise NoRecurrence(
        f"no linear recurrence of order <= {max_order} reproduces the counts"
    )


def _normalize_series(numerator, denominator):
    lcm = 1
    for c in numerator + denominator:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    num = [int(c * lcm) for c in numerator]
    den = [int(c * lcm) for c in denominator]
    shared = 0
    for c in num + den:
        shared = math.gcd(shared, abs(c))
    if shared > 1:
        num = [c // shared for c in num]
        den = [c // shared for c in den]
    if den[0] < 0:
        num = [-c for c in num]
        den = [-c for c in den]
    while num and num[-1] == 0:
        num.pop()
    if not num:
        num = [0]
    return RationalSeries(numerator=num, denominator=den)


def extend_with_free_factor(machine, word):
    """Wire a w-labeled return path from every accept state to the start.

    Multi-letter words are subdivided into chains of fresh states so word
    counting stays graded by length; the initial state becomes accepting.
    Models the growth of the span of the represented subgroup and a fresh
    free factor.
    """
    word = tuple(word)
    if not word:
        raise EmptyWord("extension word must be nonempty")
    if not machine.is_trim:
        raise NotTrimmed("extend_with_free_factor needs a trimmed machine")
    edges = list(machine.edges)
    n = machine.n_states
    for s in sorted(machine.accepting):
        prev = s
        for letter in word[:-1]:
            edges.append((prev, letter, n))
            prev = n
            n += 1
        edges.append((prev, word[-1], machine.initial))
    accepting = set(machine.accepting) | {machine.initial}
    return Fsa(machine.alphabet, n, machine.initial, accepting, edges).trim()


@dataclass
class GapVerdict:
    passed: bool
    pf_sub: float
    pf_sup: float
    margin: float

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status}: pf(sub)={self.pf_sub:.9f}, pf(sup)={self.pf_sup:.9f}, "
            f"margin={self.margin}"
        )


def strict_gap_check(sub, sup, margin, tol=PF_TOL):
    """PASS when pf(sub) + margin <= pf(sup); reports both values."""
    if margin <= 0:
        raise ValueError("margin must be positive")
    pf_sub = pf_eigenvalue(count_matrix(sub), tol=tol)
    pf_sup = pf_eigenvalue(count_matrix(sup), tol=tol)
    return GapVerdict(
        passed=pf_sub + margin <= pf_sup,
        pf_sub=pf_sub,
        pf_sup=pf_sup,
        margin=margin,
    )


def subgroup_growth_counts(model, oracle, n):
    """Brute-force cumulative counts |B(e, j) ∩ H| for j = 0..n."""
    lengths = sorted(oracle.elements_within(n).values())
    out = []
    total = 0
    idx = 0
    for j in range(n + 1):
        while idx < len(lengths) and lengths[idx] <= j:
            total += 1
            idx += 1
        out.append(total)
    return out


@dataclass
class GrowthReport:
    counts: list
    spheres: list
    pf: float
    pf_tol: float
    series: RationalSeries | None
    series_note: str
    pruned_states: int

    def summary(self):
        lines = [
            f"pruned states: {self.pruned_states}",
            f"growth rate (dominant eigenvalue): {self.pf:.9f} (tol {self.pf_tol})",
            f"cumulative counts: {self.counts}",
        ]
        if self.series is not None:
            lines.append(f"generating function: {self.series}")
        else:
            lines.append(f"generating function: {self.series_note}")
        return "\n".join(lines)


def growth_report(machine, terms=None, tol=PF_TOL):
    """Counts, eigenvalue, and fitted series of a machine's language."""
    trimmed = machine.determinize().trim()
    if terms is None:
        terms = 2 * trimmed.n_states + 10
    counts, spheres = trimmed.count_words(terms)
    pf = pf_eigenvalue(count_matrix(trimmed), tol=tol)
    try:
        series = rational_series(counts, max_order=trimmed.n_states + 1)
        note = ""
    except NoRecurrence as err:
        series = None
        note = str(err)
    return GrowthReport(
        counts=counts,
        spheres=spheres,
        pf=pf,
        pf_tol=tol,
        series=series,
        series_note=note,
        pruned_states=trimmed.n_states,
    )
