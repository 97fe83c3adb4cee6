"""Named end-to-end pipelines with frozen expectations.

Each scenario runs one of the package's flagship constructions on a
built-in model, checks the outcome against independently derived values
(closed forms, brute-force enumeration, eigenvalue brackets), and returns
a report.  The continuous-integration suite runs them all; the CLI exposes
them via ``geolang scenario <name>`` and ``geolang validate``.

Reports contain no timestamps or environment data, so identical inputs
produce byte-identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cones import build_cone_automaton, validate_automaton
from .errors import InconsistentLocality, UnknownScenario
from .filters import filter_from_spec
from .groupfile import load_group
from .groups import enumerate_ball
from .growth import (
    count_matrix,
    extend_with_free_factor,
    pf_eigenvalue,
    rational_series,
    strict_gap_check,
    subgroup_growth_counts,
)
from .pump import morse_element_candidate, periodic_word, pump_decomposition
from .shortlex import equality_recognizer_grown, oracle_pair_counts, unique_rep_language
from .subgroups import (
    stable_language_escalating,
    subgroup_word_automaton,
    unique_rep_subgroup_language,
)
from .words import parse_word

# Shipped (group, filter, locality) triples; every one must agree with
# brute-force enumeration to the oracle depth and build without any
# signature inconsistency at the listed m.
SHIPPED_TRIPLES = (
    ("builtin:f2", "trivial", 1),
    ("builtin:z2", "trivial", 1),
    ("builtin:z2", "trivial", 2),
    ("builtin:z2xz", "trivial", 2),
    ("builtin:z2xz-fp", "trivial", 2),
    ("builtin:z2xz", "syllable:1", 2),
    ("builtin:z2", "commuting-block:2", 2),
    ("builtin:z2-direct", "trivial", 2),
    ("builtin:c6", "trivial", 2),
    ("builtin:d-infinity", "trivial", 1),
    ("builtin:p3-raag", "trivial", 2),
)

ORACLE_DEPTH = 8


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ScenarioReport:
    name: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, name, condition, detail=""):
        self.checks.append(Check(name=name, passed=bool(condition), detail=str(detail)))
        return bool(condition)

    def to_dict(self):
        return {
            "scenario": self.name,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "data": self.data,
        }

    def to_text(self):
        lines = [f"scenario {self.name}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            status = "ok " if c.passed else "FAIL"
            line = f"  [{status}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            lines.append(line)
        return "\n".join(lines)


def _round(x):
    return round(float(x), 9)


def scenario_f2_baseline():
    report = ScenarioReport("f2-baseline")
    model = load_group("builtin:f2").model
    auto = build_cone_automaton(model, m=1)
    trimmed = auto.fsa.trim()
    report.check("5 trimmed states", trimmed.n_states == 5, f"got {trimmed.n_states}")
    pf = pf_eigenvalue(count_matrix(trimmed))
    report.check("growth rate 3.0", abs(pf - 3.0) <= 1e-9, f"pf={pf!r}")
    counts, spheres = trimmed.count_words(12)
    expected_spheres = [1] + [4 * 3 ** (n - 1) for n in range(1, 13)]
    report.check(
        "sphere counts 4*3^(n-1)",
        spheres == expected_spheres,
        f"machine {spheres[:6]}... vs closed form",
    )
    fit_counts, _ = trimmed.count_words(2 * trimmed.n_states + 10)
    series = rational_series(fit_counts, max_order=trimmed.n_states)
    report.check(
        "cumulative series (1+x)/((1-3x)(1-x))",
        series.numerator == [1, 1] and series.denominator == [1, -4, 3],
        str(series),
    )
    report.data.update(
        {
            "states": trimmed.n_states,
            "pf": _round(pf),
            "spheres": spheres,
            "series": {"numerator": series.numerator, "denominator": series.denominator},
        }
    )
    return report


def scenario_z2_shortlex():
    report = ScenarioReport("z2-shortlex")
    spec = load_group("builtin:z2")
    model = spec.model
    auto = build_cone_automaton(model, m=1)
    report.check("9 trimmed states", auto.fsa.trim().n_states == 9, f"got {auto.fsa.trim().n_states}")
    details = {}
    J = unique_rep_language(model, m=1, validate_depth=6, details=details)
    counts, _ = J.count_words(10)
    closed_form = [2 * n * n + 2 * n + 1 for n in range(11)]
    report.check("shortlex counts 2n^2+2n+1", counts == closed_form, f"{counts}")
    ball = enumerate_ball(model, 10)
    report.check(
        "counts equal ball sizes", counts == ball.cumulative_sizes(), "oracle BFS ball"
    )
    pf = pf_eigenvalue(count_matrix(J))
    report.check("polynomial growth rate 1.0", abs(pf - 1.0) <= 1e-6, f"pf={pf!r}")
    report.data.update(
        {
            "cone_states": auto.fsa.trim().n_states,
            "shortlex_states": J.n_states,
            "counts": counts,
            "pf": _round(pf),
            "r": details.get("r"),
        }
    )
    return report


def scenario_z2_equality():
    report = ScenarioReport("z2-equality")
    model = load_group("builtin:z2").model
    auto = build_cone_automaton(model, m=1)
    details = {}
    Q = equality_recognizer_grown(auto.fsa, model, r=4, validate_depth=6, details=details)
    _, spheres = Q.count_words(6)
    report.check("pair count 20 at length 2", spheres[2] == 20, f"got {spheres[2]}")
    report.check("pair count 76 at length 3", spheres[3] == 76, f"got {spheres[3]}")
    oracle = oracle_pair_counts(model, 6)
    report.check(
        "machine pair counts match brute force to length 6",
        spheres == oracle,
        f"machine {spheres} oracle {oracle}",
    )
    report.data.update({"pair_spheres": spheres, "r": details.get("r")})
    return report


def scenario_z2xz_nonregular_witness():
    report = ScenarioReport("z2xz-nonregular-witness")
    spec = load_group("builtin:z2xz")
    model = spec.model
    oracle = spec.subgroup("ab-diagonal")
    witnesses = {}
    for k in range(5):
        machine = subgroup_word_automaton(model, oracle, k)
        word = parse_word(f"a^{k + 2}b^{k + 2}", model.alphabet)
        is_witness = (
            model.is_geodesic(word)
            and oracle.contains(model.normal_form(word))
            and not machine.accepts(word)
        )
        report.check(
            f"k={k}: machine rejects a^{k + 2}b^{k + 2} although it lies in the subgroup language",
            is_witness,
        )
        witnesses[k] = "".join(word)
    escalation = stable_language_escalating(model, oracle, m=2, k_cap=4)
    report.check(
        "escalation reports inconclusive/cap-hit",
        escalation.outcome == "inconclusive/cap-hit",
        escalation.outcome,
    )
    report.data.update({"witnesses": witnesses, "escalation": escalation.outcome})
    return report


def scenario_f2_growth_gap():
    report = ScenarioReport("f2-growth-gap")
    spec = load_group("builtin:f2")
    model = spec.model
    axis = spec.subgroup("a-axis")
    J = unique_rep_subgroup_language(model, axis, k=0, m=1)
    pf_sub = pf_eigenvalue(count_matrix(J))
    report.check("axis language growth 1.0", abs(pf_sub - 1.0) <= 1e-6, f"pf={pf_sub!r}")
    extended = extend_with_free_factor(J, parse_word("b", model.alphabet))
    extended_det = extended.determinize().trim()
    pf_ext = pf_eigenvalue(count_matrix(extended_det))
    report.check("extension growth within [1.1, 3.0]", 1.1 <= pf_ext <= 3.0, f"pf={pf_ext!r}")
    verdict = strict_gap_check(J, extended_det, margin=0.1)
    report.check("strict gap at margin 0.1", verdict.passed, verdict.summary())
    full = build_cone_automaton(model, m=1).fsa
    pf_full = pf_eigenvalue(count_matrix(full))
    report.check(
        "extension bounded by the full geodesic machine",
        pf_ext <= pf_full + 1e-9,
        f"{pf_ext!r} <= {pf_full!r}",
    )
    report.data.update(
        {"pf_chain": [_round(pf_sub), _round(pf_ext), _round(pf_full)]}
    )
    return report


def scenario_f2_finite_index_growth():
    report = ScenarioReport("f2-finite-index-growth")
    spec = load_group("builtin:f2")
    model = spec.model
    H = spec.subgroup("a-axis")
    H2 = spec.subgroup("a-squared")
    counts_h = subgroup_growth_counts(model, H, 32)
    counts_h2 = subgroup_growth_counts(model, H2, 32)
    sandwich = all(
        counts_h2[n] <= counts_h[n] <= 2 * counts_h2[n + 2] for n in range(31)
    )
    report.check("finite-index count sandwich up to n=30", sandwich)
    J_h = unique_rep_subgroup_language(model, H, k=0, m=1)
    J_h2 = unique_rep_subgroup_language(model, H2, k=1, m=1)
    expected_h2 = [2 * (n // 2) + 1 for n in range(9)]
    report.check(
        "index-2 subgroup counts 2*floor(n/2)+1",
        J_h2.count_words(8)[0] == expected_h2,
        f"{J_h2.count_words(8)[0]}",
    )
    pf_h = pf_eigenvalue(count_matrix(J_h))
    pf_h2 = pf_eigenvalue(count_matrix(J_h2))
    report.check(
        "both machine growth rates equal 1.0",
        abs(pf_h - 1.0) <= 1e-6 and abs(pf_h2 - 1.0) <= 1e-6,
        f"{pf_h!r}, {pf_h2!r}",
    )
    report.data.update({"pf": [_round(pf_h), _round(pf_h2)]})
    return report


def scenario_oracle_suite(depth=ORACLE_DEPTH):
    report = ScenarioReport("oracle-suite")
    for group, filter_spec, m in SHIPPED_TRIPLES:
        model = load_group(group).model
        window_filter = filter_from_spec(model, filter_spec)
        label = f"{group.split(':')[1]}/{filter_spec}/m={m}"
        try:
            auto = build_cone_automaton(model, m, window_filter, auto_escalate=False)
        except InconsistentLocality as err:
            report.check(f"{label}: build", False, str(err))
            continue
        validation = validate_automaton(auto, depth)
        report.check(
            f"{label}: machine equals oracle to depth {depth}",
            validation.ok,
            f"{auto.n_states} states; " + validation.summary(),
        )
        report.data[label] = {"states": auto.n_states, "compared": validation.compared}
    return report


def scenario_series_fidelity():
    report = ScenarioReport("series-fidelity")
    machines = []
    for group, filter_spec, m in SHIPPED_TRIPLES:
        model = load_group(group).model
        window_filter = filter_from_spec(model, filter_spec)
        auto = build_cone_automaton(model, m, window_filter, auto_escalate=False)
        machines.append((f"{group.split(':')[1]}/{filter_spec}/m={m}", auto.fsa.trim()))
    f2 = load_group("builtin:f2")
    machines.append(
        ("f2/J<a-axis>", unique_rep_subgroup_language(f2.model, f2.subgroup("a-axis"), k=0, m=1))
    )
    z2_model = load_group("builtin:z2").model
    machines.append(("z2/shortlex", unique_rep_language(z2_model, m=1)))
    for label, machine in machines:
        states = machine.n_states
        counts, _ = machine.count_words(2 * states + 10)
        try:
            series = rational_series(counts, max_order=states, holdout=10)
            ok, detail = True, f"order {series.order}: {series}"
        except Exception as err:  # NoRecurrence or arithmetic trouble
            ok, detail = False, str(err)
        report.check(f"{label}: recurrence of order <= {states} reproduces all terms", ok, detail)
        if ok:
            report.data[label] = {
                "states": states,
                "order": series.order,
                "numerator": series.numerator,
                "denominator": series.denominator,
            }
    return report


def scenario_f2_pumping():
    report = ScenarioReport("f2-pumping")
    model = load_group("builtin:f2").model
    auto = build_cone_automaton(model, m=1)
    prefix = parse_word("(ab)^5", model.alphabet)
    d = pump_decomposition(auto, prefix, i=1)
    report.check(
        "decomposition splits at the earliest repeated state",
        d.u == ("a",) and d.v == ("b", "a") and len(d.u) >= 1,
        str(d),
    )
    pumped_ok = True
    geodesic_ok = True
    for n in range(51):
        word = periodic_word(d, n)
        if not auto.accepts(word):
            pumped_ok = False
        if not model.is_geodesic(word):
            geodesic_ok = False
    report.check("u v^n accepted for all n <= 50", pumped_ok)
    report.check("u v^n geodesic for all n <= 50", geodesic_ok)
    g = morse_element_candidate(model, d)
    report.check("candidate element is ab", g == ("a", "b"), "".join(g))
    growth_ok = all(
        model.geodesic_length(d.u + d.v * n + model.inverse_word(d.u))
        >= n * len(d.v) - 2 * len(d.u)
        for n in range(1, 51)
    )
    report.check("|g^n| >= n*len(v) - 2*len(u) for n <= 50", growth_ok)
    report.data.update({"u": "".join(d.u), "v": "".join(d.v), "candidate": "".join(g)})
    return report


def scenario_c6_locality_escalation():
    report = ScenarioReport("c6-locality-escalation")
    model = load_group("builtin:c6").model
    try:
        build_cone_automaton(model, m=1, auto_escalate=False)
        report.check("m=1 raises InconsistentLocality", False, "build unexpectedly succeeded")
    except InconsistentLocality as err:
        report.check(
            "m=1 raises InconsistentLocality with witnesses",
            bool(err.witness_u is not None and err.letter),
            str(err),
        )
    auto = build_cone_automaton(model, m=1, auto_escalate=True)
    report.check("auto-escalation lands on a working m", auto.m == 2, f"m={auto.m}")
    validation = validate_automaton(auto, 6)
    report.check("escalated machine matches oracle", validation.ok, validation.summary())
    report.data.update({"escalated_m": auto.m, "states": auto.n_states})
    return report


SCENARIOS = {
    "f2-baseline": scenario_f2_baseline,
    "z2-shortlex": scenario_z2_shortlex,
    "z2-equality": scenario_z2_equality,
    "z2xz-nonregular-witness": scenario_z2xz_nonregular_witness,
    "f2-growth-gap": scenario_f2_growth_gap,
    "f2-finite-index-growth": scenario_f2_finite_index_growth,
    "oracle-suite": scenario_oracle_suite,
    "series-fidelity": scenario_series_fidelity,
    "f2-pumping": scenario_f2_pumping,
    "c6-locality-escalation": scenario_c6_locality_escalation,
}


def run_scenario(name):
    try:
        fn = SCENARIOS[name]
    except KeyError:
        raise UnknownScenario(
            f"unknown scenario {name!r}; available: {sorted(SCENARIOS)}"
        ) from None
    return fn()


def validate_all(names=None, oracle_depth=None):
    """Run every registered scenario and aggregate the reports."""
    reports = []
    for name in names or sorted(SCENARIOS):
        if name == "oracle-suite" and oracle_depth is not None:
            reports.append(scenario_oracle_suite(depth=oracle_depth))
        else:
            reports.append(run_scenario(name))
    return reports
