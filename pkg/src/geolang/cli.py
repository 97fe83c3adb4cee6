"""Command-line interface.

Commands mirror the library pipelines: build-cone, shortlex, sublang,
growth, gap, pump, scenario, validate, export.  Groups are given as JSON
files or builtin:<name> tags; machines are exchanged as JSON and can be
exported to DOT for visualization.

\b
Exit codes:
    0   success
    1   unexpected internal error
    2   usage error (bad flags or arguments)
    3   unknown scenario
    4   enumeration budget exceeded
    5   inconsistent locality (m too small, escalation exhausted)
    6   fellow-travel bound did not stabilize
    7   an expectation or oracle validation failed
    8   unknown symbol or unparsable word
    9   eigenvalue iteration did not converge
    10  no recurrence of the allowed order fits the counts
    11  alphabet mismatch between machines
    12  bad group description file

Budgets may be overridden with the environment variables
GEOLANG_ELEMENT_BUDGET and GEOLANG_WORD_BUDGET.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import click

from . import errors as E
from .cones import build_cone_automaton, validate_automaton
from .filters import filter_from_spec
from .fsa import Fsa
from .groupfile import BUILTIN_NAMES, load_group
from .growth import growth_report, strict_gap_check
from .pump import morse_element_candidate, periodic_word, pump_decomposition
from .scenarios import SCENARIOS, run_scenario, validate_all
from .shortlex import unique_rep_language
from .subgroups import stable_language_escalating
from .words import format_word, parse_word

EXIT_CODES = {
    E.UnknownScenario: 3,
    E.BudgetExceeded: 4,
    E.InconsistentLocality: 5,
    E.BoundTooSmall: 6,
    E.UnknownSymbol: 8,
    E.NoConvergence: 9,
    E.NoRecurrence: 10,
    E.AlphabetMismatch: 11,
    E.GroupFileError: 12,
}
EXIT_VALIDATION_FAILED = 7


def _exit_code(err):
    for klass, code in EXIT_CODES.items():
        if isinstance(err, klass):
            return code
    return 1


@dataclass
class RunConfig:
    """Bundle of knobs shared by the pipeline commands."""

    group: str = "builtin:f2"
    filter_spec: str = "trivial"
    m: int = 1
    k: int = 0
    order: tuple = ()
    validate_depth: int = 6
    count_depth: int = 10
    element_budget: int = int(os.environ.get("GEOLANG_ELEMENT_BUDGET", 2_000_000))
    word_budget: int = int(os.environ.get("GEOLANG_WORD_BUDGET", 2_000_000))
    escalation_cap: int = 4
    outputs: dict = field(default_factory=dict)


def _load(group):
    return load_group(group)


def _write_machine(machine, path, dot_path=None):
    if path:
        Path(path).write_text(machine.to_json(indent=2) + "\n")
        click.echo(f"wrote {path}")
    if dot_path:
        Path(dot_path).write_text(machine.to_dot() + "\n")
        click.echo(f"wrote {dot_path}")


def _emit_report(report, out_dir):
    if out_dir:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{report.name}.json").write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n"
        )
        (out / f"{report.name}.txt").write_text(report.to_text() + "\n")


class _Cli(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except E.GeolangError as err:
            click.echo(f"error: {err}", err=True)
            sys.exit(_exit_code(err))


@click.group(cls=_Cli, help=__doc__)
def main():
    pass


@main.command("build-cone")
@click.option("--group", required=True, help=f"group file or builtin:<{'|'.join(BUILTIN_NAMES)}>")
@click.option("--filter", "filter_spec", default="trivial", show_default=True)
@click.option("--m", type=int, default=1, show_default=True, help="locality parameter")
@click.option("--auto-escalate/--no-auto-escalate", default=True, show_default=True)
@click.option("--depth-budget", type=int, default=64, show_default=True)
@click.option("--validate", "validate_depth", type=int, default=6, show_default=True,
              help="oracle cross-check depth (0 skips)")
@click.option("--export", "export_path", type=click.Path(), default=None)
@click.option("--export-dot", "dot_path", type=click.Path(), default=None)
def build_cone_cmd(group, filter_spec, m, auto_escalate, depth_budget, validate_depth,
                   export_path, dot_path):
    """Build the cone-type automaton of the filtered geodesic language."""
    spec = _load(group)
    window_filter = filter_from_spec(spec.model, filter_spec)
    auto = build_cone_automaton(
        spec.model, m, window_filter,
        depth_budget=depth_budget, auto_escalate=auto_escalate,
    )
    click.echo(f"group {spec.name}, filter {window_filter.cache_key}, m={auto.m}")
    click.echo(f"states: {auto.n_states} (all accepting, deterministic)")
    if validate_depth:
        report = validate_automaton(auto, validate_depth)
        click.echo(report.summary())
        if not report.ok:
            _write_machine(auto.fsa, export_path, dot_path)
            sys.exit(EXIT_VALIDATION_FAILED)
    _write_machine(auto.fsa, export_path, dot_path)


@main.command("shortlex")
@click.option("--group", required=True)
@click.option("--filter", "filter_spec", default="trivial", show_default=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--order", default=None, help="symbol order, e.g. 'a A b B'")
@click.option("--r", type=int, default=4, show_default=True, help="initial fellow-travel bound")
@click.option("--validate", "validate_depth", type=int, default=6, show_default=True)
@click.option("--terms", type=int, default=10, show_default=True)
@click.option("--export", "export_path", type=click.Path(), default=None)
@click.option("--export-dot", "dot_path", type=click.Path(), default=None)
def shortlex_cmd(group, filter_spec, m, order, r, validate_depth, terms, export_path, dot_path):
    """Build the shortlex unique-representative language."""
    spec = _load(group)
    window_filter = filter_from_spec(spec.model, filter_spec)
    symbol_order = tuple(order.split()) if order else None
    details = {}
    J = unique_rep_language(
        spec.model, window_filter, m,
        order=symbol_order, r=r, validate_depth=validate_depth, details=details,
    )
    counts, spheres = J.count_words(terms)
    click.echo(
        f"shortlex language: {J.n_states} states "
        f"(m={details.get('m')}, r={details.get('r')})"
    )
    click.echo(f"cumulative counts: {counts}")
    click.echo(f"sphere counts:     {spheres}")
    _write_machine(J, export_path, dot_path)


@main.command("sublang")
@click.option("--group", required=True)
@click.option("--subgroup", "subgroup_name", required=True)
@click.option("--filter", "filter_spec", default="trivial", show_default=True)
@click.option("--m", type=int, default=1, show_default=True)
@click.option("--k", type=int, default=0, show_default=True, help="starting neighborhood radius")
@click.option("--escalate/--no-escalate", default=True, show_default=True)
@click.option("--k-cap", type=int, default=4, show_default=True)
@click.option("--depth", type=int, default=8, show_default=True)
@click.option("--export", "export_path", type=click.Path(), default=None)
def sublang_cmd(group, subgroup_name, filter_spec, m, k, escalate, k_cap, depth, export_path):
    """Build the geodesic subgroup language, escalating k until it matches."""
    spec = _load(group)
    oracle = spec.subgroup(subgroup_name)
    window_filter = filter_from_spec(spec.model, filter_spec)
    report = stable_language_escalating(
        spec.model, oracle, window_filter, m,
        k_start=k, k_cap=k_cap if escalate else k, base_depth=depth,
    )
    click.echo(f"subgroup {oracle.description} in {spec.name}")
    click.echo(report.summary())
    if report.machine is not None and export_path:
        _write_machine(report.machine, export_path)
    if not report.matched:
        sys.exit(EXIT_VALIDATION_FAILED)


@main.command("growth")
@click.option("--automaton", "machine_path", required=True, type=click.Path(exists=True))
@click.option("--series/--no-series", default=True, show_default=True)
@click.option("--pf/--no-pf", "want_pf", default=True, show_default=True)
@click.option("--terms", type=int, default=None, help="number of count terms")
def growth_cmd(machine_path, series, want_pf, terms):
    """Counts, growth rate, and rational series of a machine's language."""
    machine = Fsa.from_json(Path(machine_path).read_text())
    report = growth_report(machine, terms=terms)
    click.echo(f"pruned states: {report.pruned_states}")
    click.echo(f"cumulative counts: {report.counts}")
    click.echo(f"sphere counts:     {report.spheres}")
    if want_pf:
        click.echo(f"growth rate: {report.pf:.9f}")
    if series:
        if report.series is not None:
            click.echo(f"generating function: {report.series}")
        else:
            click.echo(f"generating function: {report.series_note}")


@main.command("gap")
@click.option("--sub", "sub_path", required=True, type=click.Path(exists=True))
@click.option("--sup", "sup_path", required=True, type=click.Path(exists=True))
@click.option("--margin", type=float, default=0.1, show_default=True)
def gap_cmd(sub_path, sup_path, margin):
    """Strict growth-gap check between two machines."""
    sub = Fsa.from_json(Path(sub_path).read_text()).determinize().trim()
    sup = Fsa.from_json(Path(sup_path).read_text()).determinize().trim()
    verdict = strict_gap_check(sub, sup, margin)
    click.echo(verdict.summary())
    if not verdict.passed:
        sys.exit(EXIT_VALIDATION_FAILED)


@main.command("pump")
@click.option("--automaton", "machine_path", required=True, type=click.Path(exists=True))
@click.option("--group", default=None, help="group for geodesity and candidate checks")
@click.option("--prefix", required=True, help="accepted prefix, e.g. '(ab)^5'")
@click.option("--i", "offset", type=int, default=1, show_default=True)
@click.option("--n", "reps", type=int, default=3, show_default=True)
def pump_cmd(machine_path, group, prefix, offset, reps):
    """Pump a long accepted prefix into a periodic family."""
    machine = Fsa.from_json(Path(machine_path).read_text())
    word = parse_word(prefix)
    d = pump_decomposition(machine, word, offset)
    click.echo(str(d))
    pumped = periodic_word(d, reps)
    click.echo(f"u v^{reps} = {format_word(pumped)} (accepted)")
    if group:
        spec = _load(group)
        candidate = morse_element_candidate(spec.model, d)
        click.echo(f"candidate element u v u^-1 = {format_word(candidate)}")
        click.echo(f"geodesic: {spec.model.is_geodesic(pumped)}")


@main.command("scenario")
@click.argument("name")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="directory for report.json / report.txt")
def scenario_cmd(name, out_dir):
    """Run a named end-to-end scenario with frozen expectations."""
    report = run_scenario(name)
    click.echo(report.to_text())
    _emit_report(report, out_dir)
    if not report.passed:
        sys.exit(EXIT_VALIDATION_FAILED)


@main.command("validate")
@click.option("--depth", type=int, default=None,
              help="override the oracle-suite depth (quicker dev runs)")
@click.option("--out", "out_dir", type=click.Path(), default=None)
@click.option("--only", multiple=True, help="run only these scenarios")
def validate_cmd(depth, out_dir, only):
    """Run every scenario and report an aggregate verdict."""
    config = RunConfig(validate_depth=depth or 6, outputs={"dir": out_dir})
    if config.validate_depth > config.word_budget:
        raise click.UsageError("validation depth exceeds the word budget")
    names = list(only) if only else None
    reports = validate_all(names=names, oracle_depth=depth)
    failed = [r for r in reports if not r.passed]
    for report in reports:
        click.echo(report.to_text())
        _emit_report(report, out_dir)
    click.echo(f"{len(reports) - len(failed)}/{len(reports)} scenarios passed")
    if failed:
        sys.exit(EXIT_VALIDATION_FAILED)


@main.command("export")
@click.option("--automaton", "machine_path", required=True, type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["dot", "json"]), default="dot",
              show_default=True)
@click.option("--out", "out_path", type=click.Path(), default=None)
def export_cmd(machine_path, fmt, out_path):
    """Re-emit a machine as DOT or normalized JSON."""
    machine = Fsa.from_json(Path(machine_path).read_text())
    text = machine.to_dot() if fmt == "dot" else machine.to_json(indent=2)
    if out_path:
        Path(out_path).write_text(text + "\n")
        click.echo(f"wrote {out_path}")
    else:
        click.echo(text)


@main.command("scenarios")
def scenarios_cmd():
    """List the available scenario names."""
    for name in sorted(SCENARIOS):
        click.echo(name)


if __name__ == "__main__":
    main()
