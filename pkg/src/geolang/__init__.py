"""Regular languages of geodesic words in finitely generated groups.

Build cone-type automata for (filtered) geodesic languages, refine them to
shortlex unique-representative languages, carve out subgroup languages,
compute exact growth series and dominant growth rates, certify strict
growth gaps, and pump periodic directions; everything is cross-checked
against brute-force enumeration over Cayley-graph balls.
"""

from .cones import (
    ConeAutomaton,
    ConeSignature,
    brute_force_fellow_traveling,
    build_cone_automaton,
    restricted_cone,
    signature,
    tail,
    validate_automaton,
)
from .filters import (
    CommutingBlockFilter,
    SyllableBoundFilter,
    TrivialFilter,
    WindowFilter,
    filter_from_spec,
)
from .fsa import Fsa, pair_alphabet, project_first
from .groupfile import BUILTIN_NAMES, GroupSpec, builtin_model, load_group
from .groups import (
    Ball,
    DirectProduct,
    FiniteGroup,
    FreeAbelianGroup,
    FreeGroup,
    FreeProduct,
    GroupModel,
    Raag,
    cyclic_group,
    enumerate_ball,
    enumerate_geodesic_words,
    geodesic_words_to,
)
from .growth import (
    GrowthReport,
    RationalSeries,
    adjacency_matrix,
    count_matrix,
    extend_with_free_factor,
    growth_report,
    pf_eigenvalue,
    rational_series,
    strict_gap_check,
    subgroup_growth_counts,
)
from .pump import PumpDecomposition, morse_element_candidate, periodic_word, pump_decomposition
from .scenarios import SCENARIOS, run_scenario, validate_all
from .shortlex import (
    equality_recognizer,
    equality_recognizer_grown,
    lex_least,
    unique_rep_language,
)
from .subgroups import (
    CyclicSubgroup,
    FactorSubgroup,
    GeneratedSubgroup,
    SubgroupOracle,
    neighborhood_automaton,
    oracle_subgroup_words,
    regularity_neighborhood_bound,
    stable_language,
    stable_language_escalating,
    subgroup_word_automaton,
    trivial_subgroup,
    unique_rep_subgroup_language,
    whole_group,
)
from .words import Alphabet, format_word, parse_word, symmetric_alphabet

__version__ = "0.1.0"
