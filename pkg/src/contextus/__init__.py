"""Context posets of Pauli observables, global-section contextuality checks,
and the non-Booleanness of the down-set Heyting algebra, applied to
temporally flat l2-MBQC."""

__version__ = "0.1.0"

from .contexts import Context, ContextPoset, ObservableString, build_context_poset, filter_strings, is_subcontext
from .heyting import DownSetAlgebra, complemented_elements, non_booleanness
from .mbqc import MbqcSpec, PlanStep, consumption_trace, contextuality_link, function_table, is_linear, run_sampled
from .pauli import PauliOperator, as_matrix, commutes, multiply
from .poset import DownSet, FinitePoset, connected_components, enumerate_downsets, hasse_edges, is_antichain
from .presheaf import (
    Character,
    GlobalSection,
    characters,
    count_global_sections,
    global_sections,
    is_contextual,
    is_state_dependent_contextual,
    pseudostate,
    pseudostate_sections,
    restrict,
    spectral_presheaf,
)
from .quantum import StateVector, eigensign, ghz, joint_weight, measure_update
from .scenarios import builtin, from_document
