"""Bundled scenarios and the loader that turns an input document into one.

An input document is one of

* an MBQC spec: ``{"n", "m", "state", "obs", "Q"}``;
* observable strings: ``{"strings": [["X","X","X"], ...], "state": {...}?}``
  (filtered by the state when one is given);
* explicit contexts: ``{"contexts": [["+ XI", "+ IX"], ...], "labels": [...]?}``;
* a bare poset: ``{"labels": [...], "cover_edges": [[lower, upper], ...]}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .contexts import Context, ContextPoset, ObservableString, build_context_poset, build_from_contexts, filter_strings
from .errors import DomainError
from .mbqc import MbqcSpec, scenario_poset
from .pauli import PauliOperator
from .poset import FinitePoset, poset_from_json
from .quantum import StateVector, ghz, state_from_json


@dataclass
class Scenario:
    name: str
    spec: MbqcSpec | None = None
    state: StateVector | None = None
    strings: Sequence[ObservableString] | None = None
    tops: Sequence[Context] | None = None
    top_labels: Sequence[str] | None = None
    bare_poset: FinitePoset | None = None

    def context_poset(self) -> ContextPoset:
        if self.spec is not None:
            return scenario_poset(self.spec)[1]
        if self.strings is not None:
            if self.state is not None:
                return build_context_poset(filter_strings(self.strings, self.state))
            return build_context_poset(self.strings)
        if self.tops is not None:
            return build_from_contexts(list(self.tops), self.top_labels)
        raise DomainError(f"scenario {self.name!r} has no contexts, only a bare poset")

    def poset(self) -> FinitePoset:
        if self.bare_poset is not None:
            return self.bare_poset
        return self.context_poset().poset

    def resource(self) -> StateVector | None:
        return self.spec.resource if self.spec is not None else self.state


def ghz_or() -> MbqcSpec:
    """OR gate on a 3-qubit GHZ state: X for setting 0, Y for setting 1,
    settings ``(i1, i2, i1 ^ i2)``."""
    return MbqcSpec(ghz(3), (("X", "Y"),) * 3, ((1, 0), (0, 1), (1, 1)), m=2)


def bell_parity() -> MbqcSpec:
    return MbqcSpec(ghz(2), (("X", "Y"),) * 2, ((1,), (1,)), m=1)


PERES_MERMIN_GRID = (
    ("XI", "IX", "XX"),
    ("IZ", "ZI", "ZZ"),
    ("XZ", "ZX", "YY"),
)


def peres_mermin() -> tuple[list[Context], list[str]]:
    """Rows ``R1..R3`` and columns ``C1..C3`` of the 3x3 two-qubit grid."""
    grid = [[PauliOperator(p) for p in row] for row in PERES_MERMIN_GRID]
    rows = [Context.from_operators(r) for r in grid]
    cols = [Context.from_operators([grid[r][c] for r in range(3)]) for c in range(3)]
    return rows + cols, ["R1", "R2", "R3", "C1", "C2", "C3"]


BUILTIN = ("ghz-or", "peres-mermin", "bell-parity")


def builtin(name: str) -> Scenario:
    if name == "ghz-or":
        return Scenario(name, spec=ghz_or())
    if name == "bell-parity":
        return Scenario(name, spec=bell_parity())
    if name == "peres-mermin":
        tops, labels = peres_mermin()
        return Scenario(name, tops=tops, top_labels=labels)
    raise DomainError(f"unknown scenario {name!r}; choose from {', '.join(BUILTIN)}")


def from_document(doc: Mapping, name: str = "input") -> Scenario:
    if not isinstance(doc, Mapping):
        raise DomainError("input document must be a JSON object")
    if "obs" in doc:
        return Scenario(name, spec=MbqcSpec.from_json(doc))
    state = state_from_json(doc["state"]) if "state" in doc else None
    if "strings" in doc:
        strings = [ObservableString("".join(s)) for s in doc["strings"]]
        return Scenario(name, state=state, strings=strings)
    if "contexts" in doc:
        tops = [Context.from_operators(PauliOperator.parse(g) for g in gens) for gens in doc["contexts"]]
        return Scenario(name, state=state, tops=tops, top_labels=doc.get("labels"))
    if "labels" in doc:
        return Scenario(name, bare_poset=poset_from_json(doc))
    raise DomainError("input must contain one of: obs, strings, contexts, labels")
