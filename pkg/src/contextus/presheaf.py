"""Characters over contexts, the spectral presheaf and pseudostate, and the
global-section search that decides contextuality."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterator, Mapping, Sequence

from .contexts import Context, ContextPoset, is_subcontext
from .errors import DomainError
from .pauli import PauliOperator
from .quantum import StateVector, joint_weight

WEIGHT_TOL = 1e-9


@dataclass(frozen=True)
class Character:
    """Sign assignment to a context's generators, extended multiplicatively.

    ``value(g)`` is the induced eigenvalue of any Hermitian element of the
    group: if the generators multiply to ``eps * g`` then the value is
    ``eps`` times the product of their signs.
    """

    context: Context
    signs: tuple[int, ...]

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if len(signs) != self.context.rank:
            raise DomainError(f"{self.context.label} needs {self.context.rank} signs, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise DomainError("character values on generators must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def from_pattern(cls, context: Context, pattern: str) -> Character:
        return cls(context, tuple(1 if c == "+" else -1 for c in pattern.replace("−", "-")))

    @property
    def pattern(self) -> str:
        return "".join("+" if s > 0 else "-" for s in self.signs)

    def value(self, p: PauliOperator) -> int:
        idx, eps = self.context.decompose(p)
        v = eps
        for k in idx:
            v *= self.signs[k]
        return v

    def __str__(self) -> str:
        return f"{self.context.label}[{self.pattern}]"


def characters(v: Context) -> list[Character]:
    """All ``2**rank`` characters, ``+`` before ``-`` lexicographically."""
    return [Character(v, signs) for signs in cartesian((1, -1), repeat=v.rank)]


def restrict(c: Character, u: Context) -> Character:
    if not is_subcontext(u, c.context):
        raise DomainError(f"{u.label} is not a subcontext of {c.context.label}")
    return Character(u, tuple(c.value(g) for g in u.generators))


def pseudostate_sections(state: StateVector, v: Context) -> list[Character]:
    """Characters whose joint eigenspace carries positive weight in ``state``."""
    return [c for c in characters(v) if joint_weight(state, v.generators, c.signs) > WEIGHT_TOL]


def spectral_presheaf(cp: ContextPoset) -> dict[str, list[Character]]:
    return {label: characters(ctx) for label, ctx in cp.contexts.items()}


def pseudostate(state: StateVector, cp: ContextPoset) -> dict[str, list[Character]]:
    return {label: pseudostate_sections(state, ctx) for label, ctx in cp.contexts.items()}


@dataclass(frozen=True)
class GlobalSection:
    """One character per poset node, in node order."""

    assignment: tuple[tuple[str, Character], ...]

    def __getitem__(self, label: str) -> Character:
        for l, c in self.assignment:
            if l == label:
                return c
        raise KeyError(label)

    def as_dict(self) -> dict[str, Character]:
        return dict(self.assignment)

    def patterns(self) -> dict[str, str]:
        return {l: c.pattern for l, c in self.assignment}


def is_compatible(cp: ContextPoset, section: GlobalSection) -> bool:
    """Check ``restrict(s[V], U) == s[U]`` for every comparable pair."""
    p = cp.poset
    chosen = section.as_dict()
    for j in range(len(p)):
        for i in range(len(p)):
            if p.lt(i, j):
                u, v = p.labels[i], p.labels[j]
                if restrict(chosen[v], cp.contexts[u]) != chosen[u]:
                    return False
    return True


def iter_global_sections(cp: ContextPoset, local: Mapping[str, Sequence[Character]]) -> Iterator[GlobalSection]:
    """Backtrack over maximal nodes in node order, trying their allowed
    characters in order; every lower node is filled by restriction and
    checked against its allowed set and earlier fillings immediately.
    """
    p = cp.poset
    labels = p.labels
    allowed = {l: set(local.get(l, ())) for l in labels}
    tops = p.maximal()
    below = {j: [i for i in range(len(p)) if p.lt(i, j)] for j in tops}
    # per top, per allowed character: its restrictions, or None if one is disallowed
    options: dict[int, list[tuple[Character, dict[int, Character]]]] = {}
    for j in tops:
        opts = []
        for c in local.get(labels[j], ()):
            if c.context != cp.contexts[labels[j]]:
                raise DomainError(f"character {c} does not live over {labels[j]}")
            rs = {i: restrict(c, cp.contexts[labels[i]]) for i in below[j]}
            if all(r in allowed[labels[i]] for i, r in rs.items()):
                opts.append((c, rs))
        options[j] = opts

    assigned: dict[int, Character] = {}

    def search(pos: int) -> Iterator[GlobalSection]:
        if pos == len(tops):
            yield GlobalSection(tuple((labels[k], assigned[k]) for k in range(len(p))))
            return
        j = tops[pos]
        for c, rs in options[j]:
            added = []
            ok = True
            for i, r in rs.items():
                prev = assigned.get(i)
                if prev is None:
                    assigned[i] = r
                    added.append(i)
                elif prev != r:
                    ok = False
                    break
            if ok:
                assigned[j] = c
                yield from search(pos + 1)
                del assigned[j]
            for i in added:
                del assigned[i]

    yield from search(0)


def global_sections(
    cp: ContextPoset, local: Mapping[str, Sequence[Character]], limit: int | None = None
) -> list[GlobalSection]:
    out = []
    for s in iter_global_sections(cp, local):
        out.append(s)
        if limit is not None and len(out) >= limit:
            break
    return out


def count_global_sections(cp: ContextPoset, local: Mapping[str, Sequence[Character]]) -> int:
    return sum(1 for _ in iter_global_sections(cp, local))


def is_contextual(cp: ContextPoset, local: Mapping[str, Sequence[Character]] | None = None) -> bool:
    """No global section of ``local`` (the full spectral presheaf by default)."""
    if local is None:
        local = spectral_presheaf(cp)
    return not global_sections(cp, local, limit=1)


def is_state_dependent_contextual(state: StateVector, cp: ContextPoset) -> bool:
    return is_contextual(cp, pseudostate(state, cp))


SECTION_DUMP_LIMIT = 1000


def verdict(cp: ContextPoset, local: Mapping[str, Sequence[Character]], dump: bool = False) -> dict:
    sections = list(iter_global_sections(cp, local))
    out = {
        "contextual": not sections,
        "sections_count": len(sections),
        "witness": sections[0].patterns() if sections else None,
    }
    if dump:
        out["sections"] = [s.patterns() for s in sections[:SECTION_DUMP_LIMIT]]
        out["sections_truncated"] = len(sections) > SECTION_DUMP_LIMIT
    return out
