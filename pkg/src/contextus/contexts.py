"""Contexts (commuting Pauli generator sets) and the context poset built from
observable strings.

A context stands for the Abelian algebra its generators generate. Two
contexts are the same node when their generated groups agree modulo sign,
so all set operations happen on GF(2) spans of symplectic vectors: a Pauli
on ``n`` qubits maps to the ``2n``-bit integer ``(x << n) | z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DimensionError, DomainError
from .pauli import PauliOperator, commutes, product
from .poset import FinitePoset
from .quantum import StateVector, eigensign


def _vec(p: PauliOperator) -> int:
    x, z = p.symplectic()
    return (x << p.n) | z


def _pauli(n: int, v: int) -> PauliOperator:
    return PauliOperator.from_symplectic(n, v >> n, v & ((1 << n) - 1))


class _Span:
    """XOR basis keyed by pivot (highest set bit), tracking which inserted
    vectors each row combines."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}

    def reduce(self, v: int) -> tuple[int, int]:
        combo = 0
        for pivot in sorted(self.rows, reverse=True):
            if v >> pivot & 1:
                rv, rc = self.rows[pivot]
                v ^= rv
                combo ^= rc
        return v, combo

    def add(self, v: int, tag: int = 0) -> bool:
        r, c = self.reduce(v)
        if r == 0:
            return False
        self.rows[r.bit_length() - 1] = (r, c ^ tag)
        return True

    def rref(self) -> tuple[int, ...]:
        rows = {p: v for p, (v, _) in self.rows.items()}
        for p in sorted(rows):
            for q in rows:
                if q != p and rows[q] >> p & 1:
                    rows[q] ^= rows[p]
        return tuple(sorted(rows.values(), reverse=True))


def support_order(p: PauliOperator):
    """Generator order: first qubit acted on, then letters."""
    return (p.support[0] if p.support else p.n, p.letters)


def _validate(ops: Sequence[PauliOperator]) -> None:
    if ops:
        n = ops[0].n
        for a in ops:
            if a.n != n:
                raise DimensionError("generators act on different qubit counts")
            if not a.is_hermitian:
                raise DomainError(f"{a} is not Hermitian")
    for a, b in combinations(ops, 2):
        if not commutes(a, b):
            raise DomainError(f"{a} and {b} do not commute")


def independent_generators(ops: Iterable[PauliOperator]) -> list[PauliOperator]:
    """Drop every operator that is a signed product of earlier ones.

    Returned operators carry phase ``+1``; the generated group is unchanged
    modulo sign.
    """
    ops = list(ops)
    _validate(ops)
    span = _Span()
    out = []
    for a in ops:
        if a.is_identity:
            continue
        if span.add(_vec(a)):
            out.append(a.unsigned())
    return out


@dataclass(frozen=True)
class Context:
    """An independent, canonically ordered set of commuting Hermitian Paulis."""

    generators: tuple[PauliOperator, ...]
    label: str = ""
    n: int = field(default=0, compare=False)

    def __post_init__(self):
        gens = list(self.generators)
        if not gens and not self.n:
            raise DomainError("an empty context needs an explicit qubit count")
        reduced = independent_generators(gens)
        if len(reduced) != len(gens):
            raise DomainError("context generators are not independent")
        reduced.sort(key=support_order)
        object.__setattr__(self, "generators", tuple(reduced))
        object.__setattr__(self, "n", reduced[0].n if reduced else self.n)
        if not self.label:
            object.__setattr__(self, "label", default_label(reduced))

    @classmethod
    def from_operators(cls, ops: Iterable[PauliOperator], label: str = "") -> Context:
        """Context generated by ``ops``, dependent members dropped."""
        return cls(tuple(independent_generators(ops)), label)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @cached_property
    def _span(self) -> _Span:
        span = _Span()
        for k, g in enumerate(self.generators):
            span.add(_vec(g), 1 << k)
        return span

    @cached_property
    def key(self) -> tuple[int, ...]:
        """Canonical identity of the generated group modulo sign."""
        return self._span.rref()

    def contains(self, p: PauliOperator) -> bool:
        if p.n != self.n:
            raise DimensionError(f"operator on {p.n} qubits, context on {self.n}")
        return self._span.reduce(_vec(p))[0] == 0

    def decompose(self, p: PauliOperator) -> tuple[tuple[int, ...], int]:
        """Generator indices whose ordered product is ``eps * p``, and ``eps``.

        ``p`` must be Hermitian and lie in the context.
        """
        if not p.is_hermitian:
            raise DomainError(f"{p} is not Hermitian")
        residue, combo = self._span.reduce(_vec(p))
        if residue:
            raise DomainError(f"{p} is not in context {self.label}")
        idx = tuple(k for k in range(self.rank) if combo >> k & 1)
        prod = product((self.generators[k] for k in idx), n=self.n)
        return idx, 1 if (prod.phase - p.phase) % 4 == 0 else -1

    def elements(self) -> list[PauliOperator]:
        """All ``2**rank`` group elements with phase stripped, identity first."""
        out = []
        for mask in range(2**self.rank):
            out.append(product((g for k, g in enumerate(self.generators) if mask >> k & 1), n=self.n).unsigned())
        return out

    def relabel(self, label: str) -> Context:
        return Context(self.generators, label)


def default_label(generators: Sequence[PauliOperator]) -> str:
    return ",".join(g.letters for g in generators) or "1"


def is_subcontext(u: Context, v: Context) -> bool:
    if u.n != v.n:
        raise DimensionError(f"contexts on {u.n} and {v.n} qubits")
    return all(v.contains(g) for g in u.generators)


def intersect(u: Context, v: Context) -> Context:
    """Context generating the intersection of the two groups (Zassenhaus)."""
    if u.n != v.n:
        raise DimensionError(f"contexts on {u.n} and {v.n} qubits")
    width = 2 * u.n
    span = _Span()
    for g in u.generators:
        a = _vec(g)
        span.add((a << width) | a)
    for g in v.generators:
        span.add(_vec(g) << width)
    low = _Span()
    for row, _ in span.rows.values():
        if row >> width == 0:
            low.add(row)
    gens = [_pauli(u.n, r) for r in low.rref()]
    return Context(tuple(gens), n=u.n)


@dataclass(frozen=True, order=True)
class ObservableString:
    """One non-identity local Pauli per qubit, e.g. ``"XYY"``."""

    letters: str

    def __post_init__(self):
        letters = "".join(self.letters).upper()
        if not letters or set(letters) - set("XYZ"):
            raise DomainError(f"observable string must use X, Y, Z on every qubit: {self.letters!r}")
        object.__setattr__(self, "letters", letters)

    @property
    def n(self) -> int:
        return len(self.letters)

    def local(self, k: int) -> PauliOperator:
        return PauliOperator.single(self.n, k, self.letters[k])

    def locals(self) -> list[PauliOperator]:
        return [self.local(k) for k in range(self.n)]

    def product(self) -> PauliOperator:
        return PauliOperator(self.letters)

    def context(self, label: str = "") -> Context:
        return Context(tuple(self.locals()), label)

    def __str__(self) -> str:
        return self.letters


def filter_strings(strings: Iterable[ObservableString], state: StateVector) -> dict[ObservableString, int]:
    """Strings whose full product has ``state`` as an eigenvector, with the sign."""
    out = {}
    for s in sorted(set(strings)):
        sign = eigensign(state, s.product())
        if sign is not None:
            out[s] = sign
    return out


class ContextPoset(NamedTuple):
    poset: FinitePoset
    contexts: dict[str, Context]

    def context(self, i: int) -> Context:
        return self.contexts[self.poset.labels[i]]

    @property
    def masas(self) -> list[str]:
        return [self.poset.labels[i] for i in self.poset.maximal()]


def build_from_contexts(tops: Sequence[Context], labels: Sequence[str] | None = None) -> ContextPoset:
    """Close ``tops`` under pairwise group intersection and order by inclusion.

    The trivial context is excluded. Tops keep their order (labelled
    ``V1, V2, ...`` unless ``labels`` is given); intersection nodes follow,
    larger rank first, then by generators.
    """
    if not tops:
        raise DomainError("at least one context is required")
    n = tops[0].n
    if labels is None:
        labels = [f"V{k + 1}" for k in range(len(tops))]
    nodes: list[Context] = []
    seen: set[tuple[int, ...]] = set()
    for c, label in zip(tops, labels):
        if c.n != n:
            raise DimensionError("contexts act on different qubit counts")
        if c.key not in seen and c.rank:
            seen.add(c.key)
            nodes.append(c.relabel(label))
    top_count = len(nodes)
    extra: list[Context] = []
    changed = True
    while changed:
        changed = False
        current = nodes + extra
        for a, b in combinations(current, 2):
            c = intersect(a, b)
            if c.rank and c.key not in seen:
                seen.add(c.key)
                extra.append(c)
                changed = True
    extra.sort(key=lambda c: (-c.rank, [support_order(g) for g in c.generators]))
    ordered = nodes[:top_count] + extra
    poset = FinitePoset.from_relation(
        [c.label for c in ordered], lambda i, j: is_subcontext(ordered[i], ordered[j])
    )
    return ContextPoset(poset, {c.label: c for c in ordered})


def build_context_poset(retained: Mapping[ObservableString, int] | Iterable[ObservableString]) -> ContextPoset:
    """Context poset generated by the retained strings, masas ``V1, V2, ...``
    in string order."""
    strings = sorted(set(retained))
    if not strings:
        raise DomainError("no retained strings to build a context poset from")
    n = strings[0].n
    if any(s.n != n for s in strings):
        raise DimensionError("strings act on different qubit counts")
    return build_from_contexts([s.context() for s in strings])
