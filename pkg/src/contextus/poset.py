"""Finite posets stored as down-closure bit masks, plus order ideals.

Element ``i`` of a poset corresponds to bit ``i`` of every mask. ``below[i]``
is the mask of all ``j <= i`` (including ``i``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .errors import CapacityError, DomainError
from .limits import MAX_POSET_ELEMENTS


def _bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class FinitePoset:
    labels: tuple[str, ...]
    below: tuple[int, ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        below = tuple(self.below)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "below", below)
        if len(set(labels)) != len(labels):
            raise DomainError("poset labels must be unique")
        if len(below) != len(labels):
            raise DomainError("one down-closure mask per element is required")
        full = (1 << len(labels)) - 1
        for i, m in enumerate(below):
            if m & ~full:
                raise DomainError(f"mask of {labels[i]!r} refers to unknown elements")
            if not m >> i & 1:
                raise DomainError(f"relation is not reflexive at {labels[i]!r}")
            for j in _bits(m):
                if j != i and below[j] >> i & 1:
                    raise DomainError(f"relation is not antisymmetric: {labels[i]!r}, {labels[j]!r}")
                if below[j] & ~m:
                    raise DomainError(f"relation is not transitive through {labels[j]!r}")

    @classmethod
    def from_relation(cls, labels: Sequence[str], leq: Callable[[int, int], bool]) -> FinitePoset:
        """Build from a predicate ``leq(i, j)`` meaning element i <= element j."""
        n = len(labels)
        below = [sum(1 << i for i in range(n) if leq(i, j)) for j in range(n)]
        return cls(tuple(labels), tuple(below))

    @classmethod
    def from_covers(cls, labels: Sequence[str], pairs: Iterable[tuple[str, str]]) -> FinitePoset:
        """Reflexive-transitive closure of ``(lower, upper)`` label pairs."""
        labels = tuple(labels)
        index = {l: i for i, l in enumerate(labels)}
        below = [1 << i for i in range(len(labels))]
        try:
            edges = [(index[a], index[b]) for a, b in pairs]
        except KeyError as exc:
            raise DomainError(f"unknown label {exc.args[0]!r}") from None
        changed = True
        while changed:
            changed = False
            for a, b in edges:
                new = below[b] | below[a]
                if new != below[b]:
                    below[b] = new
                    changed = True
        return cls(labels, tuple(below))

    @classmethod
    def antichain(cls, k: int, prefix: str = "a") -> FinitePoset:
        return cls(tuple(f"{prefix}{i}" for i in range(k)), tuple(1 << i for i in range(k)))

    @classmethod
    def chain(cls, k: int, prefix: str = "c") -> FinitePoset:
        return cls(tuple(f"{prefix}{i}" for i in range(k)), tuple((1 << (i + 1)) - 1 for i in range(k)))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DomainError(f"no element labelled {label!r}") from None

    def leq(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if not any(self.lt(i, j) for j in range(len(self)))]

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if self.below[i] == 1 << i]

    def elements(self, mask: int) -> list[str]:
        return [self.labels[i] for i in _bits(mask)]

    def linear_extension(self) -> list[int]:
        """Elements ordered so that every element follows everything below it."""
        return sorted(range(len(self)), key=lambda i: (bin(self.below[i]).count("1"), i))


def disjoint_union(p: FinitePoset, q: FinitePoset) -> FinitePoset:
    shift = len(p)
    labels = tuple(f"L.{l}" for l in p.labels) + tuple(f"R.{l}" for l in q.labels)
    return FinitePoset(labels, p.below + tuple(m << shift for m in q.below))


def hasse_edges(p: FinitePoset) -> list[tuple[int, int]]:
    """Covering pairs ``(lower, upper)`` sorted by index."""
    edges = []
    for j in range(len(p)):
        strict = p.below[j] & ~(1 << j)
        for i in _bits(strict):
            between = strict & ~(1 << i)
            if not any(p.lt(i, k) for k in _bits(between)):
                edges.append((i, j))
    return sorted(edges)


def connected_components(p: FinitePoset) -> list[frozenset[int]]:
    parent = list(range(len(p)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for j in range(len(p)):
        for i in _bits(p.below[j]):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups: dict[int, set[int]] = {}
    for i in range(len(p)):
        groups.setdefault(find(i), set()).add(i)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_antichain(p: FinitePoset) -> bool:
    return all(m == 1 << i for i, m in enumerate(p.below))


@dataclass(frozen=True, eq=False)
class DownSet:
    """An order ideal, as a membership mask over ``poset`` elements."""

    poset: FinitePoset = field(repr=False)
    mask: int

    def __post_init__(self):
        if self.mask & ~self.poset.full_mask:
            raise DomainError("mask refers to elements outside the poset")
        for i in _bits(self.mask):
            if self.poset.below[i] & ~self.mask:
                raise DomainError(f"not down-closed at {self.poset.labels[i]!r}")

    def __eq__(self, other):
        if not isinstance(other, DownSet):
            return NotImplemented
        return self.mask == other.mask and (self.poset is other.poset or self.poset == other.poset)

    def __hash__(self):
        return hash((self.mask, self.poset.labels))

    def __contains__(self, label: str) -> bool:
        return bool(self.mask >> self.poset.index(label) & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __le__(self, other: DownSet) -> bool:
        return self.mask & ~other.mask == 0

    def members(self) -> list[str]:
        return self.poset.elements(self.mask)

    def bitvector(self) -> tuple[int, ...]:
        return tuple(self.mask >> i & 1 for i in range(len(self.poset)))

    @classmethod
    def _trusted(cls, poset: FinitePoset, mask: int) -> DownSet:
        """Skip the closure check for masks already known to be ideals."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "poset", poset)
        object.__setattr__(obj, "mask", mask)
        return obj

    @classmethod
    def of(cls, poset: FinitePoset, labels: Iterable[str]) -> DownSet:
        mask = 0
        for l in labels:
            mask |= 1 << poset.index(l)
        return cls(poset, mask)

    @classmethod
    def generated(cls, poset: FinitePoset, labels: Iterable[str]) -> DownSet:
        """Down-closure of ``labels``."""
        mask = 0
        for l in labels:
            mask |= poset.below[poset.index(l)]
        return cls(poset, mask)


def downset_order_key(p: FinitePoset, mask: int):
    return bin(mask).count("1"), tuple(mask >> i & 1 for i in range(len(p)))


def enumerate_downset_masks(p: FinitePoset) -> list[int]:
    """All order-ideal masks, by cardinality then bit-vector lexicographic."""
    if len(p) > MAX_POSET_ELEMENTS:
        raise CapacityError(f"{len(p)} elements exceeds the down-set cap of {MAX_POSET_ELEMENTS}")
    order = p.linear_extension()
    strict_below = [p.below[i] & ~(1 << i) for i in range(len(p))]
    out: list[int] = []

    def extend(pos: int, mask: int) -> None:
        if pos == len(order):
            out.append(mask)
            return
        x = order[pos]
        extend(pos + 1, mask)
        if strict_below[x] & ~mask == 0:
            extend(pos + 1, mask | 1 << x)

    extend(0, 0)
    out.sort(key=lambda m: downset_order_key(p, m))
    return out


def enumerate_downsets(p: FinitePoset) -> list[DownSet]:
    return [DownSet._trusted(p, m) for m in enumerate_downset_masks(p)]


def poset_to_json(p: FinitePoset) -> dict:
    return {
        "labels": list(p.labels),
        "cover_edges": [[p.labels[i], p.labels[j]] for i, j in hasse_edges(p)],
    }


def poset_from_json(doc: dict) -> FinitePoset:
    return FinitePoset.from_covers(doc["labels"], [tuple(e) for e in doc.get("cover_edges", [])])


def to_dot(p: FinitePoset, name: str = "hasse") -> str:
    """Hasse diagram in DOT, lower elements at the bottom."""
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for label in p.labels:
        lines.append(f"  {json.dumps(label)};")
    for i, j in hasse_edges(p):
        lines.append(f"  {json.dumps(p.labels[i])} -> {json.dumps(p.labels[j])};")
    lines.append("}")
    return "\n".join(lines) + "\n"
