"""The Heyting algebra of down-sets of a finite poset and its non-Booleanness."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from .errors import DomainError
from .poset import DownSet, FinitePoset, connected_components, enumerate_downsets


class DownSetAlgebra:
    """All down-sets of ``base`` with intersection, union and relative
    pseudo-complement. The carrier is materialized eagerly.
    """

    def __init__(self, base: FinitePoset):
        self.base = base
        self.carrier: tuple[DownSet, ...] = tuple(enumerate_downsets(base))
        self.bottom = DownSet._trusted(base, 0)
        self.top = DownSet._trusted(base, base.full_mask)

    def __len__(self) -> int:
        return len(self.carrier)

    def __iter__(self):
        return iter(self.carrier)

    def _check(self, *sets: DownSet) -> None:
        for a in sets:
            if a.poset is not self.base and a.poset != self.base:
                raise DomainError("down-set belongs to a different poset")

    def meet(self, a: DownSet, b: DownSet) -> DownSet:
        self._check(a, b)
        return DownSet._trusted(self.base, a.mask & b.mask)

    def join(self, a: DownSet, b: DownSet) -> DownSet:
        self._check(a, b)
        return DownSet._trusted(self.base, a.mask | b.mask)

    def implies(self, a: DownSet, b: DownSet) -> DownSet:
        """``{x : down(x) & a <= b}``, the largest c with ``c & a <= b``."""
        self._check(a, b)
        return DownSet._trusted(self.base, self.implies_mask(a.mask, b.mask))

    def implies_mask(self, a: int, b: int) -> int:
        outside = a & ~b
        mask = 0
        for x, down in enumerate(self.base.below):
            if down & outside == 0:
                mask |= 1 << x
        return mask

    def neg(self, a: DownSet) -> DownSet:
        return self.implies(a, self.bottom)

    def is_complemented(self, a: DownSet) -> bool:
        return self.join(a, self.neg(a)) == self.top

    def is_regular(self, a: DownSet) -> bool:
        return self.neg(self.neg(a)) == a

    @cached_property
    def complemented(self) -> tuple[DownSet, ...]:
        return tuple(a for a in self.carrier if self.is_complemented(a))

    @cached_property
    def regular(self) -> tuple[DownSet, ...]:
        return tuple(a for a in self.carrier if self.is_regular(a))

    def non_booleanness(self) -> Fraction:
        return 1 - Fraction(len(self.complemented), len(self.carrier))

    def report(self) -> dict:
        return {
            "downset_count": len(self.carrier),
            "complemented_count": len(self.complemented),
            "q": str(self.non_booleanness()),
        }

    def truth_tables(self) -> dict:
        """Full meet/join/implies tables, indexed by carrier position."""
        if len(self.base) > 6:
            raise DomainError("truth tables are only dumped for posets of at most 6 elements")
        index = {a.mask: k for k, a in enumerate(self.carrier)}
        ops = {"meet": self.meet, "join": self.join, "implies": self.implies}
        return {
            "elements": [a.members() for a in self.carrier],
            **{
                name: [[index[op(a, b).mask] for b in self.carrier] for a in self.carrier]
                for name, op in ops.items()
            },
            "neg": [index[self.neg(a).mask] for a in self.carrier],
        }


def complemented_elements(alg: DownSetAlgebra) -> tuple[DownSet, ...]:
    return alg.complemented


def non_booleanness(alg: DownSetAlgebra) -> Fraction:
    """``1 - |comp| / |carrier|`` as an exact fraction."""
    return alg.non_booleanness()


def union_of_components(alg: DownSetAlgebra, mask: int) -> bool:
    """Whether ``mask`` is a union of connected components of the base."""
    for comp in connected_components(alg.base):
        cm = sum(1 << i for i in comp)
        if mask & cm not in (0, cm):
            return False
    return True

