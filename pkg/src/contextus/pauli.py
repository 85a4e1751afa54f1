"""Exact n-qubit Pauli arithmetic with the global phase tracked as a power of i.

Letters are the public form. The symplectic bit pair ``(x, z)`` is exposed
for the GF(2) routines in :mod:`contextus.contexts`; qubit 0 is the leftmost
letter and the most significant bit.

>>> multiply(PauliOperator.parse("+ X"), PauliOperator.parse("+ Y"))
PauliOperator('+i Z')
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Iterable

import numpy as np

from .errors import DimensionError, DomainError
from .limits import check_qubits

LETTERS = "IXYZ"

# (a, b) -> (exponent of i, letter) with a*b = i**k * letter
_TABLE: dict[tuple[str, str], tuple[int, str]] = {}
for _p in LETTERS:
    _TABLE[("I", _p)] = (0, _p)
    _TABLE[(_p, "I")] = (0, _p)
    if _p != "I":
        _TABLE[(_p, _p)] = (0, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _TABLE[(_a, _b)] = (1, _c)
    _TABLE[(_b, _a)] = (3, _c)

_PHASE_VALUE = (1, 1j, -1, -1j)
_PHASE_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_TEXT_PHASE = {"+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True, order=True)
class PauliOperator:
    """``i**phase`` times a tensor product of single-qubit Paulis.

    Ordering is lexicographic on ``letters`` and then on ``phase``.
    """

    letters: str
    phase: int = 0

    def __post_init__(self):
        if not self.letters:
            raise DomainError("a Pauli operator needs at least one qubit")
        bad = set(self.letters) - set(LETTERS)
        if bad:
            raise DomainError(f"unknown Pauli letters {sorted(bad)}")
        object.__setattr__(self, "phase", self.phase % 4)

    @property
    def n(self) -> int:
        return len(self.letters)

    @classmethod
    def identity(cls, n: int) -> PauliOperator:
        return cls("I" * n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str, phase: int = 0) -> PauliOperator:
        """``letter`` on ``qubit`` (0-based), identity elsewhere."""
        if not 0 <= qubit < n:
            raise DomainError(f"qubit {qubit} out of range for n={n}")
        return cls("I" * qubit + letter + "I" * (n - qubit - 1), phase)

    @classmethod
    def parse(cls, text: str) -> PauliOperator:
        """Parse ``"s P1...Pn"`` with ``s`` one of ``+ - +i -i``.

        A bare letter string is read as phase ``+``.
        """
        parts = text.replace("−", "-").split()
        if len(parts) == 1:
            sign, letters = "+", parts[0]
        elif len(parts) == 2:
            sign, letters = parts
        else:
            raise DomainError(f"cannot parse Pauli operator {text!r}")
        if sign not in _TEXT_PHASE:
            raise DomainError(f"bad phase {sign!r} in {text!r}")
        return cls(letters.upper(), _TEXT_PHASE[sign])

    def __str__(self) -> str:
        return f"{_PHASE_TEXT[self.phase]} {self.letters}"

    def __repr__(self) -> str:
        return f"PauliOperator({str(self)!r})"

    @property
    def is_hermitian(self) -> bool:
        return self.phase in (0, 2)

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    @property
    def weight(self) -> int:
        return sum(p != "I" for p in self.letters)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, p in enumerate(self.letters) if p != "I")

    def symplectic(self) -> tuple[int, int]:
        """``(x, z)`` bit masks, qubit 0 in the most significant position."""
        x = z = 0
        for p in self.letters:
            x = (x << 1) | (p in "XY")
            z = (z << 1) | (p in "ZY")
        return x, z

    @classmethod
    def from_symplectic(cls, n: int, x: int, z: int, phase: int = 0) -> PauliOperator:
        letters = []
        for k in range(n):
            bit = n - 1 - k
            letters.append("IZXY"[((x >> bit) & 1) * 2 + ((z >> bit) & 1)])
        return cls("".join(letters), phase)

    def negate(self) -> PauliOperator:
        return PauliOperator(self.letters, self.phase + 2)

    def unsigned(self) -> PauliOperator:
        """Same letters with phase ``+1``."""
        return PauliOperator(self.letters)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return multiply(self, other)


def _check_same_n(a: PauliOperator, b: PauliOperator) -> None:
    if a.n != b.n:
        raise DimensionError(f"qubit counts differ: {a.n} vs {b.n}")


def multiply(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_same_n(a, b)
    phase = a.phase + b.phase
    letters = []
    for p, q in zip(a.letters, b.letters):
        k, r = _TABLE[(p, q)]
        phase += k
        letters.append(r)
    return PauliOperator("".join(letters), phase)


def product(ops: Iterable[PauliOperator], n: int | None = None) -> PauliOperator:
    """Left-to-right product; ``n`` is required when ``ops`` may be empty."""
    ops = list(ops)
    if not ops:
        if n is None:
            raise DomainError("empty product needs an explicit qubit count")
        return PauliOperator.identity(n)
    return reduce(multiply, ops)


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    _check_same_n(a, b)
    clashes = sum(p != "I" and q != "I" and p != q for p, q in zip(a.letters, b.letters))
    return clashes % 2 == 0


def as_matrix(a: PauliOperator) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix; meant as a verification oracle."""
    check_qubits(a.n)
    m = reduce(np.kron, (_SINGLE[p] for p in a.letters))
    return _PHASE_VALUE[a.phase] * m
