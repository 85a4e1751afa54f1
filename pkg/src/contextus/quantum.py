"""Dense state vectors for small qubit counts.

Basis convention: bit ``n-1-k`` of an amplitude index is the sigma_z
eigenbit of qubit ``k`` (qubit 0 most significant), so ``|011>`` is index 3.
Paulis are applied by index permutation and sign flips, never as dense
matrices, which keeps 12-qubit states cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import DimensionError, DomainError, ImpossibleOutcomeError
from .limits import check_qubits
from .pauli import PauliOperator, commutes

NORM_TOL = 1e-12
EIGEN_TOL = 1e-9
_PHASE_VALUE = (1, 1j, -1, -1j)


@dataclass(frozen=True, eq=False)
class StateVector:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("qubit count must be non-negative")
        check_qubits(self.n)
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (2**self.n,):
            raise DimensionError(f"expected {2**self.n} amplitudes, got {amps.shape[0]}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"state is not normalized (norm {norm!r})")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes, normalize: bool = False) -> StateVector:
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(len(amps)))) if len(amps) else -1
        if n < 0 or 2**n != len(amps):
            raise DimensionError("amplitude count must be a power of two")
        if normalize:
            norm = np.linalg.norm(amps)
            if norm == 0:
                raise DomainError("cannot normalize the zero vector")
            amps = amps / norm
        return cls(n, amps)

    @classmethod
    def basis(cls, bits: str) -> StateVector:
        amps = np.zeros(2 ** len(bits), dtype=complex)
        amps[int(bits, 2) if bits else 0] = 1
        return cls(len(bits), amps)

    def inner(self, other: StateVector) -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def equals_up_to_phase(self, other: StateVector, tol: float = EIGEN_TOL) -> bool:
        return self.n == other.n and abs(abs(self.inner(other)) - 1.0) < tol

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.amplitudes, other.amplitudes)

    def __hash__(self):
        return hash((self.n, self.amplitudes.tobytes()))


def ghz(n: int) -> StateVector:
    if n < 1:
        raise DomainError("GHZ state needs at least one qubit")
    check_qubits(n)
    amps = np.zeros(2**n, dtype=complex)
    amps[0] = amps[-1] = 1 / np.sqrt(2)
    return StateVector(n, amps)


def product_state(letters: str) -> StateVector:
    """Tensor product of ``0 1 + -`` single-qubit states."""
    single = {
        "0": np.array([1, 0], dtype=complex),
        "1": np.array([0, 1], dtype=complex),
        "+": np.array([1, 1], dtype=complex) / np.sqrt(2),
        "-": np.array([1, -1], dtype=complex) / np.sqrt(2),
    }
    amps = np.ones(1, dtype=complex)
    for c in letters:
        amps = np.kron(amps, single[c])
    return StateVector(len(letters), amps)


def apply_pauli(op: PauliOperator, amplitudes: np.ndarray) -> np.ndarray:
    """Return ``op @ amplitudes`` without forming the matrix."""
    n = op.n
    if amplitudes.shape[0] != 2**n:
        raise DimensionError(f"operator on {n} qubits, vector of length {amplitudes.shape[0]}")
    x, z = op.symplectic()
    # Y = i X Z, so op = i**(phase + #Y) X^x Z^z
    coef = _PHASE_VALUE[(op.phase + op.letters.count("Y")) % 4]
    idx = np.arange(2**n)
    parity = np.zeros(2**n, dtype=np.int64)
    masked = idx & z
    while masked.any():
        parity ^= masked & 1
        masked = masked >> 1
    signs = 1 - 2 * parity
    out = np.empty_like(amplitudes, dtype=complex)
    out[idx ^ x] = coef * signs * amplitudes
    return out


def _check_operator(state: StateVector, a: PauliOperator) -> None:
    if a.n != state.n:
        raise DimensionError(f"operator on {a.n} qubits, state on {state.n}")
    if not a.is_hermitian:
        raise DomainError(f"{a} is not Hermitian")


def eigensign(state: StateVector, a: PauliOperator) -> int | None:
    """``+1``/``-1`` if ``state`` is an eigenvector of ``a``, else ``None``."""
    _check_operator(state, a)
    image = apply_pauli(a, state.amplitudes)
    for s in (1, -1):
        if np.linalg.norm(image - s * state.amplitudes) < EIGEN_TOL:
            return s
    return None


def _project(amps: np.ndarray, a: PauliOperator, sign: int) -> np.ndarray:
    return (amps + sign * apply_pauli(a, amps)) / 2


def joint_weight(
    state: StateVector,
    generators: Sequence[PauliOperator],
    signs: Mapping[PauliOperator, int] | Sequence[int],
) -> float:
    """Born weight of the joint eigenspace ``prod_k (I + s_k g_k)/2``.

    ``signs`` is either a mapping generator -> sign or a sequence aligned
    with ``generators``.
    """
    generators = list(generators)
    if isinstance(signs, Mapping):
        signs = [signs[g] for g in generators]
    else:
        signs = list(signs)
    if len(signs) != len(generators):
        raise DomainError("one sign per generator is required")
    for a in generators:
        _check_operator(state, a)
    for i, a in enumerate(generators):
        for b in generators[i + 1:]:
            if not commutes(a, b):
                raise DomainError(f"{a} and {b} do not commute")
    amps = state.amplitudes
    for g, s in zip(generators, signs):
        if s not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {s!r}")
        amps = _project(amps, g, s)
    return float(np.real(np.vdot(amps, amps)))


def outcome_probability(state: StateVector, a: PauliOperator, outcome: int) -> float:
    _check_operator(state, a)
    return joint_weight(state, [a], [outcome])


def measure_update(state: StateVector, a: PauliOperator, outcome: int) -> tuple[StateVector, float]:
    """Project onto the ``outcome`` eigenspace of ``a`` and renormalize."""
    _check_operator(state, a)
    if outcome not in (1, -1):
        raise DomainError(f"outcome must be +1 or -1, got {outcome!r}")
    amps = _project(state.amplitudes, a, outcome)
    prob = float(np.real(np.vdot(amps, amps)))
    if prob <= NORM_TOL:
        raise ImpossibleOutcomeError(f"outcome {outcome:+d} of {a} has probability zero")
    return StateVector(state.n, amps / np.sqrt(prob)), prob


def stabilizer_state(generators: Sequence[PauliOperator]) -> StateVector:
    """The unique state fixed by ``n`` independent commuting generators.

    Global phase is fixed by making the first non-negligible amplitude real
    and positive.
    """
    generators = list(generators)
    if not generators:
        raise DomainError("a stabilizer state needs generators")
    n = generators[0].n
    check_qubits(n)
    if len(generators) != n:
        raise DomainError(f"{len(generators)} generators do not fix a unique {n}-qubit state")
    from .contexts import independent_generators

    if len(independent_generators(generators)) != n:
        raise DomainError("stabilizer generators are not independent")
    for g in generators:
        if g.n != n:
            raise DimensionError("generators act on different qubit counts")
        if not g.is_hermitian:
            raise DomainError(f"{g} is not Hermitian")
    for b in range(2**n):
        amps = np.zeros(2**n, dtype=complex)
        amps[b] = 1
        for g in generators:
            amps = _project(amps, g, 1)
        norm = np.linalg.norm(amps)
        if norm > 1e-6:
            amps = amps / norm
            lead = amps[np.flatnonzero(np.abs(amps) > 1e-9)[0]]
            amps = amps * (abs(lead) / lead)
            return StateVector(n, amps)
    raise DomainError("stabilizer generators contain -I; no state is fixed")


def state_from_json(desc: Mapping) -> StateVector:
    """Build a state from ``{"type": "ghz" | "amplitudes" | "stabilizer", ...}``."""
    kind = desc.get("type")
    if kind == "ghz":
        return ghz(int(desc["n"]))
    if kind == "amplitudes":
        re = np.asarray(desc["re"], dtype=float)
        im = np.asarray(desc.get("im", [0.0] * len(re)), dtype=float)
        if re.shape != im.shape:
            raise DimensionError("re and im must have equal length")
        state = StateVector.from_amplitudes(re + 1j * im, normalize=bool(desc.get("normalize", False)))
        if "n" in desc and int(desc["n"]) != state.n:
            raise DimensionError(f"declared n={desc['n']} but {len(re)} amplitudes given")
        return state
    if kind == "stabilizer":
        return stabilizer_state([PauliOperator.parse(g) for g in desc["generators"]])
    if kind == "product":
        return product_state(desc["letters"])
    raise DomainError(f"unknown state type {kind!r}")


def _clean(x: float) -> float:
    r = round(float(x), 12)
    return 0.0 if r == 0 else r


def state_to_json(state: StateVector) -> dict:
    return {
        "type": "amplitudes",
        "n": state.n,
        "re": [_clean(a.real) for a in state.amplitudes],
        "im": [_clean(a.imag) for a in state.amplitudes],
    }
