"""Temporally flat, deterministic l2-MBQC: function tables, sampled runs,
affine tests, the link to contextuality, and the measurement-by-measurement
trace of non-Booleanness.

Qubits are 0-based in this API; the CLI plan syntax is 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Iterable, Mapping, Sequence

import numpy as np

from .contexts import ContextPoset, ObservableString, build_context_poset, filter_strings
from .errors import DeterminismError, DomainError, ImpossibleOutcomeError, PartialTableError, PlanError
from .heyting import DownSetAlgebra
from .pauli import PauliOperator, product
from .poset import FinitePoset, poset_to_json
from .presheaf import count_global_sections, pseudostate
from .quantum import StateVector, eigensign, measure_update, outcome_probability, state_from_json, state_to_json

Bits = tuple[int, ...]


@dataclass(frozen=True)
class MbqcSpec:
    """Resource state, per-qubit observable pairs ``(O_k(0), O_k(1))`` and the
    GF(2) matrix ``Q`` (n rows, m columns) with ``q = Q i``."""

    resource: StateVector
    obs: tuple[tuple[str, str], ...]
    Q: tuple[tuple[int, ...], ...]
    m: int

    def __post_init__(self):
        obs = tuple((a.upper(), b.upper()) for a, b in self.obs)
        Q = tuple(tuple(int(x) % 2 for x in row) for row in self.Q)
        object.__setattr__(self, "obs", obs)
        object.__setattr__(self, "Q", Q)
        if len(obs) != self.resource.n:
            raise DomainError(f"{len(obs)} observable pairs for a {self.resource.n}-qubit resource")
        for k, (a, b) in enumerate(obs):
            if a not in "XYZ" or b not in "XYZ" or len(a) != 1 or len(b) != 1:
                raise DomainError(f"qubit {k}: local observables must be one of X, Y, Z")
            if a == b:
                raise DomainError(f"qubit {k}: O(0) and O(1) must differ")
        if len(Q) != self.n or any(len(row) != self.m for row in Q):
            raise DomainError(f"Q must be {self.n} x {self.m}")

    @property
    def n(self) -> int:
        return self.resource.n

    def inputs(self) -> list[Bits]:
        return list(cartesian((0, 1), repeat=self.m))

    def settings(self, i: Sequence[int]) -> Bits:
        if len(i) != self.m:
            raise DomainError(f"input must have {self.m} bits")
        return tuple(sum(a * b for a, b in zip(row, i)) % 2 for row in self.Q)

    def observable(self, k: int, q: int) -> PauliOperator:
        return PauliOperator.single(self.n, k, self.obs[k][q])

    def string(self, q: Sequence[int]) -> ObservableString:
        return ObservableString("".join(self.obs[k][qk] for k, qk in enumerate(q)))

    def all_strings(self) -> list[ObservableString]:
        """One string per setting vector in ``Z_2^n``."""
        return sorted({self.string(q) for q in cartesian((0, 1), repeat=self.n)})

    def setting_of(self, k: int, letter_or_bit) -> int:
        if letter_or_bit in (0, 1, "0", "1"):
            return int(letter_or_bit)
        letter = str(letter_or_bit).upper()
        if letter not in self.obs[k]:
            raise PlanError(f"qubit {k + 1} measures {'/'.join(self.obs[k])}, not {letter}")
        return self.obs[k].index(letter)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "state": state_to_json(self.resource),
            "obs": [list(p) for p in self.obs],
            "Q": [list(r) for r in self.Q],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> MbqcSpec:
        state = state_from_json(doc["state"])
        n = int(doc.get("n", state.n))
        if n != state.n:
            raise DomainError(f"spec declares n={n} but the state has {state.n} qubits")
        Q = [list(r) for r in doc["Q"]]
        m = int(doc.get("m", len(Q[0]) if Q else 0))
        return cls(state, tuple(tuple(p) for p in doc["obs"]), tuple(tuple(r) for r in Q), m)


def _bit(sign: int) -> int:
    return 0 if sign > 0 else 1


def _string_sign(state: StateVector, ops: Sequence[PauliOperator], n: int) -> int | None:
    if n == 0:
        return 1
    return eigensign(state, product(ops, n=n))


def output_bit(spec: MbqcSpec, i: Sequence[int]) -> int:
    q = spec.settings(i)
    sign = _string_sign(spec.resource, [spec.observable(k, qk) for k, qk in enumerate(q)], spec.n)
    if sign is None:
        raise DeterminismError(f"input {fmt_bits(i)}: resource is not an eigenstate of {spec.string(q)}", tuple(i))
    return _bit(sign)


def function_table(spec: MbqcSpec) -> dict[Bits, int]:
    """``o(i)`` for every input, in lexicographic input order."""
    return {i: output_bit(spec, i) for i in spec.inputs()}


def run_sampled(spec: MbqcSpec, i: Sequence[int], seed: int) -> tuple[int, tuple[int, ...]]:
    """Measure qubit by qubit with Born sampling; returns (output, outcomes)."""
    output_bit(spec, i)
    rng = np.random.default_rng(seed)
    state = spec.resource
    outcomes = []
    for k, qk in enumerate(spec.settings(i)):
        op = spec.observable(k, qk)
        p_plus = outcome_probability(state, op, 1)
        s = 1 if rng.random() < p_plus else -1
        state, _ = measure_update(state, op, s)
        outcomes.append(s)
    return sum(_bit(s) for s in outcomes) % 2, tuple(outcomes)


def is_linear(table: Mapping[Bits, int]) -> bool:
    """Affine over GF(2): ``f(i ^ j) == f(i) ^ f(j) ^ f(0)`` everywhere."""
    if not table:
        raise PartialTableError("empty table")
    m = len(next(iter(table)))
    cube = list(cartesian((0, 1), repeat=m))
    if set(table) != set(cube):
        raise PartialTableError(f"table defines {len(table)} of {len(cube)} inputs")
    f0 = table[(0,) * m]
    for a in cube:
        for b in cube:
            ab = tuple(x ^ y for x, y in zip(a, b))
            if table[ab] != table[a] ^ table[b] ^ f0:
                return False
    return True


def fmt_bits(bits: Iterable[int]) -> str:
    return "".join(str(b) for b in bits)


def scenario_poset(spec: MbqcSpec) -> tuple[dict[ObservableString, int], ContextPoset]:
    retained = filter_strings(spec.all_strings(), spec.resource)
    return retained, build_context_poset(retained)


@dataclass
class ContextualityLink:
    table: dict[Bits, int]
    linear: bool
    context_poset: ContextPoset
    state_dependent_contextual: bool
    sections_count: int

    def to_json(self) -> dict:
        return {
            "table": {fmt_bits(i): o for i, o in self.table.items()},
            "linear": self.linear,
            "poset": poset_to_json(self.context_poset.poset),
            "state_dependent_contextual": self.state_dependent_contextual,
            "sections_count": self.sections_count,
        }


def contextuality_link(spec: MbqcSpec) -> ContextualityLink:
    """Both sides of: non-linear output implies the pseudostate has no
    global section over the context poset."""
    table = function_table(spec)
    _, cp = scenario_poset(spec)
    count = count_global_sections(cp, pseudostate(spec.resource, cp))
    return ContextualityLink(table, is_linear(table), cp, count == 0, count)


@dataclass(frozen=True)
class PlanStep:
    """Measure ``O_qubit(setting)``; ``outcome`` of ``None`` means sample it."""

    qubit: int
    setting: int
    outcome: int | None = None


def parse_plan(text: str, spec: MbqcSpec) -> list[PlanStep]:
    """Parse ``"1:X:+,2:X:+"``: 1-based qubit, letter or setting bit, and
    ``+``, ``-`` or ``?`` (sampled)."""
    steps = []
    for chunk in filter(None, (c.strip() for c in text.split(","))):
        parts = chunk.split(":")
        if len(parts) not in (2, 3):
            raise PlanError(f"cannot parse plan step {chunk!r}")
        try:
            k = int(parts[0]) - 1
        except ValueError:
            raise PlanError(f"bad qubit in plan step {chunk!r}") from None
        if not 0 <= k < spec.n:
            raise PlanError(f"plan step {chunk!r}: qubit out of range 1..{spec.n}")
        setting = spec.setting_of(k, parts[1])
        sign = parts[2] if len(parts) == 3 else "?"
        outcomes = {"+": 1, "+1": 1, "-": -1, "-1": -1, "?": None}
        if sign not in outcomes:
            raise PlanError(f"bad outcome {sign!r} in plan step {chunk!r}")
        steps.append(PlanStep(k, setting, outcomes[sign]))
    return steps


@dataclass
class TraceStep:
    index: int
    measured: PlanStep | None
    observable: PauliOperator | None
    outcome: int | None
    probability: float | None
    state: StateVector
    fixed: dict[int, tuple[int, int]]
    retained: dict[ObservableString, int]
    context_poset: ContextPoset | None
    downset_count: int
    complemented_count: int
    q: Fraction
    consistent_inputs: list[Bits]
    residual_table: dict[Bits, int]
    residual_linear: bool | None
    state_dependent_contextual: bool

    @property
    def poset(self) -> FinitePoset:
        return self.context_poset.poset if self.context_poset else FinitePoset((), ())

    def to_json(self) -> dict:
        return {
            "step": self.index,
            "measured": None
            if self.measured is None
            else {
                "qubit": self.measured.qubit + 1,
                "setting": self.measured.setting,
                "observable": str(self.observable),
                "outcome": self.outcome,
                "probability": round(self.probability, 12),
            },
            "state": state_to_json(self.state),
            "fixed_settings": {str(k + 1): q for k, (q, _) in sorted(self.fixed.items())},
            "retained_strings": {str(s): sign for s, sign in self.retained.items()},
            "poset": poset_to_json(self.poset),
            "downset_count": self.downset_count,
            "complemented_count": self.complemented_count,
            "q": str(self.q),
            "consistent_inputs": [fmt_bits(i) for i in self.consistent_inputs],
            "residual_table": {fmt_bits(i): o for i, o in self.residual_table.items()},
            "residual_linear": self.residual_linear,
            "state_dependent_contextual": self.state_dependent_contextual,
        }


@dataclass
class TraceReport:
    spec: MbqcSpec
    steps: list[TraceStep] = field(default_factory=list)

    @property
    def q_sequence(self) -> list[Fraction]:
        return [s.q for s in self.steps]

    def to_json(self) -> dict:
        return {
            "q_sequence": [str(q) for q in self.q_sequence],
            "steps": [s.to_json() for s in self.steps],
        }


def _subcube_linearity(table: Mapping[Bits, int], inputs: Sequence[Bits], m: int) -> bool | None:
    """Affine test over the free coordinates when ``inputs`` is a full subcube
    and the table covers it; ``None`` otherwise."""
    if not inputs or len(table) != len(inputs):
        return None
    free = [c for c in range(m) if len({i[c] for i in inputs}) == 2]
    if len(inputs) != 2 ** len(free):
        return None
    projected = {tuple(i[c] for c in free): table[i] for i in inputs}
    if not free:
        return True
    return is_linear(projected)


def _analyse(spec, state, fixed, index, measured, observable, outcome, prob) -> TraceStep:
    retained = {
        s: sign
        for s, sign in filter_strings(spec.all_strings(), state).items()
        if all(s.letters[k] == spec.obs[k][q] for k, (q, _) in fixed.items())
    }
    if retained:
        cp = build_context_poset(retained)
        contextual = count_global_sections(cp, pseudostate(state, cp)) == 0
    else:
        cp = None
        contextual = False
    alg = DownSetAlgebra(cp.poset if cp else FinitePoset((), ()))
    consistent = [i for i in spec.inputs() if all(spec.settings(i)[k] == q for k, (q, _) in fixed.items())]
    residual = {}
    for i in consistent:
        q = spec.settings(i)
        rest = [spec.observable(k, qk) for k, qk in enumerate(q) if k not in fixed]
        sign = _string_sign(state, rest, spec.n) if rest else 1
        if sign is not None:
            residual[i] = (sum(_bit(s) for _, s in fixed.values()) + _bit(sign)) % 2
    return TraceStep(
        index=index,
        measured=measured,
        observable=observable,
        outcome=outcome,
        probability=prob,
        state=state,
        fixed=dict(fixed),
        retained=retained,
        context_poset=cp,
        downset_count=len(alg),
        complemented_count=len(alg.complemented),
        q=alg.non_booleanness(),
        consistent_inputs=consistent,
        residual_table=residual,
        residual_linear=_subcube_linearity(residual, consistent, spec.m),
        state_dependent_contextual=contextual,
    )


def consumption_trace(spec: MbqcSpec, plan: Sequence[PlanStep], seed: int = 0) -> TraceReport:
    """Measure the plan step by step, re-deriving strings, poset, ``q`` and the
    residual function table after each measurement (step 0 is the resource)."""
    function_table(spec)
    rng = np.random.default_rng(seed)
    state = spec.resource
    fixed: dict[int, tuple[int, int]] = {}
    report = TraceReport(spec, [_analyse(spec, state, fixed, 0, None, None, None, None)])
    for t, step in enumerate(plan, start=1):
        if not 0 <= step.qubit < spec.n:
            raise PlanError(f"step {t}: qubit {step.qubit + 1} out of range")
        if step.qubit in fixed:
            raise PlanError(f"step {t}: qubit {step.qubit + 1} was already measured")
        if step.setting not in (0, 1):
            raise PlanError(f"step {t}: setting must be 0 or 1")
        op = spec.observable(step.qubit, step.setting)
        outcome = step.outcome
        if outcome is None:
            outcome = 1 if rng.random() < outcome_probability(state, op, 1) else -1
        elif outcome not in (1, -1):
            raise PlanError(f"step {t}: outcome must be +1 or -1")
        try:
            state, prob = measure_update(state, op, outcome)
        except ImpossibleOutcomeError as exc:
            raise ImpossibleOutcomeError(f"step {t}: {exc}") from None
        fixed[step.qubit] = (step.setting, outcome)
        report.steps.append(_analyse(spec, state, fixed, t, step, op, outcome, prob))
    return report
