import os

from .errors import CapacityError

DEFAULT_MAX_QUBITS = 12
HARD_MAX_QUBITS = 14
MAX_POSET_ELEMENTS = 24


def max_qubits() -> int:
    """Qubit cap, overridable through ``CONTEXTUS_MAX_QUBITS`` up to 14."""
    raw = os.environ.get("CONTEXTUS_MAX_QUBITS")
    if not raw:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_QUBITS
    return max(1, min(value, HARD_MAX_QUBITS))


def check_qubits(n: int) -> None:
    cap = max_qubits()
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds the cap of {cap}")
