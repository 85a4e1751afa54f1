import json
from itertools import combinations, permutations
from pathlib import Path

import pytest
from hypothesis import strategies as st

from contextus.poset import FinitePoset
from contextus.scenarios import bell_parity, builtin, ghz_or

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "src" / "contextus" / "schemas"


@pytest.fixture(scope="session")
def ab_spec():
    return ghz_or()


@pytest.fixture(scope="session")
def bell_spec():
    return bell_parity()


@pytest.fixture(scope="session")
def ghz_cp():
    return builtin("ghz-or").context_poset()


@pytest.fixture(scope="session")
def pm_cp():
    return builtin("peres-mermin").context_poset()


@pytest.fixture
def v_poset():
    """Two elements above one: the post-X1 shape."""
    return FinitePoset.from_covers(["x1", "V1", "V2"], [("x1", "V1"), ("x1", "V2")])


@pytest.fixture(scope="session")
def schema_validator():
    from jsonschema import Draft202012Validator
    from referencing import Registry, Resource

    schemas = {p.name: json.loads(p.read_text()) for p in SCHEMA_DIR.glob("*.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(doc)) for name, doc in schemas.items()
    )

    def validate(name, instance):
        Draft202012Validator(schemas[name], registry=registry).validate(instance)

    return validate


def natural_posets(k):
    """One poset per isomorphism class on k elements.

    Every finite poset has a natural labelling (i < j in the order forces
    i < j as integers), so transitive subsets of the increasing pairs cover
    every class; duplicates are removed by a canonical form over all
    relabellings.
    """
    pairs = list(combinations(range(k), 2))
    perms = list(permutations(range(k)))
    seen = set()
    for mask in range(2 ** len(pairs)):
        rel = {p for b, p in enumerate(pairs) if mask >> b & 1}
        if not all((a, c) in rel for (a, b) in rel for (b2, c) in rel if b == b2):
            continue
        canon = min(tuple(sorted((pi[a], pi[b]) for a, b in rel)) for pi in perms)
        if canon in seen:
            continue
        seen.add(canon)
        yield FinitePoset.from_relation([f"e{i}" for i in range(k)], lambda i, j: i == j or (i, j) in rel)


@st.composite
def random_posets(draw, max_size=8):
    k = draw(st.integers(0, max_size))
    pairs = list(combinations(range(k), 2))
    bits = draw(st.integers(0, 2 ** len(pairs) - 1))
    chosen = [p for b, p in enumerate(pairs) if bits >> b & 1]
    return FinitePoset.from_covers([f"e{i}" for i in range(k)], [(f"e{a}", f"e{b}") for a, b in chosen])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
