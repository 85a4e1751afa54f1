from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contextus.contexts import Context, ObservableString as S, build_context_poset, build_from_contexts
from contextus.errors import DomainError
from contextus.mbqc import scenario_poset
from contextus.pauli import PauliOperator
from contextus.presheaf import (
    Character,
    characters,
    count_global_sections,
    global_sections,
    is_compatible,
    is_contextual,
    is_state_dependent_contextual,
    pseudostate,
    pseudostate_sections,
    restrict,
    spectral_presheaf,
    verdict,
)
from contextus.quantum import ghz, joint_weight, measure_update, product_state
from contextus.scenarios import builtin
from oracles import dense_projector_weight, ghz_sigma_sections_bruteforce, peres_mermin_assignments

P = PauliOperator.parse


def test_character_counts(ghz_cp):
    _, ctx = ghz_cp
    assert len(characters(ctx["V1"])) == 8
    assert len(characters(ctx["XII"])) == 2
    assert len(characters(Context((), n=3))) == 1


def test_v1_has_eight_one_dim_joint_eigenspaces(ghz_cp):
    _, ctx = ghz_cp
    v1 = ctx["V1"]
    import numpy as np

    for c in characters(v1):
        basis = np.zeros(8)
        total = 0.0
        for b in range(8):
            basis[:] = 0
            basis[b] = 1
            total += dense_projector_weight(basis.astype(complex), [g.letters for g in v1.generators], c.signs)
        assert total == pytest.approx(1.0)


def test_restrict_examples(ghz_cp):
    _, ctx = ghz_cp
    plus = Character.from_pattern(ctx["V1"], "+++")
    assert restrict(plus, ctx["XII"]).signs == (1,)
    mm = Character.from_pattern(ctx["V1"], "--+")
    assert restrict(mm, ctx["IXI"]).signs == (-1,)
    assert restrict(mm, ctx["V1"]) == mm
    with pytest.raises(DomainError):
        restrict(plus, ctx["YII"])


def test_value_uses_product_sign():
    c = Context.from_operators([P("XX"), P("ZZ")])
    chi = Character(c, (1, 1))
    assert chi.value(P("YY")) == -1
    assert chi.value(P("- YY")) == 1


def test_pseudostate_sections(ghz_cp):
    _, ctx = ghz_cp
    assert [c.pattern for c in pseudostate_sections(ghz(3), ctx["V1"])] == ["+++", "+--", "-+-", "--+"]
    v2 = pseudostate_sections(ghz(3), ctx["V2"])
    assert len(v2) == 4 and all(c.signs[0] * c.signs[1] * c.signs[2] == -1 for c in v2)
    assert [c.pattern for c in pseudostate_sections(product_state("+++"), ctx["V1"])] == ["+++"]


def test_section_counts(ghz_cp):
    assert count_global_sections(ghz_cp, spectral_presheaf(ghz_cp)) == 64 == ghz_sigma_sections_bruteforce()
    assert count_global_sections(ghz_cp, pseudostate(ghz(3), ghz_cp)) == 0
    psi1 = measure_update(ghz(3), P("XII"), 1)[0]
    cp1 = build_context_poset({S("XXX"): 1, S("XYY"): -1})
    assert global_sections(cp1, pseudostate(psi1, cp1))


def test_verdicts(ghz_cp, pm_cp):
    assert is_state_dependent_contextual(ghz(3), ghz_cp)
    assert not is_contextual(ghz_cp)
    assert is_contextual(pm_cp)
    assert peres_mermin_assignments() == 0
    v = verdict(ghz_cp, spectral_presheaf(ghz_cp), dump=True)
    assert v["sections_count"] == 64 and len(v["sections"]) == 64 and not v["sections_truncated"]


def test_pm_shape(pm_cp):
    p, _ = pm_cp
    assert len(p) == 15
    assert sorted(p.labels[i] for i in p.maximal()) == ["C1", "C2", "C3", "R1", "R2", "R3"]


def test_sections_are_compatible_on_all_pairs(ghz_cp, pm_cp):
    for s in global_sections(ghz_cp, spectral_presheaf(ghz_cp)):
        assert is_compatible(ghz_cp, s)
    cp1 = build_context_poset([S("XXX"), S("XYY")])
    for s in global_sections(cp1, spectral_presheaf(cp1)):
        assert is_compatible(cp1, s)


def test_each_masa_section_matches_mermin_sign(ghz_cp):
    expected = {"V1": 1, "V2": -1, "V3": -1, "V4": -1}
    w = pseudostate(ghz(3), ghz_cp)
    for label, sign in expected.items():
        assert len(w[label]) == 4
        for c in w[label]:
            assert c.signs[0] * c.signs[1] * c.signs[2] == sign


def test_pseudostate_weights_are_quarter(ghz_cp):
    _, ctx = ghz_cp
    for c in pseudostate_sections(ghz(3), ctx["V3"]):
        assert joint_weight(ghz(3), ctx["V3"].generators, c.signs) == pytest.approx(0.25)


def all_built():
    cps = [builtin(n).context_poset() for n in ("ghz-or", "peres-mermin", "bell-parity")]
    cps.append(build_context_poset([S("XXX"), S("XYY")]))
    return cps


def test_functoriality_on_built_posets():
    for cp in all_built():
        p = cp.poset
        for w in range(len(p)):
            for c in characters(cp.context(w)):
                for v in range(len(p)):
                    if not p.leq(v, w):
                        continue
                    cv = restrict(c, cp.context(v))
                    for u in range(len(p)):
                        if p.leq(u, v):
                            assert restrict(cv, cp.context(u)) == restrict(c, cp.context(u))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sets(st.integers(0, 7)), min_size=10, max_size=10))
def test_monotone_in_local_sets(drops):
    cp = builtin("ghz-or").context_poset()
    full = spectral_presheaf(cp)
    small = {l: [c for k, c in enumerate(cs) if k not in d] for (l, cs), d in zip(full.items(), drops)}
    big_sections = {s for s in global_sections(cp, full)}
    assert set(global_sections(cp, small)) <= big_sections
