from dataclasses import replace

import pytest

from locinv.categories import canonical_morphism, left_ideal_category, right_ideal_category
from locinv.cones import principal_cone
from locinv.errors import AxiomViolation, NotInverse, NotInversive
from locinv.fixtures import all_semigroups, b2, b2_monoid, corpus, lz2, m9, sl2, t2, z2
from locinv.isomorphism import find_isomorphism
from locinv.inverse import (
    category_round_trip,
    category_to_groupoid,
    classify_inversive,
    core_and_inversive_factorisation,
    groupoid_from_semigroup_matches,
    groupoid_round_trip,
    groupoid_to_category,
    groupoid_violations,
    inductive_groupoid_of,
    inversive_cone_semigroup,
    inversive_decomposition,
    is_inversive_cone,
    idempotent_retraction_failures,
    m_object,
    phi_check,
    rho_iso_check,
    verify_groupoid,
)
from locinv.semigroup import homomorphisms, is_inverse

INVERSE_SMALL = [S for S in all_semigroups(3) if is_inverse(S).holds]
INVERSE_FIXTURES = {k: S for k, S in corpus().items() if is_inverse(S).holds}


def idx(S, label):
    return S.labels.index(label)


def table_id(S):
    return "".join(map(str, sum(S.table, ())))


# ---------------------------------------------------------------- core and factorisation

def test_sl2_core():
    C = left_ideal_category(sl2())
    rep = core_and_inversive_factorisation(C)
    assert rep.holds and len(rep.morphisms) == 5
    m = canonical_morphism(C, 1, 0, 1)
    q, i, d = rep.factorisation[m]
    assert q == canonical_morphism(C, 1, 0, 0) and i == canonical_morphism(C, 0, 0, 1)
    assert d == C.object_of_idempotent[0]


def test_b2_core_collapses_zigzags():
    C = left_ideal_category(b2())
    rep = core_and_inversive_factorisation(C)
    assert rep.holds and not rep.non_identity_isos
    for f, (q, i, d) in rep.factorisation.items():
        assert C.comp[q][i] == f


def test_identity_factorisation_trivial():
    C = left_ideal_category(b2())
    rep = core_and_inversive_factorisation(C)
    for c in range(C.n_objects):
        q, i, d = rep.factorisation[C.identity[c]]
        assert q == i == C.identity[c] and d == c


# ---------------------------------------------------------------- classification

@pytest.mark.parametrize("name", sorted(INVERSE_FIXTURES))
def test_inverse_fixtures_inversive(name):
    S = INVERSE_FIXTURES[name]
    rep = classify_inversive(left_ideal_category(S))
    assert rep.is_inversive, rep.witnesses
    C = left_ideal_category(S)
    # μ_c is ρ^e for the idempotent e of c
    for c in range(C.n_objects):
        assert rep.unique_inversive_idempotent[c] == principal_cone(C, C.object_payload[c])
    assert len(set(rep.unique_inversive_idempotent.values())) == C.n_objects


def test_t2_fails_ic1():
    rep = classify_inversive(left_ideal_category(t2()))
    assert not rep.ic1 and not rep.ic3 and not rep.is_inversive
    S = t2()
    C = left_ideal_category(S)
    pair = rep.witnesses["ic1"]
    assert {C.object_payload[c] for c in pair} == {idx(S, "c1"), idx(S, "c2")}


def test_r_lz2_fails_ic1():
    rep = classify_inversive(right_ideal_category(lz2()))
    assert not rep.ic1 and rep.witnesses["ic1"] == (0, 1)


def test_l_lz2_is_trivially_inversive():
    assert classify_inversive(left_ideal_category(lz2())).is_inversive


@pytest.mark.parametrize("S", INVERSE_SMALL, ids=table_id)
def test_ic_flags_agree_with_classification(S):
    from locinv.categories import classify_category

    C = left_ideal_category(S)
    rep = classify_inversive(C)
    cat = classify_category(C)
    assert rep.ic2 == (cat.all_inclusions_split and cat.splits_unique)
    assert rep.ic3 == (cat.all_factorable and cat.factorisations_unique)
    assert rep.is_inversive


# ---------------------------------------------------------------- inversive cones and C̃

@pytest.mark.parametrize("S, size", [(b2(), 5), (sl2(), 2), (z2(), 2), (m9(), 9), (b2_monoid(), 6)])
def test_inversive_cone_semigroup(S, size):
    C = left_ideal_category(S)
    T = inversive_cone_semigroup(C)
    assert len(T) == size
    assert is_inverse(T.as_semigroup).holds
    assert find_isomorphism(T.as_semigroup, S) is not None
    for g in T.cones:
        assert is_inversive_cone(C, g) and len(g.m_set) == 1 and m_object(g) in g.m_set
        mu, u, ok = inversive_decomposition(C, g, T.mu)
        assert ok


def test_b2_excludes_two_support_cones():
    C = left_ideal_category(b2())
    rep = classify_inversive(C)
    excluded = [g for k, g in enumerate(rep.cones) if k not in rep.inversive]
    assert len(excluded) == 2 and all(len(g.m_set) == 2 for g in excluded)


def test_inversive_cone_semigroup_guards():
    with pytest.raises(NotInversive):
        inversive_cone_semigroup(right_ideal_category(lz2()))
    with pytest.raises(NotInversive):
        inversive_cone_semigroup(left_ideal_category(t2()))


@pytest.mark.parametrize("name", sorted(INVERSE_FIXTURES))
def test_idempotent_retraction_stays_inversive(name):
    C = left_ideal_category(INVERSE_FIXTURES[name])
    assert idempotent_retraction_failures(C, classify_inversive(C)) == []


# ---------------------------------------------------------------- ρ isomorphism

@pytest.mark.parametrize("S, size", [(b2(), 5), (sl2(), 2), (z2(), 2)])
def test_rho_iso_examples(S, size):
    rep = rho_iso_check(S)
    assert rep.is_isomorphism and rep.tilde_order == size
    assert rep.inversive_equals_principal and rep.right_reductive


@pytest.mark.parametrize("S", INVERSE_SMALL, ids=table_id)
def test_rho_iso_small(S):
    rep = rho_iso_check(S)
    assert rep.is_isomorphism and rep.tilde_order == S.order, rep.witnesses


def test_rho_iso_rejects_non_inverse():
    with pytest.raises(NotInverse):
        rho_iso_check(lz2())


# ---------------------------------------------------------------- inductive groupoids

def test_groupoid_b2():
    S = b2()
    G = inductive_groupoid_of(S)
    assert (G.n_objects, G.n_morphisms) == (3, 5)
    zero_obj = G.d[idx(S, "0")]
    assert G.restrict[(zero_obj, idx(S, "12"))] == idx(S, "0")


def test_groupoid_small_examples():
    G = inductive_groupoid_of(sl2())
    assert (G.n_objects, G.n_morphisms) == (2, 2)
    assert all(G.d[x] == G.r[x] for x in range(2))
    G = inductive_groupoid_of(z2())
    assert (G.n_objects, G.n_morphisms) == (1, 2)
    with pytest.raises(NotInverse):
        inductive_groupoid_of(lz2())


@pytest.mark.parametrize("S", INVERSE_SMALL, ids=table_id)
def test_groupoid_axioms_small(S):
    assert groupoid_violations(inductive_groupoid_of(S)) == {}


def test_groupoid_fault_injection():
    G = inductive_groupoid_of(b2())
    strict = next(p for p in G.leq if p[0] != p[1])
    broken = replace(G, leq=G.leq - {strict})
    assert groupoid_violations(broken)
    with pytest.raises(AxiomViolation):
        verify_groupoid(broken)
    with pytest.raises(AxiomViolation):
        groupoid_to_category(broken)


def test_groupoid_category_identity_and_zero():
    S = b2()
    G = inductive_groupoid_of(S)
    GC = groupoid_to_category(G)
    C = GC.category
    for e in range(G.n_objects):
        i = C.payload_index[(e, G.identity[e], e)]
        assert i == C.identity[e]
    e11, z = (G.d[idx(S, x)] for x in ("11", "0"))
    a = C.payload_index[(e11, idx(S, "11"), e11)]
    # a retraction onto the zero object followed by its inclusion factors through 0
    inc = C.inclusion[(z, e11)]
    f = C.comp[C.comp[a][C.retractions[(z, e11)][0]]][inc]
    assert C.morphism_payload[f][1] == idx(S, "0")
    assert len(GC.cones) == G.n_morphisms


@pytest.mark.parametrize("name", sorted(INVERSE_FIXTURES))
def test_round_trips(name):
    S = INVERSE_FIXTURES[name]
    G = inductive_groupoid_of(S)
    _, bad = groupoid_round_trip(G)
    assert bad is None
    D, ok, found = category_round_trip(left_ideal_category(S), search=S.order <= 9)
    assert ok and found is not False
    assert groupoid_from_semigroup_matches(S) is None


@pytest.mark.parametrize("S", INVERSE_SMALL, ids=table_id)
def test_round_trips_small(S):
    assert groupoid_round_trip(inductive_groupoid_of(S))[1] is None
    _, ok, found = category_round_trip(left_ideal_category(S))
    assert ok and found
    assert groupoid_from_semigroup_matches(S) is None


def test_category_to_groupoid_sl2_identities_only():
    G = category_to_groupoid(left_ideal_category(sl2()))
    assert G.n_morphisms == G.n_objects == 2


# ---------------------------------------------------------------- homomorphism functors

def test_phi_checks_on_fixture_homomorphisms():
    cache = {}
    sems = [sl2(), z2(), b2()]
    count = 0
    for S1 in sems:
        for S2 in sems:
            for phi in homomorphisms(S1, S2):
                rep = phi_check(S1, S2, phi, cache=cache)
                assert rep.ok, rep.witnesses
                count += 1
    assert count > 0
