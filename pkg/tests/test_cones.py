from itertools import product

import pytest
from hypothesis import given, strategies as st

from locinv.categories import canonical_morphism, classify_category, left_ideal_category
from locinv.config import DEFAULT_LIMITS
from locinv.cones import (
    cone_apply,
    cone_compose,
    cone_order_facts,
    cone_semigroup,
    cone_violation,
    enumerate_normal_cones,
    is_idempotent_cone,
    make_cone,
    principal_cone,
    rho_map,
    verify_representation,
)
from locinv.errors import DomainMismatch, NotEpimorphism, SizeGuard
from locinv.fixtures import all_semigroups, b2, corpus, lz2, sl2
from locinv.isomorphism import find_isomorphism
from locinv.semigroup import is_locally_inverse, is_regular

REGULAR = [S for S in all_semigroups(3) if is_regular(S).holds]
regular = st.sampled_from(REGULAR)


def idx(S, label):
    return S.labels.index(label)


# ---------------------------------------------------------------- enumeration

@pytest.mark.parametrize("S, count", [(sl2(), 2), (lz2(), 1), (b2(), 7)])
def test_cone_counts(S, count):
    assert len(enumerate_normal_cones(left_ideal_category(S))) == count


def test_size_guard():
    C = left_ideal_category(b2())
    with pytest.raises(SizeGuard):
        enumerate_normal_cones(C, DEFAULT_LIMITS.with_(max_cone_candidates=1))


@given(regular)
def test_enumerated_cones_are_normal_and_distinct(S):
    C = left_ideal_category(S)
    cones = enumerate_normal_cones(C)
    assert len(set(cones)) == len(cones)
    for g in cones:
        assert cone_violation(C, g) is None
        assert g.m_set and all(C.is_iso(g[c]) for c in g.m_set)


# ---------------------------------------------------------------- principal cones

def test_principal_cone_sl2():
    C = left_ideal_category(sl2())
    g = principal_cone(C, 0)
    c0, c1 = C.object_of_idempotent[0], C.object_of_idempotent[1]
    assert g.apex == c0
    assert g[c0] == canonical_morphism(C, 0, 0, 0)
    assert g[c1] == canonical_morphism(C, 1, 0, 0)


def test_principal_cone_of_idempotent_has_identity_component():
    for S in (sl2(), b2(), lz2()):
        C = left_ideal_category(S)
        for e in S.idempotents:
            c = C.object_of_idempotent[e]
            assert principal_cone(C, e)[c] == C.identity[c]


def test_principal_cone_b2():
    S = b2()
    C = left_ideal_category(S)
    g = principal_cone(C, idx(S, "12"))
    assert g.apex == C.object_of_idempotent[idx(S, "22")]
    assert g.m_set == {C.object_of_idempotent[idx(S, "11")]}


@given(regular)
def test_principal_cones_normal_and_multiplicative(S):
    C = left_ideal_category(S)
    CS = cone_semigroup(C)
    rho = rho_map(C, CS)
    for a in range(S.order):
        assert cone_violation(C, principal_cone(C, a)) is None
    for a, b in product(range(S.order), repeat=2):
        assert rho[S.mul(a, b)] == CS.mul(rho[a], rho[b])


# ---------------------------------------------------------------- products

def test_cone_apply():
    C = left_ideal_category(sl2())
    g1 = principal_cone(C, 1)
    assert cone_apply(C, g1, C.identity[g1.apex]) == g1
    assert cone_apply(C, g1, canonical_morphism(C, 1, 0, 0)) == principal_cone(C, 0)


def test_cone_apply_errors():
    C = left_ideal_category(sl2())
    g1 = principal_cone(C, 1)
    # ρ(1,0,1) is not an epimorphism
    with pytest.raises(NotEpimorphism):
        cone_apply(C, g1, canonical_morphism(C, 1, 0, 1))
    with pytest.raises(DomainMismatch):
        cone_apply(C, g1, canonical_morphism(C, 0, 0, 1))


def test_cone_compose_examples():
    C = left_ideal_category(sl2())
    r0, r1 = principal_cone(C, 0), principal_cone(C, 1)
    assert cone_compose(C, r0, r1) == r0
    assert cone_compose(C, r1, r1) == r1


def test_b2_tuple_product():
    S = b2()
    C = left_ideal_category(S)
    c1, c2 = (C.object_of_idempotent[idx(S, x)] for x in ("11", "22"))
    # support (1,1) over the two nonzero objects, apex c1 or c2
    by_key = {}
    for g in enumerate_normal_cones(C):
        support = tuple(c in g.m_set or C.is_iso(g[c]) for c in (c1, c2))
        by_key[(support, g.apex)] = g
    g1, g2 = by_key[((True, True), c1)], by_key[((True, True), c2)]
    assert cone_compose(C, g1, g2) == g2


@given(regular)
def test_cone_semigroup_structure(S):
    C = left_ideal_category(S)
    CS = cone_semigroup(C)
    n = len(CS)
    for i, j, k in product(range(n), repeat=3):
        assert CS.mul(CS.mul(i, j), k) == CS.mul(i, CS.mul(j, k))
    for i, g in enumerate(CS.cones):
        assert (CS.mul(i, i) == i) == (g[g.apex] == C.identity[g.apex]) == is_idempotent_cone(C, g)
    assert is_regular(CS.as_semigroup).holds
    if classify_category(C).is_unambiguous:
        assert is_locally_inverse(CS.as_semigroup).holds


def test_cone_semigroup_examples():
    CS = cone_semigroup(left_ideal_category(sl2()))
    assert find_isomorphism(CS.as_semigroup, sl2()) is not None
    CB = cone_semigroup(left_ideal_category(b2()))
    assert len(CB) == 7 and is_locally_inverse(CB.as_semigroup).holds
    assert find_isomorphism(CB.as_semigroup, b2()) is None
    assert len(cone_semigroup(left_ideal_category(lz2()))) == 1


def test_unambiguous_corpus_cone_semigroups():
    for name, S in corpus().items():
        if not is_regular(S).holds:
            continue
        C = left_ideal_category(S)
        if classify_category(C).is_unambiguous:
            assert is_locally_inverse(cone_semigroup(C).as_semigroup).holds, name


# ---------------------------------------------------------------- order facts

@pytest.mark.parametrize("S", [sl2(), b2(), lz2()])
def test_cone_order_facts(S):
    CS = cone_semigroup(left_ideal_category(S))
    assert cone_order_facts(CS) == []


def test_sl2_order():
    C = left_ideal_category(sl2())
    CS = cone_semigroup(C)
    r0, r1 = CS.index[principal_cone(C, 0)], CS.index[principal_cone(C, 1)]
    assert CS.mul(r0, r1) == r0 == CS.mul(r1, r0)
    assert C.leq(CS.cones[r0].apex, CS.cones[r1].apex)


@given(regular)
def test_order_facts_exhaustive(S):
    assert cone_order_facts(cone_semigroup(left_ideal_category(S))) == []


# ---------------------------------------------------------------- representation

@pytest.mark.parametrize("S", [sl2(), b2()])
def test_representation_isomorphism(S):
    rep = verify_representation(left_ideal_category(S))
    assert rep.is_isomorphism and rep.rho_homomorphism and rep.rho_injective


def test_lz2_injectivity_matches_right_regular():
    rep = verify_representation(left_ideal_category(lz2()))
    assert rep.is_isomorphism
    assert rep.rho_injective is False and rep.injectivity_agrees


@given(regular)
def test_representation_on_small_tables(S):
    C = left_ideal_category(S)
    rep = verify_representation(C)
    assert rep.functor_ok and rep.rho_homomorphism and rep.injectivity_agrees
    if classify_category(C).is_unambiguous:
        assert rep.is_isomorphism


def test_make_cone_records_m_set():
    C = left_ideal_category(sl2())
    g = principal_cone(C, 1)
    assert make_cone(C, g.apex, g.components).m_set == g.m_set
