from itertools import product

import pytest
from hypothesis import given, strategies as st

from locinv.categories import (
    canonical_morphism,
    classify_category,
    epi_component,
    factorise,
    hom_count_oracle,
    image,
    left_ideal_category,
    right_ideal_category,
    verify_category_axioms,
    verify_subobject_structure,
)
from locinv.errors import InputError, NoFactorisation, NotInHomSet, NotRegular
from locinv.fixtures import all_semigroups, b2, corpus, lz2, null_semigroup, sl2, t2
from locinv.formats import format_socat, parse_socat
from locinv.semigroup import is_locally_inverse, is_regular

REGULAR = [S for S in all_semigroups(3) if is_regular(S).holds]
regular = st.sampled_from(REGULAR)


def idx(S, label):
    return S.labels.index(label)


def mor(C, e, u, f):
    S = C.source
    return canonical_morphism(C, idx(S, e), idx(S, u), idx(S, f))


# ---------------------------------------------------------------- construction

@pytest.mark.parametrize("S, side, objs, mors", [
    (sl2(), "left", 2, 5),
    (sl2(), "right", 2, 5),
    (b2(), "left", 3, 13),
    (b2(), "right", 3, 13),
    (lz2(), "left", 1, 1),
    (lz2(), "right", 2, 4),
])
def test_ideal_category_sizes(S, side, objs, mors):
    C = left_ideal_category(S) if side == "left" else right_ideal_category(S)
    assert (C.n_objects, C.n_morphisms) == (objs, mors)
    assert verify_category_axioms(C)


def test_sl2_hom_sets():
    C = left_ideal_category(sl2())
    c0, c1 = C.object_of_idempotent[0], C.object_of_idempotent[1]
    assert len(C.hom(c1, c1)) == 2
    assert all(len(C.hom(a, b)) == 1 for a, b in [(c0, c0), (c0, c1), (c1, c0)])


def test_not_regular_rejected():
    with pytest.raises(NotRegular):
        left_ideal_category(null_semigroup(3))
    with pytest.raises(NotRegular):
        right_ideal_category(null_semigroup(3))


def test_canonical_morphism_collapses_l_classes():
    C = left_ideal_category(b2())
    S = C.source
    R = left_ideal_category(lz2())
    # both idempotents of LZ2 generate S, so every triple is the identity
    assert {canonical_morphism(R, e, u, f) for e in (0, 1) for u in (0, 1) for f in (0, 1)
            if R.source.prod(e, u, f) == u} == {R.identity[0]}
    assert mor(C, "11", "11", "11") == C.identity[C.object_of_idempotent[idx(S, "11")]]
    with pytest.raises(NotInHomSet):
        mor(C, "11", "22", "11")


def test_sl2_zero_composition():
    C = left_ideal_category(sl2())
    m = canonical_morphism(C, 1, 0, 1)
    assert C.comp[m][m] == m


@given(regular)
def test_morphism_count_matches_oracle(S):
    assert left_ideal_category(S).n_morphisms == hom_count_oracle(S, "left")
    assert right_ideal_category(S).n_morphisms == hom_count_oracle(S, "right")


@given(regular)
def test_axioms_and_subobjects(S):
    for C in (left_ideal_category(S), right_ideal_category(S)):
        assert verify_category_axioms(C)
        rep = verify_subobject_structure(C)
        assert rep.holds, rep.witnesses
        for c in range(C.n_objects):
            assert C.inclusion[(c, c)] == C.identity[c]


# ---------------------------------------------------------------- subobjects and meets

def test_b2_semilattice():
    C = left_ideal_category(b2())
    S = C.source
    rep = verify_subobject_structure(C)
    assert rep.holds and rep.is_semilattice
    c0, c1, c2 = (C.object_of_idempotent[idx(S, x)] for x in ("0", "11", "22"))
    assert C.meet(c1, c2) == c0


def test_t2_not_semilattice():
    C = left_ideal_category(t2())
    S = C.source
    rep = verify_subobject_structure(C)
    assert rep.holds and not rep.is_semilattice
    a, b = (C.object_of_idempotent[idx(S, x)] for x in ("c1", "c2"))
    assert C.meet(a, b) is None


def test_sl2_chain():
    C = left_ideal_category(sl2())
    rep = verify_subobject_structure(C)
    assert rep.is_semilattice
    assert C.leq(C.object_of_idempotent[0], C.object_of_idempotent[1])


# ---------------------------------------------------------------- factorisation

def test_sl2_factorisation():
    C = left_ideal_category(sl2())
    fs = factorise(C, canonical_morphism(C, 1, 0, 1))
    assert len(fs) == 1
    f = fs[0]
    assert f.retraction == canonical_morphism(C, 1, 0, 0)
    assert f.iso == C.identity[C.object_of_idempotent[0]]
    assert f.inclusion == canonical_morphism(C, 0, 0, 1)


def test_identity_factorises_trivially():
    C = left_ideal_category(b2())
    for c in range(C.n_objects):
        i = C.identity[c]
        assert any(f.retraction == f.iso == f.inclusion == i for f in factorise(C, i))


def test_no_factorisation_raises():
    C = left_ideal_category(sl2())
    # drop every retraction by forging an empty cache entry
    C._fact_cache[C.identity[0]] = ()
    with pytest.raises(NoFactorisation):
        epi_component(C, C.identity[0])


def test_inverse_factorisation_objects():
    C = left_ideal_category(b2())
    S = C.source
    u = idx(S, "12")
    m = canonical_morphism(C, idx(S, "11"), u, idx(S, "22"))
    (f,) = factorise(C, m)
    uu, u_u = S.mul(u, idx(S, "21")), S.mul(idx(S, "21"), u)
    assert f.coimage == C.object_of_idempotent[uu]
    assert f.image == C.object_of_idempotent[u_u] == image(C, m)


@given(regular)
def test_factorisation_invariants(S):
    C = left_ideal_category(S)
    li = is_locally_inverse(S).holds
    for m in range(C.n_morphisms):
        fs = factorise(C, m)
        assert fs
        if li:
            assert len(fs) == 1
        for f in fs:
            assert C.compose(f.retraction, f.iso, f.inclusion) == m
            assert C.is_retraction(f.retraction) and C.is_iso(f.iso) and f.inclusion in C.inclusion_set
            assert C.is_epi(f.epi_component)
            # epi component is left-cancellative against every parallel pair
            e = f.epi_component
            for g, h in product(range(C.n_morphisms), repeat=2):
                if g != h and C.dom[g] == C.dom[h] == C.cod[e] and C.cod[g] == C.cod[h]:
                    assert C.comp[e][g] != C.comp[e][h]
    for (c, d), ts in C.retractions.items():
        if li:
            assert len(ts) == 1
        for t in ts:
            assert C.comp[C.inclusion[(c, d)]][t] == C.identity[c]


# ---------------------------------------------------------------- classification

def test_verdicts():
    assert classify_category(left_ideal_category(b2())).verdict == "unambiguous"
    rep = classify_category(left_ideal_category(t2()))
    assert rep.verdict == "normal"
    assert not (rep.splits_unique and rep.factorisations_unique)
    assert classify_category(left_ideal_category(lz2())).verdict == "unambiguous"


@given(regular)
def test_normal_and_unambiguous_iff_locally_inverse(S):
    for C in (left_ideal_category(S), right_ideal_category(S)):
        rep = classify_category(C)
        assert rep.is_normal, rep.witnesses
        assert rep.is_unambiguous == is_locally_inverse(S).holds
        for flag in ("splits_unique", "factorisations_unique"):
            if not getattr(rep, flag):
                assert flag in rep.witnesses


def test_corpus_verdicts():
    for name, S in corpus().items():
        if not is_regular(S).holds:
            continue
        rep = classify_category(left_ideal_category(S))
        assert rep.is_normal, name
        assert rep.is_unambiguous == is_locally_inverse(S).holds, name


# ---------------------------------------------------------------- file format

@pytest.mark.parametrize("S", [sl2(), b2(), t2()])
def test_socat_round_trip(S):
    C = left_ideal_category(S)
    D = parse_socat(format_socat(C))
    assert (D.n_objects, D.n_morphisms) == (C.n_objects, C.n_morphisms)
    assert D.comp == C.comp and D.identity == C.identity and D.inclusion == C.inclusion
    assert classify_category(D).verdict == classify_category(C).verdict


@pytest.mark.parametrize("text", [
    "",
    "objects 1\nhom 0 0 : 0\n",                      # missing composite
    "objects 1\nhom 0 0 : 0\ncompose 0 0 5\n",       # bad composite
    "objects 1\nhom 0 1 : 0\ncompose 0 0 0\n",       # endpoint out of range
    "objects 1\nhom 0 0 : 0 1\ncompose 0 0 1\ncompose 0 1 1\ncompose 1 0 1\ncompose 1 1 1\n",  # no identity
    "objects 1\nfoo\n",
])
def test_socat_rejects_malformed(text):
    with pytest.raises(InputError):
        parse_socat(text)
