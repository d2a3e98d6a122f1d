from itertools import product

import pytest
from hypothesis import given, strategies as st

from locinv.errors import NonAssociative, NotIdempotent, OutOfRange, SizeGuard
from locinv.config import DEFAULT_LIMITS
from locinv.fixtures import all_semigroups, b2, lz2, m9, named, null_semigroup, rz2, sl2, t2, z2
from locinv.isomorphism import find_isomorphism, invert_map
from locinv.semigroup import (
    adjoin_identity,
    classify,
    direct_product,
    from_cayley_table,
    green_data,
    idempotents_and_inverses,
    inverses_of,
    is_inverse,
    is_locally_inverse,
    is_regular,
    local_submonoid,
    relabel,
    separation_by_idempotents,
)

SMALL = all_semigroups(3)
small = st.sampled_from(SMALL)


def idx(S, label):
    return S.labels.index(label)


# ---------------------------------------------------------------- construction

def test_sl2_table_has_zero():
    S = from_cayley_table([[0, 0], [0, 1]])
    assert S.zero == 0 and S.order == 2


def test_non_associative_triple():
    with pytest.raises(NonAssociative) as exc:
        from_cayley_table([[1, 0], [0, 0]])
    assert exc.value.triple == (0, 0, 1)


def test_z2_has_no_zero():
    assert z2().zero is None and z2().identity == 0


def test_out_of_range_entry():
    with pytest.raises(OutOfRange):
        from_cayley_table([[0, 2], [1, 0]])


def test_adjoin_identity():
    assert adjoin_identity(lz2()).order == 3
    assert adjoin_identity(z2()) is not None and adjoin_identity(z2()).order == 2
    assert adjoin_identity(sl2()).order == 2


def test_exhaustive_table_count():
    # associative tables on {0..n-1}, not up to isomorphism: 1 + 8 + 113
    assert [sum(1 for S in SMALL if S.order == n) for n in (1, 2, 3)] == [1, 8, 113]
    regular = [S for S in SMALL if is_regular(S).holds]
    assert len(regular) == 57
    assert sum(is_locally_inverse(S).holds for S in SMALL) == 51
    assert sum(is_inverse(S).holds for S in SMALL) == 29


# ---------------------------------------------------------------- Green's relations

def test_green_lz2():
    g = green_data(lz2())
    assert len(g.classes("l")) == 1 and len(g.classes("r")) == 2


def test_green_b2():
    S = b2()
    g = green_data(S)
    lab = lambda cls: sorted(tuple(S.labels[a] for a in c) for c in cls)
    assert lab(g.classes("l")) == [("0",), ("11", "21"), ("12", "22")]
    assert lab(g.classes("r")) == [("0",), ("11", "12"), ("21", "22")]


def test_green_z2_single_h_class():
    assert len(green_data(z2()).classes("h")) == 1


def _ideal(S, a, side):
    elems = set(range(S.order))
    if side == "left":
        return frozenset({S.mul(x, a) for x in elems} | {a})
    return frozenset({S.mul(a, x) for x in elems} | {a})


@given(small)
def test_green_against_ideal_oracle(S):
    g = green_data(S)
    for a, b in product(range(S.order), repeat=2):
        assert (g.lclass[a] == g.lclass[b]) == (_ideal(S, a, "left") == _ideal(S, b, "left"))
        assert (g.rclass[a] == g.rclass[b]) == (_ideal(S, a, "right") == _ideal(S, b, "right"))
        assert (g.hclass[a] == g.hclass[b]) == (g.lclass[a] == g.lclass[b] and g.rclass[a] == g.rclass[b])
    assert g.lr_commute


@given(small)
def test_idempotent_green_criteria(S):
    if not is_regular(S).holds:
        return
    g = green_data(S)
    for e, f in product(S.idempotents, repeat=2):
        assert (g.lclass[e] == g.lclass[f]) == (S.mul(e, f) == e and S.mul(f, e) == f)
        assert (g.rclass[e] == g.rclass[f]) == (S.mul(e, f) == f and S.mul(f, e) == e)
        assert ((f, e) in g.leq) == ((f, e) in g.leq_l and (f, e) in g.leq_r)
    for e in S.idempotents:
        assert g.omega[e] == g.omega_l[e] & g.omega_r[e]


# ---------------------------------------------------------------- inverses and classes

def test_inverses_b2():
    S = b2()
    assert inverses_of(S, idx(S, "12")) == {idx(S, "21")}
    assert inverses_of(sl2(), 0) == {0}


def test_null_semigroup_not_regular():
    inv = idempotents_and_inverses(null_semigroup(3))
    assert not inv.is_regular and inv.witness is not None


def test_inverse_examples():
    assert is_inverse(b2()).holds and is_inverse(sl2()).holds
    v = is_inverse(t2())
    assert not v.holds
    S = t2()
    # two R-related constant idempotents
    assert set(v.witness) == {idx(S, "c1"), idx(S, "c2")}


def test_locally_inverse_examples():
    S = t2()
    v = is_locally_inverse(S)
    assert not v.holds
    assert tuple(S.labels[a] for a in v.witness) == ("c1", "c2", "id")
    assert is_locally_inverse(lz2()).holds and is_locally_inverse(b2()).holds


@given(small)
def test_class_inclusions_and_witnesses(S):
    c = classify(S)
    assert not c.is_inverse or c.is_locally_inverse
    assert not c.is_locally_inverse or c.is_regular
    inv = idempotents_and_inverses(S)
    if not c.is_regular:
        (a,) = c.witnesses["regular"]
        assert not any(S.mul(S.mul(a, x), a) == a for x in range(S.order))
    # inverse iff regular with commuting idempotents, by direct check
    commuting = all(S.mul(e, f) == S.mul(f, e) for e, f in product(S.idempotents, repeat=2))
    assert c.is_inverse == (inv.is_regular and commuting)
    assert c.is_inverse == (inv.is_regular and all(len(x) == 1 for x in inv.inverses))


@given(small)
def test_local_inversity_oracle(S):
    """Locally inverse iff regular and every eSe has commuting idempotents and is regular."""
    if not is_regular(S).holds:
        assert not is_locally_inverse(S).holds
        return
    ok = True
    for e in S.idempotents:
        L = local_submonoid(S, e)
        ok &= is_inverse(L.semigroup).holds
    assert is_locally_inverse(S).holds == ok


# ---------------------------------------------------------------- local submonoids and separation

def test_local_submonoids():
    S = t2()
    assert local_submonoid(S, idx(S, "id")).order == 4
    B = b2()
    L = local_submonoid(B, idx(B, "11"))
    assert sorted(B.labels[x] for x in L.index_map) == ["0", "11"]
    assert local_submonoid(sl2(), 1).order == 2
    with pytest.raises(NotIdempotent):
        local_submonoid(B, idx(B, "12"))


@given(small)
def test_local_submonoid_is_restriction(S):
    for e in S.idempotents:
        L = local_submonoid(S, e)
        for i, x in enumerate(L.index_map):
            for j, y in enumerate(L.index_map):
                assert L.index_map[L.semigroup.mul(i, j)] == S.mul(x, y)


def test_separation_examples():
    assert separation_by_idempotents(b2())[0]
    assert separation_by_idempotents(sl2())[0]
    assert separation_by_idempotents(lz2()) == (True, None)
    assert not separation_by_idempotents(rz2())[0]


# ---------------------------------------------------------------- isomorphism oracle

def test_isomorphism_examples():
    assert find_isomorphism(sl2(), sl2()) == (0, 1)
    assert find_isomorphism(lz2(), rz2()) is None
    assert find_isomorphism(z2(), sl2()) is None


def test_size_guard():
    S = direct_product(m9(), m9())
    with pytest.raises(SizeGuard):
        find_isomorphism(S, S, DEFAULT_LIMITS.with_(max_order=10))


@given(small, st.randoms(use_true_random=False))
def test_isomorphism_finds_relabelings(S, rnd):
    perm = list(range(S.order))
    rnd.shuffle(perm)
    T = relabel(S, perm)
    phi = find_isomorphism(S, T)
    assert phi is not None
    assert all(phi[S.mul(a, b)] == T.mul(phi[a], phi[b]) for a in range(S.order) for b in range(S.order))
    back = find_isomorphism(T, S)
    assert back is not None
    inv = invert_map(phi)
    assert all(inv[T.mul(a, b)] == S.mul(inv[a], inv[b]) for a in range(T.order) for b in range(T.order))


def test_isomorphism_agrees_with_brute_force_on_order_three():
    from itertools import permutations

    threes = [S for S in SMALL if S.order == 3][:25]
    for S in threes:
        for T in threes:
            brute = any(all(p[S.mul(a, b)] == T.mul(p[a], p[b]) for a in range(3) for b in range(3))
                        for p in permutations(range(3)))
            assert (find_isomorphism(S, T) is not None) == brute


def test_named_m9_is_brandt():
    S = named("M9")
    assert S.order == 9 and is_inverse(S).holds
