"""Finite semigroups given by Cayley tables: Green's relations, idempotent
preorders and the inverse / locally inverse classification.

Elements are the integers ``0..n-1``; ``S.mul(a, b)`` is the table entry.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

import numpy as np

from .errors import (
    InternalDisagreement,
    NonAssociative,
    NotIdempotent,
    OutOfRange,
    InputError,
)


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    table: tuple
    labels: tuple = None
    zero: int | None = None

    def __post_init__(self):
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(self.table))))

    @property
    def order(self):
        return len(self.table)

    def __len__(self):
        return len(self.table)

    def __repr__(self):
        return f"FiniteSemigroup(order={self.order}, zero={self.zero})"

    def mul(self, a, b):
        return self.table[a][b]

    def prod(self, *xs):
        r = xs[0]
        for x in xs[1:]:
            r = self.table[r][x]
        return r

    def label(self, a):
        return self.labels[a]

    @cached_property
    def array(self):
        return np.asarray(self.table, dtype=np.int64).reshape(self.order, self.order)

    @cached_property
    def idempotents(self):
        return tuple(e for e in range(self.order) if self.table[e][e] == e)

    @cached_property
    def identity(self):
        n = self.order
        for e in range(n):
            if all(self.table[e][x] == x == self.table[x][e] for x in range(n)):
                return e
        return None

    def same_table(self, other):
        return self.table == other.table


def first_associativity_failure(table):
    """Return the lexicographically first failing triple or ``None``."""
    T = np.asarray(table, dtype=np.int64)
    n = T.shape[0]
    if n == 0:
        return None
    lhs = T[T]                                   # (ab)c
    rhs = T[np.arange(n)[:, None, None], T[None, :, :]]   # a(bc)
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return None
    return tuple(int(v) for v in bad[0])


def find_zero(table):
    n = len(table)
    for z in range(n):
        if all(table[z][x] == z == table[x][z] for x in range(n)):
            return z
    return None


def from_cayley_table(grid, labels=None, zero_hint=None):
    """Validate ``grid`` and wrap it as a :class:`FiniteSemigroup`."""
    rows = [list(r) for r in grid]
    n = len(rows)
    for i, row in enumerate(rows):
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool) or not 0 <= v < n:
                raise OutOfRange(i, j, v)
    table = tuple(tuple(int(v) for v in r) for r in rows)
    bad = first_associativity_failure(table)
    if bad is not None:
        raise NonAssociative(*bad)
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise InputError("labels must be distinct, one per element")
    zero = find_zero(table)
    if zero_hint is not None and zero_hint != zero:
        raise InputError(f"element {zero_hint} is not a two-sided zero")
    return FiniteSemigroup(table, labels, zero)


def adjoin_identity(S):
    """S¹: ``S`` itself if it is a monoid, else ``S`` plus a fresh identity (last index)."""
    if S.identity is not None:
        return S
    n = S.order
    table = [list(r) + [i] for i, r in enumerate(S.table)]
    table.append(list(range(n + 1)))
    labels = tuple(S.labels) + ("1",) if "1" not in S.labels else tuple(S.labels) + (f"1_{n}",)
    return FiniteSemigroup(tuple(tuple(r) for r in table), labels, S.zero)


def direct_product(S, T):
    """Product semigroup; element ``(s, t)`` has index ``s * |T| + t``."""
    m = T.order
    elems = [(s, t) for s in range(S.order) for t in range(m)]
    table = tuple(
        tuple(S.mul(a[0], b[0]) * m + T.mul(a[1], b[1]) for b in elems) for a in elems
    )
    labels = tuple(f"({S.label(s)},{T.label(t)})" for s, t in elems)
    return FiniteSemigroup(table, labels, find_zero(table))


def relabel(S, perm):
    """Isomorphic copy in which old element ``a`` becomes ``perm[a]``."""
    n = S.order
    inv = [0] * n
    for a, p in enumerate(perm):
        inv[p] = a
    table = tuple(tuple(perm[S.mul(inv[x], inv[y])] for y in range(n)) for x in range(n))
    labels = tuple(S.labels[inv[x]] for x in range(n))
    return FiniteSemigroup(table, labels, None if S.zero is None else perm[S.zero])


# ---------------------------------------------------------------- Green

@dataclass(frozen=True, eq=False)
class GreenData:
    lclass: tuple
    rclass: tuple
    hclass: tuple
    dclass: tuple
    left_ideal: tuple        # S¹a per element
    right_ideal: tuple       # aS¹ per element
    leq_l: frozenset         # (e, f) with ef = e
    leq_r: frozenset         # (e, f) with fe = e
    leq: frozenset
    omega: dict
    omega_l: dict
    omega_r: dict
    lr_commute: bool = field(default=True)

    def classes(self, which):
        idx = getattr(self, which + "class")
        out = {}
        for a, c in enumerate(idx):
            out.setdefault(c, []).append(a)
        return [tuple(v) for _, v in sorted(out.items())]


def _class_index(keys):
    """Class id per element; ids numbered by least member."""
    seen = {}
    out = []
    for k in keys:
        if k not in seen:
            seen[k] = len(seen)
        out.append(seen[k])
    return tuple(out)


def green_data(S):
    n = S.order
    t = S.table
    left = tuple(frozenset([a] + [t[x][a] for x in range(n)]) for a in range(n))
    right = tuple(frozenset([a] + [t[a][x] for x in range(n)]) for a in range(n))
    L = _class_index(left)
    R = _class_index(right)
    H = _class_index(list(zip(L, R)))
    # L∘R and R∘L as relations; on finite semigroups they coincide and give D
    lr = {(a, c) for a in range(n) for b in range(n) for c in range(n) if L[a] == L[b] and R[b] == R[c]}
    rl = {(a, c) for a in range(n) for b in range(n) for c in range(n) if R[a] == R[b] and L[b] == L[c]}
    dkeys = [frozenset(c for c in range(n) if (a, c) in lr) for a in range(n)]
    D = _class_index(dkeys)
    E = S.idempotents
    leq_l = frozenset((e, f) for e in E for f in E if t[e][f] == e)
    leq_r = frozenset((e, f) for e in E for f in E if t[f][e] == e)
    leq = leq_l & leq_r
    omega = {f: frozenset(e for e in E if (e, f) in leq) for f in E}
    omega_l = {f: frozenset(e for e in E if (e, f) in leq_l) for f in E}
    omega_r = {f: frozenset(e for e in E if (e, f) in leq_r) for f in E}
    return GreenData(L, R, H, D, left, right, leq_l, leq_r, leq, omega, omega_l, omega_r, lr == rl)


@dataclass(frozen=True)
class Inverses:
    idempotents: tuple
    inverses: tuple          # sorted tuple of inverses per element
    is_regular: bool
    witness: tuple | None    # element without an inverse


def idempotents_and_inverses(S):
    n = S.order
    t = S.table
    inv = tuple(
        tuple(b for b in range(n) if t[t[a][b]][a] == a and t[t[b][a]][b] == b) for a in range(n)
    )
    missing = next((a for a in range(n) if not inv[a]), None)
    return Inverses(S.idempotents, inv, missing is None, None if missing is None else (missing,))


def inverses_of(S, a):
    return set(idempotents_and_inverses(S).inverses[a])


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: tuple | None
    conditions: dict          # condition name -> (bool, witness)

    def __bool__(self):
        return self.holds


@dataclass(frozen=True)
class Classification:
    is_regular: bool
    is_inverse: bool
    is_locally_inverse: bool
    witnesses: dict
    cross_checks: dict


def _agree(name, conds):
    vals = {k: v[0] for k, v in conds.items()}
    if len(set(vals.values())) != 1:
        raise InternalDisagreement(f"{name}: equivalent conditions disagree: {vals}", conds)
    return next(iter(vals.values()))


def _inverse_conditions(S, green=None, inv=None):
    n = S.order
    t = S.table
    green = green or green_data(S)
    inv = inv or idempotents_and_inverses(S)
    E = S.idempotents
    # (1) unique inverses
    w1 = None
    for a in range(n):
        if len(inv.inverses[a]) != 1:
            w1 = (a,) + inv.inverses[a][:2]
            break
    # (2) one idempotent per R-class and per L-class
    w2 = None
    for which, idx in (("R", green.rclass), ("L", green.lclass)):
        by_class = {}
        for a in range(n):
            by_class.setdefault(idx[a], [])
        for e in E:
            by_class[idx[e]].append(e)
        for c, es in sorted(by_class.items()):
            if len(es) != 1:
                rep = next(a for a in range(n) if idx[a] == c)
                w2 = tuple(es[:2]) if es else (rep,)
                break
        if w2 is not None:
            break
    # (3) regular and idempotents commute
    w3 = inv.witness
    if w3 is None:
        w3 = next(((e, f) for e in E for f in E if t[e][f] != t[f][e]), None)
    return {
        "unique_inverses": (w1 is None, w1),
        "one_idempotent_per_R_and_L_class": (w2 is None, w2),
        "regular_with_commuting_idempotents": (w3 is None, w3),
    }


def is_regular(S):
    inv = idempotents_and_inverses(S)
    return Verdict(inv.is_regular, inv.witness, {"every_element_has_inverse": (inv.is_regular, inv.witness)})


def is_inverse(S):
    """All three equivalent characterisations of inverse semigroups, cross-checked."""
    conds = _inverse_conditions(S)
    holds = _agree("is_inverse", conds)
    witness = None if holds else conds["one_idempotent_per_R_and_L_class"][1]
    return Verdict(holds, witness, conds)


def _is_subset_band(S, X, law):
    """Witness that X is not a band closed under products obeying ``law``, else None."""
    t = S.table
    for x in X:
        for y in X:
            if t[x][y] not in X:
                return (x, y)
    for x, y, z in product(X, repeat=3):
        if not law(x, y, z):
            return (x, y, z)
    return None


def local_submonoid(S, e):
    """eSe with its induced table; ``index_map[k]`` is the element of S at local index k."""
    if S.table[e][e] != e:
        raise NotIdempotent(f"{e} is not idempotent", (e,))
    t = S.table
    elems = sorted({t[t[e][x]][e] for x in range(S.order)})
    pos = {x: i for i, x in enumerate(elems)}
    table = tuple(tuple(pos[t[x][y]] for y in elems) for x in elems)
    sub = FiniteSemigroup(table, tuple(S.labels[x] for x in elems), find_zero(table))
    return LocalSubmonoid(sub, tuple(elems))


@dataclass(frozen=True, eq=False)
class LocalSubmonoid:
    semigroup: FiniteSemigroup
    index_map: tuple

    def __getattr__(self, name):
        return getattr(self.semigroup, name)


def is_locally_inverse(S):
    """The four equivalent conditions for locally inverse semigroups, cross-checked.

    Non-regular ``S`` is rejected with the regularity witness.
    """
    inv = idempotents_and_inverses(S)
    if not inv.is_regular:
        return Verdict(False, inv.witness, {"regular": (False, inv.witness)})
    t = S.table
    g = green_data(S)
    E = S.idempotents

    w1 = None
    for e in E:
        loc = local_submonoid(S, e)
        c = _inverse_conditions(loc.semigroup)
        ok = _agree("eSe inverse", c)
        if not ok:
            w1 = (e,) + tuple(loc.index_map[x] for x in c["one_idempotent_per_R_and_L_class"][1])
            break

    w2 = None
    for gg in E:
        om = sorted(g.omega[gg])
        for i, e in enumerate(om):
            for f in om[i + 1:]:
                if g.lclass[e] == g.lclass[f] or g.rclass[e] == g.rclass[f]:
                    w2 = (e, f, gg)
                    break
            if w2:
                break
        if w2:
            break

    w3 = None
    for e in E:
        om = sorted(g.omega[e])
        bad = _is_subset_band(S, om, lambda x, y, z: t[x][y] == t[y][x])
        if bad is not None:
            w3 = (e,) + bad
            break

    w4 = None
    for e in E:
        bad = _is_subset_band(S, sorted(g.omega_l[e]), lambda x, y, z: t[t[x][y]][z] == t[t[x][z]][y])
        if bad is None:
            bad = _is_subset_band(S, sorted(g.omega_r[e]), lambda x, y, z: t[t[x][y]][z] == t[t[y][x]][z])
        if bad is not None:
            w4 = (e,) + bad
            break

    conds = {
        "local_submonoids_inverse": (w1 is None, w1),
        "omega_LR_unique": (w2 is None, w2),
        "omega_semilattice": (w3 is None, w3),
        "omega_l_left_normal_omega_r_right_normal": (w4 is None, w4),
    }
    holds = _agree("is_locally_inverse", conds)
    return Verdict(holds, None if holds else w2, conds)


def classify(S):
    reg = is_regular(S)
    inv = is_inverse(S)
    loc = is_locally_inverse(S)
    if inv.holds and not loc.holds or loc.holds and not reg.holds:
        raise InternalDisagreement("class inclusions inverse ⊆ locally inverse ⊆ regular violated")
    witnesses = {}
    for name, v in (("regular", reg), ("inverse", inv), ("locally_inverse", loc)):
        if not v.holds:
            witnesses[name] = v.witness
    return Classification(reg.holds, inv.holds, loc.holds, witnesses,
                          {"inverse": inv.conditions, "locally_inverse": loc.conditions})


def separation_by_idempotents(S, side="right"):
    """Do idempotents separate elements: ``pe != qe`` (``side='right'``) or ``ep != eq``?

    Returns ``(flag, witness)`` where the witness is an unseparated pair.
    """
    t = S.table
    E = S.idempotents
    n = S.order
    for p in range(n):
        for q in range(p + 1, n):
            if side == "right":
                sep = any(t[p][e] != t[q][e] for e in E)
            else:
                sep = any(t[e][p] != t[e][q] for e in E)
            if not sep:
                return False, (p, q)
    return True, None


def right_regular_representation_injective(S):
    """Is ``a -> (x -> xa)`` injective on S?  Returns ``(flag, witness pair)``."""
    cols = {}
    for a in range(S.order):
        key = tuple(S.table[x][a] for x in range(S.order))
        if key in cols:
            return False, (cols[key], a)
        cols[key] = a
    return True, None


def is_homomorphism(S, T, phi):
    return all(phi[S.mul(a, b)] == T.mul(phi[a], phi[b]) for a in range(S.order) for b in range(S.order))


def homomorphisms(S, T):
    """All homomorphisms S -> T by exhaustive search (tiny orders only)."""
    out = []
    for phi in product(range(T.order), repeat=S.order):
        if is_homomorphism(S, T, phi):
            out.append(phi)
    return out


def natural_order_leq(S, x, y, inverse_of):
    """x ≤ y in an inverse semigroup: x = (x x⁻¹) y."""
    return x == S.mul(S.mul(x, inverse_of[x]), y)
