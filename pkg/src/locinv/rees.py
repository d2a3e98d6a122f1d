"""Rees matrix semigroups M°(G; I, L; P) and their categorical model.

Elements are ``(i, g, l)`` triples plus a zero; ``P`` is stored as an
``l_size x i_size`` grid whose entries are group indices or :data:`ZERO`.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .config import DEFAULT_LIMITS
from .errors import InputError, InternalDisagreement, IrregularMatrix, SizeGuard
from .semigroup import FiniteSemigroup, from_cayley_table


class _Zero:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_Zero, ())


ZERO = _Zero()


def is_group(G):
    e = G.identity
    if e is None:
        return False
    return all(any(G.mul(x, y) == e for y in range(G.order)) for x in range(G.order))


def group_inverse(G, x):
    e = G.identity
    return next(y for y in range(G.order) if G.mul(x, y) == e)


def check_matrix_regular(matrix):
    """``(True, None)`` or ``(False, ("row"|"col", index))`` for an all-zero line."""
    rows = [list(r) for r in matrix]
    for r, row in enumerate(rows):
        if all(v is ZERO for v in row):
            return False, ("row", r)
    for c in range(len(rows[0]) if rows else 0):
        if all(row[c] is ZERO for row in rows):
            return False, ("col", c)
    return True, None


@dataclass(frozen=True, eq=False)
class ReesSpec:
    group: FiniteSemigroup
    i_size: int
    l_size: int
    matrix: tuple           # matrix[l][i]

    def __post_init__(self):
        if not is_group(self.group):
            raise InputError("Rees spec: the coefficient table is not a group")
        m = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.l_size or any(len(r) != self.i_size for r in m):
            raise InputError(f"sandwich matrix must be {self.l_size}x{self.i_size}")
        for r in m:
            for v in r:
                if v is not ZERO and not (isinstance(v, int) and 0 <= v < self.group.order):
                    raise InputError(f"bad sandwich entry {v!r}")

    def p(self, l, i):
        return self.matrix[l][i]


def _rees_labels(spec):
    G = spec.group
    out = []
    for i, g, l in product(range(spec.i_size), range(G.order), range(spec.l_size)):
        if G.order == 1:
            out.append(f"({i + 1},{l + 1})")
        else:
            out.append(f"({i + 1},{G.label(g)},{l + 1})")
    out.append("0")
    return tuple(out)


def rees_index(spec, i, g, l):
    return (i * spec.group.order + g) * spec.l_size + l


def rees_triple(spec, x):
    """Inverse of :func:`rees_index`; ``None`` for the zero."""
    n = spec.i_size * spec.group.order * spec.l_size
    if x == n:
        return None
    x, l = divmod(x, spec.l_size)
    i, g = divmod(x, spec.group.order)
    return i, g, l


def rees_semigroup(spec):
    ok, w = check_matrix_regular(spec.matrix)
    if not ok:
        raise IrregularMatrix(*w)
    G = spec.group
    n = spec.i_size * G.order * spec.l_size
    zero = n
    table = [[zero] * (n + 1) for _ in range(n + 1)]
    for x in range(n):
        i, a, l = rees_triple(spec, x)
        for y in range(n):
            j, b, k = rees_triple(spec, y)
            p = spec.p(l, j)
            if p is not ZERO:
                table[x][y] = rees_index(spec, i, G.prod(a, p, b), k)
    return from_cayley_table(table, _rees_labels(spec))


def random_regular_spec(group, i_size, l_size, rng, zero_prob=0.3):
    """Random regular sandwich matrix over ``group`` (rejection sampling)."""
    while True:
        m = tuple(tuple(ZERO if rng.random() < zero_prob else int(rng.integers(group.order))
                        for _ in range(i_size)) for _ in range(l_size))
        if check_matrix_regular(m)[0]:
            return ReesSpec(group, i_size, l_size, m)


# ---------------------------------------------------------------- wreath model

def _gmul(G, a, b):
    if a is ZERO or b is ZERO:
        return ZERO
    return G.mul(a, b)


@dataclass(frozen=True, eq=False)
class WreathModel:
    group: FiniteSemigroup
    l_size: int
    elements: tuple            # (tuple over L of G° entries, apex) for every element of T
    t_semigroup: FiniteSemigroup
    u_ideal: frozenset         # indices of {0-tuple} x L in T
    quotient: FiniteSemigroup
    quotient_elements: tuple   # element of T per quotient index, ``None`` for the zero

    @property
    def quotient_index(self):
        return {x: k for k, x in enumerate(self.quotient_elements)}


def wreath_quotient(G, l_size, limits=DEFAULT_LIMITS):
    """T = (G°)^L x L with (g; l)(h; k) = ((g_α h_l)_α; k), and T/U for U = {0-tuple} x L."""
    size = (G.order + 1) ** l_size * l_size
    if size > limits.max_wreath:
        raise SizeGuard(limits.max_wreath, size, "wreath product order")
    values = list(range(G.order)) + [ZERO]
    elems = tuple((t, k) for t in product(values, repeat=l_size) for k in range(l_size))
    idx = {x: n for n, x in enumerate(elems)}

    def mul(x, y):
        (g, l), (h, k) = x, y
        return (tuple(_gmul(G, a, h[l]) for a in g), k)

    t_table = [[idx[mul(x, y)] for y in elems] for x in elems]

    def label(x):
        t, k = x
        return "(" + ",".join("0" if a is ZERO else G.label(a) for a in t) + f";{k + 1})"

    T = from_cayley_table(t_table, [label(x) for x in elems])
    U = frozenset(n for n, (t, _) in enumerate(elems) if all(a is ZERO for a in t))
    for u in U:
        for x in range(T.order):
            if T.mul(u, x) not in U or T.mul(x, u) not in U:
                raise InternalDisagreement("{0} x L is not an ideal", (u, x))
    keep = [n for n in range(T.order) if n not in U]
    pos = {n: k for k, n in enumerate(keep)}
    zero = len(keep)
    q = [[pos.get(T.mul(a, b), zero) for b in keep] + [zero] for a in keep]
    q.append([zero] * (zero + 1))
    Q = from_cayley_table(q, [T.label(n) for n in keep] + ["0"])
    return WreathModel(G, l_size, elems, T, U, Q, tuple(elems[n] for n in keep) + (None,))


# ---------------------------------------------------------------- labelled ideal categories

def _group_part(spec, x):
    t = rees_triple(spec, x)
    return ZERO if t is None else t[1]


class ReesLabels:
    """Labels of L(S) / R(S) for S = M°(G; I, L; P) in the matrix coordinates.

    Objects of L(S) are ℓ ∈ L (``None`` for the zero object); a morphism
    between non-zero objects is the g ∈ G° with (i, a, ℓ₁) ↦ (i, ag, ℓ₂).
    Dually in R(S) the object is i and λ_g acts as (i₁, a, k) ↦ (i₂, ga, k).
    """

    def __init__(self, spec, C):
        self.spec, self.C = spec, C
        S = C.source
        coord = 2 if C.side == "left" else 0
        self.objects = tuple(None if rees_triple(spec, e) is None else rees_triple(spec, e)[coord]
                             for e in C.object_payload)
        mor = []
        for (e, u, f) in C.morphism_payload:
            a, b = self.objects[C.object_of_idempotent[e]], self.objects[C.object_of_idempotent[f]]
            if a is None or b is None:
                mor.append(ZERO)
            elif C.side == "left":
                mor.append(_group_part(spec, S.mul(rees_index(spec, 0, spec.group.identity, a), u)))
            else:
                mor.append(_group_part(spec, S.mul(u, rees_index(spec, a, spec.group.identity, 0))))
        self.morphisms = tuple(mor)

    @property
    def width(self):
        return self.spec.l_size if self.C.side == "left" else self.spec.i_size

    def object_of(self, label):
        return self.objects.index(label)

    def cone_key(self, g):
        """(tuple over L or I, apex label) for a non-zero cone, ``None`` for the zero cone."""
        apex = self.objects[g.apex]
        if apex is None:
            return None
        return tuple(self.morphisms[g.components[self.object_of(a)]] for a in range(self.width)), apex


def labelled_ideal_category(spec, side="left"):
    """L(S) or R(S) built directly on L° (resp. I°) from the matrix description."""
    from .categories import build_category

    G = spec.group
    n = spec.l_size if side == "left" else spec.i_size
    zero = n
    values = list(range(G.order)) + [ZERO]
    mors = [(a, g, b) for a in range(n) for b in range(n) for g in values]
    mors += [(a, ZERO, zero) for a in range(n)] + [(zero, ZERO, b) for b in range(n)] + [(zero, ZERO, zero)]
    idx = {m: k for k, m in enumerate(mors)}
    comp = []
    for (a, g, b) in mors:
        row = []
        for (b2, h, c) in mors:
            if b2 != b:
                row.append(-1)
            elif zero in (a, b, c):
                row.append(idx[(a, ZERO, c)])
            else:
                gh = _gmul(G, g, h) if side == "left" else _gmul(G, h, g)
                row.append(idx[(a, gh, c)])
        comp.append(row)
    identity = [idx[(a, G.identity, a)] for a in range(n)] + [idx[(zero, ZERO, zero)]]
    inclusion = {(a, a): identity[a] for a in range(n + 1)}
    inclusion.update({(zero, b): idx[(zero, ZERO, b)] for b in range(n)})
    return build_category(n + 1, [m[0] for m in mors], [m[2] for m in mors], comp, identity, inclusion,
                          side="abstract", morphism_payload=tuple(mors))


def labelled_functor_check(spec, C):
    """The labels of ``C`` give a bijective inclusion-preserving functor onto the labelled model."""
    from .categories import Functor

    lab = ReesLabels(spec, C)
    M = labelled_ideal_category(spec, C.side)
    zero = M.n_objects - 1
    obj = tuple(zero if o is None else o for o in lab.objects)
    mor = tuple(M.payload_index[(obj[C.dom[m]], lab.morphisms[m], obj[C.cod[m]])] for m in range(C.n_morphisms))
    F = Functor(C, M, obj, mor)
    return F.check() is None and F.is_bijective() and F.preserves_inclusions()


# ---------------------------------------------------------------- cone semigroup vs wreath quotient

def _column(spec, i):
    return tuple(spec.p(l, i) for l in range(spec.l_size))


def _row(spec, l):
    return tuple(spec.p(l, i) for i in range(spec.i_size))


@dataclass(frozen=True)
class ReesConeReport:
    cones: int
    expected: int
    quotient: int
    iso_found: bool
    label_map_iso: bool
    principal_ok: bool
    r_classes: int
    orbit_count: int
    r_class_membership: bool
    dual_objects: int
    labelled_category_ok: bool

    @property
    def ok(self):
        return (self.cones == self.expected == self.quotient and self.iso_found and self.label_map_iso
                and self.principal_ok and self.r_classes == self.orbit_count == self.dual_objects
                and self.r_class_membership and self.labelled_category_ok)


def _orbit(G, t):
    """The set g_γ G° of right translates of a tuple."""
    return frozenset(tuple(_gmul(G, a, h) for a in t) for h in list(range(G.order)) + [ZERO])


def rees_cone_iso(spec, limits=DEFAULT_LIMITS):
    from .categories import left_ideal_category
    from .cones import cone_semigroup, principal_cone
    from .crossconn import normal_dual
    from .isomorphism import find_isomorphism
    from .semigroup import green_data

    G = spec.group
    S = rees_semigroup(spec)
    C = left_ideal_category(S)
    CS = cone_semigroup(C, limits)
    W = wreath_quotient(G, spec.l_size, limits)
    lab = ReesLabels(spec, C)
    keys = [lab.cone_key(g) for g in CS.cones]
    qidx = W.quotient_index
    try:
        phi = tuple(qidx[k] for k in keys)
        label_iso = (len(set(phi)) == len(phi) == W.quotient.order and all(
            phi[CS.mul(a, b)] == W.quotient.mul(phi[a], phi[b]) for a in range(len(phi)) for b in range(len(phi))))
    except KeyError:
        label_iso = False
    found = find_isomorphism(CS.as_semigroup, W.quotient, limits) is not None
    principal_ok = True
    for x in range(S.order):
        t = rees_triple(spec, x)
        key = lab.cone_key(principal_cone(C, x))
        want = None if t is None else (tuple(_gmul(G, p, t[1]) for p in _column(spec, t[0])), t[2])
        principal_ok &= key == want
    zero_tuple = (ZERO,) * spec.l_size
    orbits = [_orbit(G, zero_tuple if k is None else k[0]) for k in keys]
    gd = green_data(CS.as_semigroup)
    member = all((gd.rclass[a] == gd.rclass[b]) == (orbits[a] == orbits[b])
                 for a in range(len(keys)) for b in range(len(keys)))
    dual = normal_dual(C, CS)
    expected = ((G.order + 1) ** spec.l_size - 1) * spec.l_size + 1
    return ReesConeReport(len(CS.cones), expected, W.quotient.order, found, label_iso, principal_ok,
                          len(set(gd.rclass)), len(set(orbits)), member, dual.category.n_objects,
                          labelled_functor_check(spec, C))


# ---------------------------------------------------------------- sandwich-matrix cross-connection

def _matrix_functor(spec, X, dual_Y, Y, side):
    """Γ_P (side "right": R(S) -> L(S)*) or Δ_P (side "left": L(S) -> R(S)*) from the matrix.

    Γ_P: i ↦ p_i G°, λ_g ↦ σ_g with σ_g (p_{i1} c; k) = (p_{i2} g c; k).
    Δ_P: ℓ ↦ G° p_ℓ, ρ_g ↦ τ_g with τ_g (c p_{ℓ1}; k) = (c g p_{ℓ2}; k).
    """
    from .categories import Functor

    G = spec.group
    lx, ly = ReesLabels(spec, X), ReesLabels(spec, Y)
    CS = dual_Y.cones
    by_key = {ly.cone_key(g): k for k, g in enumerate(CS.cones)}
    line = (lambda i: _column(spec, i)) if side == "right" else (lambda l: _row(spec, l))
    zero_cone = by_key[None]

    def base(a):
        if a is None:
            return zero_cone
        k = next(ap for ap in range(ly.width) if line(a)[ap] is not ZERO)
        c = group_inverse(G, line(a)[k])
        t = tuple(_gmul(G, q, c) if side == "right" else _gmul(G, c, q) for q in line(a))
        return by_key[(t, k)]

    obj = tuple(dual_Y.object_of_cone(base(a)) for a in lx.objects)

    def solve(t, p):
        """c with t = p·c (Γ side) or t = c·p (Δ side); ``None`` for the zero tuple."""
        for a, q in zip(t, p):
            if a is not ZERO and q is not ZERO:
                qi = group_inverse(G, q)
                return G.mul(qi, a) if side == "right" else G.mul(a, qi)
        return None

    mor = []
    for m in range(X.n_morphisms):
        a, b = lx.objects[X.dom[m]], lx.objects[X.cod[m]]
        g = lx.morphisms[m]
        H = dual_Y.h(base(a))
        comps = []
        for c in range(Y.n_objects):
            d = {}
            for y in H.object_map[c]:
                key = ly.cone_key(CS.cones[y])
                cc = None if key is None or a is None else solve(key[0], line(a))
                if cc is None or b is None or g is ZERO:
                    d[y] = zero_cone
                else:
                    if side == "right":
                        t = tuple(_gmul(G, q, G.mul(g, cc)) for q in line(b))
                    else:
                        t = tuple(_gmul(G, G.mul(cc, g), q) for q in line(b))
                    d[y] = by_key[(t, key[1])] if any(v is not ZERO for v in t) else zero_cone
            comps.append(d)
        mor.append(dual_Y.morphism_for(obj[X.dom[m]], obj[X.cod[m]], comps))
    return Functor(X, dual_Y.category, obj, tuple(mor))


@dataclass(frozen=True)
class MatrixCxnReport:
    gamma_matches: bool
    delta_matches: bool
    m_sets_from_matrix: bool
    m_set_condition: bool
    rebuild: object

    @property
    def ok(self):
        return (self.gamma_matches and self.delta_matches and self.m_sets_from_matrix
                and self.m_set_condition and self.rebuild.ok)


def matrix_cxn(spec, limits=DEFAULT_LIMITS):
    """Γ_P, Δ_P built from P, compared with the canonical cross-connection of M°(G;I,L;P)."""
    from .crossconn import canonical_cxn, rebuild_check

    S = rees_semigroup(spec)
    om = canonical_cxn(S, limits)
    L, R = om.C, om.D
    gamma = _matrix_functor(spec, R, om.dual_C, L, "right")
    delta = _matrix_functor(spec, L, om.dual_D, R, "left")
    g_ok = gamma.object_map == om.gamma.object_map and gamma.morphism_map == om.gamma.morphism_map
    d_ok = delta.object_map == om.delta.object_map and delta.morphism_map == om.delta.morphism_map
    ll, lr = ReesLabels(spec, L), ReesLabels(spec, R)
    m_ok = True
    for d, i in enumerate(lr.objects):
        want = {ll.object_of(l) for l in range(spec.l_size)
                if i is not None and spec.p(l, i) is not ZERO} if i is not None else {ll.object_of(None)}
        m_ok &= set(om.m_gamma(d)) == want
    for c, l in enumerate(ll.objects):
        want = {lr.object_of(i) for i in range(spec.i_size)
                if spec.p(l, i) is not ZERO} if l is not None else {lr.object_of(None)}
        m_ok &= set(om.m_delta(c)) == want
    rep = rebuild_check(S, "rees", limits, om=om)
    return om, MatrixCxnReport(g_ok, d_ok, m_ok, om.m_set_witness is None, rep)


def column_scale_check(spec1, spec2, limits=DEFAULT_LIMITS):
    """Rebuild both specs; SΩ₁ ≅ SΩ₂ must agree with M°₁ ≅ M°₂."""
    from .crossconn import canonical_cxn, cxn_semigroup
    from .isomorphism import find_isomorphism

    S1, S2 = rees_semigroup(spec1), rees_semigroup(spec2)
    R1 = cxn_semigroup(canonical_cxn(S1, limits)).as_semigroup
    R2 = cxn_semigroup(canonical_cxn(S2, limits)).as_semigroup
    direct = find_isomorphism(S1, S2, limits) is not None
    rebuilt = find_isomorphism(R1, R2, limits) is not None
    own = (find_isomorphism(R1, S1, limits) is not None, find_isomorphism(R2, S2, limits) is not None)
    return direct, rebuilt, own
