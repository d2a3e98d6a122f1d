"""Inverse semigroups: inversive categories, inversive cones and inductive groupoids.

An inversive category is an so-category whose core ⟨C⟩ (generated by
inclusions and retractions) collapses every zigzag to ``q·ι`` and which has
exactly one idempotent inversive cone per object.  The cone semigroup C̃ of
inversive cones is inverse, and for inverse S the map ``a ↦ ρ^a`` is an
isomorphism ``S -> C̃(L(S))``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .categories import (
    Functor,
    build_category,
    canonical_morphism,
    classify_category,
    epi_components,
    factorise,
    left_ideal_category,
    verify_category_axioms,
    verify_subobject_structure,
)
from .config import DEFAULT_LIMITS
from .cones import (
    cone_apply,
    cone_semigroup,
    enumerate_normal_cones,
    is_idempotent_cone,
    make_cone,
    principal_cone,
)
from .errors import AxiomViolation, InternalDisagreement, NotClosed, NotInverse, NotInversive
from .isomorphism import find_category_isomorphism
from .semigroup import (
    FiniteSemigroup,
    find_zero,
    first_associativity_failure,
    idempotents_and_inverses,
    is_homomorphism,
    is_inverse,
    right_regular_representation_injective,
)


# ---------------------------------------------------------------- core

def _unique_retraction(C, a, b):
    """q(b, a) for a ⊆ b, or ``None`` when the split is missing or ambiguous."""
    ts = C.retractions.get((a, b), ())
    return ts[0] if len(ts) == 1 else None


@dataclass(frozen=True)
class CoreReport:
    morphisms: frozenset
    factorisation: dict          # morphism -> (q, ι, meet object) for one zigzag reaching it
    failures: tuple              # (morphism, meet object) pairs without an inversive factorisation
    non_identity_isos: tuple
    holds: bool


def core_and_inversive_factorisation(C):
    """⟨C⟩ by closure, plus the inversive factorisation check on every zigzag.

    States are pairs (composite so far, meet of the odd objects so far); a
    step appends ``ι(x, y) q(y, z)``.  Every reachable state must satisfy
    ``f = q(c₁, d) ι(d, cod f)``.
    """
    gens = set(C.inclusion_set)
    for (a, b) in C.inclusion:
        q = _unique_retraction(C, a, b)
        if q is None:
            return CoreReport(frozenset(), {}, (("unsplit", a, b),), (), False)
        gens.add(q)
    closed = set(gens)
    frontier = deque(gens)
    while frontier:
        f = frontier.popleft()
        for g in gens:
            for h in (C.comp[f][g], C.comp[g][f]):
                if h >= 0 and h not in closed:
                    closed.add(h)
                    frontier.append(h)

    steps = {}
    for (x, y), i in C.inclusion.items():
        for (z, y2) in C.inclusion:
            if y2 == y:
                steps.setdefault(x, []).append((C.comp[i][_unique_retraction(C, z, y)], z))
    start = [(C.identity[c], c, c) for c in range(C.n_objects)]
    seen = set()
    queue = deque(start)
    reached = set()
    fact = {}
    failures = []
    while queue:
        f, d, c1 = queue.popleft()
        if (f, d) in seen:
            continue
        seen.add((f, d))
        reached.add(f)
        cod = C.cod[f]
        if not (C.leq(d, c1) and C.leq(d, cod)):
            failures.append((f, d))
        else:
            q, j = _unique_retraction(C, d, c1), C.inclusion[(d, cod)]
            if C.comp[q][j] != f:
                failures.append((f, d))
            else:
                fact.setdefault(f, (q, j, d))
        for step, z in steps.get(cod, ()):
            m = C.meet(d, z)
            if m is None:
                failures.append((f, ("no_meet", d, z)))
                continue
            queue.append((C.comp[f][step], m, c1))
    if reached != closed:
        raise InternalDisagreement("zigzag closure and composition closure differ", (reached ^ closed))
    isos = tuple(sorted(m for m in closed if C.is_iso(m) and m not in C.identity_set))
    return CoreReport(frozenset(closed), fact, tuple(failures), isos, not failures and not isos)


# ---------------------------------------------------------------- inversive cones

def coimage_objects(C, m):
    return {f.coimage for f in factorise(C, m)}


def inversive_violation(C, g):
    """First failed inversive-cone condition, or ``None``."""
    if len(g.m_set) != 1:
        return ("m_set", tuple(sorted(g.m_set)))
    (m,) = g.m_set
    for c, comp in enumerate(g.components):
        want = C.meet(c, m)
        if want is None or coimage_objects(C, comp) != {want}:
            return ("coimage", c)
    return None


def is_inversive_cone(C, g):
    return inversive_violation(C, g) is None


def m_object(g):
    (m,) = g.m_set
    return m


def inversive_decomposition(C, g, mu):
    """``(μ_{m_γ}, γ(m_γ))`` and the check ``γ = μ ∗ γ(m_γ)``."""
    m = m_object(g)
    u = g.components[m]
    return mu[m], u, cone_apply(C, mu[m], u) == g


# ---------------------------------------------------------------- classification

@dataclass(frozen=True)
class InversiveReport:
    ic1: bool
    ic2: bool
    ic3: bool
    ic4: bool
    ic5: bool
    core_morphisms: frozenset
    meets: dict
    unique_inversive_idempotent: dict      # object -> cone (only when IC5 holds there)
    cones: tuple                           # every normal cone, as enumerated
    inversive: tuple                       # indices into ``cones``
    witnesses: dict = field(default_factory=dict)

    @property
    def is_inversive(self):
        return self.ic1 and self.ic2 and self.ic3 and self.ic4 and self.ic5


def classify_inversive(C, limits=DEFAULT_LIMITS):
    w = {}
    sub = verify_subobject_structure(C)
    ic1 = sub.holds and sub.is_semilattice
    if not ic1:
        w["ic1"] = next((k for k, v in sub.meets.items() if v is None), sub.witnesses)
    cat = classify_category(C, limits)
    ic2 = cat.all_inclusions_split and cat.splits_unique
    ic3 = cat.all_factorable and cat.factorisations_unique
    if not ic2:
        w["ic2"] = cat.witnesses.get("splits_unique")
    if not ic3:
        w["ic3"] = cat.witnesses.get("factorisations_unique")
    core = frozenset()
    ic4 = False
    if ic1 and ic2:
        rep = core_and_inversive_factorisation(C)
        core, ic4 = rep.morphisms, rep.holds
        if not ic4:
            w["ic4"] = rep.failures[0] if rep.failures else ("iso", rep.non_identity_isos[0])
    else:
        w.setdefault("ic4", "needs IC1 and IC2")
    cones = tuple(enumerate_normal_cones(C, limits))
    inv = tuple(k for k, g in enumerate(cones) if ic1 and ic3 and is_inversive_cone(C, g))
    mu = {}
    ic5 = ic1 and ic3
    for c in range(C.n_objects):
        found = [cones[k] for k in inv if cones[k].apex == c and is_idempotent_cone(C, cones[k])]
        if len(found) == 1:
            mu[c] = found[0]
        elif ic5:
            ic5 = False
            w["ic5"] = (c, len(found))
    if not (ic1 and ic3):
        w.setdefault("ic5", "needs IC1 and IC3")
    return InversiveReport(ic1, ic2, ic3, ic4, ic5, core, dict(C.meets), mu, cones, inv, w)


def _require_inversive(C, limits):
    rep = classify_inversive(C, limits)
    if not rep.is_inversive:
        raise NotInversive("category is not inversive", rep.witnesses)
    return rep


# ---------------------------------------------------------------- C̃

@dataclass(frozen=True, eq=False)
class InversiveConeSemigroup:
    base: object
    report: InversiveReport
    cones: tuple
    product: tuple
    as_semigroup: FiniteSemigroup
    mu: dict

    @cached_property
    def index(self):
        return {g: k for k, g in enumerate(self.cones)}

    def __len__(self):
        return len(self.cones)


def inversive_cone_semigroup(C, limits=DEFAULT_LIMITS, report=None):
    """C̃: the inversive cones under the cone product, checked closed and inverse."""
    rep = report or _require_inversive(C, limits)
    if not rep.is_inversive:
        raise NotInversive("category is not inversive", rep.witnesses)
    from .cones import cone_compose

    cones = tuple(rep.cones[k] for k in rep.inversive)
    index = {g: k for k, g in enumerate(cones)}
    table = []
    for g in cones:
        row = []
        for d in cones:
            h = cone_compose(C, g, d)
            if h not in index:
                raise NotClosed("product of inversive cones is not inversive", (g, d, h))
            row.append(index[h])
        table.append(tuple(row))
    table = tuple(table)
    bad = first_associativity_failure(table)
    if bad is not None:
        raise InternalDisagreement("C̃ product is not associative", bad)
    labels = tuple(f"<{g.apex}:" + ",".join(map(str, g.components)) + ">" for g in cones)
    S = FiniteSemigroup(table, labels, find_zero(table))
    v = is_inverse(S)
    if not v.holds:
        raise InternalDisagreement("C̃ is not an inverse semigroup", v.witness)
    for g in cones:
        _, _, ok = inversive_decomposition(C, g, rep.unique_inversive_idempotent)
        if not ok:
            raise InternalDisagreement("inversive cone is not μ ∗ γ(m_γ)", g)
    return InversiveConeSemigroup(C, rep, cones, table, S, dict(rep.unique_inversive_idempotent))


def idempotent_retraction_failures(C, rep):
    """μ ∗ q is an idempotent inversive cone for every μ_c and retraction q out of c.

    Returns the failing ``(c, q)`` pairs.
    """
    bad = []
    for c, mu in rep.unique_inversive_idempotent.items():
        for (a, b), qs in C.retractions.items():
            if b != c:
                continue
            for q in qs:
                g = cone_apply(C, mu, q)
                if not (is_idempotent_cone(C, g) and is_inversive_cone(C, g)):
                    bad.append((c, q))
    return bad


# ---------------------------------------------------------------- ρ isomorphism

@dataclass(frozen=True)
class RhoIsoReport:
    order: int
    tilde_order: int
    hat_order: int
    rho: tuple
    homomorphism: bool
    bijective: bool
    right_reductive: bool
    inversive_equals_principal: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def is_isomorphism(self):
        return self.homomorphism and self.bijective


def _require_inverse(S):
    v = is_inverse(S)
    if not v.holds:
        raise NotInverse("semigroup is not inverse", v.witness)


def rho_iso_check(S, limits=DEFAULT_LIMITS):
    """a ↦ ρ^a as a map S -> C̃(L(S)), checked to be a bijective homomorphism."""
    _require_inverse(S)
    C = left_ideal_category(S)
    CT = inversive_cone_semigroup(C, limits)
    w = {}
    principal = [principal_cone(C, a) for a in range(S.order)]
    missing = [a for a, g in enumerate(principal) if g not in CT.index]
    if missing:
        w["principal_not_inversive"] = tuple(missing)
        rho = ()
        hom = bij = False
    else:
        rho = tuple(CT.index[g] for g in principal)
        bad = next(((a, b) for a in range(S.order) for b in range(S.order)
                    if rho[S.mul(a, b)] != CT.as_semigroup.mul(rho[a], rho[b])), None)
        hom = bad is None
        if bad:
            w["homomorphism"] = bad
        bij = len(set(rho)) == S.order == len(CT)
    rr, rr_w = right_regular_representation_injective(S)
    if rr != (len(set(principal)) == S.order):
        w["right_reductive"] = rr_w
    same = set(principal) == set(CT.cones)
    hat = len(cone_semigroup(C, limits).cones)
    return RhoIsoReport(S.order, len(CT), hat, rho, hom, bij, rr, same, w)


# ---------------------------------------------------------------- inductive groupoids

@dataclass(frozen=True, eq=False)
class InductiveGroupoid:
    n_objects: int
    meet: tuple                  # meet[a][b]
    identity: tuple              # object -> morphism
    d: tuple
    r: tuple
    inverse: tuple
    comp: tuple                  # comp[x][y], -1 unless r(x) == d(y)
    leq: frozenset               # pairs (x, y) with x ≤ y
    restrict: dict               # (e, x) -> e↿x for e ≤ d(x)
    corestrict: dict             # (x, f) -> x↾f for f ≤ r(x)
    object_labels: tuple = None
    morphism_labels: tuple = None

    @property
    def n_morphisms(self):
        return len(self.d)

    def obj_leq(self, a, b):
        return self.meet[a][b] == a


def groupoid_violations(G):
    """Every failed groupoid / OG axiom, keyed by name with a witness."""
    w = {}
    n, m = G.n_objects, G.n_morphisms
    for a in range(n):
        for b in range(n):
            lo = [c for c in range(n) if G.obj_leq(c, a) and G.obj_leq(c, b)]
            if G.meet[a][b] not in lo or not all(G.obj_leq(c, G.meet[a][b]) for c in lo):
                w.setdefault("semilattice", (a, b))
    for e in range(n):
        i = G.identity[e]
        if G.d[i] != e or G.r[i] != e:
            w.setdefault("identity", (e,))
    for x in range(m):
        y = G.inverse[x]
        if G.comp[x][y] != G.identity[G.d[x]] or G.comp[y][x] != G.identity[G.r[x]]:
            w.setdefault("inverse", (x,))
        for z in range(m):
            defined = G.comp[x][z] >= 0
            if defined != (G.r[x] == G.d[z]):
                w.setdefault("composable", (x, z))
            elif defined and (G.d[G.comp[x][z]] != G.d[x] or G.r[G.comp[x][z]] != G.r[z]):
                w.setdefault("endpoints", (x, z))
    for x in range(m):
        for y in range(m):
            xy = G.comp[x][y]
            if xy < 0:
                continue
            for z in range(m):
                if G.comp[y][z] >= 0 and G.comp[xy][z] != G.comp[x][G.comp[y][z]]:
                    w.setdefault("associative", (x, y, z))
    for x in range(m):
        if (x, x) not in G.leq:
            w.setdefault("reflexive", (x,))
    for (x, y) in G.leq:
        if x != y and (y, x) in G.leq:
            w.setdefault("antisymmetric", (x, y))
        for (y2, z) in G.leq:
            if y2 == y and (x, z) not in G.leq:
                w.setdefault("transitive", (x, y, z))
    for (u, x) in G.leq:
        for (v, y) in G.leq:
            if G.comp[u][v] >= 0 and G.comp[x][y] >= 0 and (G.comp[u][v], G.comp[x][y]) not in G.leq:
                w.setdefault("OG1", (u, x, v, y))
        if (G.inverse[u], G.inverse[x]) not in G.leq:
            w.setdefault("OG2", (u, x))
    for e in range(n):
        for f in range(n):
            ident = (G.identity[e], G.identity[f]) in G.leq
            if ident != G.obj_leq(e, f):
                w.setdefault("identity_order", (e, f))
    for x in range(m):
        for e in range(n):
            below = [u for u in range(m) if (u, x) in G.leq and G.d[u] == e]
            if G.obj_leq(e, G.d[x]):
                if len(below) != 1 or G.restrict.get((e, x)) != below[0]:
                    w.setdefault("OG3", (e, x))
            above = [u for u in range(m) if (u, x) in G.leq and G.r[u] == e]
            if G.obj_leq(e, G.r[x]):
                if len(above) != 1 or G.corestrict.get((x, e)) != above[0]:
                    w.setdefault("OG3*", (x, e))
    return w


def verify_groupoid(G):
    w = groupoid_violations(G)
    if w:
        raise AxiomViolation("inductive groupoid axioms fail", w)
    return G


def _finish(n, meet, identity, d, r, inverse, comp, leq_fn, restrict, corestrict, **kw):
    m = len(d)
    leq = frozenset((x, y) for x in range(m) for y in range(m) if leq_fn(x, y))
    return InductiveGroupoid(n, tuple(tuple(row) for row in meet), tuple(identity), tuple(d), tuple(r),
                             tuple(inverse), tuple(tuple(row) for row in comp), leq, restrict, corestrict, **kw)


def inductive_groupoid_of(S):
    """G(S): elements as arrows ``xx⁻¹ -> x⁻¹x`` with the natural partial order."""
    _require_inverse(S)
    inv = tuple(v[0] for v in idempotents_and_inverses(S).inverses)
    E = tuple(S.idempotents)
    obj = {e: k for k, e in enumerate(E)}
    n = len(E)
    meet = [[obj[S.mul(e, f)] for f in E] for e in E]
    d = [obj[S.mul(x, inv[x])] for x in range(S.order)]
    r = [obj[S.mul(inv[x], x)] for x in range(S.order)]
    comp = [[S.mul(x, y) if r[x] == d[y] else -1 for y in range(S.order)] for x in range(S.order)]

    def leq(x, y):
        return x == S.mul(S.mul(x, inv[x]), y)

    restrict, corestrict = {}, {}
    for x in range(S.order):
        for k, e in enumerate(E):
            if meet[k][d[x]] == k:
                restrict[(k, x)] = S.mul(e, x)
            if meet[k][r[x]] == k:
                corestrict[(x, k)] = S.mul(x, e)
    G = _finish(n, meet, [E[k] for k in range(n)], d, r, inv, comp, leq, restrict, corestrict,
                object_labels=tuple(S.label(e) for e in E), morphism_labels=tuple(S.labels))
    return verify_groupoid(G)


def category_to_groupoid(C, limits=DEFAULT_LIMITS):
    """G_C: the isomorphisms of an inversive category with restriction (ι(c,d)g)°."""
    _require_inversive(C, limits)
    isos = tuple(m for m in range(C.n_morphisms) if C.is_iso(m))
    pos = {m: k for k, m in enumerate(isos)}
    n = C.n_objects
    meet = [[C.meet(a, b) for b in range(n)] for a in range(n)]

    def restriction(c, g):
        comps = epi_components(C, C.comp[C.inclusion[(c, C.dom[g])]][g])
        if len(comps) != 1 or comps[0] not in pos:
            raise AxiomViolation("restriction is not a unique isomorphism", (c, g, comps))
        return comps[0]

    restrict = {}
    for g in isos:
        for c in range(n):
            if C.leq(c, C.dom[g]):
                restrict[(c, pos[g])] = pos[restriction(c, g)]
    inverse = [pos[C.inverse[m]] for m in isos]
    corestrict = {}
    for k, g in enumerate(isos):
        for c in range(n):
            if C.leq(c, C.cod[g]):
                corestrict[(k, c)] = inverse[restrict[(c, inverse[k])]]
    comp = [[pos[C.comp[f][g]] if C.cod[f] == C.dom[g] else -1 for g in isos] for f in isos]

    def leq(x, y):
        f, g = isos[x], isos[y]
        return C.leq(C.dom[f], C.dom[g]) and restrict[(C.dom[f], y)] == x

    G = _finish(n, meet, [pos[i] for i in C.identity], [C.dom[m] for m in isos], [C.cod[m] for m in isos],
                inverse, comp, leq, restrict, corestrict,
                object_labels=C.object_labels,
                morphism_labels=tuple(C.morphism_labels[m] for m in isos) if C.morphism_labels else None)
    return verify_groupoid(G)


@dataclass(frozen=True)
class GroupoidCategory:
    category: object
    cones: dict                  # groupoid morphism α -> the cone r^α
    report: InversiveReport


def groupoid_to_category(G, limits=DEFAULT_LIMITS):
    """C_G: morphisms [e, α, f⟩ with d(α) ≤ e and r(α) ≤ f."""
    w = groupoid_violations(G)
    if w:
        raise AxiomViolation("inductive groupoid axioms fail", w)
    n = G.n_objects
    triples = [(e, a, f) for a in range(G.n_morphisms)
               for e in range(n) if G.obj_leq(G.d[a], e)
               for f in range(n) if G.obj_leq(G.r[a], f)]
    triples.sort()
    idx = {t: k for k, t in enumerate(triples)}
    comp = []
    for (e, a, f) in triples:
        row = []
        for (f2, b, g) in triples:
            if f2 != f:
                row.append(-1)
                continue
            h = G.meet[G.r[a]][G.d[b]]
            ab = G.comp[G.corestrict[(a, h)]][G.restrict[(h, b)]]
            row.append(idx[(e, ab, g)])
        comp.append(row)
    identity = [idx[(e, G.identity[e], e)] for e in range(n)]
    inclusion = {(e, f): idx[(e, G.identity[e], f)] for e in range(n) for f in range(n) if G.obj_leq(e, f)}
    ml = G.morphism_labels
    labels = tuple(f"[{e},{ml[a] if ml else a},{f}>" for (e, a, f) in triples)
    C = build_category(n, [t[0] for t in triples], [t[2] for t in triples], comp, identity, inclusion,
                       morphism_payload=tuple(triples), object_labels=G.object_labels, morphism_labels=labels)
    verify_category_axioms(C)
    rep = _require_inversive(C, limits)
    cones = {}
    for a in range(G.n_morphisms):
        comps = []
        for g in range(n):
            h = G.meet[g][G.d[a]]
            comps.append(idx[(g, G.restrict[(h, a)], G.r[a])])
        cones[a] = make_cone(C, G.r[a], comps)
    inv = {rep.cones[k] for k in rep.inversive}
    if set(cones.values()) != inv or len(inv) != G.n_morphisms:
        raise InternalDisagreement("the cones r^α are not exactly the inversive cones", None)
    return GroupoidCategory(C, cones, rep)


# ---------------------------------------------------------------- round trips

def groupoid_map_violation(G1, G2, mor):
    """First way ``mor`` fails to be an isomorphism of ordered groupoids, or ``None``."""
    m = G1.n_morphisms
    if len(set(mor)) != m or m != G2.n_morphisms or G1.n_objects != G2.n_objects:
        return ("bijection",)
    obj = {}
    for e in range(G1.n_objects):
        img = mor[G1.identity[e]]
        if img not in G2.identity:
            return ("identity", e)
        obj[e] = G2.identity.index(img)
    for x in range(m):
        if G2.d[mor[x]] != obj[G1.d[x]] or G2.r[mor[x]] != obj[G1.r[x]]:
            return ("endpoints", x)
        for y in range(m):
            if G1.comp[x][y] >= 0 and mor[G1.comp[x][y]] != G2.comp[mor[x]][mor[y]]:
                return ("composition", x, y)
            if ((x, y) in G1.leq) != ((mor[x], mor[y]) in G2.leq):
                return ("order", x, y)
    for (e, x), u in G1.restrict.items():
        if G2.restrict.get((obj[e], mor[x])) != mor[u]:
            return ("restriction", e, x)
    return None


def groupoid_round_trip(G, limits=DEFAULT_LIMITS):
    """G_{C_G} ≅ G through α ↦ [d α, α, r α⟩."""
    GC = groupoid_to_category(G, limits)
    H = category_to_groupoid(GC.category, limits)
    C = GC.category
    isos = [m for m in range(C.n_morphisms) if C.is_iso(m)]
    pos = {m: k for k, m in enumerate(isos)}
    mor = tuple(pos.get(C.payload_index[(G.d[a], a, G.r[a])], -1) for a in range(G.n_morphisms))
    return H, groupoid_map_violation(G, H, mor)


def category_round_trip(C, limits=DEFAULT_LIMITS, search=True):
    """C_{G_C} ≅ C through [e, α, f⟩ ↦ q(e, d α) α ι(r α, f), plus an independent search."""
    G = category_to_groupoid(C, limits)
    isos = [m for m in range(C.n_morphisms) if C.is_iso(m)]
    D = groupoid_to_category(G, limits).category
    mor = []
    for (e, a, f) in D.morphism_payload:
        alpha = isos[a]
        q = _unique_retraction(C, C.dom[alpha], e)
        mor.append(C.compose(q, alpha, C.inclusion[(C.cod[alpha], f)]))
    F = Functor(D, C, tuple(range(C.n_objects)), tuple(mor))
    ok = F.check() is None and F.is_bijective() and F.preserves_inclusions()
    found = find_category_isomorphism(D, C) is not None if search else None
    return D, ok, found


def groupoid_from_semigroup_matches(S, limits=DEFAULT_LIMITS):
    """G_{L(S)} ≅ G(S) through x ↦ ρ(xx⁻¹, x, x⁻¹x)."""
    G = inductive_groupoid_of(S)
    C = left_ideal_category(S)
    H = category_to_groupoid(C, limits)
    isos = [m for m in range(C.n_morphisms) if C.is_iso(m)]
    pos = {m: k for k, m in enumerate(isos)}
    inv = G.inverse
    mor = tuple(pos.get(canonical_morphism(C, S.mul(x, inv[x]), x, S.mul(inv[x], x)), -1)
                for x in range(S.order))
    return groupoid_map_violation(G, H, mor)


# ---------------------------------------------------------------- homomorphism functors

@dataclass(frozen=True)
class PhiReport:
    phi: tuple
    functor_ok: bool
    preserves_inclusions: bool
    preserves_meets: bool
    cone_map_homomorphism: bool
    rho_commutes: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def ok(self):
        return (self.functor_ok and self.preserves_inclusions and self.preserves_meets
                and self.cone_map_homomorphism and self.rho_commutes)


def induced_functor(S1, S2, phi, L1=None, L2=None):
    """Φ: L(S1) -> L(S2), S1e ↦ S2eφ and ρ(e,u,f) ↦ ρ(eφ,uφ,fφ)."""
    L1 = L1 or left_ideal_category(S1)
    L2 = L2 or left_ideal_category(S2)
    obj = tuple(L2.object_of_idempotent[phi[e]] for e in L1.object_payload)
    mor = tuple(canonical_morphism(L2, phi[e], phi[u], phi[f]) for (e, u, f) in L1.morphism_payload)
    return Functor(L1, L2, obj, mor)


def phi_check(S1, S2, phi, limits=DEFAULT_LIMITS, cache=None):
    """Φ is inversive and ρ^{aφ} = μ_{Φ(m)} ∗ Φ(ρ^a(m)) for every a."""
    if not is_homomorphism(S1, S2, phi):
        raise NotInverse("map is not a homomorphism", phi)
    cache = cache if cache is not None else {}

    def prep(S):
        key = id(S)
        if key not in cache:
            C = left_ideal_category(S)
            cache[key] = (C, inversive_cone_semigroup(C, limits))
        return cache[key]

    L1, T1 = prep(S1)
    L2, T2 = prep(S2)
    F = induced_functor(S1, S2, phi, L1, L2)
    w = {}
    bad = F.check()
    if bad:
        w["functor"] = bad
    meets = next(((a, b) for a in range(L1.n_objects) for b in range(L1.n_objects)
                  if F.object_map[L1.meet(a, b)] != L2.meet(F.object_map[a], F.object_map[b])), None)
    if meets:
        w["meets"] = meets

    def image(g):
        m = m_object(g)
        return cone_apply(L2, T2.mu[F.object_map[m]], F.morphism_map[g.components[m]])

    img = [T2.index[image(g)] for g in T1.cones]
    hom = next(((i, j) for i in range(len(T1)) for j in range(len(T1))
                if img[T1.product[i][j]] != T2.product[img[i]][img[j]]), None)
    if hom:
        w["cone_map"] = hom
    rho = next((a for a in range(S1.order)
                if principal_cone(L2, phi[a]) != image(principal_cone(L1, a))), None)
    if rho is not None:
        w["rho"] = rho
    return PhiReport(tuple(phi), bad is None, F.preserves_inclusions(), meets is None,
                     hom is None, rho is None, w)
