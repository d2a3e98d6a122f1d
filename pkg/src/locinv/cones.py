"""Normal cones, the cone semigroup and the representation checks.

A cone is stored densely: ``components[c]`` is the morphism index of the
component at object ``c``.  Composition of cones is
``γ·δ = γ ∗ (δ(c_γ))°`` with the epimorphic component taken from every
normal factorisation and checked to agree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod

from .categories import Functor, canonical_morphism, classify_category, epi_components, left_ideal_category
from .config import DEFAULT_LIMITS
from .errors import DomainMismatch, InternalDisagreement, NotEpimorphism, PropertyViolation, SizeGuard
from .semigroup import (
    FiniteSemigroup,
    first_associativity_failure,
    find_zero,
    green_data,
    is_locally_inverse,
    is_regular,
    right_regular_representation_injective,
)


@dataclass(frozen=True)
class Cone:
    apex: int
    components: tuple
    m_set: frozenset = field(default=frozenset(), compare=False)

    def __getitem__(self, c):
        return self.components[c]


def make_cone(C, apex, components):
    comps = tuple(components)
    return Cone(apex, comps, frozenset(c for c, m in enumerate(comps) if C.is_iso(m)))


def cone_violation(C, g):
    """First failed normal-cone condition, or ``None``."""
    for c, m in enumerate(g.components):
        if C.dom[m] != c or C.cod[m] != g.apex:
            return ("component", c)
    for (a, b), i in C.inclusion.items():
        if C.comp[i][g.components[b]] != g.components[a]:
            return ("compatibility", a, b)
    if not any(C.is_iso(m) for m in g.components):
        return ("no_iso_component",)
    return None


def is_normal_cone(C, g):
    return cone_violation(C, g) is None


def is_idempotent_cone(C, g):
    return g.components[g.apex] == C.identity[g.apex]


# ---------------------------------------------------------------- enumeration

def _below_max(C):
    """For every object, the maximal objects above it (first one drives the derivation)."""
    return [tuple(M for M in C.maximal_objects if C.leq(c, M)) for c in range(C.n_objects)]


def candidate_count(C, apex=None):
    apices = range(C.n_objects) if apex is None else [apex]
    return sum(prod(len(C.hom(M, d)) for M in C.maximal_objects) for d in apices)


def _cones_with_apex(C, d, above):
    maxes = C.maximal_objects
    pos = {M: k for k, M in enumerate(maxes)}
    for choice in product(*(C.hom(M, d) for M in maxes)):
        comps = []
        ok = True
        for c in range(C.n_objects):
            Ms = above[c]
            vals = {C.comp[C.inclusion[(c, M)]][choice[pos[M]]] for M in Ms}
            if len(vals) != 1:
                ok = False
                break
            comps.append(vals.pop())
        if not ok:
            continue
        g = make_cone(C, d, comps)
        if g.m_set and cone_violation(C, g) is None:
            yield g


def enumerate_normal_cones(C, limits=DEFAULT_LIMITS):
    """All normal cones, ordered by (apex, components).

    Components are chosen freely only on maximal objects; every other
    component is forced by compatibility with the inclusions.
    """
    total = candidate_count(C)
    if total > limits.max_cone_candidates:
        raise SizeGuard(limits.max_cone_candidates, total, "cone candidates")
    above = _below_max(C)
    out = set()
    for d in range(C.n_objects):
        out.update(_cones_with_apex(C, d, above))
    return sorted(out, key=lambda g: (g.apex, g.components))


def identity_cone_exists(C, c, limits=DEFAULT_LIMITS):
    total = candidate_count(C, c)
    if total > limits.max_cone_candidates:
        raise SizeGuard(limits.max_cone_candidates, total, "cone candidates")
    return any(is_idempotent_cone(C, g) for g in _cones_with_apex(C, c, _below_max(C)))


# ---------------------------------------------------------------- products

def cone_apply(C, g, phi):
    """γ ∗ φ for an epimorphism φ out of the apex."""
    if C.dom[phi] != g.apex:
        raise DomainMismatch(f"morphism {phi} does not start at apex {g.apex}", (g.apex, phi))
    if not C.is_epi(phi):
        raise NotEpimorphism(f"morphism {phi} is not an epimorphism", (phi,))
    out = make_cone(C, C.cod[phi], [C.comp[m][phi] for m in g.components])
    bad = cone_violation(C, out)
    if bad is not None:
        raise PropertyViolation("γ ∗ φ is not a normal cone", bad)
    return out


def cone_compose(C, g, d):
    """γ·δ = γ ∗ (δ(c_γ))°, checked over every normal factorisation."""
    results = {cone_apply(C, g, e) for e in epi_components(C, d.components[g.apex])}
    if len(results) != 1:
        raise InternalDisagreement("normal factorisations give different products", (g, d))
    return results.pop()


def principal_cone(C, a):
    """ρ^a in L(S) or λ^a in R(S) for ``a`` in the source semigroup.

    Every choice of idempotent generators is evaluated and must agree.
    """
    S = C.source
    t = S.table
    g = green_data(S)
    if C.side == "left":
        fs = [f for f in S.idempotents if g.lclass[f] == g.lclass[a]]
    else:
        fs = [f for f in S.idempotents if g.rclass[f] == g.rclass[a]]
    comps = []
    for c in range(C.n_objects):
        es = [e for e in S.idempotents if C.object_of_idempotent[e] == c]
        vals = set()
        for e in es:
            for f in fs:
                if C.side == "left":
                    vals.add(canonical_morphism(C, e, t[e][a], f))
                else:
                    vals.add(canonical_morphism(C, e, t[a][e], f))
        if len(vals) != 1:
            raise InternalDisagreement("principal cone depends on generator choice", (a, c, vals))
        comps.append(vals.pop())
    return make_cone(C, C.object_of_idempotent[fs[0]], comps)


# ---------------------------------------------------------------- cone semigroup

@dataclass(frozen=True, eq=False)
class ConeSemigroup:
    base: object
    cones: tuple
    product: tuple
    as_semigroup: FiniteSemigroup
    idempotents: tuple

    @cached_property
    def index(self):
        return {g: k for k, g in enumerate(self.cones)}

    def __len__(self):
        return len(self.cones)

    def mul(self, i, j):
        return self.product[i][j]

    def idempotents_with_apex(self, c):
        return tuple(i for i in self.idempotents if self.cones[i].apex == c)


def _cone_label(C, g):
    return f"<{g.apex}:" + ",".join(str(m) for m in g.components) + ">"


def cone_semigroup(C, limits=DEFAULT_LIMITS, cones=None, verify=True):
    """Ĉ: all normal cones with the product table tabulated."""
    cones = tuple(cones if cones is not None else enumerate_normal_cones(C, limits))
    index = {g: k for k, g in enumerate(cones)}
    n = len(cones)
    table = []
    for g in cones:
        row = []
        for d in cones:
            h = cone_compose(C, g, d)
            if h not in index:
                raise PropertyViolation("product of normal cones left the enumerated set", (g, d))
            row.append(index[h])
        table.append(tuple(row))
    table = tuple(table)
    bad = first_associativity_failure(table)
    if bad is not None:
        raise InternalDisagreement("cone product is not associative", bad)
    S = FiniteSemigroup(table, tuple(_cone_label(C, g) for g in cones), find_zero(table))
    idem = tuple(k for k, g in enumerate(cones) if is_idempotent_cone(C, g))
    if tuple(S.idempotents) != idem:
        raise InternalDisagreement("idempotent cones do not match μ(c_μ) = 1", (S.idempotents, idem))
    if verify and not is_regular(S).holds:
        raise PropertyViolation("cone semigroup is not regular", is_regular(S).witness)
    return ConeSemigroup(C, cones, table, S, idem)


# ---------------------------------------------------------------- order facts

def cone_order_facts(CS):
    """Check the idempotent preorders of Ĉ against their categorical descriptions.

    Returns a list of violations (empty when everything agrees).
    """
    C = CS.base
    cones = CS.cones
    bad = []
    for i in CS.idempotents:
        nu = cones[i]
        for j in CS.idempotents:
            th = cones[j]
            sem_l = CS.mul(i, j) == i
            sem_r = CS.mul(j, i) == i
            cat_l = C.leq(nu.apex, th.apex)
            comp = nu.components[th.apex]
            cat_r = C.is_epi(comp) and cone_apply(C, th, comp) == nu
            cat_o = C.is_retraction(comp) and C.is_epi(comp) and cone_apply(C, th, comp) == nu
            if sem_l != cat_l:
                bad.append(("leq_l", i, j))
            if sem_r != cat_r:
                bad.append(("leq_r", i, j))
            if (sem_l and sem_r) != cat_o:
                bad.append(("leq", i, j))
    return bad


# ---------------------------------------------------------------- representation

@dataclass(frozen=True)
class RepresentationReport:
    functor: Functor
    functor_ok: bool
    bijective: bool
    preserves_inclusions: bool
    rho_homomorphism: bool | None = None
    rho_injective: bool | None = None
    right_regular_injective: bool | None = None
    witnesses: dict = field(default_factory=dict)

    @property
    def is_isomorphism(self):
        return self.functor_ok and self.bijective and self.preserves_inclusions

    @property
    def injectivity_agrees(self):
        return self.rho_injective == self.right_regular_injective


def representation_functor(C, CS, LC=None):
    """F: C -> L(Ĉ), c ↦ Ĉμ and f ↦ ρ(μ, μ ∗ f°, ν), checked independent of μ, ν."""
    LC = LC or left_ideal_category(CS.as_semigroup)
    obj = []
    for c in range(C.n_objects):
        objs = {LC.object_of_idempotent[i] for i in CS.idempotents_with_apex(c)}
        if len(objs) != 1:
            raise InternalDisagreement("idempotent cones with one apex are not L-related", (c, objs))
        obj.append(objs.pop())
    mor = []
    for f in range(C.n_morphisms):
        a, b = C.dom[f], C.cod[f]
        vals = set()
        for mu in CS.idempotents_with_apex(a):
            for e in epi_components(C, f):
                u = CS.index[cone_apply(C, CS.cones[mu], e)]
                for nu in CS.idempotents_with_apex(b):
                    vals.add(canonical_morphism(LC, mu, u, nu))
        if len(vals) != 1:
            raise InternalDisagreement("F(f) depends on the chosen idempotent cones", (f, vals))
        mor.append(vals.pop())
    return Functor(C, LC, tuple(obj), tuple(mor))


def verify_representation(C, CS=None, limits=DEFAULT_LIMITS):
    CS = CS or cone_semigroup(C, limits)
    F = representation_functor(C, CS)
    w = {}
    bad = F.check()
    if bad is not None:
        w["functor"] = bad
    rep = dict(functor=F, functor_ok=bad is None, bijective=F.is_bijective(),
               preserves_inclusions=F.preserves_inclusions(), witnesses=w)
    if C.side == "left" and C.source is not None:
        S = C.source
        rho = [CS.index[principal_cone(C, a)] for a in range(S.order)]
        hom = next(((a, b) for a in range(S.order) for b in range(S.order)
                    if rho[S.mul(a, b)] != CS.mul(rho[a], rho[b])), None)
        if hom is not None:
            w["rho_homomorphism"] = hom
        inj = len(set(rho)) == S.order
        rr, rr_w = right_regular_representation_injective(S)
        if inj != rr:
            w["injectivity"] = rr_w
        rep.update(rho_homomorphism=hom is None, rho_injective=inj, right_regular_injective=rr)
    return RepresentationReport(**rep)


def rho_map(C, CS):
    """a ↦ index of ρ^a (λ^a on the right) in ``CS``."""
    return tuple(CS.index[principal_cone(C, a)] for a in range(C.source.order))


def check_locally_inverse_cones(C, limits=DEFAULT_LIMITS):
    """Ĉ of an unambiguous category, with the locally inverse verdict."""
    rep = classify_category(C, limits)
    CS = cone_semigroup(C, limits)
    return rep, CS, is_locally_inverse(CS.as_semigroup)
