"""H-functors, normal duals, cross-connections and the semigroup of linked pairs.

The dual C* of an unambiguous category C is realised as R(Ĉ): the object
containing an idempotent cone μ stands for H(μ;-), and the morphism
λ(μ, x, ν) acts on H(μ;c) by γ ↦ xγ.  Every identification used here is
checked on the data rather than assumed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

from .categories import (
    Functor,
    classify_category,
    epi_components,
    left_ideal_category,
    right_ideal_category,
)
from .config import DEFAULT_LIMITS
from .cones import cone_apply, cone_semigroup, principal_cone
from .errors import (
    EtaNotWellDefined,
    InternalDisagreement,
    MultipleTransposes,
    NoTranspose,
    NotClosed,
    NotLocallyInverse,
    PropertyViolation,
    SizeGuard,
)
from .isomorphism import find_category_isomorphism, find_isomorphism
from .semigroup import FiniteSemigroup, find_zero, first_associativity_failure, green_data, is_locally_inverse


# ---------------------------------------------------------------- H-functors

@dataclass(frozen=True, eq=False)
class HFunctor:
    base_cone: int
    object_map: tuple        # per object: frozenset of cone indices
    morphism_map: tuple      # per morphism g: c -> d, dict H(μ;c) -> H(μ;d)
    eta: tuple               # per object: dict cone -> morphism in C(c_μ, c)
    eta_inv: tuple           # per object: dict morphism -> cone

    def check(self, C):
        """Witness of the first failed functor law, or ``None``."""
        for c in range(C.n_objects):
            if any(self.morphism_map[C.identity[c]][x] != x for x in self.object_map[c]):
                return ("identity", c)
        for g in range(C.n_morphisms):
            for h in range(C.n_morphisms):
                gh = C.comp[g][h]
                if gh < 0:
                    continue
                mg, mh, mgh = self.morphism_map[g], self.morphism_map[h], self.morphism_map[gh]
                if any(mh[mg[x]] != mgh[x] for x in self.object_map[C.dom[g]]):
                    return ("composition", g, h)
        return None

    def eta_natural(self, C):
        """η_μ commutes with H(μ;g) and post-composition with g."""
        for g in range(C.n_morphisms):
            c, d = C.dom[g], C.cod[g]
            for x in self.object_map[c]:
                if self.eta[d][self.morphism_map[g][x]] != C.comp[self.eta[c][x]][g]:
                    return (g, x)
        return None


def h_functor(C, CS, mu):
    """H(μ;-) tabulated, with η_μ(γ) = γ(c_μ) ι(c_γ, c) checked as the inverse of f ↦ μ ∗ f°."""
    cone = CS.cones[mu]
    if cone.components[cone.apex] != C.identity[cone.apex]:
        raise PropertyViolation("H-functors need an idempotent cone", (mu,))
    a = cone.apex
    objects, eta, eta_inv = [], [], []
    for c in range(C.n_objects):
        fwd = {}
        for f in C.hom(a, c):
            imgs = {CS.index[cone_apply(C, cone, e)] for e in epi_components(C, f)}
            if len(imgs) != 1:
                raise InternalDisagreement("μ ∗ f° depends on the factorisation", (mu, f, imgs))
            fwd[f] = imgs.pop()
        back = {}
        for f, x in fwd.items():
            if x in back:
                raise EtaNotWellDefined("distinct morphisms give the same cone", (mu, back[x], f))
            back[x] = f
        for x, f in back.items():
            g = CS.cones[x]
            if C.comp[g.components[a]][C.inclusion[(g.apex, c)]] != f:
                raise EtaNotWellDefined("η formula disagrees with f ↦ μ ∗ f°", (mu, x, f))
        objects.append(frozenset(back))
        eta.append(back)
        eta_inv.append(fwd)
    mmap = []
    for g in range(C.n_morphisms):
        c, d = C.dom[g], C.cod[g]
        mmap.append({x: eta_inv[d][C.comp[eta[c][x]][g]] for x in objects[c]})
    return HFunctor(mu, tuple(objects), tuple(mmap), tuple(eta), tuple(eta_inv))


def m_set(CS, mu):
    C = CS.base
    return frozenset(c for c, m in enumerate(CS.cones[mu].components) if C.is_iso(m))


# ---------------------------------------------------------------- dual

@dataclass(frozen=True, eq=False)
class NormalDual:
    """C* realised as R(Ĉ) with H-functor labels."""

    base: object          # C
    cones: object         # Ĉ
    category: object      # R(Ĉ)

    @cached_property
    def _h(self):
        return {}

    def h(self, mu):
        if mu not in self._h:
            self._h[mu] = h_functor(self.base, self.cones, mu)
        return self._h[mu]

    def functor_of(self, k):
        """H-functor of dual object ``k`` (built on its canonical cone)."""
        return self.h(self.category.object_payload[k])

    def object_of_cone(self, mu):
        return self.category.object_of_idempotent[mu]

    def action(self, m):
        """Component dicts of the natural transformation of dual morphism ``m``."""
        mu, x, nu = self.category.morphism_payload[m]
        H = self.h(mu)
        return tuple({y: self.cones.mul(x, y) for y in H.object_map[c]} for c in range(self.base.n_objects))

    @cached_property
    def _action_index(self):
        out = {}
        for m in range(self.category.n_morphisms):
            key = (self.category.dom[m], self.category.cod[m], _freeze(self.action(m)))
            if key in out:
                raise InternalDisagreement("two dual morphisms act identically", (out[key], m))
            out[key] = m
        return out

    def morphism_for(self, a, b, comps):
        """Dual morphism a -> b whose action equals ``comps``."""
        key = (a, b, _freeze(comps))
        if key not in self._action_index:
            raise PropertyViolation("transformation is not a dual morphism", (a, b))
        return self._action_index[key]

    def m_set(self, k):
        return m_set(self.cones, self.category.object_payload[k])


def _freeze(comps):
    return tuple(tuple(sorted(d.items())) for d in comps)


def normal_dual(C, CS=None, limits=DEFAULT_LIMITS):
    CS = CS or cone_semigroup(C, limits)
    RC = right_ideal_category(CS.as_semigroup)
    return NormalDual(C, CS, RC)


def verify_dual(D):
    """Check the R(Ĉ) realisation of the dual against H-functors.

    Returns a dict of witnesses (empty when everything holds).
    """
    C, CS, RC = D.base, D.cones, D.category
    w = {}
    g = green_data(CS.as_semigroup)
    idem = CS.idempotents
    for mu in idem:
        for nu in idem:
            same_r = g.rclass[mu] == g.rclass[nu]
            same_h = D.h(mu).object_map == D.h(nu).object_map
            if same_r != same_h:
                w.setdefault("r_class_vs_h_functor", (mu, nu))
            sub = all(x <= y for x, y in zip(D.h(mu).object_map, D.h(nu).object_map))
            if sub != ((D.object_of_cone(mu), D.object_of_cone(nu)) in RC.inclusion):
                w.setdefault("inclusion_vs_subfunctor", (mu, nu))
    for k in range(RC.n_objects):
        H = D.functor_of(k)
        bad = H.check(C) or H.eta_natural(C)
        if bad:
            w.setdefault("h_functor", (k, bad))
    for m in range(RC.n_morphisms):
        mu, x, nu = RC.morphism_payload[m]
        Hm, Hn = D.h(mu), D.h(nu)
        comps = D.action(m)
        for c in range(C.n_objects):
            if not set(comps[c].values()) <= Hn.object_map[c]:
                w.setdefault("action_range", (m, c))
        for f in range(C.n_morphisms):
            a, b = C.dom[f], C.cod[f]
            for y in Hm.object_map[a]:
                if Hn.morphism_map[f][comps[a][y]] != comps[b][Hm.morphism_map[f][y]]:
                    w.setdefault("naturality", (m, f, y))
    _ = D._action_index        # distinct morphisms act differently
    # Yoneda: natural transformations H(μ) -> H(ν) correspond to H(ν; c_μ)
    for a in range(RC.n_objects):
        for b in range(RC.n_objects):
            mu = RC.object_payload[a]
            size = len(D.functor_of(b).object_map[CS.cones[mu].apex])
            if size != len(RC.hom(a, b)):
                w.setdefault("yoneda_count", (a, b))
    return w


# ---------------------------------------------------------------- local isomorphisms

def verify_local_isomorphism(F):
    """Inclusion preserving, fully faithful, and an isomorphism on every ideal."""
    C, D = F.source, F.target
    w = {}
    bad = F.check()
    if bad is not None:
        w["functor"] = bad
    if not F.preserves_inclusions():
        w["inclusions"] = next(((a, b) for (a, b), i in C.inclusion.items()
                                if D.inclusion.get((F.object_map[a], F.object_map[b])) != F.morphism_map[i]), None)
    if not F.is_fully_faithful():
        w["fully_faithful"] = True
    for c in range(C.n_objects):
        down = [x for x in range(C.n_objects) if C.leq(x, c)]
        img = sorted(F.object_map[x] for x in down)
        target = sorted(y for y in range(D.n_objects) if D.leq(y, F.object_map[c]))
        if img != target or len(set(img)) != len(img):
            w.setdefault("ideal", c)
    return not w, w


# ---------------------------------------------------------------- cross-connections

def _conjugated_functor(X, Y, dual_Y, principal):
    """Γ_S or Δ_S: objects e ↦ H(principal cone of e), morphisms by η-conjugation.

    ``X`` is the domain ideal category, ``Y`` the category whose dual is the
    target.  For (e, u, f) in X the Y-morphism (f, u, e) is pulled back
    through η of the two principal cones.
    """
    from .categories import canonical_morphism

    obj = []
    for k in range(X.n_objects):
        e = X.object_payload[k]
        obj.append(dual_Y.object_of_cone(principal[e]))
    mor = []
    for m in range(X.n_morphisms):
        e, u, f = X.morphism_payload[m]
        y = canonical_morphism(Y, f, u, e)
        He, Hf = dual_Y.h(principal[e]), dual_Y.h(principal[f])
        comps = []
        for c in range(Y.n_objects):
            comps.append({x: Hf.eta_inv[c][Y.comp[y][He.eta[c][x]]] for x in He.object_map[c]})
        a, b = obj[X.dom[m]], obj[X.cod[m]]
        # the canonical cone of the dual object may differ from the principal one
        # but has the same H-functor, so the action tables are comparable
        mor.append(dual_Y.morphism_for(a, b, comps))
    return Functor(X, dual_Y.category, tuple(obj), tuple(mor))


@dataclass(frozen=True, eq=False)
class CrossConnection:
    C: object
    D: object
    dual_C: NormalDual      # C*
    dual_D: NormalDual      # D*
    gamma: Functor          # D -> C*
    delta: Functor          # C -> D*
    limits: object = DEFAULT_LIMITS

    @property
    def cones_C(self):
        return self.dual_C.cones

    @property
    def cones_D(self):
        return self.dual_D.cones

    def gamma_functor(self, d):
        return self.dual_C.functor_of(self.gamma.object_map[d])

    def delta_functor(self, c):
        return self.dual_D.functor_of(self.delta.object_map[c])

    def m_gamma(self, d):
        return self.dual_C.m_set(self.gamma.object_map[d])

    def m_delta(self, c):
        return self.dual_D.m_set(self.delta.object_map[c])

    @cached_property
    def e_omega(self):
        return tuple((c, d) for c in range(self.C.n_objects) for d in range(self.D.n_objects)
                     if c in self.m_gamma(d))

    @cached_property
    def m_set_witness(self):
        """Pair violating c ∈ MΓ(d) ⟺ d ∈ MΔ(c), or ``None``."""
        for c in range(self.C.n_objects):
            for d in range(self.D.n_objects):
                if (c in self.m_gamma(d)) != (d in self.m_delta(c)):
                    return (c, d)
        return None

    @cached_property
    def gamma_cd(self):
        return {cd: self._unique_cone(self.dual_C, self.gamma.object_map[cd[1]], cd[0]) for cd in self.e_omega}

    @cached_property
    def delta_cd(self):
        return {cd: self._unique_cone(self.dual_D, self.delta.object_map[cd[0]], cd[1]) for cd in self.e_omega}

    @staticmethod
    def _unique_cone(dual, k, apex):
        CS = dual.cones
        hits = [i for i in CS.idempotents_with_apex(apex) if dual.object_of_cone(i) == k]
        if len(hits) != 1:
            raise PropertyViolation("expected exactly one idempotent cone for the pair", (k, apex, hits))
        return hits[0]

    # bifunctors Γ(c,d) = Γ(d)(c) and Δ(c,d) = Δ(c)(d)
    def gamma_set(self, c, d):
        return self.gamma_functor(d).object_map[c]

    def delta_set(self, c, d):
        return self.delta_functor(c).object_map[d]

    def transpose(self, f, cd1, cd2):
        """f† in D(d', d) for f ∈ C(c', c), (c', d) and (c, d') in E_Ω."""
        C, D = self.C, self.D
        (c1, d), (c, d1) = cd1, cd2
        if C.dom[f] != c1 or C.cod[f] != c:
            raise PropertyViolation("morphism does not match the pairs", (f, cd1, cd2))
        homs = D.hom(d1, d)
        if len(homs) > self.limits.max_transpose_hom:
            raise SizeGuard(self.limits.max_transpose_hom, len(homs), "transpose hom-set")
        top = self.dual_D.h(self.delta_cd[(c1, d)])
        bot = self.dual_D.h(self.delta_cd[(c, d1)])
        act = self.dual_D.action(self.delta.morphism_map[f])
        # act is expressed on the canonical cone's H-functor; same sets as top/bot
        hits = []
        for g in homs:
            ok = True
            for x in range(D.n_objects):
                for y in top.object_map[x]:
                    if D.comp[g][top.eta[x][y]] != bot.eta[x][act[x][y]]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                hits.append(g)
        if not hits:
            raise NoTranspose("no transpose exists", (f, cd1, cd2))
        if len(hits) > 1:
            raise MultipleTransposes("transpose is not unique", (f, cd1, cd2, hits))
        return hits[0]

    def chi(self, c, d, c1=None, d1=None):
        """χ(c,d) as a dict Γ(c,d) -> Δ(c,d); representatives default to the least objects."""
        D = self.D
        c1 = min(self.m_gamma(d)) if c1 is None else c1
        d1 = min(self.m_delta(c)) if d1 is None else d1
        g0 = self.dual_C.h(self.gamma_cd[(c1, d)])
        d0 = self.cones_D.cones[self.delta_cd[(c, d1)]]
        out = {}
        for x in self.gamma_set(c, d):
            f = g0.eta[c][x]
            ft = self.transpose(f, (c1, d), (c, d1))
            ys = {self.cones_D.index[cone_apply(D, d0, e)] for e in epi_components(D, ft)}
            if len(ys) != 1:
                raise InternalDisagreement("δ ∗ f†° depends on the factorisation", (c, d, x))
            out[x] = ys.pop()
        return out

    @cached_property
    def chi_table(self):
        return {(c, d): self.chi(c, d) for c in range(self.C.n_objects) for d in range(self.D.n_objects)}


def cross_connection(C, D, gamma, delta, dual_C, dual_D, limits=DEFAULT_LIMITS):
    return CrossConnection(C, D, dual_C, dual_D, gamma, delta, limits)


def canonical_cxn(S, limits=DEFAULT_LIMITS):
    """ΩS = (L(S), R(S); Γ_S, Δ_S) for a locally inverse S."""
    v = is_locally_inverse(S)
    if not v.holds:
        raise NotLocallyInverse("canonical cross-connection needs a locally inverse semigroup", v.witness)
    L, R = left_ideal_category(S), right_ideal_category(S)
    dual_L, dual_R = normal_dual(L, limits=limits), normal_dual(R, limits=limits)
    rho = {e: dual_L.cones.index[principal_cone(L, e)] for e in S.idempotents}
    lam = {e: dual_R.cones.index[principal_cone(R, e)] for e in S.idempotents}
    gamma = _conjugated_functor(R, L, dual_L, rho)
    delta = _conjugated_functor(L, R, dual_R, lam)
    return CrossConnection(L, R, dual_L, dual_R, gamma, delta, limits)


def verify_cxn(om):
    """All structural checks on a cross-connection; returns a dict of witnesses."""
    w = {}
    for name, F in (("gamma", om.gamma), ("delta", om.delta)):
        ok, ww = verify_local_isomorphism(F)
        if not ok:
            w[name] = ww
    if om.m_set_witness is not None:
        w["m_sets"] = om.m_set_witness
    for (c, d), i in om.gamma_cd.items():
        g = om.cones_C.cones[i]
        H = om.dual_C.h(i)
        K = om.gamma_functor(d)
        if g.apex != c or H.object_map != K.object_map or any(
                H.morphism_map[m] != K.morphism_map[m] for m in range(om.C.n_morphisms)):
            w.setdefault("gamma_cd", (c, d))
    for (c, d), i in om.delta_cd.items():
        g = om.cones_D.cones[i]
        H = om.dual_D.h(i)
        K = om.delta_functor(c)
        if g.apex != d or H.object_map != K.object_map or any(
                H.morphism_map[m] != K.morphism_map[m] for m in range(om.D.n_morphisms)):
            w.setdefault("delta_cd", (c, d))
    return w


def check_chi(om):
    """Bijectivity, choice independence and bifunctor naturality of χ."""
    C, D = om.C, om.D
    w = {}
    chi = om.chi_table
    for (c, d), m in chi.items():
        if len(set(m.values())) != len(m) or set(m.values()) != om.delta_set(c, d):
            w.setdefault("bijection", (c, d))
        for c1 in om.m_gamma(d):
            for d1 in om.m_delta(c):
                if om.chi(c, d, c1, d1) != m:
                    w.setdefault("choice", (c, d, c1, d1))
    for u in range(C.n_morphisms):
        c, c1 = C.dom[u], C.cod[u]
        for d in range(D.n_objects):
            G = om.gamma_functor(d).morphism_map[u]               # Γ(u, d)
            Dl = om.dual_D.action(om.delta.morphism_map[u])[d]    # Δ(u, d)
            for x in om.gamma_set(c, d):
                if chi[(c1, d)][G[x]] != Dl[chi[(c, d)][x]]:
                    w.setdefault("natural_in_c", (u, d, x))
    for v in range(D.n_morphisms):
        d, d1 = D.dom[v], D.cod[v]
        for c in range(C.n_objects):
            G = om.dual_C.action(om.gamma.morphism_map[v])[c]     # Γ(c, v)
            Dl = om.delta_functor(c).morphism_map[v]              # Δ(c, v)
            for x in om.gamma_set(c, d):
                if chi[(c, d1)][G[x]] != Dl[chi[(c, d)][x]]:
                    w.setdefault("natural_in_d", (v, c, x))
    return w


# ---------------------------------------------------------------- SΩ

@dataclass(frozen=True, eq=False)
class CxnSemigroup:
    omega: CrossConnection
    linked_pairs: tuple
    product: tuple
    as_semigroup: FiniteSemigroup
    idempotent_labels: dict       # element index -> (c, d)

    @cached_property
    def index(self):
        return {p: k for k, p in enumerate(self.linked_pairs)}


def cxn_semigroup(om):
    CSc, CSd = om.cones_C, om.cones_D
    pairs = set()
    for (c, d), m in om.chi_table.items():
        pairs.update(m.items())
    pairs = tuple(sorted(pairs))
    index = {p: k for k, p in enumerate(pairs)}
    table = []
    for (g, dl) in pairs:
        row = []
        for (g2, dl2) in pairs:
            p = (CSc.mul(g, g2), CSd.mul(dl2, dl))
            if p not in index:
                raise NotClosed("product of linked pairs is not linked", ((g, dl), (g2, dl2)))
            row.append(index[p])
        table.append(tuple(row))
    table = tuple(table)
    if first_associativity_failure(table) is not None:
        raise InternalDisagreement("SΩ product is not associative", first_associativity_failure(table))
    labels = tuple(f"({g},{d})" for g, d in pairs)
    S = FiniteSemigroup(table, labels, find_zero(table))
    lab = {}
    for cd in om.e_omega:
        p = (om.gamma_cd[cd], om.delta_cd[cd])
        if p not in index:
            raise PropertyViolation("idempotent pair of E_Ω is not linked", cd)
        lab[index[p]] = cd
    return CxnSemigroup(om, pairs, table, S, lab)


def check_cxn_semigroup(SO):
    """Idempotent labels, quasi-orders, subdirect projections and local inversity."""
    om = SO.omega
    S = SO.as_semigroup
    w = {}
    if set(S.idempotents) != set(SO.idempotent_labels):
        w["idempotents"] = (S.idempotents, sorted(SO.idempotent_labels))
    if len(set(SO.idempotent_labels.values())) != len(om.e_omega):
        w["label_bijection"] = True
    for e, (c, d) in SO.idempotent_labels.items():
        for f, (c2, d2) in SO.idempotent_labels.items():
            if (S.mul(e, f) == e) != om.C.leq(c, c2):
                w.setdefault("leq_l", (e, f))
            if (S.mul(f, e) == e) != om.D.leq(d, d2):
                w.setdefault("leq_r", (e, f))
    gam_hat = set().union(*(om.gamma_set(c, d) for c in range(om.C.n_objects) for d in range(om.D.n_objects)))
    del_hat = set().union(*(om.delta_set(c, d) for c in range(om.C.n_objects) for d in range(om.D.n_objects)))
    if {g for g, _ in SO.linked_pairs} != gam_hat:
        w["projection_gamma"] = True
    if {d for _, d in SO.linked_pairs} != del_hat:
        w["projection_delta"] = True
    v = is_locally_inverse(S)
    if not v.holds:
        w["locally_inverse"] = v.witness
    return w


def is_pseudo_semilattice(SO):
    """No two distinct (L ∪ R)-related idempotents share a down-set ω(g)."""
    v = is_locally_inverse(SO.as_semigroup)
    return v.conditions.get("omega_LR_unique", (False, None))[0]


# ---------------------------------------------------------------- rebuild

@dataclass
class RebuildReport:
    fixture: str
    e_omega: int
    s_omega: int
    iso_found: bool
    witness: object
    left_iso: bool = False
    right_iso: bool = False
    pseudo_semilattice: bool = False
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return self.iso_found and self.left_iso and self.right_iso and self.pseudo_semilattice and not any(
            self.checks.values())

    def to_json(self):
        return json.dumps({
            "fixture": self.fixture,
            "|E_omega|": self.e_omega,
            "|S_omega|": self.s_omega,
            "iso_found": self.iso_found,
            "witness": self.witness,
        }, sort_keys=True)


def rebuild_check(S, name="S", limits=DEFAULT_LIMITS, om=None):
    """S -> ΩS -> SΩ, compared back to S and its ideal categories."""
    om = om or canonical_cxn(S, limits)
    checks = {"cxn": verify_cxn(om)}
    SO = cxn_semigroup(om)
    checks["semigroup"] = check_cxn_semigroup(SO)
    T = SO.as_semigroup
    phi = find_isomorphism(T, S, limits)
    li = find_category_isomorphism(left_ideal_category(T), om.C) is not None
    ri = find_category_isomorphism(right_ideal_category(T), om.D) is not None
    witness = {T.label(a): S.label(b) for a, b in enumerate(phi)} if phi else {"order": [T.order, S.order]}
    return RebuildReport(name, len(om.e_omega), T.order, phi is not None, witness, li, ri,
                         is_pseudo_semilattice(SO), checks)


def unambiguous_pair(om, limits=DEFAULT_LIMITS):
    return classify_category(om.C, limits).is_unambiguous and classify_category(om.D, limits).is_unambiguous
