"""Finite categories with subobjects and the ideal categories L(S), R(S).

Morphisms compose left to right: ``C.comp[f][g]`` is "f then g" and is
``-1`` when ``cod f != dom g``.  Every category is fully tabulated, so
epi/mono/iso tests are plain exhaustive cancellation checks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import InternalDisagreement, NoFactorisation, NotInHomSet, NotRegular, AxiomViolation
from .semigroup import green_data, idempotents_and_inverses


@dataclass(frozen=True, eq=False)
class SOCategory:
    n_objects: int
    dom: tuple
    cod: tuple
    comp: tuple
    identity: tuple
    inclusion: dict                    # (a, b) -> morphism for a ⊆ b, including (a, a)
    side: str = "abstract"             # left | right | abstract
    object_payload: tuple = None       # canonical idempotent per object
    morphism_payload: tuple = None     # (e, u, f) per morphism
    source: object = None              # semigroup the category was built from
    object_labels: tuple = None
    morphism_labels: tuple = None

    def __repr__(self):
        return f"SOCategory({self.side}, objects={self.n_objects}, morphisms={self.n_morphisms})"

    @property
    def n_morphisms(self):
        return len(self.dom)

    @cached_property
    def _homs(self):
        out = {(a, b): [] for a in range(self.n_objects) for b in range(self.n_objects)}
        for m in range(self.n_morphisms):
            out[(self.dom[m], self.cod[m])].append(m)
        return {k: tuple(v) for k, v in out.items()}

    def hom(self, a, b):
        return self._homs[(a, b)]

    def compose(self, *ms):
        r = ms[0]
        for m in ms[1:]:
            r = self.comp[r][m]
            if r < 0:
                raise ValueError("morphisms are not composable")
        return r

    def leq(self, a, b):
        return (a, b) in self.inclusion

    def object_label(self, c):
        return self.object_labels[c] if self.object_labels else str(c)

    @cached_property
    def identity_set(self):
        return frozenset(self.identity)

    @cached_property
    def inclusion_set(self):
        return frozenset(self.inclusion.values())

    @cached_property
    def payload_index(self):
        if self.morphism_payload is None:
            return {}
        return {p: m for m, p in enumerate(self.morphism_payload)}

    @cached_property
    def object_of_idempotent(self):
        """Map every idempotent of the source semigroup to its object."""
        if self.source is None:
            return {}
        g = green_data(self.source)
        cls = g.lclass if self.side == "left" else g.rclass
        rep = {cls[e]: c for c, e in enumerate(self.object_payload)}
        return {e: rep[cls[e]] for e in self.source.idempotents}

    @cached_property
    def inverse(self):
        """Two-sided inverse per morphism, ``-1`` if not an isomorphism."""
        out = []
        for m in range(self.n_morphisms):
            a, b = self.dom[m], self.cod[m]
            inv = next((n for n in self.hom(b, a)
                        if self.comp[m][n] == self.identity[a] and self.comp[n][m] == self.identity[b]), -1)
            out.append(inv)
        return tuple(out)

    def is_iso(self, m):
        return self.inverse[m] >= 0

    @cached_property
    def _epi(self):
        out = []
        for m in range(self.n_morphisms):
            b = self.cod[m]
            ok = True
            for c in range(self.n_objects):
                seen = set()
                for g in self.hom(b, c):
                    x = self.comp[m][g]
                    if x in seen:
                        ok = False
                        break
                    seen.add(x)
                if not ok:
                    break
            out.append(ok)
        return tuple(out)

    @cached_property
    def _mono(self):
        out = []
        for m in range(self.n_morphisms):
            a = self.dom[m]
            ok = True
            for c in range(self.n_objects):
                seen = set()
                for g in self.hom(c, a):
                    x = self.comp[g][m]
                    if x in seen:
                        ok = False
                        break
                    seen.add(x)
                if not ok:
                    break
            out.append(ok)
        return tuple(out)

    def is_epi(self, m):
        return self._epi[m]

    def is_mono(self, m):
        return self._mono[m]

    @cached_property
    def retractions(self):
        """(c', c) -> morphisms θ: c -> c' with ι(c', c)θ = 1_{c'}."""
        out = {}
        for (a, b), i in self.inclusion.items():
            out[(a, b)] = tuple(t for t in self.hom(b, a) if self.comp[i][t] == self.identity[a])
        return out

    @cached_property
    def retraction_set(self):
        return frozenset(t for ts in self.retractions.values() for t in ts)

    def is_retraction(self, m):
        return m in self.retraction_set

    @cached_property
    def _fact_cache(self):
        return {}

    @cached_property
    def meets(self):
        """(a, b) -> greatest lower bound under inclusion, or ``None``."""
        n = self.n_objects
        out = {}
        for a in range(n):
            for b in range(n):
                lower = [c for c in range(n) if self.leq(c, a) and self.leq(c, b)]
                top = [c for c in lower if all(self.leq(x, c) for x in lower)]
                out[(a, b)] = top[0] if top else None
        return out

    def meet(self, a, b):
        return self.meets[(a, b)]

    @cached_property
    def maximal_objects(self):
        n = self.n_objects
        return tuple(c for c in range(n) if not any(d != c and self.leq(c, d) for d in range(n)))


# ---------------------------------------------------------------- construction

def build_category(n_objects, dom, cod, comp, identity, inclusion, **kw):
    return SOCategory(n_objects, tuple(dom), tuple(cod), tuple(tuple(r) for r in comp),
                      tuple(identity), dict(inclusion), **kw)


def _ideal_category(S, side):
    inv = idempotents_and_inverses(S)
    if not inv.is_regular:
        raise NotRegular("ideal categories need a regular semigroup", inv.witness)
    g = green_data(S)
    t = S.table
    cls = g.lclass if side == "left" else g.rclass
    reps = {}
    for e in S.idempotents:
        reps.setdefault(cls[e], e)
    objs = tuple(sorted(reps.values()))
    n = len(objs)

    def homset(e, f):
        # L: u in eSf  (eu = u = uf);  R: u in fSe
        if side == "left":
            return [u for u in range(S.order) if t[e][u] == u and t[u][f] == u]
        return [u for u in range(S.order) if t[f][u] == u and t[u][e] == u]

    dom, cod, payload = [], [], []
    for a, e in enumerate(objs):
        for b, f in enumerate(objs):
            for u in homset(e, f):
                dom.append(a)
                cod.append(b)
                payload.append((e, u, f))
    index = {p: m for m, p in enumerate(payload)}
    N = len(payload)
    comp = [[-1] * N for _ in range(N)]
    for m, (e, u, f) in enumerate(payload):
        for k, (f2, v, h) in enumerate(payload):
            if f2 == f:
                w = t[u][v] if side == "left" else t[v][u]
                comp[m][k] = index[(e, w, h)]
    identity = [index[(e, e, e)] for e in objs]
    inclusion = {}
    for a, e in enumerate(objs):
        for b, f in enumerate(objs):
            if side == "left" and t[e][f] == e:
                inclusion[(a, b)] = index[(e, e, f)]
            elif side == "right" and t[f][e] == e:
                inclusion[(a, b)] = index[(e, e, f)]
    olabels = tuple((f"S{S.label(e)}" if side == "left" else f"{S.label(e)}S") for e in objs)
    mlabels = tuple(
        (f"rho({S.label(e)},{S.label(u)},{S.label(f)})" if side == "left"
         else f"lambda({S.label(e)},{S.label(u)},{S.label(f)})")
        for e, u, f in payload
    )
    return build_category(n, dom, cod, comp, identity, inclusion, side=side,
                          object_payload=objs, morphism_payload=tuple(payload), source=S,
                          object_labels=olabels, morphism_labels=mlabels)


def left_ideal_category(S):
    """L(S): principal left ideals Se and partial right translations ρ(e,u,f)."""
    return _ideal_category(S, "left")


def right_ideal_category(S):
    """R(S): principal right ideals eS and partial left translations λ(e,u,f)."""
    return _ideal_category(S, "right")


def canonical_morphism(C, e, u, f):
    """Index of ρ(e,u,f) in L(S) (or λ(e,u,f) in R(S)) after normalising the triple."""
    S = C.source
    t = S.table
    if t[e][e] != e or t[f][f] != f:
        raise NotInHomSet(f"{e} and {f} must be idempotents", (e, u, f))
    if C.side == "left":
        if not (t[e][u] == u and t[u][f] == u):
            raise NotInHomSet(f"{u} is not in eSf", (e, u, f))
    elif not (t[f][u] == u and t[u][e] == u):
        raise NotInHomSet(f"{u} is not in fSe", (e, u, f))
    a = C.object_of_idempotent[e]
    b = C.object_of_idempotent[f]
    e2, f2 = C.object_payload[a], C.object_payload[b]
    u2 = t[e2][u] if C.side == "left" else t[u][e2]
    return C.payload_index[(e2, u2, f2)]


def hom_count_oracle(S, side="left"):
    """Σ |eSf| over pairs of idempotent-class representatives, counted directly."""
    g = green_data(S)
    cls = g.lclass if side == "left" else g.rclass
    reps = sorted({cls[e]: e for e in reversed(S.idempotents)}.values())
    total = 0
    for e in reps:
        for f in reps:
            if side == "left":
                total += len({S.prod(e, x, f) for x in range(S.order)})
            else:
                total += len({S.prod(f, x, e) for x in range(S.order)})
    return total


# ---------------------------------------------------------------- checks

def verify_category_axioms(C):
    """Associativity and identities; raises :class:`AxiomViolation`."""
    N = C.n_morphisms
    for m in range(N):
        if C.comp[C.identity[C.dom[m]]][m] != m or C.comp[m][C.identity[C.cod[m]]] != m:
            raise AxiomViolation("identity is not neutral", (m,))
        for k in range(N):
            mk = C.comp[m][k]
            if (C.cod[m] == C.dom[k]) != (mk >= 0):
                raise AxiomViolation("composition defined on the wrong pairs", (m, k))
            if mk >= 0 and (C.dom[mk] != C.dom[m] or C.cod[mk] != C.cod[k]):
                raise AxiomViolation("composite has wrong endpoints", (m, k))
    for m in range(N):
        for k in range(N):
            mk = C.comp[m][k]
            if mk < 0:
                continue
            for j in range(N):
                if C.dom[j] != C.cod[k]:
                    continue
                if C.comp[mk][j] != C.comp[m][C.comp[k][j]]:
                    raise AxiomViolation("composition is not associative", (m, k, j))
    return True


@dataclass(frozen=True)
class SubobjectReport:
    holds: bool
    witnesses: dict
    is_semilattice: bool
    meets: dict


def verify_subobject_structure(C):
    """Category-with-subobjects axioms plus the meet table of the object order."""
    w = {}
    n = C.n_objects
    for c in range(n):
        if C.inclusion.get((c, c)) != C.identity[c]:
            w.setdefault("identity_inclusion", (c,))
    for (a, b), i in C.inclusion.items():
        if C.dom[i] != a or C.cod[i] != b:
            w.setdefault("inclusion_endpoints", (a, b))
        if a != b and (b, a) in C.inclusion:
            w.setdefault("strict_preorder", (a, b))
        for (b2, c), j in C.inclusion.items():
            if b2 == b and C.inclusion.get((a, c)) != C.comp[i][j]:
                w.setdefault("closed_under_composition", (a, b, c))
        if not C.is_mono(i):
            w.setdefault("inclusions_monic", (i,))
    for (a, c), phi in C.inclusion.items():
        for (b, c2), psi in C.inclusion.items():
            if c2 != c:
                continue
            for alpha in C.hom(a, b):
                if C.comp[alpha][psi] == phi and alpha not in C.inclusion_set:
                    w.setdefault("factor_of_inclusion_is_inclusion", (alpha, psi, phi))
    meets = {k: v for k, v in C.meets.items()}
    semilattice = all(v is not None for v in meets.values())
    return SubobjectReport(not w, w, semilattice, meets)


@dataclass(frozen=True)
class NormalFactorisation:
    retraction: int
    iso: int
    inclusion: int
    coimage: int
    image: int
    epi_component: int


def factorise(C, m, raise_if_empty=False):
    """Every triple (retraction, iso, inclusion) composing to ``m``."""
    cache = C._fact_cache
    if m not in cache:
        a, b = C.dom[m], C.cod[m]
        out = []
        for (c1, a2), thetas in C.retractions.items():
            if a2 != a:
                continue
            for theta in thetas:
                for (d1, b2), iota in C.inclusion.items():
                    if b2 != b:
                        continue
                    for sigma in C.hom(c1, d1):
                        if not C.is_iso(sigma):
                            continue
                        ts = C.comp[theta][sigma]
                        if C.comp[ts][iota] == m:
                            out.append(NormalFactorisation(theta, sigma, iota, c1, d1, ts))
        cache[m] = tuple(out)
    if raise_if_empty and not cache[m]:
        raise NoFactorisation(f"morphism {m} has no normal factorisation", (m,))
    return cache[m]


def epi_components(C, m):
    """Distinct epimorphic components over all normal factorisations of ``m``."""
    return tuple(sorted({f.epi_component for f in factorise(C, m, raise_if_empty=True)}))


def epi_component(C, m):
    comps = epi_components(C, m)
    return comps[0]


def image(C, m):
    fs = factorise(C, m, raise_if_empty=True)
    imgs = {f.image for f in fs}
    if len(imgs) != 1:
        raise InternalDisagreement("normal factorisations disagree on the image", (m, imgs))
    return fs[0].image


@dataclass(frozen=True)
class CategoryReport:
    is_with_subobjects: bool
    all_inclusions_split: bool
    splits_unique: bool
    all_factorable: bool
    factorisations_unique: bool
    has_identity_cones: bool
    verdict: str
    witnesses: dict = field(default_factory=dict)

    @property
    def is_normal(self):
        return self.verdict in ("normal", "unambiguous")

    @property
    def is_unambiguous(self):
        return self.verdict == "unambiguous"


def classify_category(C, limits=None):
    """Normal / unambiguous classification by exhaustive checks."""
    from .cones import identity_cone_exists
    from .config import DEFAULT_LIMITS

    limits = limits or DEFAULT_LIMITS
    w = {}
    sub = verify_subobject_structure(C)
    if not sub.holds:
        w["is_with_subobjects"] = sub.witnesses
    split = split_unique = True
    for key, ts in sorted(C.retractions.items()):
        if not ts and split:
            split = False
            w["all_inclusions_split"] = key
        if len(ts) > 1 and split_unique:
            split_unique = False
            w["splits_unique"] = (key, ts)
    if not split:
        split_unique = False
        w.setdefault("splits_unique", w["all_inclusions_split"])
    fact = fact_unique = True
    for m in range(C.n_morphisms):
        k = len(factorise(C, m))
        if k == 0 and fact:
            fact = False
            w["all_factorable"] = (m,)
        if k > 1 and fact_unique:
            fact_unique = False
            w["factorisations_unique"] = (m, k)
    if not fact:
        fact_unique = False
        w.setdefault("factorisations_unique", w["all_factorable"])
    idc = True
    for c in range(C.n_objects):
        if not identity_cone_exists(C, c, limits):
            idc = False
            w["has_identity_cones"] = (c,)
            break
    normal = sub.holds and split and fact and idc
    if normal and split_unique and fact_unique:
        verdict = "unambiguous"
    elif normal:
        verdict = "normal"
    else:
        verdict = "neither"
    return CategoryReport(sub.holds, split, split_unique, fact, fact_unique, idc, verdict, w)


# ---------------------------------------------------------------- functors

@dataclass(frozen=True)
class Functor:
    source: SOCategory
    target: SOCategory
    object_map: tuple
    morphism_map: tuple

    def check(self):
        """Witness of the first failed functor law, or ``None``."""
        C, D = self.source, self.target
        F, Fo = self.morphism_map, self.object_map
        for m in range(C.n_morphisms):
            if D.dom[F[m]] != Fo[C.dom[m]] or D.cod[F[m]] != Fo[C.cod[m]]:
                return ("endpoints", m)
        for c in range(C.n_objects):
            if F[C.identity[c]] != D.identity[Fo[c]]:
                return ("identity", c)
        for m in range(C.n_morphisms):
            for k in range(C.n_morphisms):
                mk = C.comp[m][k]
                if mk >= 0 and F[mk] != D.comp[F[m]][F[k]]:
                    return ("composition", m, k)
        return None

    def preserves_inclusions(self):
        return all(
            (self.object_map[a], self.object_map[b]) in self.target.inclusion
            and self.morphism_map[i] == self.target.inclusion[(self.object_map[a], self.object_map[b])]
            for (a, b), i in self.source.inclusion.items()
        )

    def is_bijective(self):
        return (len(set(self.object_map)) == self.target.n_objects == self.source.n_objects
                and len(set(self.morphism_map)) == self.target.n_morphisms == self.source.n_morphisms)

    def is_fully_faithful(self):
        C, D = self.source, self.target
        for a in range(C.n_objects):
            for b in range(C.n_objects):
                imgs = [self.morphism_map[m] for m in C.hom(a, b)]
                if len(set(imgs)) != len(imgs) or len(imgs) != len(D.hom(self.object_map[a], self.object_map[b])):
                    return False
        return True
