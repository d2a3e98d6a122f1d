"""Brute-force isomorphism search for semigroups and finite categories.

Both searches pick a generating set, backtrack over generator images that
match cheap invariants, and propagate the partial map through products.
"""
from __future__ import annotations

from .config import DEFAULT_LIMITS
from .errors import SizeGuard
from .semigroup import green_data


def _power_signature(S, a):
    seen = {}
    x, k = a, 1
    while x not in seen:
        seen[x] = k
        x = S.mul(x, a)
        k += 1
    return (seen[x], k - seen[x])          # index, period


def element_invariants(S):
    g = green_data(S)
    lsize = {c: g.lclass.count(c) for c in set(g.lclass)}
    rsize = {c: g.rclass.count(c) for c in set(g.rclass)}
    dsize = {c: g.dclass.count(c) for c in set(g.dclass)}
    out = []
    for a in range(S.order):
        out.append((
            S.mul(a, a) == a,
            a == S.zero,
            a == S.identity,
            len(g.left_ideal[a]),
            len(g.right_ideal[a]),
            lsize[g.lclass[a]],
            rsize[g.rclass[a]],
            dsize[g.dclass[a]],
            _power_signature(S, a),
            sum(1 for x in range(S.order) if S.mul(a, x) == a),
            sum(1 for x in range(S.order) if S.mul(x, a) == a),
        ))
    return out


def generating_set(S):
    gens, reached = [], set()
    for a in range(S.order):
        if a in reached:
            continue
        gens.append(a)
        frontier = [a] if a not in reached else []
        reached.add(a)
        while frontier:
            x = frontier.pop()
            for y in list(reached):
                for z in (S.mul(x, y), S.mul(y, x)):
                    if z not in reached:
                        reached.add(z)
                        frontier.append(z)
    return gens


def _propagate(S, T, fwd, bwd, start):
    """Extend ``fwd`` by closure under products; False on conflict."""
    stack = list(start)
    while stack:
        x = stack.pop()
        for y in list(fwd):
            for a, b in ((x, y), (y, x)):
                c = S.mul(a, b)
                img = T.mul(fwd[a], fwd[b])
                if c in fwd:
                    if fwd[c] != img:
                        return False
                elif img in bwd:
                    return False
                else:
                    fwd[c] = img
                    bwd[img] = c
                    stack.append(c)
    return True


def find_isomorphism(S1, S2, limits=DEFAULT_LIMITS):
    """An isomorphism ``S1 -> S2`` as a tuple of images, or ``None``."""
    n = S1.order
    for S in (S1, S2):
        if S.order > limits.max_order:
            raise SizeGuard(limits.max_order, S.order, "semigroup order")
    if n != S2.order or len(S1.idempotents) != len(S2.idempotents):
        return None
    inv1, inv2 = element_invariants(S1), element_invariants(S2)
    if sorted(inv1) != sorted(inv2):
        return None
    gens = generating_set(S1)
    cands = [[b for b in range(n) if inv2[b] == inv1[g]] for g in gens]

    def search(k, fwd, bwd):
        if k == len(gens):
            return fwd
        g = gens[k]
        if g in fwd:
            return search(k + 1, fwd, bwd)
        for b in cands[k]:
            if b in bwd:
                continue
            f2, b2 = dict(fwd), dict(bwd)
            f2[g] = b
            b2[b] = g
            if _propagate(S1, S2, f2, b2, [g]):
                res = search(k + 1, f2, b2)
                if res is not None:
                    return res
        return None

    fwd = search(0, {}, {})
    if fwd is None or len(fwd) != n:
        return None
    phi = tuple(fwd[a] for a in range(n))
    assert all(phi[S1.mul(a, b)] == S2.mul(phi[a], phi[b]) for a in range(n) for b in range(n))
    return phi


def invert_map(phi):
    out = [0] * len(phi)
    for a, b in enumerate(phi):
        out[b] = a
    return tuple(out)


# ---------------------------------------------------------------- categories

def _object_signature(C, c):
    n = C.n_objects
    return (
        len(C.hom(c, c)),
        tuple(sorted(len(C.hom(c, d)) for d in range(n))),
        tuple(sorted(len(C.hom(d, c)) for d in range(n))),
        sum(1 for d in range(n) if C.leq(d, c)),
        sum(1 for d in range(n) if C.leq(c, d)),
    )


def _morphism_flags(C, m):
    return (m in C.identity_set, m in C.inclusion_set, C.is_iso(m))


def morphism_generators(C):
    gens, reached = [], set()
    for m in range(C.n_morphisms):
        if m in reached:
            continue
        gens.append(m)
        reached.add(m)
        frontier = [m]
        while frontier:
            x = frontier.pop()
            for y in list(reached):
                for a, b in ((x, y), (y, x)):
                    z = C.comp[a][b]
                    if z >= 0 and z not in reached:
                        reached.add(z)
                        frontier.append(z)
    return gens


def find_category_isomorphism(C1, C2, preserve_inclusions=True, max_object_perms=10**6):
    """Isomorphism of finite categories (optionally preserving inclusions).

    Returns ``(object_map, morphism_map)`` or ``None``.
    """
    n = C1.n_objects
    if n != C2.n_objects or C1.n_morphisms != C2.n_morphisms:
        return None
    if preserve_inclusions and len(C1.inclusion_set) != len(C2.inclusion_set):
        return None
    sig1 = [_object_signature(C1, c) for c in range(n)]
    sig2 = [_object_signature(C2, c) for c in range(n)]
    if sorted(sig1) != sorted(sig2):
        return None
    ocands = [[d for d in range(n) if sig2[d] == sig1[c]] for c in range(n)]
    gens = morphism_generators(C1)
    flags1 = [_morphism_flags(C1, m) for m in range(C1.n_morphisms)]
    flags2 = [_morphism_flags(C2, m) for m in range(C2.n_morphisms)]
    tried = 0

    def object_maps(c, used, cur):
        if c == n:
            yield tuple(cur)
            return
        for d in ocands[c]:
            if d in used:
                continue
            ok = all(
                len(C1.hom(c, c2)) == len(C2.hom(d, cur[c2])) and len(C1.hom(c2, c)) == len(C2.hom(cur[c2], d))
                and (not preserve_inclusions or (C1.leq(c, c2) == C2.leq(d, cur[c2]) and C1.leq(c2, c) == C2.leq(cur[c2], d)))
                for c2 in range(c)
            )
            if ok and len(C1.hom(c, c)) == len(C2.hom(d, d)):
                cur.append(d)
                used.add(d)
                yield from object_maps(c + 1, used, cur)
                used.discard(d)
                cur.pop()

    def propagate(fwd, bwd, start):
        stack = list(start)
        while stack:
            x = stack.pop()
            for y in list(fwd):
                for a, b in ((x, y), (y, x)):
                    c = C1.comp[a][b]
                    if c < 0:
                        continue
                    img = C2.comp[fwd[a]][fwd[b]]
                    if img < 0:
                        return False
                    if c in fwd:
                        if fwd[c] != img:
                            return False
                    elif img in bwd or flags2[img] != flags1[c]:
                        return False
                    else:
                        fwd[c] = img
                        bwd[img] = c
                        stack.append(c)
        return True

    for omap in object_maps(0, set(), []):
        tried += 1
        if tried > max_object_perms:
            raise SizeGuard(max_object_perms, tried, "object bijections")
        # identities are forced
        fwd, bwd = {}, {}
        ok = True
        for c in range(n):
            a, b = C1.identity[c], C2.identity[omap[c]]
            fwd[a], bwd[b] = b, a
        if preserve_inclusions:
            for (a, b), m in C1.inclusion.items():
                img = C2.inclusion[(omap[a], omap[b])]
                if m in fwd and fwd[m] != img:
                    ok = False
                fwd[m], bwd[img] = img, m
        if not ok or not propagate(fwd, bwd, list(fwd)):
            continue

        def search(k, fwd, bwd):
            if k == len(gens):
                return fwd
            g = gens[k]
            if g in fwd:
                return search(k + 1, fwd, bwd)
            for img in C2.hom(omap[C1.dom[g]], omap[C1.cod[g]]):
                if img in bwd or flags2[img] != flags1[g]:
                    continue
                f2, b2 = dict(fwd), dict(bwd)
                f2[g], b2[img] = img, g
                if propagate(f2, b2, [g]):
                    res = search(k + 1, f2, b2)
                    if res is not None:
                        return res
            return None

        res = search(0, fwd, bwd)
        if res is not None and len(res) == C1.n_morphisms:
            mmap = tuple(res[m] for m in range(C1.n_morphisms))
            return omap, mmap
    return None
