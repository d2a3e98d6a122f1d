"""Text formats: Cayley tables, abstract categories, Rees specs and groupoid export.

Cayley (``.cay``)::

    3
    0 0 0
    0 1 2
    0 2 1
    labels: z a b
    zero: 0

Abstract category (``.socat``)::

    objects 2
    hom 0 0 : 0
    hom 0 1 : 1
    hom 1 1 : 2
    compose 0 1 1
    inclusion 0 1 1

Rees spec (``.rees``): a Cayley block for the group, then ``I: n``,
``L: m`` and ``m`` rows of ``n`` tokens (group labels, ``0`` for zero).
Blank lines and ``#`` comments are ignored everywhere.
"""
from __future__ import annotations

from .categories import build_category
from .errors import InputError
from .rees import ZERO, ReesSpec
from .semigroup import from_cayley_table


def _lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _int(tok, what):
    try:
        return int(tok)
    except ValueError:
        raise InputError(f"{what}: expected an integer, got {tok!r}") from None


# ---------------------------------------------------------------- Cayley

def _parse_cayley_lines(lines):
    if not lines:
        raise InputError("empty Cayley table")
    n = _int(lines[0], "order")
    if n < 1:
        raise InputError("order must be positive")
    if len(lines) < n + 1:
        raise InputError(f"expected {n} table rows, found {len(lines) - 1}")
    grid = [[_int(t, f"row {r}") for t in lines[1 + r].split()] for r in range(n)]
    labels = zero = None
    rest = lines[n + 1:]
    used = 0
    for line in rest:
        key, _, val = line.partition(":")
        key = key.strip().lower()
        if key == "labels":
            labels = val.split()
        elif key == "zero":
            zero = _int(val.strip(), "zero")
        else:
            break
        used += 1
    return from_cayley_table(grid, labels, zero), rest[used:]


def parse_cayley(text):
    S, rest = _parse_cayley_lines(_lines(text))
    if rest:
        raise InputError(f"unexpected line after the table: {rest[0]!r}")
    return S


def format_cayley(S, with_labels=True):
    lines = [str(S.order)] + [" ".join(map(str, row)) for row in S.table]
    if with_labels and S.labels:
        lines.append("labels: " + " ".join(S.labels))
    if S.zero is not None:
        lines.append(f"zero: {S.zero}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- abstract categories

def parse_socat(text):
    lines = _lines(text)
    if not lines or not lines[0].startswith("objects"):
        raise InputError("category file must start with 'objects N'")
    n = _int(lines[0].split()[1] if len(lines[0].split()) > 1 else "", "objects")
    dom, cod = {}, {}
    comp_entries, incl = {}, {}
    for line in lines[1:]:
        tok = line.replace(":", " : ").split()
        kind = tok[0]
        if kind == "hom":
            if len(tok) < 4 or tok[3] != ":":
                raise InputError(f"bad hom line {line!r}")
            a, b = _int(tok[1], "hom"), _int(tok[2], "hom")
            for t in tok[4:]:
                m = _int(t, "hom")
                if m in dom:
                    raise InputError(f"morphism {m} listed twice")
                dom[m], cod[m] = a, b
        elif kind == "compose" and len(tok) == 4:
            f, g, h = (_int(t, "compose") for t in tok[1:])
            comp_entries[(f, g)] = h
        elif kind == "inclusion" and len(tok) == 4:
            a, b, m = (_int(t, "inclusion") for t in tok[1:])
            incl[(a, b)] = m
        else:
            raise InputError(f"unrecognised line {line!r}")
    k = len(dom)
    if sorted(dom) != list(range(k)):
        raise InputError("morphisms must be numbered 0..M-1")
    for m in range(k):
        if not (0 <= dom[m] < n and 0 <= cod[m] < n):
            raise InputError(f"morphism {m} has an endpoint out of range")
    comp = [[-1] * k for _ in range(k)]
    for f in range(k):
        for g in range(k):
            if cod[f] == dom[g]:
                if (f, g) not in comp_entries:
                    raise InputError(f"missing composite of {f} and {g}")
                h = comp_entries[(f, g)]
                if not (0 <= h < k and dom[h] == dom[f] and cod[h] == cod[g]):
                    raise InputError(f"composite of {f} and {g} has wrong endpoints")
                comp[f][g] = h
            elif (f, g) in comp_entries:
                raise InputError(f"{f} and {g} are not composable")
    identity = []
    for a in range(n):
        units = [m for m in range(k) if dom[m] == cod[m] == a
                 and all(comp[m][g] == g for g in range(k) if dom[g] == a)
                 and all(comp[f][m] == f for f in range(k) if cod[f] == a)]
        if len(units) != 1:
            raise InputError(f"object {a} has no identity morphism")
        identity.append(units[0])
    for a in range(n):
        incl.setdefault((a, a), identity[a])
    for (a, b), m in incl.items():
        if not (0 <= m < k and dom[m] == a and cod[m] == b):
            raise InputError(f"inclusion {a} -> {b} is not morphism {m}")
    return build_category(n, [dom[m] for m in range(k)], [cod[m] for m in range(k)], comp, identity, incl)


def format_socat(C):
    lines = [f"objects {C.n_objects}"]
    for a in range(C.n_objects):
        for b in range(C.n_objects):
            if C.hom(a, b):
                lines.append(f"hom {a} {b} : " + " ".join(map(str, C.hom(a, b))))
    for f in range(C.n_morphisms):
        for g in range(C.n_morphisms):
            if C.comp[f][g] >= 0:
                lines.append(f"compose {f} {g} {C.comp[f][g]}")
    for (a, b), m in sorted(C.inclusion.items()):
        if a != b:
            lines.append(f"inclusion {a} {b} {m}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- Rees specs

def parse_rees(text):
    lines = _lines(text)
    G, rest = _parse_cayley_lines(lines)
    labels = list(G.labels) if G.labels else [str(k) for k in range(G.order)]
    if "0" in labels:
        raise InputError("group labels must not use the reserved zero token '0'")
    sizes = {}
    for key in ("I", "L"):
        if not rest or not rest[0].upper().startswith(key + ":"):
            raise InputError(f"expected '{key}: n' line")
        sizes[key] = _int(rest[0].split(":", 1)[1].strip(), key)
        rest = rest[1:]
    if len(rest) != sizes["L"]:
        raise InputError(f"expected {sizes['L']} matrix rows, found {len(rest)}")
    matrix = []
    for r, line in enumerate(rest):
        toks = line.split()
        if len(toks) != sizes["I"]:
            raise InputError(f"matrix row {r} has {len(toks)} entries, expected {sizes['I']}")
        row = []
        for t in toks:
            if t == "0":
                row.append(ZERO)
            elif t in labels:
                row.append(labels.index(t))
            else:
                raise InputError(f"unknown group element {t!r}")
        matrix.append(tuple(row))
    return ReesSpec(G, sizes["I"], sizes["L"], tuple(matrix))


def format_rees(spec):
    G = spec.group
    out = format_cayley(G)
    out += f"I: {spec.i_size}\nL: {spec.l_size}\n"
    for row in spec.matrix:
        out += " ".join("0" if v is ZERO else G.label(v) for v in row) + "\n"
    return out


# ---------------------------------------------------------------- groupoid export

def format_groupoid(G):
    lines = [f"objects {G.n_objects}"]
    if G.object_labels:
        lines.append("labels: " + " ".join(G.object_labels))
    lines.append("meet")
    lines += [" ".join(map(str, row)) for row in G.meet]
    lines.append(f"morphisms {G.n_morphisms}")
    for x in range(G.n_morphisms):
        lab = f" {G.morphism_labels[x]}" if G.morphism_labels else ""
        lines.append(f"{x} {G.d[x]} {G.r[x]} {G.inverse[x]}{lab}")
    lines.append("order")
    lines += [f"{x} {y}" for (x, y) in sorted(G.leq) if x != y]
    return "\n".join(lines) + "\n"


def parse_groupoid_summary(text):
    """Object count, meet table, (dom, cod, inverse) list and strict order pairs."""
    lines = _lines(text)
    n = _int(lines[0].split()[1], "objects")
    k = 1
    if lines[k].startswith("labels:"):
        k += 1
    if lines[k] != "meet":
        raise InputError("expected 'meet'")
    meet = [tuple(_int(t, "meet") for t in lines[k + 1 + r].split()) for r in range(n)]
    k += 1 + n
    m = _int(lines[k].split()[1], "morphisms")
    arrows = [tuple(_int(t, "morphism") for t in lines[k + 1 + r].split()[1:4]) for r in range(m)]
    k += 1 + m
    if lines[k] != "order":
        raise InputError("expected 'order'")
    order = [tuple(_int(t, "order") for t in line.split()) for line in lines[k + 1:]]
    return n, tuple(meet), tuple(arrows), tuple(order)
