"""Small named semigroups used throughout the tests, scripts and CLI."""
from __future__ import annotations

from functools import lru_cache
from itertools import product

from .rees import ZERO, ReesSpec, rees_semigroup
from .semigroup import adjoin_identity, first_associativity_failure, from_cayley_table


def sl2():
    """Two-element semilattice {0 < 1} under min."""
    return from_cayley_table([[0, 0], [0, 1]], ["0", "1"])


def lz2():
    return from_cayley_table([[0, 0], [1, 1]], ["a", "b"])


def rz2():
    return from_cayley_table([[0, 1], [0, 1]], ["a", "b"])


def z2():
    return from_cayley_table([[0, 1], [1, 0]], ["e", "g"])


def trivial_group():
    return from_cayley_table([[0]], ["e"])


B2_LABELS = ("11", "12", "21", "22", "0")


def b2():
    """Five-element Brandt semigroup: (i,j)(k,l) = (i,l) if j == k else 0."""
    pairs = [(1, 1), (1, 2), (2, 1), (2, 2)]
    table = []
    for i, j in pairs:
        row = []
        for k, l in pairs:
            row.append(pairs.index((i, l)) if j == k else 4)
        row.append(4)
        table.append(row)
    table.append([4] * 5)
    return from_cayley_table(table, B2_LABELS)


T2_LABELS = ("id", "sw", "c1", "c2")


def t2():
    """Full transformation monoid on two points, composed left to right."""
    maps = [(0, 1), (1, 0), (0, 0), (1, 1)]
    table = [[maps.index(tuple(g[f[p]] for p in range(2))) for g in maps] for f in maps]
    return from_cayley_table(table, T2_LABELS)


def rectangular_band(m, n):
    cells = list(product(range(m), range(n)))
    table = [[cells.index((i, l)) for (k, l) in cells] for (i, j) in cells]
    return from_cayley_table(table, [f"{i}{j}" for i, j in cells])


def null_semigroup(n):
    return from_cayley_table([[0] * n for _ in range(n)])


def b2_spec():
    return ReesSpec(trivial_group(), 2, 2, ((0, ZERO), (ZERO, 0)))


def m9_spec():
    """M°(Z2; 2, 2; [[1, 0], [0, g]])."""
    return ReesSpec(z2(), 2, 2, ((0, ZERO), (ZERO, 1)))


def m9_scaled_spec():
    """M9 with its second column multiplied by g."""
    return ReesSpec(z2(), 2, 2, ((0, ZERO), (ZERO, 0)))


def a2_spec():
    return ReesSpec(trivial_group(), 2, 2, ((0, 0), (0, ZERO)))


def trivial_spec():
    return ReesSpec(trivial_group(), 1, 1, ((0,),))


def m9():
    return rees_semigroup(m9_spec())


def a2():
    return rees_semigroup(a2_spec())


def b2_monoid():
    return adjoin_identity(b2())


NAMED = {
    "SL2": sl2,
    "LZ2": lz2,
    "RZ2": rz2,
    "Z2": z2,
    "B2": b2,
    "T2": t2,
    "M9": m9,
    "A2": a2,
    "RB22": lambda: rectangular_band(2, 2),
    "B2^1": b2_monoid,
    "LZ2^1": lambda: adjoin_identity(lz2()),
    "N3": lambda: null_semigroup(3),
}


def named(name):
    return NAMED[name]()


def corpus():
    return {k: f() for k, f in NAMED.items()}


@lru_cache(maxsize=None)
def _small_tables(n):
    out = []
    for flat in product(range(n), repeat=n * n):
        table = [flat[r * n:(r + 1) * n] for r in range(n)]
        if first_associativity_failure(table) is None:
            out.append(tuple(tuple(r) for r in table))
    return tuple(out)


def all_semigroups(max_order=3):
    """Every associative table on ``{0..n-1}`` for ``1 <= n <= max_order``.

    Tables are not reduced up to isomorphism (122 tables up to order 3).
    """
    out = []
    for n in range(1, max_order + 1):
        out.extend(from_cayley_table(t) for t in _small_tables(n))
    return out
