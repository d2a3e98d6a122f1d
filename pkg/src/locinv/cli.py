"""Command-line entry point: ``python -m locinv {analyze,rebuild,rees,esn} ...``.

Exit codes: 0 when every check passes, 1 on a property violation, 2 on bad
input (unreadable or malformed files, or inputs beyond the configured bounds).
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .categories import classify_category, left_ideal_category, right_ideal_category, verify_category_axioms
from .config import DEFAULT_LIMITS
from .errors import InputError, IrregularMatrix, LocinvError, NotInverse, NotLocallyInverse, SizeGuard
from .rees import ZERO

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


def jsonable(x):
    """Plain JSON data for any witness we produce (tuples become lists, sets are sorted)."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if x is ZERO:
        return "0"
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (frozenset, set)):
        return sorted((jsonable(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return repr(x)


@dataclass
class RunReport:
    command: str
    input_digest: str
    checks: list = field(default_factory=list)     # {"name", "passed", "witness"}
    facts: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK
    error: str | None = None

    def check(self, name, passed, witness=None):
        self.checks.append({"name": name, "passed": bool(passed), "witness": jsonable(witness)})
        return passed

    def fact(self, name, value):
        self.facts[name] = jsonable(value)

    def finish(self, code=None):
        if code is None:
            code = EXIT_OK if all(c["passed"] for c in self.checks) else EXIT_VIOLATION
        self.exit_code = code
        return self

    def to_json(self):
        return json.dumps(asdict(self), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text):
        return cls(**json.loads(text))

    def to_text(self):
        lines = [f"command: {self.command}", f"input sha256: {self.input_digest}"]
        for k, v in self.facts.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{k}:")
                lines += ["  " + s for s in v.rstrip("\n").split("\n")]
            else:
                lines.append(f"{k}: {v}")
        for c in self.checks:
            w = "" if c["passed"] or c["witness"] is None else f"  witness {c['witness']}"
            lines.append(f"[{'PASS' if c['passed'] else 'FAIL'}] {c['name']}{w}")
        if self.error:
            lines.append(f"error: {self.error}")
        lines.append(f"exit code: {self.exit_code}")
        return "\n".join(lines)


class _Timer:
    def __init__(self, report, name):
        self.report, self.name = report, name

    def __enter__(self):
        self.t = time.perf_counter()

    def __exit__(self, *exc):
        self.report.timings[self.name] = round(time.perf_counter() - self.t, 6)


def _yes(b):
    return "yes" if b else "no"


def _labels(S, w):
    if isinstance(w, (tuple, list)) and all(isinstance(v, int) for v in w):
        return "(" + ",".join(S.label(v) for v in w) + ")"
    if isinstance(w, int):
        return S.label(w)
    return w


# ---------------------------------------------------------------- loading

def _read(path):
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _digest(data):
    return hashlib.sha256(data).hexdigest()


def _load_semigroup(data):
    from .formats import parse_cayley

    try:
        return parse_cayley(data.decode())
    except UnicodeDecodeError:
        raise InputError("input is not text") from None


def _limits(args):
    lim = DEFAULT_LIMITS
    if args.max_enum is not None:
        lim = lim.with_(max_cone_candidates=args.max_enum)
    return lim


# ---------------------------------------------------------------- commands

def _analyze_semigroup(rep, S, limits, prefix=""):
    from .semigroup import classify, is_inverse, is_locally_inverse

    cls = classify(S)
    rep.fact(prefix + "order", S.order)
    rep.fact(prefix + "regular", _yes(cls.is_regular))
    rep.fact(prefix + "inverse", _yes(cls.is_inverse))
    loc = is_locally_inverse(S)
    rep.fact(prefix + "locally inverse", _yes(loc.holds) if loc.holds else f"no, witness {_labels(S, loc.witness)}")
    for name, v in (("inverse", is_inverse(S)), ("locally inverse", loc)):
        conds = {k: c[0] for k, c in v.conditions.items()}
        rep.fact(prefix + f"{name} conditions", conds)
        rep.check(prefix + f"{name}: equivalent conditions agree", len(set(conds.values())) <= 1, conds)
    if not cls.is_regular:
        rep.fact(prefix + "L(S)", "n/a (not regular)")
        return
    for side, build in (("L(S)", left_ideal_category), ("R(S)", right_ideal_category)):
        C = build(S)
        try:
            verify_category_axioms(C)
            rep.check(prefix + f"{side}: category axioms", True)
        except LocinvError as exc:
            rep.check(prefix + f"{side}: category axioms", False, exc.witness)
        cr = classify_category(C, limits)
        rep.fact(prefix + side, cr.verdict)
        rep.fact(prefix + f"{side} size", [C.n_objects, C.n_morphisms])
        rep.check(prefix + f"{side}: normal", cr.is_normal, cr.witnesses)
        rep.check(prefix + f"{side}: unambiguous iff locally inverse", cr.is_unambiguous == loc.holds,
                  cr.witnesses)


def _analyze_category(rep, C, limits):
    from .cones import cone_semigroup
    from .inverse import classify_inversive
    from .semigroup import is_locally_inverse

    try:
        verify_category_axioms(C)
        rep.check("category axioms", True)
    except LocinvError as exc:
        rep.check("category axioms", False, exc.witness)
        return
    cr = classify_category(C, limits)
    rep.fact("objects", C.n_objects)
    rep.fact("morphisms", C.n_morphisms)
    rep.fact("category", cr.verdict)
    rep.fact("category witnesses", cr.witnesses)
    ir = classify_inversive(C, limits)
    rep.fact("inversive", _yes(ir.is_inversive))
    if cr.is_unambiguous:
        CS = cone_semigroup(C, limits)
        rep.fact("normal cones", len(CS.cones))
        v = is_locally_inverse(CS.as_semigroup)
        rep.check("cone semigroup is locally inverse", v.holds, v.witness)


def cmd_analyze(args, rep, limits):
    if args.fixtures:
        from .fixtures import corpus

        for name, S in corpus().items():
            _analyze_semigroup(rep, S, limits, prefix=f"{name}: ")
        return
    data = _read(args.path)
    rep.input_digest = _digest(data)
    if args.format == "socat":
        from .formats import parse_socat

        _analyze_category(rep, parse_socat(data.decode()), limits)
    else:
        _analyze_semigroup(rep, _load_semigroup(data), limits)


def _rebuild_one(rep, S, name, limits, prefix=""):
    from .crossconn import canonical_cxn, check_chi, rebuild_check

    om = canonical_cxn(S, limits)
    with _Timer(rep, prefix + "rebuild"):
        r = rebuild_check(S, name, limits, om=om)
    rep.fact(prefix + "rebuild", json.loads(r.to_json()))
    rep.check(prefix + "S_Omega isomorphic to S", r.iso_found, r.witness)
    rep.check(prefix + "L(S_Omega) isomorphic to L(S)", r.left_iso)
    rep.check(prefix + "R(S_Omega) isomorphic to R(S)", r.right_iso)
    rep.check(prefix + "E_Omega is a pseudo-semilattice", r.pseudo_semilattice)
    for k, v in r.checks.items():
        rep.check(prefix + f"{k} structure", not v, v)
    chi = check_chi(om)
    rep.check(prefix + "chi bijective and natural", not chi, chi)


def cmd_rebuild(args, rep, limits):
    from .semigroup import is_locally_inverse

    if args.fixtures:
        from .fixtures import corpus

        for name, S in corpus().items():
            if S.order <= 9 and is_locally_inverse(S).holds:
                _rebuild_one(rep, S, name, limits, prefix=f"{name}: ")
            else:
                rep.fact(f"{name}: skipped", "not locally inverse")
        return
    data = _read(args.path)
    rep.input_digest = _digest(data)
    S = _load_semigroup(data)
    _rebuild_one(rep, S, Path(args.path).stem, limits)


def _rees_one(rep, spec, limits, prefix=""):
    from .categories import left_ideal_category as L
    from .rees import check_matrix_regular, matrix_cxn, rees_cone_iso, rees_semigroup
    from .semigroup import is_locally_inverse

    ok, w = check_matrix_regular(spec.matrix)
    rep.check(prefix + "sandwich matrix regular", ok, w)
    if not ok:
        raise IrregularMatrix(*w)
    S = rees_semigroup(spec)
    rep.fact(prefix + "order", S.order)
    rep.check(prefix + "M0 locally inverse", is_locally_inverse(S).holds)
    rep.check(prefix + "L(M0) unambiguous", classify_category(L(S), limits).is_unambiguous)
    with _Timer(rep, prefix + "cone model"):
        c = rees_cone_iso(spec, limits)
    rep.fact(prefix + "normal cones", c.cones)
    rep.fact(prefix + "wreath quotient order", c.quotient)
    rep.check(prefix + "cone count (|G0|^|L| - 1)|L| + 1", c.cones == c.expected == c.quotient,
              [c.cones, c.expected, c.quotient])
    rep.check(prefix + "cone semigroup isomorphic to wreath quotient", c.iso_found and c.label_map_iso)
    rep.check(prefix + "principal cones are translated columns", c.principal_ok)
    rep.check(prefix + "R-classes match right translate classes", c.r_class_membership
              and c.r_classes == c.orbit_count, [c.r_classes, c.orbit_count])
    rep.check(prefix + "dual object count", c.dual_objects == c.orbit_count, [c.dual_objects, c.orbit_count])
    rep.check(prefix + "labelled L(M0) matches generic L(M0)", c.labelled_category_ok)
    with _Timer(rep, prefix + "cross-connection"):
        _, m = matrix_cxn(spec, limits)
    rep.check(prefix + "Gamma_P equals Gamma_S", m.gamma_matches)
    rep.check(prefix + "Delta_P equals Delta_S", m.delta_matches)
    rep.check(prefix + "M-sets read off P", m.m_sets_from_matrix)
    rep.check(prefix + "M-set condition", m.m_set_condition)
    rep.check(prefix + "S_Omega isomorphic to M0", m.rebuild.iso_found, m.rebuild.witness)
    return S


def cmd_rees(args, rep, limits):
    from .formats import parse_rees

    if args.fixtures:
        import numpy as np

        from .fixtures import a2_spec, b2_spec, m9_scaled_spec, m9_spec, trivial_group, trivial_spec, z2
        from .rees import random_regular_spec

        specs = {"B2": b2_spec(), "M9": m9_spec(), "M9-scaled": m9_scaled_spec(), "A2": a2_spec(),
                 "trivial": trivial_spec()}
        if args.seed is not None:
            rng = np.random.default_rng(args.seed)
            for k in range(4):
                G = z2() if k % 2 else trivial_group()
                specs[f"random{k}"] = random_regular_spec(G, 2, 2, rng)
        for name, spec in specs.items():
            _rees_one(rep, spec, limits, prefix=f"{name}: ")
        return
    data = _read(args.path)
    rep.input_digest = _digest(data)
    spec = parse_rees(data.decode())
    S = _rees_one(rep, spec, limits)
    if args.compare:
        from .isomorphism import find_isomorphism

        T = _load_semigroup(_read(args.compare))
        rep.check("isomorphic to comparison semigroup", find_isomorphism(S, T, limits) is not None)


def _esn_one(rep, S, limits, prefix="", export=True):
    from .categories import left_ideal_category as L
    from .formats import format_groupoid
    from .inverse import (
        category_round_trip,
        classify_inversive,
        groupoid_from_semigroup_matches,
        groupoid_round_trip,
        inductive_groupoid_of,
        idempotent_retraction_failures,
        rho_iso_check,
    )

    G = inductive_groupoid_of(S)
    rep.fact(prefix + "groupoid objects", G.n_objects)
    rep.fact(prefix + "groupoid morphisms", G.n_morphisms)
    if export:
        rep.fact(prefix + "groupoid", format_groupoid(G))
    rep.check(prefix + "inductive groupoid axioms", True)
    C = L(S)
    ir = classify_inversive(C, limits)
    rep.check(prefix + "L(S) inversive", ir.is_inversive, ir.witnesses)
    rep.check(prefix + "mu_c then retraction stays idempotent inversive", not idempotent_retraction_failures(C, ir))
    with _Timer(rep, prefix + "round trips"):
        _, v = groupoid_round_trip(G, limits)
        rep.check(prefix + "G_(C_G) isomorphic to G", v is None, v)
        _, ok, found = category_round_trip(C, limits)
        rep.check(prefix + "C_(G_C) isomorphic to C", ok and found)
        v = groupoid_from_semigroup_matches(S, limits)
        rep.check(prefix + "G_(L(S)) isomorphic to G(S)", v is None, v)
    r = rho_iso_check(S, limits)
    rep.fact(prefix + "inversive cones", r.tilde_order)
    rep.fact(prefix + "normal cones", r.hat_order)
    rep.check(prefix + "a -> rho^a is an isomorphism onto inversive cones", r.is_isomorphism, r.witnesses)
    rep.check(prefix + "inversive cones are the principal cones", r.inversive_equals_principal)


def cmd_esn(args, rep, limits):
    from .semigroup import is_inverse

    if args.fixtures:
        from .fixtures import corpus

        for name, S in corpus().items():
            if is_inverse(S).holds:
                _esn_one(rep, S, limits, prefix=f"{name}: ", export=False)
            else:
                rep.fact(f"{name}: skipped", "not inverse")
        return
    data = _read(args.path)
    rep.input_digest = _digest(data)
    _esn_one(rep, _load_semigroup(data), limits)


COMMANDS = {"analyze": cmd_analyze, "rebuild": cmd_rebuild, "rees": cmd_rees, "esn": cmd_esn}


def build_parser():
    p = argparse.ArgumentParser(prog="locinv", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("path", nargs="?", help="input file")
        s.add_argument("--report", choices=["text", "json"], default="text")
        s.add_argument("--max-enum", type=int, default=None, help="cap on normal-cone candidates")
        s.add_argument("--seed", type=int, default=None, help="seed for randomised matrix corpora")
        s.add_argument("--fixtures", action="store_true", help="run the built-in corpus")
        if name == "analyze":
            s.add_argument("--format", choices=["cay", "socat"], default="cay")
        if name == "rees":
            s.add_argument("--compare", default=None, help="Cayley file expected to be isomorphic")
    return p


def run(argv=None):
    args = build_parser().parse_args(argv)
    rep = RunReport(args.command, _digest(b"fixtures") if args.fixtures else "")
    if not args.fixtures and not args.path:
        rep.error = "an input path or --fixtures is required"
        return rep.finish(EXIT_INPUT)
    t = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep, _limits(args))
        code = None
    except IrregularMatrix as exc:
        rep.error, code = f"IrregularMatrix: {exc}", EXIT_VIOLATION
    except (InputError, SizeGuard) as exc:
        rep.error, code = f"{type(exc).__name__}: {exc}", EXIT_INPUT
    except (NotLocallyInverse, NotInverse) as exc:
        rep.error, code = f"{type(exc).__name__}: {exc}", EXIT_VIOLATION
    except LocinvError as exc:
        rep.error, code = f"{type(exc).__name__}: {exc}", EXIT_VIOLATION
        rep.check(type(exc).__name__, False, exc.witness)
    rep.timings["total"] = round(time.perf_counter() - t, 6)
    return rep.finish(code)


def main(argv=None):
    args = build_parser().parse_args(argv)
    rep = run(argv)
    print(rep.to_json() if args.report == "json" else rep.to_text())
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
