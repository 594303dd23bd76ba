"""Command-line front end.

Exit codes: 0 when a computation succeeds or a verification passes, 1 when a
verification fails (the counterexample is printed), 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction
from typing import Callable, Sequence

from . import cofib, digraph, excision, graphio, harness, pathhom
from .digraph import DiGraph, GraphError, label_str
from .linalg import FieldError, parse_field

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# named graphs
# ---------------------------------------------------------------------------

_NAMED: list[tuple[str, Callable[..., DiGraph]]] = [
    (r"i_(\d+)", lambda n: digraph.gen_line(int(n))),
    (r"c_(\d+)", lambda n: digraph.gen_cycle(int(n))),
    (r"alt_c_(\d+)", lambda n: digraph.gen_alt_cycle(int(n))),
    (r"c_(\d+)_(\d+)", lambda m, n: digraph.gen_mn_cycle(int(m), int(n))),
    (r"j", lambda: digraph.gen_J()),
    (r"suspension_alt4", lambda: digraph.gen_suspension_alt4()),
    (r"punctured_cube", lambda: digraph.gen_punctured_cube()),
    (r"complete_(\d+)", lambda n: digraph.gen_complete(range(int(n)))),
]

GRAPH_NAMES = ["i_<n>", "c_<n>", "alt_c_<2k>", "c_<m>_<n>", "j",
               "suspension_alt4", "punctured_cube", "complete_<n>", "random"]


def named_graph(name: str) -> DiGraph:
    for pat, make in _NAMED:
        m = re.fullmatch(pat, name)
        if m:
            return make(*m.groups())
    raise InputError(f"unknown graph name {name!r}; known: {', '.join(GRAPH_NAMES)}")


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load(path: str | None, args) -> DiGraph:
    text = _read(path)
    try:
        return graphio.load_graph(text, lenient=args.lenient)
    except graphio.ParseError as e:
        raise InputError(f"{path or '<stdin>'}: {e}") from None


def _graph(args) -> DiGraph:
    if args.graph_pos and args.graph:
        raise InputError("give the graph either positionally or with --graph, not both")
    return _load(args.graph or args.graph_pos, args)


def _subset(args, X: DiGraph) -> list:
    if args.subset is None:
        raise InputError("--subset is required")
    try:
        return graphio.parse_subset(args.subset, X)
    except graphio.ParseError as e:
        raise InputError(str(e)) from None


def _square(args):
    X = _graph(args)
    A = _subset(args, X)
    if not args.target or not args.map:
        raise InputError("--target and --map are required")
    B = _load(args.target, args)
    Ag = digraph.induced_subgraph(X, A)
    try:
        f = graphio.map_from_json(_read(args.map), Ag, B)
    except graphio.ParseError as e:
        raise InputError(f"{args.map}: {e}") from None
    return digraph.pushout(X, Ag, f)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    if args.ci:
        raise InputError("--ci requires an explicit --seed for randomized commands")
    return int.from_bytes(os.urandom(4), "big")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def _flatten(d, prefix: str = ""):
    if isinstance(d, dict):
        for k, v in d.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(d, list) and any(isinstance(x, (dict, list)) for x in d):
        for i, v in enumerate(d):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, json.dumps(d)


def _emit(args, payload: dict, table: str | None = None) -> None:
    if args.output == "table":
        if table is None:
            rows = list(_flatten(payload))
            w = max((len(k) for k, _ in rows), default=0)
            table = "\n".join(f"{k:<{w}}  {v}" for k, v in rows)
        print(table)
    else:
        print(json.dumps(payload, indent=2))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_homology(args) -> int:
    X = _graph(args)
    t = pathhom.homology(X, args.cutoff, args.fld, generators=args.generators)
    _emit(args, t.to_dict(), t.to_text())
    return EXIT_OK


def cmd_omega(args) -> int:
    X = _graph(args)
    if args.subset is not None:
        cx = pathhom.RelativeComplex(X, _subset(args, X), args.fld)
        get = cx.omega_hat
    else:
        get = pathhom.PathComplex(X, args.fld).omega
    degrees = [args.degree] if args.degree is not None else range(args.cutoff)
    out = []
    for n in degrees:
        B = get(n)
        out.append({"degree": n, "dim": len(B),
                    "basis": [pathhom._chain_json(c) for c in B.chains()]})
    _emit(args, {"field": args.fld.name, "relative": args.subset is not None, "degrees": out})
    return EXIT_OK


def cmd_cofib_check(args) -> int:
    X = _graph(args)
    if args.subgraph:
        A = _load(args.subgraph, args)
        if not all(v in X for v in A.vertices):
            raise InputError("--subgraph has vertices outside the graph")
    else:
        A = _subset(args, X)
    v = cofib.check_cofibration(X, A, coerce_induced=args.coerce_induced)
    _emit(args, v.to_dict())
    return EXIT_OK if v else EXIT_FAIL


def cmd_pushout(args) -> int:
    sq = _square(args)
    vm = lambda g: {label_str(k): label_str(g(k)) for k in g.domain.vertices}  # noqa: E731
    _emit(args, {"Y": sq.Y.to_dict(), "B_to_Y": vm(sq.B_to_Y), "X_to_Y": vm(sq.X_to_Y)})
    return EXIT_OK


def cmd_excision_verify(args) -> int:
    sq = _square(args)
    src = cofib.check_cofibration(sq.X, sq.A.vertices)
    if not src:
        raise InputError(f"A -> X is not a cofibration ({src.failure.kind})")
    tgt = cofib.check_cofibration(sq.Y, sq.B_to_Y.image(sq.B.vertices))
    if not tgt:
        _emit(args, {"ok": False, "target_leg": tgt.to_dict()})
        return EXIT_FAIL
    rep = excision.verify_excision(sq, args.cutoff, args.fld)
    dims = excision.omega_pushout_dims(sq, args.cutoff, args.fld)
    payload = dict(rep.to_dict(), omega_pushout=dims, ok=rep.ok and dims["ok"])
    _emit(args, payload)
    return EXIT_OK if payload["ok"] else EXIT_FAIL


def cmd_les_verify(args) -> int:
    X = _graph(args)
    A = _subset(args, X)
    v = cofib.check_cofibration(X, A)
    if not v:
        raise InputError(f"A -> X is not a cofibration ({v.failure.kind})")
    rep = excision.verify_les(X, A, args.cutoff, args.fld)
    _emit(args, rep.to_dict())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_factor_codiagonal(args) -> int:
    X = _graph(args)
    fac = cofib.codiagonal_factorization(X)
    leg = cofib.check_cofibration(fac.cylinder, fac.ends.vertices)
    ranks = pathhom.homology_map_ranks(fac.projection, args.cutoff, args.fld)
    iso = pathhom.is_homology_iso(fac.projection, args.cutoff, args.fld)
    fold_ok = all(fac.fold()(v) == v[0] for v in fac.ends.vertices)
    payload = {"cutoff": args.cutoff, "cylinder_vertices": len(fac.cylinder),
               "cofibration": leg.to_dict()["is_cofibration"],
               "failure": leg.to_dict()["failure"], "homology_iso": iso,
               "ranks": ranks, "fold": fold_ok, "ok": bool(leg) and iso and fold_ok}
    _emit(args, payload)
    return EXIT_OK if payload["ok"] else EXIT_FAIL


def cmd_axioms(args) -> int:
    spec = harness.InstanceSpec(seed=_seed(args), vertex_budget=args.vertices,
                                edge_density=args.density, max_degree=args.cutoff)
    rep = harness.axiom_suite(spec, args.instances, args.fld, corrupt=args.corrupt)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            fh.write(rep.to_json(indent=2))
    d = rep.to_dict()
    if args.output == "table":
        lines = [f"seed {spec.seed}  instances {rep.instances}  cutoff {rep.cutoff}"]
        for ax in d["passed"]:
            lines.append(f"{ax:<18} pass {d['passed'][ax]:>4}  fail {d['failed'][ax]:>4}")
        for ax, why in d["skipped"].items():
            lines.append(f"{ax:<18} skipped: {why}")
        _emit(args, d, "\n".join(lines))
    else:
        _emit(args, d)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_generate(args) -> int:
    if args.name == "random":
        spec = harness.InstanceSpec(seed=_seed(args), vertex_budget=args.vertices,
                                    edge_density=args.density)
        X = harness.random_digraph(spec)
    else:
        X = named_graph(args.name)
    if args.output == "table":
        print(graphio.graph_to_text(X), end="")
    else:
        print(graphio.graph_to_json(X))
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _density(s: str) -> Fraction:
    try:
        d = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad density {s!r}") from None
    if not 0 <= d <= 1:
        raise argparse.ArgumentTypeError("density must lie in [0, 1]")
    return d


def _nonneg(s: str) -> int:
    n = int(s)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--cutoff", type=_nonneg, default=5, help="degree cutoff K (default 5)")
    shared.add_argument("--field", default="q", help="q (rationals) or p=<prime>")
    shared.add_argument("--output", choices=["json", "table"], default="json")
    shared.add_argument("--seed", type=int, default=None)
    shared.add_argument("--ci", action="store_true", help="require explicit seeds")
    shared.add_argument("--lenient", action="store_true", help="collapse duplicate edges")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph_pos", nargs="?", metavar="GRAPH", help="graph file (default stdin)")
    graph_in.add_argument("--graph", help="graph file, JSON or text; '-' for stdin")

    subset = argparse.ArgumentParser(add_help=False)
    subset.add_argument("--subset", help="comma-separated vertices of A")

    square = argparse.ArgumentParser(add_help=False)
    square.add_argument("--target", help="graph file for B")
    square.add_argument("--map", help='attaching map file {"map": {...}}')

    p = argparse.ArgumentParser(prog="pathcof", description="Path homology and cofibrations of digraphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *parents, help):
        sp = sub.add_parser(name, parents=[shared, *parents], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("homology", cmd_homology, graph_in, help="betti numbers and Ω dimensions")
    sp.add_argument("--generators", action="store_true")
    sp = add("omega", cmd_omega, graph_in, subset, help="bases of Ω_n (or of the relative Ω̂_n with --subset)")
    sp.add_argument("--degree", type=_nonneg)
    sp = add("cofib-check", cmd_cofib_check, graph_in, subset, help="decide whether A ⊂ X is a cofibration")
    sp.add_argument("--subgraph", help="A as a graph file instead of --subset")
    sp.add_argument("--coerce-induced", action="store_true")
    add("pushout", cmd_pushout, graph_in, subset, square, help="pushout of A ⊂ X along A -> B")
    add("excision-verify", cmd_excision_verify, graph_in, subset, square,
        help="check excision on a pushout square")
    add("les-verify", cmd_les_verify, graph_in, subset, help="check the long exact sequence of (X, A)")
    add("factor-codiagonal", cmd_factor_codiagonal, graph_in, help="check X □ ∂J ⊂ X □ J -> X")
    sp = add("axioms", cmd_axioms, help="run the axiom suite on seeded random instances")
    sp.add_argument("--instances", type=_nonneg, default=20)
    sp.add_argument("--vertices", type=_nonneg, default=6)
    sp.add_argument("--density", type=_density, default=Fraction(1, 4))
    sp.add_argument("--json", help="also write the report here")
    sp.add_argument("--corrupt", action="store_true", help="negative control: inject edges out of A")
    sp = add("generate", cmd_generate, help="emit a named graph")
    sp.add_argument("name", help=" | ".join(GRAPH_NAMES))
    sp.add_argument("--vertices", type=_nonneg, default=6)
    sp.add_argument("--density", type=_density, default=Fraction(1, 4))
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        args.fld = parse_field(args.field)
        return args.fn(args)
    except (InputError, GraphError, FieldError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
