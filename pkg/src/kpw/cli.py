"""Command-line workbench: ``kpw <command> GRAPH [options]``.

Every command builds one record dict; ``--json`` prints it, text mode renders
the same fields. Exit codes: 0 success, 1 a computed negative answer, 2 an
error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path as FsPath

from . import fixtures
from .cycline import (NOT_CYCLINE, commutant_witness, cycline_pairs_up_to, is_aperiodic,
                      is_cycline, is_in_M)
from .diagonal import is_in_diagonal, pi
from .errors import KPError, SearchExhausted
from .infpath import parse_infpath
from .kgraph import KGraph, deg_diag
from .kpalg import format_element, mul
from .ring import RingSpec
from .textio import InvalidGraphError, parse_element, parse_family, parse_graph_file
from .uniqueness import (CompressionBounds, UniversalRepresentation, apply_representation,
                         compress_to_cycline, format_matrix, uniqueness_check)

log = logging.getLogger("kpw")

COMMANDS = ("validate", "eval", "mul", "nf", "grade", "star", "in-d", "in-m", "cycline",
            "cycline-pairs", "aperiodic", "compress", "rep-validate", "rep-apply",
            "uniqueness-check")


@dataclass
class WorkbenchConfig:
    graph: str
    ring: str | None = None
    depth: int = 6
    bounds: int = 8
    output: str = "text"
    seed: int = 0

    def compression_bounds(self) -> CompressionBounds:
        return CompressionBounds(depth=self.depth, cycle_length=self.bounds)


class UsageError(KPError):
    pass


def _read_source(name: str) -> tuple[str, str]:
    """Text and display name of a file path or shipped fixture."""
    p = FsPath(name)
    if p.is_file():
        return p.read_text(), p.stem
    stem = name[:-3] if name.endswith(".kg") else name
    if stem in fixtures.NAMES:
        return fixtures.read_text(stem), stem
    raise UsageError(f"no such graph file or fixture: {name}")


def load_graph(cfg: WorkbenchConfig, validate: bool = True):
    text, stem = _read_source(cfg.graph)
    g, ring = parse_graph_file(text, name=stem, validate=validate)
    if cfg.ring:
        ring = RingSpec.from_name(cfg.ring)
    return g, ring


def load_family_arg(name: str, g: KGraph):
    p = FsPath(name)
    if p.is_file():
        return parse_family(p.read_text(), g)
    stem = name[:-4] if name.endswith(".fam") else name
    try:
        return parse_family(fixtures.read_text(stem + ".fam"), g)
    except FileNotFoundError:
        raise UsageError(f"no such family file or fixture: {name}") from None


def parse_degree(text: str | None, g: KGraph, default=None):
    """``"2"`` means ``(2,...,2)``; ``"1,0"`` is explicit."""
    if text is None:
        return default
    parts = [int(x) for x in text.replace(" ", "").split(",")]
    if len(parts) == 1:
        return deg_diag(g.rank, parts[0])
    if len(parts) != g.rank:
        raise UsageError(f"degree {text!r} has {len(parts)} entries, expected {g.rank}")
    return tuple(parts)


def _need(args, name):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command}")
    return v


def _element(args, g, ring, which="expr"):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        a = parse_element(_need(args, which), g, ring)
    for w in caught:
        log.warning("%s", w.message)
    return a


def _deg_text(n) -> str:
    return ",".join(str(x) for x in n)


# commands: each returns (exit code, record, text)

def cmd_validate(args, cfg):
    g, ring = load_graph(cfg, validate=False)
    rep = g.validate()
    rec = {"valid": rep.valid, "report": str(rep), "problems": list(rep.problems), "ring": ring.name}
    return (0 if rep.valid else 1), rec, str(rep)


def cmd_eval(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    s = format_element(a)
    return 0, {"element": s, "zero": a.is_zero()}, s


def cmd_mul(args, cfg):
    g, ring = load_graph(cfg)
    a, b = _element(args, g, ring), _element(args, g, ring, "other")
    s = format_element(mul(a, b))
    return 0, {"product": s}, s


def cmd_nf(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    m = parse_degree(args.m, g)
    nf = a.normal_form(m)
    s = format_element(nf, raw=True)
    return 0, {"normal_form": s, "degree": _deg_text(m if m is not None else a.beta_join())}, s


def cmd_grade(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    if args.n is None:
        comps = {_deg_text(n): format_element(c) for n, c in a.canonical().components().items()}
        text = "\n".join(f"({n}): {c}" for n, c in comps.items()) or "0"
        return 0, {"components": comps}, text
    n = tuple(int(x) for x in args.n.split(","))
    s = format_element(a.graded_component(n))
    return 0, {"grade": _deg_text(n), "component": s}, s


def cmd_star(args, cfg):
    g, ring = load_graph(cfg)
    s = format_element(_element(args, g, ring).star())
    return 0, {"star": s}, s


def cmd_in_d(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    yes = is_in_diagonal(a)
    rec = {"in_D": yes, "function": str(pi(a)) if yes else None}
    text = f"yes: {rec['function']}" if yes else "no"
    return (0 if yes else 1), rec, text


def cmd_in_m(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    v = is_in_M(a, cfg.depth)
    rec = v.to_dict()
    text = v.status
    if v.status == "no":
        w = commutant_witness(a, parse_degree(args.degree, g, deg_diag(g.rank, 3)))
        rec["commutant_witness"] = None if w is None else str(w)
        if w is not None:
            text += f" (does not commute with the projection of {w})"
    return (1 if v.status == "no" else 0), rec, text


def cmd_cycline(args, cfg):
    g, ring = load_graph(cfg)
    alpha, beta = g.path(_need(args, "alpha")), g.path(_need(args, "beta"))
    v = is_cycline(g, alpha, beta, cfg.depth)
    rec = {"alpha": str(alpha), "beta": str(beta), **v.to_dict()}
    return (1 if v.status == NOT_CYCLINE else 0), rec, str(v)


def cmd_cycline_pairs(args, cfg):
    g, ring = load_graph(cfg)
    bound = parse_degree(args.degree, g, deg_diag(g.rank, 2))
    pairs = cycline_pairs_up_to(g, bound, cfg.depth)
    rows = [{"alpha": str(p.alpha), "beta": str(p.beta), "status": p.verdict.status} for p in pairs]
    shown = [r for r in rows if r["status"] != NOT_CYCLINE]
    text = "\n".join(f"({r['alpha']}, {r['beta']}) {r['status']}" for r in shown)
    rec = {"degree": _deg_text(bound), "pairs": shown, "checked": len(rows)}
    return 0, rec, text


def cmd_aperiodic(args, cfg):
    g, ring = load_graph(cfg)
    v = is_aperiodic(g, cfg.depth, parse_degree(args.degree, g))
    return (1 if v.status == "not-aperiodic" else 0), v.to_dict(), str(v)


def cmd_compress(args, cfg):
    g, ring = load_graph(cfg)
    a = _element(args, g, ring)
    x = parse_infpath(g, args.x) if args.x else None
    m, rep = compress_to_cycline(a, x, cfg.compression_bounds())
    rec = rep.to_dict()
    lines = [f"m = {rec['m']}",
             f"delta = {rec['delta']}, epsilon = {rec['epsilon']}, b = {rec['b']}, r = {rec['r']}",
             f"x = {rec['x']}, m in M: {rec['m_in_M']}"]
    lines += [f"  {c}" for c in rep.certificates]
    return 0, rec, "\n".join(lines)


def cmd_rep_validate(args, cfg):
    g, ring = load_graph(cfg)
    fam = load_family_arg(_need(args, "family"), g)
    rep = fam.validate(g)
    return (0 if rep.valid else 1), rep.to_dict(), str(rep)


def cmd_rep_apply(args, cfg):
    g, ring = load_graph(cfg)
    fam = load_family_arg(_need(args, "family"), g)
    ring = fam.ring if cfg.ring is None else ring
    a = _element(args, g, ring)
    M = apply_representation(fam, a)
    rec = {"matrix": [[str(x) for x in row] for row in M], "zero": fam.is_zero_image(M)}
    return 0, rec, format_matrix(M)


def cmd_uniqueness_check(args, cfg):
    g, ring = load_graph(cfg)
    if args.universal:
        fam = UniversalRepresentation(g, ring)
        label = "universal"
    else:
        fam = load_family_arg(_need(args, "family"), g)
        ring = fam.ring
        label = args.family
    log.info("uniqueness-check seed=%d", cfg.seed)
    rep = uniqueness_check(fam, g, ring, samples=args.samples, bounds=cfg.compression_bounds(),
                           seed=cfg.seed)
    rec = {"family": label, "seed": cfg.seed, **rep.to_dict()}
    lines = [rep.summary()]
    for k in rep.kernel:
        lines.append(f"  kernel {k.element} -> m = {k.m} (in M: "
                     f"{k.report.in_M.status if k.report else 'n/a'}, in kernel: {k.m_in_kernel})")
    lines.append(f"aperiodic: {rep.aperiodic}; corollary: {rep.corollary}")
    return (0 if rep.consistent else 1), rec, "\n".join(lines)


HANDLERS = {
    "validate": cmd_validate, "eval": cmd_eval, "mul": cmd_mul, "nf": cmd_nf,
    "grade": cmd_grade, "star": cmd_star, "in-d": cmd_in_d, "in-m": cmd_in_m,
    "cycline": cmd_cycline, "cycline-pairs": cmd_cycline_pairs, "aperiodic": cmd_aperiodic,
    "compress": cmd_compress, "rep-validate": cmd_rep_validate, "rep-apply": cmd_rep_apply,
    "uniqueness-check": cmd_uniqueness_check,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kpw", description="Kumjian-Pask algebra workbench for k-graphs")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("graph", help="graph file, or a shipped fixture name (G1..G4)")
    ap.add_argument("--ring", help="override the file's ring: Z, Q or Z/n")
    ap.add_argument("--depth", type=int, default=6, help="cycline search depth")
    ap.add_argument("--bound", type=int, default=8, help="compression search bound")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("-e", "--expr", help="element expression")
    ap.add_argument("-f", "--other", help="second element (mul)")
    ap.add_argument("-m", help="normal form degree, e.g. 1 or 1,0")
    ap.add_argument("-n", help="grade, e.g. 0,1")
    ap.add_argument("--alpha")
    ap.add_argument("--beta")
    ap.add_argument("--degree", help="degree bound for pair searches")
    ap.add_argument("--family", help="family file or fixture (G4_units, G1_swap, ...)")
    ap.add_argument("--universal", action="store_true", help="use the identity representation")
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--x", help="infinite path 'prefix;cycle' for compress")
    return ap


def run(argv=None) -> tuple[int, str]:
    args = build_parser().parse_args(argv)
    cfg = WorkbenchConfig(args.graph, args.ring, args.depth, args.bound,
                          "json" if args.json else "text", args.seed)
    try:
        code, rec, text = HANDLERS[args.command](args, cfg)
    except InvalidGraphError as exc:
        code, rec, text = 2, {"error": f"invalid graph: {exc.report}"}, f"error: invalid graph: {exc.report}"
    except (KPError, SearchExhausted, ValueError, OSError) as exc:
        code, rec, text = 2, {"error": str(exc)}, f"error: {exc}"
    if cfg.output == "json":
        rec = {"command": args.command, "graph": args.graph, "exit_code": code, **rec}
        return code, json.dumps(rec, sort_keys=True)
    return code, text


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    code, out = run(argv)
    stream = sys.stderr if code == 2 else sys.stdout
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
